// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any FAIL.
// Usage: acceptance <hypercheck-cli> <battery-config>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "hypercheck/hypercheck.hpp"
#include "support.hpp"

using namespace hypercheck;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void fail(const std::string& why)
    {
        if (ok) {
            detail = why;
        }
        ok = false;
    }
};

// Every decided verdict produced by the suites, with what it claims, for
// criterion 8.
struct Ledger {
    std::size_t checked = 0;
    std::vector<std::string> failures;

    void record(const std::string& where, const ValidationFailure& f)
    {
        ++checked;
        if (f) {
            failures.push_back(where + ": " + *f);
        }
    }
};

Ledger ledger;

void note_verdict(const std::string& where, const AnySystem& sys, Property p, const Verdict& v)
{
    if (v.decided()) {
        ledger.record(where, validate(sys, p, v));
    }
}

void note_report(const std::string& where, const AnySystem& sys, const EquivalenceReport& r, const Budgets& b)
{
    std::size_t decided = 0;
    for (const auto& c : r.conditions) {
        for (const auto& comp : c.components) {
            decided += comp.verdict.decided() ? 1 : 0;
        }
    }
    auto failures = validate_report(sys, r, b);
    for (std::size_t i = 0; i < decided; ++i) {
        ledger.record(where, i < failures.size() ? ValidationFailure{failures[i]} : std::nullopt);
    }
}

ShiftSystem shift(std::vector<std::string> rows)
{
    return ShiftSystem::make(ShiftSystem::default_alphabet(rows.size()), rows);
}

// ---- 1 ----------------------------------------------------------------------------------

Outcome oracle_equivalence()
{
    Outcome out;
    std::size_t maps = 0;
    for (std::size_t n : {4u, 5u}) {
        for (const auto& table : testsupport::all_maps(n)) {
            ++maps;
            FiniteSystem sys = FiniteSystem::discrete(table);
            for (auto p : all_properties) {
                Verdict fast = check_property(sys, p);
                Verdict slow = brute_force_oracle(sys, p);
                if (fast.status() != slow.status()) {
                    std::ostringstream msg;
                    msg << to_string(p) << " on map";
                    for (auto x : table) {
                        msg << ' ' << x;
                    }
                    msg << ": checker " << to_string(fast.status()) << ", oracle " << to_string(slow.status());
                    out.fail(msg.str());
                }
                note_verdict("oracle-equivalence", sys, p, fast);
                note_verdict("oracle-equivalence/oracle", sys, p, slow);
            }
        }
    }
    if (out.ok) {
        out.detail = std::to_string(maps) + " maps x 6 properties";
    }
    return out;
}

// ---- 2 ----------------------------------------------------------------------------------

Outcome metric_suite()
{
    Outcome out;
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<std::size_t> size(1, 10);
    std::size_t triples = 0;
    for (int trial = 0; trial < 200 && out.ok; ++trial) {
        const std::size_t n = size(rng);
        auto table = testsupport::random_metric(rng, n);
        if (!check_metric_axioms(table).ok()) {
            out.fail("generator produced a non-metric");
            break;
        }
        auto space = FinitePointSpace::make({}, table);
        // All nonempty subsets up to 6 points; a fixed-seed sample of 63 beyond.
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        std::vector<std::uint64_t> sets;
        if (n <= 6) {
            for (std::uint64_t m = 1; m <= full; ++m) {
                sets.push_back(m);
            }
        } else {
            std::uniform_int_distribution<std::uint64_t> pick(1, full);
            while (sets.size() < 63) {
                sets.push_back(pick(rng));
            }
        }
        const std::size_t k = sets.size();
        std::vector<Rational> d(k * k);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < k; ++j) {
                d[i * k + j] =
                    hausdorff_distance(ClosedSet::from_mask(n, sets[i]), ClosedSet::from_mask(n, sets[j]), space);
            }
        }
        // Exact integers on a common denominator keep the triangle loop cheap.
        Integer scale = 1;
        for (const auto& x : d) {
            scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(x));
        }
        std::vector<std::int64_t> di(k * k);
        for (std::size_t i = 0; i < d.size(); ++i) {
            Rational scaled = d[i] * scale;
            if (boost::multiprecision::denominator(scaled) != 1) {
                out.fail("common denominator is not exact");
            }
            di[i] = boost::multiprecision::numerator(scaled).convert_to<std::int64_t>();
        }
        for (std::size_t i = 0; i < k && out.ok; ++i) {
            for (std::size_t j = 0; j < k && out.ok; ++j) {
                const Rational& dij = d[i * k + j];
                if ((dij == 0) != (sets[i] == sets[j])) {
                    out.fail("identity/positivity fails in trial " + std::to_string(trial));
                }
                if (dij != d[j * k + i]) {
                    out.fail("symmetry fails in trial " + std::to_string(trial));
                }
                if (i < 8 && dij != testsupport::naive_hausdorff(table, sets[i], sets[j])) {
                    out.fail("distance differs from direct max-min in trial " + std::to_string(trial));
                }
                for (std::size_t l = 0; l < k; ++l) {
                    ++triples;
                    if (di[i * k + l] > di[i * k + j] + di[j * k + l]) {
                        out.fail("triangle fails in trial " + std::to_string(trial));
                        break;
                    }
                }
            }
        }
    }
    if (out.ok) {
        out.detail = "200 spaces, " + std::to_string(triples) + " triangle triples";
    }
    return out;
}

// ---- 3 ----------------------------------------------------------------------------------

struct BatteryCase {
    std::string name;
    AnySystem system;
    Status expected;
};

std::vector<BatteryCase> harness_battery()
{
    return {
        {"singleton", FiniteSystem::discrete({0}), Status::proved},
        {"identity-2", FiniteSystem::discrete({0, 1}), Status::refuted},
        {"cycle-4", FiniteSystem::discrete({1, 2, 3, 0}), Status::refuted},
        {"1->2->2", FiniteSystem::discrete({1, 1}), Status::refuted},
        {"full-2", ShiftSystem::full(2), Status::proved},
        {"full-3", ShiftSystem::full(3), Status::proved},
        {"golden-mean", shift({"11", "10"}), Status::proved},
        {"period-2", shift({"01", "10"}), Status::refuted},
        {"primitive", shift({"01", "11"}), Status::proved},
    };
}

Outcome theorem_harness()
{
    Outcome out;
    std::size_t decided = 0;
    const Budgets b;
    for (const auto& c : harness_battery()) {
        for (const auto& r : run_harness(c.system, b)) {
            note_report("harness/" + c.name, c.system, r, b);
            if (r.agreement == Agreement::disagree) {
                out.fail(c.name + " " + r.name + ": decided conditions disagree");
            }
            for (const auto& cond : r.conditions) {
                if (!cond.verdict.decided()) {
                    continue;
                }
                ++decided;
                if (cond.verdict.status() != c.expected) {
                    out.fail(c.name + " " + r.name + " " + cond.label + " is " +
                             std::string(to_string(cond.verdict.status())));
                }
            }
        }
    }
    if (out.ok) {
        out.detail = "9 systems, " + std::to_string(decided) + " decided conditions";
    }
    return out;
}

// ---- 4 ----------------------------------------------------------------------------------

Outcome hyperspace_exactness(const BatteryConfig& config)
{
    Outcome out;
    std::vector<std::pair<std::string, FiniteSystem>> systems;
    for (const auto& c : harness_battery()) {
        if (const auto* fs = std::get_if<FiniteSystem>(&c.system)) {
            systems.emplace_back(c.name, *fs);
        }
    }
    for (const auto& s : config.systems) {
        if (const auto* fs = std::get_if<FiniteSystem>(&s.system); fs && fs->size() <= 10) {
            systems.emplace_back(s.id, *fs);
        }
    }
    std::size_t pairs = 0;
    for (const auto& [name, sys] : systems) {
        auto h = powerset_hyperspace(sys, 10);
        const std::size_t n = sys.size();
        if (h.size() != (std::size_t{1} << n) - 1) {
            out.fail(name + ": wrong state count");
            continue;
        }
        for (PointIndex s = 0; s < h.size(); ++s) {
            ClosedSet c = h.state(s);
            ClosedSet pointwise = ClosedSet::of(n, {sys.map()(c.members().front())});
            for (auto x : c.members()) {
                pointwise = pointwise.unite(ClosedSet::of(n, {sys.map()(x)}));
            }
            if (h.state(h.dynamics()(s)) != pointwise || induced_image(c, sys) != pointwise) {
                out.fail(name + ": induced map differs from pointwise image at " + h.state_name(s));
            }
            for (PointIndex t = 0; t < h.size(); ++t) {
                ++pairs;
                if (h.distance(s, t) != hausdorff_distance(c, h.state(t), sys.space())) {
                    out.fail(name + ": metric differs at " + h.state_name(s) + ", " + h.state_name(t));
                }
            }
        }
    }
    if (out.ok) {
        out.detail = std::to_string(systems.size()) + " finite systems, " + std::to_string(pairs) + " state pairs";
    }
    return out;
}

// ---- 5 ----------------------------------------------------------------------------------

Outcome proof_pipeline()
{
    Outcome out;
    std::size_t opens = 0;
    for (const auto& [name, sft] : {std::pair{std::string("full-2"), ShiftSystem::full(2)},
                                    std::pair{std::string("golden-mean"), shift({"11", "10"})}}) {
        for (std::uint32_t level = 1; level <= 3; ++level) {
            const auto words = allowed_words(sft, level);
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << words.size()); ++mask) {
                ++opens;
                std::vector<PeriodicSetWitness<PeriodicWord>> parts;
                std::vector<Word> cells;
                std::uint64_t product = 1;
                for (std::size_t i = 0; i < words.size(); ++i) {
                    if (mask >> i & 1) {
                        PeriodicWord p = find_periodic_point_in_cylinder(sft, words[i]);
                        product *= p.period();
                        parts.push_back({{p}, p.period()});
                        cells.push_back(words[i]);
                    }
                }
                auto z = combine_witnesses(sft, parts);
                bool inside = true;
                for (const auto& p : z.points) {
                    inside = inside && std::any_of(cells.begin(), cells.end(),
                                                   [&](const Word& u) { return p.in_cylinder(u); });
                }
                for (const auto& u : cells) {
                    inside = inside && std::any_of(z.points.begin(), z.points.end(),
                                                   [&](const PeriodicWord& p) { return p.in_cylinder(u); });
                }
                if (!is_periodic_set(sft, z) || !inside || z.k != product) {
                    out.fail(name + " level " + std::to_string(level) + " open " + std::to_string(mask));
                }
            }
            // The same witnesses as a checker certificate, validated on their own.
            Verdict v = vietoris_periodic_dense_bounded(sft, level);
            ledger.record("pipeline/" + name, validate_hyperspace(sft, Property::dense_periodic, v));
        }
    }
    if (out.ok) {
        out.detail = std::to_string(opens) + " basic opens";
    }
    return out;
}

// ---- 6 ----------------------------------------------------------------------------------

Outcome tent_exactness()
{
    Outcome out;
    const PLSystem tent = PLSystem::tent();
    for (std::uint32_t m = 1; m <= 6; ++m) {
        for (std::uint64_t j = 0; j < (std::uint64_t{1} << m); ++j) {
            Interval cell = dyadic_cell(m, j);
            for (std::uint64_t step = 1; step <= m; ++step) {
                cell = pl_image_of_interval(tent, cell).as_interval();
                if ((cell == unit_interval()) != (step == m)) {
                    out.fail("cell " + std::to_string(j) + " at depth " + std::to_string(m) + " covers at step " +
                             std::to_string(step));
                }
            }
        }
    }
    Budgets b;
    b.depth = 3;
    auto r = check_corollary(tent, b);
    note_report("tent/corollary", tent, r, b);
    for (const auto& c : r.conditions) {
        if (c.verdict.status() != Status::proved || c.verdict.resolution() != 3) {
            out.fail("corollary side " + c.label + " is " + c.verdict.label());
        }
    }
    for (auto p : all_properties) {
        note_verdict("tent", tent, p, check_property(tent, p, b));
    }
    if (out.ok) {
        out.detail = "depths 1..6, corollary " + r.conditions[0].verdict.label() + " / " + r.conditions[1].verdict.label();
    }
    return out;
}

// ---- 7 ----------------------------------------------------------------------------------

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string machine_report;

Outcome determinism(const std::string& cli, const std::string& config)
{
    Outcome out;
    std::string texts[2];
    for (int run = 0; run < 2; ++run) {
        const std::string path = "acceptance_report_" + std::to_string(run) + ".jsonl";
        const std::string cmd = "\"" + cli + "\" verify-theorems --config \"" + config +
                                "\" --format machine --output " + path;
        const int rc = std::system(cmd.c_str());
        if (rc != 0) {
            out.fail("verify-theorems exited with status " + std::to_string(rc));
            return out;
        }
        texts[run] = slurp(path);
    }
    if (texts[0].empty() || texts[0] != texts[1]) {
        out.fail("reports differ or are empty");
    } else {
        out.detail = std::to_string(texts[0].size()) + " identical bytes";
        machine_report = texts[0];
    }
    return out;
}

// ---- 8 ----------------------------------------------------------------------------------

Outcome witness_revalidation(const BatteryConfig& config)
{
    Outcome out;
    if (!machine_report.empty()) {
        // Certificates that went through JSON, parsed back and re-checked.
        std::size_t records = 0;
        std::istringstream in(machine_report);
        for (std::string line; std::getline(in, line);) {
            records += line.find("\"status\":\"proved\"") != std::string::npos ||
                       line.find("\"status\":\"refuted\"") != std::string::npos;
        }
        auto failures = revalidate_machine_output(config, machine_report);
        ledger.checked += records;
        ledger.failures.insert(ledger.failures.end(), failures.begin(), failures.end());
    } else {
        out.fail("no machine report to re-read (criterion 7 failed)");
    }
    if (!ledger.failures.empty()) {
        out.fail(std::to_string(ledger.failures.size()) + " of " + std::to_string(ledger.checked) +
                 " certificates rejected; first: " + ledger.failures.front());
    } else if (out.ok) {
        out.detail = std::to_string(ledger.checked) + " certificates re-validated";
    }
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    if (argc != 3) {
        std::cerr << "usage: acceptance <hypercheck-cli> <battery-config>\n";
        return 1;
    }
    const BatteryConfig config = parse_config_text(slurp(argv[2]));

    struct Criterion {
        int id;
        std::string name;
        double limit_seconds;  // 0: no limit stated
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "oracle equivalence on all maps of 4 and 5 points", 30, oracle_equivalence},
        {2, "Hausdorff metric axioms on 200 random spaces", 5, metric_suite},
        {3, "equivalence harness battery", 60, theorem_harness},
        {4, "powerset hyperspace construction", 10, [&] { return hyperspace_exactness(config); }},
        {5, "periodic-set pipeline for shifts, levels 1-3", 30, proof_pipeline},
        {6, "tent map exactness", 10, tent_exactness},
        {7, "byte-identical verify-theorems reports", 0, [&] { return determinism(argv[1], argv[2]); }},
        {8, "witness re-validation", 0, [&] { return witness_revalidation(config); }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0 && secs > c.limit_seconds) {
            o.fail("took " + std::to_string(secs) + " s, limit " + std::to_string(c.limit_seconds) + " s");
        }
        failed += o.ok ? 0 : 1;
        std::printf("%s [%d] %s (%.2f s): %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name.c_str(), secs, o.detail.c_str());
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
