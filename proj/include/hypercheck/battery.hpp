#pragma once

// Batch runs: config ingestion, check selection, report records, and the
// human / machine renderings.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hypercheck/error.hpp"
#include "hypercheck/metric.hpp"
#include "hypercheck/pl_system.hpp"
#include "hypercheck/properties.hpp"
#include "hypercheck/serialize.hpp"
#include "hypercheck/shift_system.hpp"
#include "hypercheck/theorems.hpp"
#include "hypercheck/validate.hpp"

namespace hypercheck {

inline constexpr std::uint64_t default_seed = 20240601;

struct SystemEntry {
    std::string id;
    std::string kind;  // finite | shift | pl
    AnySystem system;
};

struct BatteryConfig {
    std::uint64_t seed = default_seed;
    Budgets budgets;
    std::optional<std::vector<std::string>> checks;  // absent: verb default
    std::string output;
    std::vector<SystemEntry> systems;
};

inline const std::vector<std::string>& harness_checks()
{
    static const std::vector<std::string> names{"theorem-main", "lemma-wm", "lemma-exact", "corollary"};
    return names;
}

inline bool is_harness_check(const std::string& name)
{
    const auto& h = harness_checks();
    return std::find(h.begin(), h.end(), name) != h.end();
}

inline bool is_known_check(const std::string& name)
{
    if (name == "classify" || is_harness_check(name)) {
        return true;
    }
    for (auto p : all_properties) {
        if (to_string(p) == name) {
            return true;
        }
    }
    return false;
}

// ---- config parsing --------------------------------------------------------------

namespace detail {

template <class T>
T get_field(const Json& j, const char* key, const std::string& where)
{
    if (!j.contains(key)) {
        throw InvalidInput(where + ": missing key '" + key + "'");
    }
    try {
        return j.at(key).get<T>();
    } catch (const Json::exception&) {
        throw InvalidInput(where + ": key '" + key + "' has the wrong type");
    }
}

inline FiniteSystem random_finite(std::size_t n, std::mt19937_64& rng)
{
    std::uniform_int_distribution<PointIndex> pick(0, static_cast<PointIndex>(n - 1));
    std::vector<PointIndex> table(n);
    for (auto& t : table) {
        t = pick(rng);
    }
    return FiniteSystem::discrete(std::move(table));
}

inline ShiftSystem random_shift(std::size_t m, std::mt19937_64& rng)
{
    std::bernoulli_distribution bit(0.5);
    for (;;) {
        std::vector<std::vector<int>> rows(m, std::vector<int>(m));
        for (auto& r : rows) {
            for (auto& x : r) {
                x = bit(rng) ? 1 : 0;
            }
        }
        try {
            return ShiftSystem::make(ShiftSystem::default_alphabet(m), rows);
        } catch (const InvalidInput&) {
            // empty after trimming; draw again
        }
    }
}

inline SystemEntry parse_system(const Json& j, std::size_t index, std::mt19937_64& rng)
{
    const std::string where = "systems[" + std::to_string(index) + "]";
    if (!j.is_object()) {
        throw InvalidInput(where + ": expected an object");
    }
    SystemEntry e{j.value("id", "system-" + std::to_string(index)), get_field<std::string>(j, "kind", where),
                  FiniteSystem::discrete({0})};
    const std::string w = where + " (" + e.id + ")";
    if (e.kind == "finite") {
        if (j.contains("random_points")) {
            auto n = get_field<std::size_t>(j, "random_points", w);
            if (n == 0) {
                throw InvalidInput(w + ": random_points must be positive");
            }
            e.system = random_finite(n, rng);
            return e;
        }
        auto table = get_field<std::vector<std::int64_t>>(j, "map", w);
        std::vector<std::string> names;
        if (j.contains("points")) {
            names = get_field<std::vector<std::string>>(j, "points", w);
        }
        FinitePointSpace space = FinitePointSpace::discrete(table.size());
        if (j.contains("metric")) {
            DistanceTable dist;
            for (const auto& row : get_field<std::vector<std::vector<std::string>>>(j, "metric", w)) {
                std::vector<Rational> r;
                for (const auto& cell : row) {
                    r.push_back(parse_rational(cell));
                }
                dist.push_back(std::move(r));
            }
            space = FinitePointSpace::make(std::move(names), dist);
        } else if (!names.empty()) {
            DistanceTable dist(names.size(), std::vector<Rational>(names.size(), Rational(1)));
            for (std::size_t i = 0; i < names.size(); ++i) {
                dist[i][i] = 0;
            }
            space = FinitePointSpace::make(std::move(names), dist);
        }
        e.system = make_finite_system(std::move(space), table);
    } else if (e.kind == "shift") {
        if (j.contains("random_symbols")) {
            auto m = get_field<std::size_t>(j, "random_symbols", w);
            if (m == 0 || m > max_alphabet) {
                throw InvalidInput(w + ": random_symbols out of range");
            }
            e.system = random_shift(m, rng);
            return e;
        }
        auto rows = get_field<std::vector<std::string>>(j, "matrix", w);
        auto alphabet = j.contains("alphabet") ? get_field<std::vector<std::string>>(j, "alphabet", w)
                                               : ShiftSystem::default_alphabet(rows.size());
        e.system = ShiftSystem::make(std::move(alphabet), rows);
    } else if (e.kind == "pl") {
        std::vector<Rational> bps;
        std::vector<Rational> vals;
        for (const auto& s : get_field<std::vector<std::string>>(j, "breakpoints", w)) {
            bps.push_back(parse_rational(s));
        }
        for (const auto& s : get_field<std::vector<std::string>>(j, "values", w)) {
            vals.push_back(parse_rational(s));
        }
        e.system = PLSystem::make(std::move(bps), std::move(vals));
    } else {
        throw InvalidInput(w + ": unknown kind '" + e.kind + "' (expected finite, shift or pl)");
    }
    return e;
}

} // namespace detail

inline BatteryConfig parse_config(const Json& j)
{
    if (!j.is_object()) {
        throw InvalidInput("config must be a JSON object");
    }
    BatteryConfig c;
    c.seed = j.value("seed", default_seed);
    if (j.contains("budgets")) {
        const auto& b = j.at("budgets");
        auto positive = [&](const char* key, auto fallback) {
            using T = decltype(fallback);
            if (!b.contains(key)) {
                return fallback;
            }
            auto v = detail::get_field<std::int64_t>(b, key, "budgets");
            if (v <= 0) {
                throw InvalidInput(std::string("budgets: '") + key + "' must be positive");
            }
            return static_cast<T>(v);
        };
        c.budgets.level = positive("level", c.budgets.level);
        c.budgets.horizon = positive("horizon", c.budgets.horizon);
        c.budgets.k_max = positive("kmax", c.budgets.k_max);
        c.budgets.n_max = positive("nmax", c.budgets.n_max);
        c.budgets.powerset_cap = positive("cap", c.budgets.powerset_cap);
        c.budgets.depth = positive("depth", c.budgets.depth);
    }
    if (j.contains("checks")) {
        auto checks = detail::get_field<std::vector<std::string>>(j, "checks", "config");
        for (const auto& name : checks) {
            if (!is_known_check(name)) {
                throw InvalidInput("unknown check '" + name + "'");
            }
        }
        c.checks = std::move(checks);
    }
    c.output = j.value("output", std::string{});
    const auto systems = j.contains("systems") ? j.at("systems") : Json::array();
    if (!systems.is_array() || systems.empty()) {
        throw InvalidInput("config lists no systems");
    }
    std::mt19937_64 rng(c.seed);
    for (std::size_t i = 0; i < systems.size(); ++i) {
        c.systems.push_back(detail::parse_system(systems[i], i, rng));
    }
    for (std::size_t i = 0; i < c.systems.size(); ++i) {
        for (std::size_t k = 0; k < i; ++k) {
            if (c.systems[i].id == c.systems[k].id) {
                throw InvalidInput("duplicate system id '" + c.systems[i].id + "'");
            }
        }
    }
    return c;
}

inline BatteryConfig parse_config_text(const std::string& text)
{
    try {
        return parse_config(Json::parse(text));
    } catch (const Json::parse_error& e) {
        throw InvalidInput(std::string("config is not valid JSON: ") + e.what());
    }
}

// ---- running -------------------------------------------------------------------------

struct Record {
    std::string system;
    std::string check;
    std::string subject = "X";
    std::optional<Verdict> verdict;             // check records
    std::optional<EquivalenceReport> harness;   // harness records
    std::vector<std::string> validation_failures;
    double seconds = 0;
};

struct Report {
    std::uint64_t seed = default_seed;
    Budgets budgets;
    std::vector<std::string> checks;
    std::vector<std::string> system_ids;
    std::vector<Record> records;

    std::size_t unknown_count() const
    {
        std::size_t n = 0;
        for (const auto& r : records) {
            if (r.verdict && r.verdict->status() == Status::unknown) {
                ++n;
            }
            if (r.harness) {
                for (const auto& c : r.harness->conditions) {
                    n += c.verdict.status() == Status::unknown ? 1 : 0;
                }
            }
        }
        return n;
    }

    std::size_t disagreement_count() const
    {
        std::size_t n = 0;
        for (const auto& r : records) {
            n += r.harness && r.harness->agreement == Agreement::disagree ? 1 : 0;
        }
        return n;
    }

    std::size_t validation_failure_count() const
    {
        std::size_t n = 0;
        for (const auto& r : records) {
            n += r.validation_failures.size();
        }
        return n;
    }

    bool consistent() const { return disagreement_count() == 0 && validation_failure_count() == 0; }
};

namespace detail {

inline Record timed(std::string system, std::string check, const std::function<void(Record&)>& body)
{
    Record r;
    r.system = std::move(system);
    r.check = std::move(check);
    const auto start = std::chrono::steady_clock::now();
    body(r);
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return r;
}

inline void add_property_record(Report& report, const SystemEntry& s, Property p, const Budgets& b)
{
    report.records.push_back(timed(s.id, std::string(to_string(p)), [&](Record& r) {
        r.verdict = check_property(s.system, p, b);
        if (auto f = validate(s.system, p, *r.verdict)) {
            r.validation_failures.push_back(*f);
        }
    }));
}

} // namespace detail

/// Runs the selected checks on every system, in config order. "classify"
/// expands to the six properties plus the Devaney, F-system and HY-system
/// composites (validated through their components).
inline Report run_battery(const BatteryConfig& config, const std::vector<std::string>& checks)
{
    Report report{config.seed, config.budgets, checks, {}, {}};
    for (const auto& s : config.systems) {
        report.system_ids.push_back(s.id);
    }
    for (const auto& s : config.systems) {
        for (const auto& check : checks) {
            if (check == "classify") {
                std::optional<Classification> found;
                auto rec = detail::timed(s.id, "classify", [&](Record&) { found = classify(s.system, config.budgets); });
                const Classification& cls = *found;
                for (std::size_t i = 0; i < all_properties.size(); ++i) {
                    Record r{s.id, cls.atomic[i].name, "X", cls.atomic[i].verdict, {}, {}, rec.seconds};
                    if (auto f = validate(s.system, all_properties[i], *r.verdict)) {
                        r.validation_failures.push_back(*f);
                    }
                    report.records.push_back(std::move(r));
                }
                report.records.push_back({s.id, "devaney", "X", cls.devaney, {}, {}, 0});
                report.records.push_back({s.id, "f-system", "X", cls.f_system, {}, {}, 0});
                report.records.push_back({s.id, "hy-system", "X", cls.hy_system, {}, {}, 0});
            } else if (is_harness_check(check)) {
                report.records.push_back(detail::timed(s.id, check, [&](Record& r) {
                    if (check == "theorem-main") {
                        r.harness = check_theorem_main(s.system, config.budgets);
                    } else if (check == "lemma-wm") {
                        r.harness = check_lemma_wm(s.system, config.budgets);
                    } else if (check == "lemma-exact") {
                        r.harness = check_lemma_exact(s.system, config.budgets);
                    } else {
                        r.harness = check_corollary(s.system, config.budgets);
                    }
                    r.validation_failures = validate_report(s.system, *r.harness, config.budgets);
                }));
            } else {
                detail::add_property_record(report, s, parse_property(check), config.budgets);
            }
        }
    }
    return report;
}

/// Constructed witnesses only: small periodic sets in X and periodic sets of
/// K(X) for every basic open the model supports.
inline Report run_witnesses(const BatteryConfig& config)
{
    Report report{config.seed, config.budgets, {"witness"}, {}, {}};
    for (const auto& s : config.systems) {
        report.system_ids.push_back(s.id);
    }
    for (const auto& s : config.systems) {
        detail::add_property_record(report, s, Property::dense_small_periodic, config.budgets);
        report.records.back().check = "witness:dense-small-periodic";
        if (const auto* sft = std::get_if<ShiftSystem>(&s.system)) {
            const std::uint32_t level = std::max<std::uint32_t>(2, config.budgets.level);
            report.records.push_back(detail::timed(s.id, "witness:periodic-sets", [&](Record& r) {
                r.subject = "K(X)";
                r.verdict = detail::guarded(Method::graph_reduction,
                                            [&] { return vietoris_periodic_dense_bounded(*sft, level); });
                if (auto f = validate_hyperspace(*sft, Property::dense_periodic, *r.verdict)) {
                    r.validation_failures.push_back(*f);
                }
            }));
        } else if (std::holds_alternative<FiniteSystem>(s.system)) {
            report.records.push_back(detail::timed(s.id, "witness:periodic-sets", [&](Record& r) {
                r.subject = "K(X)";
                r.harness = check_theorem_main(s.system, config.budgets);
                r.validation_failures = validate_report(s.system, *r.harness, config.budgets);
            }));
        }
    }
    return report;
}

// ---- rendering -------------------------------------------------------------------------

namespace detail {

inline Json budgets_json(const Budgets& b)
{
    return Json{{"level", b.level}, {"horizon", b.horizon}, {"kmax", b.k_max},
                {"nmax", b.n_max},  {"cap", b.powerset_cap}, {"depth", b.depth}};
}

inline Json component_json(const Component& c)
{
    return Json{{"name", c.name},
                {"subject", std::string(to_string(c.subject))},
                {"property", std::string(to_string(c.property))},
                {"method", c.method},
                {"role", std::string(to_string(c.role))},
                {"verdict", verdict_to_json(c.verdict)}};
}

inline Json harness_json(const EquivalenceReport& r)
{
    Json conditions = Json::array();
    for (const auto& c : r.conditions) {
        Json comps = Json::array();
        for (const auto& comp : c.components) {
            comps.push_back(component_json(comp));
        }
        conditions.push_back(Json{{"label", c.label}, {"verdict", verdict_to_json(c.verdict)}, {"components", comps}});
    }
    Json j{{"agreement", std::string(to_string(r.agreement))},
           {"hypothesis", r.hypothesis},
           {"conditions", conditions},
           {"notes", r.notes}};
    if (r.construction) {
        j["construction"] = *r.construction;
    }
    return j;
}

} // namespace detail

inline Json record_json(const Record& r)
{
    Json j{{"system", r.system}, {"check", r.check}, {"subject", r.subject}};
    if (r.verdict) {
        j["record"] = "check";
        j.update(verdict_to_json(*r.verdict));
    } else {
        j["record"] = "harness";
        j.update(detail::harness_json(*r.harness));
    }
    if (!r.validation_failures.empty()) {
        j["validation_failures"] = r.validation_failures;
    }
    return j;
}

/// One JSON object per line: a header, one record per check, and a summary
/// when any record exists. Nothing time-dependent is written.
inline std::string emit_machine(const Report& report)
{
    std::ostringstream out;
    Json header{{"record", "header"},  {"tool", "hypercheck"},       {"format", 1},
                {"seed", report.seed}, {"budgets", detail::budgets_json(report.budgets)},
                {"checks", report.checks}, {"systems", report.system_ids}};
    out << header.dump() << '\n';
    for (const auto& r : report.records) {
        out << record_json(r).dump() << '\n';
    }
    if (!report.records.empty()) {
        Json summary{{"record", "summary"},
                     {"consistency", report.consistent() ? "consistent" : "INCONSISTENT"},
                     {"records", report.records.size()},
                     {"unknown", report.unknown_count()},
                     {"disagreements", report.disagreement_count()},
                     {"validation_failures", report.validation_failure_count()}};
        out << summary.dump() << '\n';
    }
    return out.str();
}

inline std::string emit_human(const Report& report)
{
    std::ostringstream out;
    out << "hypercheck  seed " << report.seed << "  level " << report.budgets.level << "  cap "
        << report.budgets.powerset_cap << "  depth " << report.budgets.depth << "\n";
    if (report.records.empty()) {
        return out.str();
    }
    auto row = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d,
                   const std::string& e) {
        out << std::left << std::setw(16) << a << std::setw(34) << b << std::setw(14) << c << std::setw(17) << d << e
            << "\n";
    };
    row("system", "check", "status", "method", "time");
    auto ms = [](double s) {
        std::ostringstream t;
        t << std::fixed << std::setprecision(1) << s * 1000 << " ms";
        return t.str();
    };
    for (const auto& r : report.records) {
        if (r.verdict) {
            row(r.system, r.check, r.verdict->label(), std::string(to_string(r.verdict->method())), ms(r.seconds));
            if (!r.verdict->decided()) {
                out << "    note: " << r.verdict->budget_note() << "\n";
            }
        } else {
            const auto& h = *r.harness;
            row(r.system, r.check, std::string(to_string(h.agreement)), "", ms(r.seconds));
            for (const auto& c : h.conditions) {
                std::string methods;
                for (const auto& comp : c.components) {
                    if (comp.role == Role::primary && methods.find(comp.method) == std::string::npos) {
                        methods += (methods.empty() ? "" : "+") + comp.method;
                    }
                }
                row("", "  " + c.label, c.verdict.label(), methods, "");
            }
            out << "    " << h.hypothesis << "\n";
            for (const auto& n : h.notes) {
                out << "    note: " << n << "\n";
            }
        }
        for (const auto& f : r.validation_failures) {
            out << "    VALIDATION FAILURE: " << f << "\n";
        }
    }
    out << (report.consistent() ? "consistent" : "INCONSISTENT") << ": " << report.records.size() << " records, "
        << report.unknown_count() << " unknown, " << report.disagreement_count() << " disagreements, "
        << report.validation_failure_count() << " validation failures\n";
    return out.str();
}

// ---- re-reading machine output ------------------------------------------------------------

/// Parses machine-format output and re-validates every atomic certificate in
/// it against the config's systems. Returns one message per failure.
inline std::vector<std::string> revalidate_machine_output(const BatteryConfig& config, const std::string& text)
{
    std::vector<std::string> failures;
    auto find_system = [&](const std::string& id) -> const AnySystem* {
        for (const auto& s : config.systems) {
            if (s.id == id) {
                return &s.system;
            }
        }
        return nullptr;
    };
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        Json j = Json::parse(line);
        const auto kind = j.at("record").get<std::string>();
        if (kind != "check" && kind != "harness") {
            continue;
        }
        const AnySystem* sys = find_system(j.at("system").get<std::string>());
        if (!sys) {
            failures.push_back("record names an unknown system");
            continue;
        }
        const auto check = j.at("check").get<std::string>();
        if (kind == "check") {
            Verdict v = verdict_from_json(j);
            if (std::holds_alternative<Composite>(v.certificate())) {
                continue;
            }
            std::string prop = check.rfind("witness:", 0) == 0 ? check.substr(8) : check;
            if (prop == "periodic-sets") {
                const auto* sft = std::get_if<ShiftSystem>(sys);
                if (auto f = sft ? validate_hyperspace(*sft, Property::dense_periodic, v) : ValidationFailure{"?"}) {
                    failures.push_back(check + ": " + *f);
                }
                continue;
            }
            if (auto f = validate(*sys, parse_property(prop), v)) {
                failures.push_back(j.at("system").get<std::string>() + " " + check + ": " + *f);
            }
            continue;
        }
        std::optional<HyperSystem> hyper;
        for (const auto& c : j.at("conditions")) {
            for (const auto& comp : c.at("components")) {
                Verdict v = verdict_from_json(comp.at("verdict"));
                Property p = parse_property(comp.at("property").get<std::string>());
                ValidationFailure f;
                if (comp.at("subject") == "X" || !v.decided()) {
                    f = validate(*sys, p, v);
                } else if (const auto* fs = std::get_if<FiniteSystem>(sys)) {
                    if (!hyper) {
                        hyper.emplace(powerset_hyperspace(*fs, config.budgets.powerset_cap));
                    }
                    f = validate(hyper->dynamics(), p, v);
                } else if (const auto* sft = std::get_if<ShiftSystem>(sys)) {
                    f = validate_hyperspace(*sft, p, v);
                } else {
                    f = "interval-map hyperspace facts must come from X";
                }
                if (f) {
                    failures.push_back(check + " / " + comp.at("name").get<std::string>() + ": " + *f);
                }
            }
        }
        if (j.contains("construction")) {
            auto w = j.at("construction").get<PeriodicSetWitness<PointIndex>>();
            const auto* fs = std::get_if<FiniteSystem>(sys);
            if (!fs || !is_periodic_set(fs->map(), w)) {
                failures.push_back(check + " / construction fails (T_K)^k Z = Z");
            }
        }
    }
    return failures;
}

} // namespace hypercheck
