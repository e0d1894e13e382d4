#include <gtest/gtest.h>

#include "hypercheck/battery.hpp"

using namespace hypercheck;

namespace {

BatteryConfig config(const std::string& text) { return parse_config_text(text); }

std::vector<Json> lines(const std::string& text)
{
    std::vector<Json> out;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        out.push_back(Json::parse(line));
    }
    return out;
}

const std::vector<std::string> default_checks{"classify", "theorem-main", "lemma-wm", "lemma-exact", "corollary"};

} // namespace

TEST(Config, RejectsInvalidBatteries)
{
    EXPECT_THROW(config(R"({"systems": []})"), InvalidInput);
    EXPECT_THROW(config(R"({})"), InvalidInput);
    EXPECT_THROW(config(R"({"systems": [{"kind": "torus"}]})"), InvalidInput);
    EXPECT_THROW(config(R"({"systems": [{"kind": "finite", "map": [3]}]})"), InvalidInput);
    EXPECT_THROW(config(R"({"budgets": {"level": 0}, "systems": [{"kind": "finite", "map": [0]}]})"), InvalidInput);
    EXPECT_THROW(config(R"({"checks": ["sensitive"], "systems": [{"kind": "finite", "map": [0]}]})"), InvalidInput);
    EXPECT_THROW(config(R"({"systems": [{"id": "a", "kind": "finite", "map": [0]},
                                        {"id": "a", "kind": "finite", "map": [0]}]})"),
                 InvalidInput);
    EXPECT_THROW(config("not json"), InvalidInput);
    EXPECT_THROW(config(R"({"systems": [{"kind": "finite", "map": [0, 0],
                                         "metric": [["0", "1"], ["2", "0"]]}]})"),
                 InvalidInput);
}

TEST(Config, ParsesEveryKind)
{
    auto c = config(R"({
        "seed": 5,
        "budgets": {"level": 2, "horizon": 40, "kmax": 6, "cap": 10, "depth": 4},
        "systems": [
          {"id": "w", "kind": "finite", "points": ["a", "b"], "metric": [["0", "1/3"], ["1/3", "0"]], "map": [1, 0]},
          {"id": "g", "kind": "shift", "alphabet": ["x", "y"], "matrix": ["11", "10"]},
          {"id": "t", "kind": "pl", "breakpoints": ["0", "1/2", "1"], "values": ["0", "1", "0"]}
        ]})");
    EXPECT_EQ(c.seed, 5u);
    EXPECT_EQ(c.budgets.level, 2u);
    EXPECT_EQ(c.budgets.horizon, 40u);
    EXPECT_EQ(c.budgets.k_max, 6u);
    EXPECT_EQ(c.budgets.powerset_cap, 10u);
    EXPECT_EQ(c.budgets.depth, 4u);
    ASSERT_EQ(c.systems.size(), 3u);
    EXPECT_EQ(std::get<FiniteSystem>(c.systems[0].system).space().distance(0, 1), Rational(1, 3));
    EXPECT_EQ(std::get<ShiftSystem>(c.systems[1].system).alphabet()[1], "y");
    EXPECT_EQ(std::get<PLSystem>(c.systems[2].system).pieces(), 2u);
}

TEST(Config, RandomSystemsFollowTheSeed)
{
    const std::string text = R"({"seed": 9, "systems": [{"kind": "finite", "random_points": 6},
                                                         {"kind": "shift", "random_symbols": 4}]})";
    auto a = config(text);
    auto b = config(text);
    EXPECT_EQ(std::get<FiniteSystem>(a.systems[0].system).map().size(), 6u);
    for (PointIndex x = 0; x < 6; ++x) {
        EXPECT_EQ(std::get<FiniteSystem>(a.systems[0].system).map()(x),
                  std::get<FiniteSystem>(b.systems[0].system).map()(x));
    }
    EXPECT_EQ(std::get<ShiftSystem>(a.systems[1].system).matrix(), std::get<ShiftSystem>(b.systems[1].system).matrix());
}

TEST(Battery, GoldenMeanDefaults)
{
    auto c = config(R"({"systems": [{"id": "g", "kind": "shift", "matrix": ["11", "10"]}]})");
    auto report = run_battery(c, default_checks);
    bool hy = false;
    std::size_t harness = 0;
    for (const auto& r : report.records) {
        if (r.check == "hy-system") {
            hy = r.verdict->status() == Status::proved;
        }
        if (r.harness) {
            ++harness;
            EXPECT_EQ(r.harness->agreement, Agreement::agree) << r.check;
        }
        EXPECT_TRUE(r.validation_failures.empty()) << r.check;
    }
    EXPECT_TRUE(hy);
    EXPECT_EQ(harness, 4u);
    EXPECT_TRUE(report.consistent());
}

TEST(Battery, FourCycle)
{
    auto c = config(R"({"systems": [{"id": "c4", "kind": "finite", "map": [1, 2, 3, 0]}]})");
    auto report = run_battery(c, default_checks);
    for (const auto& r : report.records) {
        if (r.check == "devaney") {
            EXPECT_EQ(r.verdict->status(), Status::proved);
        }
        if (r.check == "hy-system") {
            EXPECT_EQ(r.verdict->status(), Status::refuted);
        }
        if (r.check == "theorem-main") {
            EXPECT_EQ(r.harness->agreement, Agreement::agree);
            for (const auto& cond : r.harness->conditions) {
                EXPECT_EQ(cond.verdict.status(), Status::refuted);
            }
        }
    }
}

TEST(Battery, RecordsFollowConfigOrder)
{
    auto c = config(R"({"systems": [{"id": "b", "kind": "finite", "map": [0]},
                                    {"id": "a", "kind": "shift", "matrix": ["1"]}]})");
    auto report = run_battery(c, {"transitive", "exact"});
    ASSERT_EQ(report.records.size(), 4u);
    EXPECT_EQ(report.records[0].system, "b");
    EXPECT_EQ(report.records[1].check, "exact");
    EXPECT_EQ(report.records[2].system, "a");
}

TEST(Emit, MachineLinesCarryWitnesses)
{
    auto c = config(R"({"systems": [{"id": "s", "kind": "finite", "map": [0]}]})");
    auto out = lines(emit_machine(run_battery(c, {"transitive"})));
    ASSERT_EQ(out.size(), 3u);
    EXPECT_EQ(out[0]["record"], "header");
    EXPECT_EQ(out[1]["status"], "proved");
    EXPECT_EQ(out[1]["system"], "s");
    EXPECT_EQ(out[1]["check"], "transitive");
    EXPECT_EQ(out[1]["method"], "exhaustive");
    EXPECT_EQ(out[1]["witness"]["type"], "cycle_cover");
    EXPECT_EQ(out[2]["consistency"], "consistent");
}

TEST(Emit, EmptySelectionIsHeaderOnly)
{
    auto c = config(R"({"checks": [], "systems": [{"kind": "finite", "map": [0]}]})");
    auto text = emit_machine(run_battery(c, *c.checks));
    auto out = lines(text);
    ASSERT_EQ(out.size(), 1u);
    EXPECT_EQ(out[0]["record"], "header");
}

TEST(Emit, DisagreementMarksTheSummary)
{
    Report report;
    Record r;
    r.system = "x";
    r.check = "forged";
    r.harness = EquivalenceReport{"forged", {}, Agreement::disagree, "X is infinite", {}, {}};
    report.records.push_back(r);
    EXPECT_FALSE(report.consistent());
    auto out = lines(emit_machine(report));
    EXPECT_EQ(out.back()["consistency"], "INCONSISTENT");
    EXPECT_EQ(out.back()["disagreements"], 1);
    EXPECT_NE(emit_human(report).find("INCONSISTENT"), std::string::npos);
}

TEST(Emit, MachineOutputIsStableAndFreeOfTiming)
{
    auto c = config(R"({"systems": [{"kind": "finite", "map": [1, 0]}, {"kind": "shift", "matrix": ["11", "10"]},
                                    {"kind": "pl", "breakpoints": ["0", "1/2", "1"], "values": ["0", "1", "0"]}]})");
    auto a = emit_machine(run_battery(c, default_checks));
    auto b = emit_machine(run_battery(c, default_checks));
    EXPECT_EQ(a, b);
    EXPECT_EQ(a.find("seconds"), std::string::npos);
}

TEST(Emit, HumanTableIsAligned)
{
    auto c = config(R"({"systems": [{"id": "one", "kind": "finite", "map": [0]}]})");
    auto text = emit_human(run_battery(c, {"transitive", "weakly-mixing"}));
    std::istringstream in(text);
    std::string header, row1, row2;
    std::getline(in, header);
    std::getline(in, header);
    std::getline(in, row1);
    std::getline(in, row2);
    EXPECT_EQ(header.find("status"), row1.find("proved"));
    EXPECT_EQ(row1.find("proved"), row2.find("proved"));
}

TEST(RoundTrip, SerializedWitnessesReparseAndRevalidate)
{
    auto c = parse_config_text(R"({"systems": [
        {"id": "swap", "kind": "finite", "map": [1, 0, 2]},
        {"id": "merge", "kind": "finite", "map": [1, 1]},
        {"id": "golden", "kind": "shift", "matrix": ["11", "10"]},
        {"id": "period2", "kind": "shift", "matrix": ["01", "10"]},
        {"id": "reducible", "kind": "shift", "matrix": ["11", "01"]},
        {"id": "tent", "kind": "pl", "breakpoints": ["0", "1/2", "1"], "values": ["0", "1", "0"]}]})");
    auto text = emit_machine(run_battery(c, default_checks));
    EXPECT_TRUE(revalidate_machine_output(c, text).empty());
    auto witnesses = emit_machine(run_witnesses(c));
    EXPECT_TRUE(revalidate_machine_output(c, witnesses).empty());
}

TEST(RoundTrip, TamperedWitnessIsCaught)
{
    auto c = parse_config_text(R"({"systems": [{"id": "c", "kind": "finite", "map": [1, 2, 0]}]})");
    auto out = lines(emit_machine(run_battery(c, {"transitive"})));
    out[1]["witness"]["order"] = Json::array({0, 2, 1});
    std::string tampered;
    for (const auto& j : out) {
        tampered += j.dump() + "\n";
    }
    EXPECT_EQ(revalidate_machine_output(c, tampered).size(), 1u);
}

TEST(RoundTrip, EveryCertificateKindSurvivesJson)
{
    std::vector<Verdict> verdicts{
        Verdict::proved(Method::exhaustive, CycleCover{{0, 1}}),
        Verdict::refuted(Method::exhaustive, Unreachable{2, 0, 1}),
        Verdict::proved(Method::graph_reduction, PeriodicCylinders{2, {{{0, 1}, PeriodicWord{{0, 1}}}}}),
        Verdict::proved(Method::bounded_search, PLCoverTimes{3, {3, 3}}, 3),
        Verdict::unknown(Method::bounded_search, "horizon 4 exhausted", 2),
    };
    for (const auto& v : verdicts) {
        auto back = verdict_from_json(Json::parse(verdict_to_json(v).dump()));
        EXPECT_EQ(verdict_to_json(back), verdict_to_json(v));
    }
    EXPECT_THROW(certificate_from_json(Json{{"type", "mystery"}}), InvalidInput);
}
