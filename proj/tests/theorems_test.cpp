#include <random>

#include <gtest/gtest.h>

#include "hypercheck/constructions.hpp"
#include "hypercheck/theorems.hpp"

using namespace hypercheck;

namespace {

ShiftSystem shift(std::vector<std::string> rows)
{
    return ShiftSystem::make(ShiftSystem::default_alphabet(rows.size()), rows);
}

struct Case {
    std::string name;
    AnySystem system;
    Status expected;
};

std::vector<Case> battery()
{
    return {
        {"singleton", FiniteSystem::discrete({0}), Status::proved},
        {"identity-2", FiniteSystem::discrete({0, 1}), Status::refuted},
        {"cycle-4", FiniteSystem::discrete({1, 2, 3, 0}), Status::refuted},
        {"merge", FiniteSystem::discrete({1, 1}), Status::refuted},
        {"full-2", ShiftSystem::full(2), Status::proved},
        {"full-3", ShiftSystem::full(3), Status::proved},
        {"golden-mean", shift({"11", "10"}), Status::proved},
        {"period-2", shift({"01", "10"}), Status::refuted},
        {"primitive", shift({"01", "11"}), Status::proved},
    };
}

} // namespace

// ---- constructions -------------------------------------------------------------------

TEST(UnionClosure, Examples)
{
    auto fixed = powerset_hyperspace(FiniteSystem::discrete({0}));
    auto a = ClosedSet::of(1, {0});
    EXPECT_EQ(union_closure({{a}, 1}, fixed, a).closed, (std::vector<PointIndex>{0}));

    auto swap = powerset_hyperspace(FiniteSystem::discrete({1, 0}));
    auto u = ClosedSet::whole(2);
    auto y = union_closure({{ClosedSet::of(2, {0}), ClosedSet::of(2, {0, 1})}, 2}, swap, u);
    EXPECT_EQ(y.closed, (std::vector<PointIndex>{0, 1}));
    EXPECT_EQ(y.k, 2u);

    auto leak = powerset_hyperspace(FiniteSystem::discrete({1, 1}));
    EXPECT_THROW(union_closure({{ClosedSet::of(2, {0})}, 1}, leak, ClosedSet::of(2, {0})), PreconditionViolation);
}

TEST(PeriodicKernel, Examples)
{
    FiniteMap fixed({0, 0});
    EXPECT_EQ(periodic_kernel(ClosedSet::of(2, {0}), 1, fixed), ClosedSet::of(2, {0}));
    // 1 -> 2, 2 -> 3, 3 -> 2 on points 0, 1, 2.
    FiniteMap m({1, 2, 1});
    EXPECT_EQ(periodic_kernel(ClosedSet::whole(3), 1, m), ClosedSet::of(3, {1, 2}));
    FiniteMap c({1, 2, 0});
    EXPECT_EQ(periodic_kernel(ClosedSet::whole(3), 3, c), ClosedSet::whole(3));
    EXPECT_THROW(periodic_kernel(ClosedSet::of(3, {0}), 1, c), PreconditionViolation);
}

TEST(PeriodicKernel, RandomInvariantSetsShrinkToPeriodicSets)
{
    std::mt19937_64 rng(71);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + trial % 9;
        std::uniform_int_distribution<PointIndex> pick(0, static_cast<PointIndex>(n - 1));
        std::vector<PointIndex> t(n);
        for (auto& x : t) {
            x = pick(rng);
        }
        FiniteMap map(t);
        const std::uint64_t k = 1 + trial % 3;
        // The forward T^k-orbit of a random point is T^k-invariant.
        PointIndex x = pick(rng);
        std::vector<PointIndex> orbit;
        for (PointIndex p = x; std::find(orbit.begin(), orbit.end(), p) == orbit.end(); p = map.iterate(p, k)) {
            orbit.push_back(p);
        }
        auto y = ClosedSet::of(n, orbit);
        auto z = periodic_kernel(y, k, map);
        EXPECT_TRUE(z.is_subset_of(y));
        EXPECT_EQ(ClosedSet::from_bits(map.image(z.bits(), k)), z);
        EXPECT_TRUE(is_periodic_set(map, {z.members(), k}));
    }
}

TEST(CombineWitnesses, Examples)
{
    // A 2-cycle and a 3-cycle on disjoint points.
    FiniteMap map({1, 0, 3, 4, 2});
    PeriodicSetWitness<PointIndex> two{{0, 1}, 2};
    PeriodicSetWitness<PointIndex> three{{2, 3, 4}, 3};
    EXPECT_EQ(combine_witnesses(map, {two}), two);
    auto both = combine_witnesses(map, {two, three});
    EXPECT_EQ(both.k, 6u);
    EXPECT_EQ(both.points.size(), 5u);

    // Periods 2 and 4.
    FiniteMap m2({1, 0, 3, 4, 5, 2});
    PeriodicSetWitness<PointIndex> four{{2, 3, 4, 5}, 4};
    auto product = combine_witnesses(m2, {two, four}, CombineMode::product);
    auto lcm = combine_witnesses(m2, {two, four}, CombineMode::lcm);
    EXPECT_EQ(product.k, 8u);
    EXPECT_EQ(lcm.k, 4u);
    EXPECT_TRUE(is_periodic_set(m2, product));
    EXPECT_TRUE(is_periodic_set(m2, lcm));
    EXPECT_THROW(combine_witnesses(m2, {{{2}, 1}}), PreconditionViolation);
}

TEST(CombineWitnesses, ProductAndLcmAgreeOnRandomPermutations)
{
    std::mt19937_64 rng(72);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 3 + trial % 8;
        std::vector<PointIndex> t(n);
        std::iota(t.begin(), t.end(), 0);
        std::shuffle(t.begin(), t.end(), rng);
        FiniteMap map(t);
        auto cs = cycle_structure(map);
        std::vector<PeriodicSetWitness<PointIndex>> parts;
        for (PointIndex x = 0; x < n; ++x) {
            parts.push_back({{x}, cs.period[x]});
        }
        auto product = combine_witnesses(map, parts, CombineMode::product);
        auto lcm = combine_witnesses(map, parts, CombineMode::lcm);
        EXPECT_EQ(product.points, lcm.points);
        EXPECT_EQ(product.k % lcm.k, 0u);
    }
}

TEST(ShiftPipeline, WitnessesForEveryBasicOpenUpToLevelThree)
{
    for (const auto& sft : {ShiftSystem::full(2), shift({"11", "10"})}) {
        for (std::uint32_t level = 1; level <= 3; ++level) {
            auto words = allowed_words(sft, level);
            for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << words.size()); ++mask) {
                std::vector<PeriodicSetWitness<PeriodicWord>> parts;
                std::uint64_t product = 1;
                std::vector<Word> cells;
                for (std::size_t i = 0; i < words.size(); ++i) {
                    if (mask >> i & 1) {
                        auto p = find_periodic_point_in_cylinder(sft, words[i]);
                        product *= p.period();
                        parts.push_back({{p}, p.period()});
                        cells.push_back(words[i]);
                    }
                }
                auto z = combine_witnesses(sft, parts);
                ASSERT_EQ(z.k, product);
                ASSERT_TRUE(is_periodic_set(sft, z));
                for (const auto& u : cells) {
                    EXPECT_TRUE(std::any_of(z.points.begin(), z.points.end(),
                                            [&](const PeriodicWord& p) { return p.in_cylinder(u); }));
                }
                for (const auto& p : z.points) {
                    EXPECT_TRUE(std::any_of(cells.begin(), cells.end(), [&](const Word& u) { return p.in_cylinder(u); }));
                }
            }
        }
    }
}

// ---- harness -----------------------------------------------------------------------------

TEST(Harness, BatteryOutcomesAgreeAndValidate)
{
    for (const auto& c : battery()) {
        for (const auto& report : run_harness(c.system)) {
            EXPECT_EQ(report.agreement, Agreement::agree) << c.name << " " << report.name;
            for (const auto& cond : report.conditions) {
                EXPECT_EQ(cond.verdict.status(), c.expected) << c.name << " " << report.name << " " << cond.label;
            }
            EXPECT_TRUE(validate_report(c.system, report).empty()) << c.name << " " << report.name;
        }
    }
}

TEST(Harness, TentMapCorollaryIsProvedAtResolution)
{
    Budgets b;
    b.depth = 3;
    auto r = check_corollary(PLSystem::tent(), b);
    EXPECT_EQ(r.agreement, Agreement::agree);
    for (const auto& c : r.conditions) {
        EXPECT_EQ(c.verdict.status(), Status::proved);
        EXPECT_EQ(c.verdict.resolution(), 3u);
    }
    EXPECT_TRUE(validate_report(PLSystem::tent(), r, b).empty());
}

TEST(Harness, FiniteHypothesisIsRecorded)
{
    auto r = check_theorem_main(FiniteSystem::discrete({1, 2, 3, 0}));
    EXPECT_NE(r.hypothesis.find("finite"), std::string::npos);
    EXPECT_EQ(check_theorem_main(ShiftSystem::full(2)).hypothesis, "X is infinite");
}

TEST(Harness, ConstructionIsReturnedForFinitePeriodicSystems)
{
    auto sys = FiniteSystem::discrete({1, 0, 2});
    auto r = check_theorem_main(sys);
    ASSERT_TRUE(r.construction.has_value());
    EXPECT_TRUE(is_periodic_set(sys.map(), *r.construction));
    EXPECT_FALSE(check_theorem_main(FiniteSystem::discrete({1, 1})).construction.has_value());
}

TEST(Harness, CapExceededBecomesUnknown)
{
    Budgets b;
    b.powerset_cap = 3;
    auto r = check_lemma_exact(FiniteSystem::discrete({1, 2, 3, 0}), b);
    EXPECT_EQ(r.conditions[0].verdict.status(), Status::unknown);
    EXPECT_EQ(r.conditions[1].verdict.status(), Status::refuted);
    EXPECT_EQ(r.agreement, Agreement::inconclusive);
}

TEST(Harness, SplitDecisionsAreReportedAsDisagreement)
{
    EquivalenceReport r{"forged", {}, Agreement::inconclusive, {}, {}, {}};
    auto yes = Verdict::proved(Method::exhaustive, CycleCover{{0}});
    auto no = Verdict::refuted(Method::exhaustive, NonPeriodicPoint{0});
    r.conditions.push_back(detail::condition("a", {detail::component("a", Subject::base, Property::transitive, yes)}));
    r.conditions.push_back(detail::condition("b", {detail::component("b", Subject::base, Property::transitive, no)}));
    detail::settle(r);
    EXPECT_EQ(r.agreement, Agreement::disagree);
}

TEST(Harness, ForgedComponentsFailValidation)
{
    auto sys = AnySystem{FiniteSystem::discrete({0, 1})};
    auto r = check_lemma_wm(sys);
    r.conditions[2].components[0].verdict = Verdict::proved(Method::exhaustive, ProductCycleCover{{{0, 0}}});
    EXPECT_FALSE(validate_report(sys, r).empty());
}
