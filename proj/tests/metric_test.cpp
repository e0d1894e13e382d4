#include <random>

#include <gtest/gtest.h>

#include "hypercheck/metric.hpp"
#include "support.hpp"

using namespace hypercheck;

namespace {

DistanceTable line(std::initializer_list<int> coords)
{
    std::vector<int> c(coords);
    DistanceTable d(c.size(), std::vector<Rational>(c.size()));
    for (std::size_t i = 0; i < c.size(); ++i) {
        for (std::size_t j = 0; j < c.size(); ++j) {
            d[i][j] = Rational(std::abs(c[i] - c[j]));
        }
    }
    return d;
}

} // namespace

TEST(MetricAxioms, OnePointSpacePasses)
{
    EXPECT_TRUE(check_metric_axioms({{Rational(0)}}).ok());
}

TEST(MetricAxioms, PointsOnALinePass)
{
    EXPECT_TRUE(check_metric_axioms(line({0, 1, 3})).ok());
}

TEST(MetricAxioms, TriangleViolationNamesTheTriple)
{
    DistanceTable d{{0, 5, 10}, {5, 0, 1}, {10, 1, 0}};
    auto r = check_metric_axioms(d);
    EXPECT_EQ(r.outcome, MetricReport::Outcome::violation);
    EXPECT_EQ(r.axiom, "triangle");
    EXPECT_EQ(r.points, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(MetricAxioms, MalformedTablesAreNotViolations)
{
    EXPECT_EQ(check_metric_axioms({}).outcome, MetricReport::Outcome::malformed);
    EXPECT_EQ(check_metric_axioms({{0, 1}, {1}}).outcome, MetricReport::Outcome::malformed);
    EXPECT_EQ(check_metric_axioms({{0, -1}, {-1, 0}}).outcome, MetricReport::Outcome::malformed);
}

TEST(MetricAxioms, EachAxiomIsReported)
{
    EXPECT_EQ(check_metric_axioms({{1}}).axiom, "identity");
    EXPECT_EQ(check_metric_axioms({{0, 0}, {0, 0}}).axiom, "positivity");
    EXPECT_EQ(check_metric_axioms({{0, 1}, {2, 0}}).axiom, "symmetry");
}

TEST(PointSpace, RejectsNonMetricsAndKeepsExactDistances)
{
    EXPECT_THROW(FinitePointSpace::make({}, {{0, 5, 10}, {5, 0, 1}, {10, 1, 0}}), InvalidInput);
    auto s = FinitePointSpace::make({"a", "b", "c"}, {{0, Rational(1, 3), Rational(1, 2)},
                                                      {Rational(1, 3), 0, Rational(1, 3)},
                                                      {Rational(1, 2), Rational(1, 3), 0}});
    EXPECT_EQ(s.distance(0, 2), Rational(1, 2));
    EXPECT_EQ(s.levels().size(), 3u);
    EXPECT_EQ(s.name(1), "b");
}

TEST(Hausdorff, Examples)
{
    auto space = FinitePointSpace::make({}, line({0, 1, 2}));
    auto p = ClosedSet::of(3, {0});
    auto q = ClosedSet::of(3, {2});
    EXPECT_EQ(hausdorff_distance(p, p, space), Rational(0));
    EXPECT_EQ(hausdorff_distance(p, q, space), Rational(2));
    EXPECT_EQ(hausdorff_distance(ClosedSet::of(3, {0, 1, 2}), ClosedSet::of(3, {0, 2}), space), Rational(1));
}

TEST(Hausdorff, EmptySetsAndForeignSetsAreRejected)
{
    auto space = FinitePointSpace::discrete(3);
    EXPECT_THROW(ClosedSet::of(3, std::vector<PointIndex>{}), InvalidInput);
    EXPECT_THROW(hausdorff_distance(ClosedSet::of(3, {0}), ClosedSet::of(4, {0}), space), InvalidInput);
}

TEST(Hausdorff, MatchesDirectMaxMinOnRandomSpaces)
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 1 + trial % 6;
        auto table = testsupport::random_metric(rng, n);
        auto space = FinitePointSpace::make({}, table);
        const std::uint64_t full = (std::uint64_t{1} << n) - 1;
        for (std::uint64_t a = 1; a <= full; ++a) {
            for (std::uint64_t b = 1; b <= full; ++b) {
                ASSERT_EQ(hausdorff_distance(ClosedSet::from_mask(n, a), ClosedSet::from_mask(n, b), space),
                          testsupport::naive_hausdorff(table, a, b));
            }
        }
    }
}

TEST(Hausdorff, SingletonsReduceToTheBaseMetric)
{
    std::mt19937_64 rng(12);
    auto table = testsupport::random_metric(rng, 7);
    auto space = FinitePointSpace::make({}, table);
    for (PointIndex p = 0; p < 7; ++p) {
        for (PointIndex q = 0; q < 7; ++q) {
            EXPECT_EQ(hausdorff_distance(ClosedSet::of(7, {p}), ClosedSet::of(7, {q}), space), table[p][q]);
        }
    }
}

TEST(Vietoris, Membership)
{
    auto a = ClosedSet::of(2, {0});
    auto ab = ClosedSet::of(2, {0, 1});
    auto b = ClosedSet::of(2, {1});
    EXPECT_TRUE(vietoris_contains(a, VietorisOpen::make({ab})));
    EXPECT_TRUE(vietoris_contains(ab, VietorisOpen::make({a, b})));
    EXPECT_FALSE(vietoris_contains(a, VietorisOpen::make({a, b})));
    EXPECT_THROW(VietorisOpen::make({}), InvalidInput);
}
