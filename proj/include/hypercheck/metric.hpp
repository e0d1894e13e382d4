#pragma once

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypercheck/error.hpp"
#include "hypercheck/rational.hpp"

namespace hypercheck {

using PointIndex = std::uint32_t;
using DistanceTable = std::vector<std::vector<Rational>>;

/// Outcome of check_metric_axioms. Malformed tables (wrong shape, negative
/// entries) are kept apart from well-formed tables that break an axiom.
struct MetricReport {
    enum class Outcome { pass, malformed, violation };

    Outcome outcome = Outcome::pass;
    std::string axiom;               // "identity", "positivity", "symmetry", "triangle"
    std::vector<std::size_t> points; // offending points, in axiom order
    std::string detail;

    bool ok() const noexcept { return outcome == Outcome::pass; }
};

inline MetricReport check_metric_axioms(const DistanceTable& table)
{
    MetricReport report;
    const std::size_t n = table.size();
    auto malformed = [&](std::string detail, std::vector<std::size_t> points) {
        report.outcome = MetricReport::Outcome::malformed;
        report.detail = std::move(detail);
        report.points = std::move(points);
        return report;
    };
    auto violation = [&](std::string axiom, std::vector<std::size_t> points, std::string detail) {
        report.outcome = MetricReport::Outcome::violation;
        report.axiom = std::move(axiom);
        report.points = std::move(points);
        report.detail = std::move(detail);
        return report;
    };

    if (n == 0) {
        return malformed("distance table has no rows", {});
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (table[p].size() != n) {
            return malformed("row " + std::to_string(p) + " has " + std::to_string(table[p].size()) +
                                 " entries, expected " + std::to_string(n),
                             {p});
        }
        for (std::size_t q = 0; q < n; ++q) {
            if (table[p][q] < 0) {
                return malformed("negative distance at (" + std::to_string(p) + "," + std::to_string(q) + ")",
                                 {p, q});
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        if (table[p][p] != 0) {
            return violation("identity", {p}, "d(p,p) = " + to_string(table[p][p]));
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            if (p != q && table[p][q] == 0) {
                return violation("positivity", {p, q}, "distinct points at distance 0");
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            if (table[p][q] != table[q][p]) {
                return violation("symmetry", {p, q},
                                 to_string(table[p][q]) + " != " + to_string(table[q][p]));
            }
        }
    }
    for (std::size_t p = 0; p < n; ++p) {
        for (std::size_t q = 0; q < n; ++q) {
            for (std::size_t r = 0; r < n; ++r) {
                Rational via = table[p][q] + table[q][r];
                if (table[p][r] > via) {
                    return violation("triangle", {p, q, r},
                                     "d(p,r) = " + to_string(table[p][r]) + " > " + to_string(via));
                }
            }
        }
    }
    return report;
}

/// Finite metric space with exact rational distances.
///
/// Distances are stored as ranks into the sorted list of distinct values, so
/// every max/min computation (and the Hausdorff distance in particular) runs on
/// integers and maps back to the exact rational at the end.
class FinitePointSpace {
public:
    static FinitePointSpace make(std::vector<std::string> points, const DistanceTable& table)
    {
        MetricReport report = check_metric_axioms(table);
        if (!report.ok()) {
            std::string what = report.outcome == MetricReport::Outcome::malformed
                                   ? "malformed distance table: " + report.detail
                                   : "metric axiom '" + report.axiom + "' violated: " + report.detail;
            throw InvalidInput(what);
        }
        if (points.empty()) {
            for (std::size_t i = 0; i < table.size(); ++i) {
                points.push_back(std::to_string(i));
            }
        }
        if (points.size() != table.size()) {
            throw InvalidInput("point list and distance table sizes differ");
        }
        const std::size_t n = table.size();
        std::vector<Rational> levels;
        for (const auto& row : table) {
            levels.insert(levels.end(), row.begin(), row.end());
        }
        std::sort(levels.begin(), levels.end());
        levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

        std::vector<std::uint32_t> ranks(n * n);
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                auto it = std::lower_bound(levels.begin(), levels.end(), table[p][q]);
                ranks[p * n + q] = static_cast<std::uint32_t>(it - levels.begin());
            }
        }
        return FinitePointSpace(std::move(points), std::move(levels), std::move(ranks));
    }

    /// Discrete metric: every pair of distinct points at distance 1.
    static FinitePointSpace discrete(std::size_t n)
    {
        if (n == 0) {
            throw InvalidInput("a point space needs at least one point");
        }
        DistanceTable table(n, std::vector<Rational>(n, Rational(1)));
        for (std::size_t i = 0; i < n; ++i) {
            table[i][i] = 0;
        }
        return make({}, table);
    }

    /// Builds a space from an already-ranked table. `levels` must be strictly
    /// increasing and start at 0; the caller vouches for the metric axioms.
    static FinitePointSpace from_ranks(std::vector<std::string> points, std::vector<Rational> levels,
                                       std::vector<std::uint32_t> ranks)
    {
        if (points.empty() || ranks.size() != points.size() * points.size()) {
            throw InvalidInput("rank table shape does not match point list");
        }
        return FinitePointSpace(std::move(points), std::move(levels), std::move(ranks));
    }

    std::size_t size() const noexcept { return points_.size(); }
    const std::string& name(PointIndex p) const { return points_.at(p); }
    const std::vector<std::string>& points() const noexcept { return points_; }

    const Rational& distance(PointIndex p, PointIndex q) const { return levels_[rank(p, q)]; }
    std::uint32_t rank(PointIndex p, PointIndex q) const { return ranks_[p * points_.size() + q]; }
    const std::vector<Rational>& levels() const noexcept { return levels_; }

    DistanceTable table() const
    {
        const std::size_t n = size();
        DistanceTable out(n, std::vector<Rational>(n));
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = 0; q < n; ++q) {
                out[p][q] = distance(static_cast<PointIndex>(p), static_cast<PointIndex>(q));
            }
        }
        return out;
    }

private:
    FinitePointSpace(std::vector<std::string> points, std::vector<Rational> levels,
                     std::vector<std::uint32_t> ranks)
        : points_(std::move(points)), levels_(std::move(levels)), ranks_(std::move(ranks))
    {
    }

    std::vector<std::string> points_;
    std::vector<Rational> levels_;
    std::vector<std::uint32_t> ranks_;
};

/// Nonempty subset of a finite point space. On a finite space every subset is
/// closed; members are kept as a bit mask so equal sets compare equal.
class ClosedSet {
public:
    using Bits = boost::dynamic_bitset<std::uint64_t>;

    static ClosedSet of(std::size_t universe, std::span<const PointIndex> members)
    {
        Bits bits(universe);
        for (PointIndex p : members) {
            if (p >= universe) {
                throw InvalidInput("point index " + std::to_string(p) + " outside a space of " +
                                   std::to_string(universe) + " points");
            }
            bits.set(p);
        }
        return ClosedSet(std::move(bits));
    }

    static ClosedSet of(std::size_t universe, std::initializer_list<PointIndex> members)
    {
        return of(universe, std::span<const PointIndex>(members.begin(), members.size()));
    }

    static ClosedSet from_bits(Bits bits) { return ClosedSet(std::move(bits)); }

    /// Low `universe` bits of `mask`; universe must be at most 64.
    static ClosedSet from_mask(std::size_t universe, std::uint64_t mask)
    {
        if (universe > 64) {
            throw InvalidInput("mask construction supports at most 64 points");
        }
        Bits bits(universe, universe == 64 ? mask : mask & ((std::uint64_t{1} << universe) - 1));
        return ClosedSet(std::move(bits));
    }

    static ClosedSet whole(std::size_t universe)
    {
        Bits bits(universe);
        bits.set();
        return ClosedSet(std::move(bits));
    }

    std::size_t universe() const noexcept { return bits_.size(); }
    std::size_t size() const noexcept { return bits_.count(); }
    bool contains(PointIndex p) const { return p < bits_.size() && bits_.test(p); }
    const Bits& bits() const noexcept { return bits_; }

    std::vector<PointIndex> members() const
    {
        std::vector<PointIndex> out;
        for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) {
            out.push_back(static_cast<PointIndex>(i));
        }
        return out;
    }

    std::uint64_t mask() const
    {
        if (universe() > 64) {
            throw InvalidInput("set does not fit a 64-bit mask");
        }
        std::uint64_t m = 0;
        for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) {
            m |= std::uint64_t{1} << i;
        }
        return m;
    }

    bool is_subset_of(const ClosedSet& other) const
    {
        require_same_universe(other);
        return bits_.is_subset_of(other.bits_);
    }
    bool intersects(const ClosedSet& other) const
    {
        require_same_universe(other);
        return bits_.intersects(other.bits_);
    }
    ClosedSet unite(const ClosedSet& other) const
    {
        require_same_universe(other);
        return ClosedSet(bits_ | other.bits_);
    }

    friend bool operator==(const ClosedSet& a, const ClosedSet& b) { return a.bits_ == b.bits_; }
    friend bool operator<(const ClosedSet& a, const ClosedSet& b)
    {
        // Order by member list, which matches bit-mask order on small universes.
        if (a.universe() != b.universe()) {
            return a.universe() < b.universe();
        }
        for (std::size_t i = a.universe(); i-- > 0;) {
            if (a.bits_.test(i) != b.bits_.test(i)) {
                return b.bits_.test(i);
            }
        }
        return false;
    }

private:
    explicit ClosedSet(Bits bits) : bits_(std::move(bits))
    {
        if (bits_.none()) {
            throw InvalidInput("closed sets must be nonempty");
        }
    }

    void require_same_universe(const ClosedSet& other) const
    {
        if (other.universe() != universe()) {
            throw InvalidInput("sets live in spaces of different sizes");
        }
    }

    Bits bits_;
};

namespace detail {

inline std::uint32_t directed_hausdorff_rank(const ClosedSet& from, const ClosedSet& to,
                                             const FinitePointSpace& space)
{
    std::uint32_t worst = 0;
    const auto& a = from.bits();
    const auto& b = to.bits();
    for (auto x = a.find_first(); x != ClosedSet::Bits::npos; x = a.find_next(x)) {
        std::uint32_t best = UINT32_MAX;
        for (auto y = b.find_first(); y != ClosedSet::Bits::npos; y = b.find_next(y)) {
            best = std::min(best, space.rank(static_cast<PointIndex>(x), static_cast<PointIndex>(y)));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace detail

/// Rank of d_H(a, b) in space.levels(); equivalent to hausdorff_distance since
/// ranks preserve order.
inline std::uint32_t hausdorff_rank(const ClosedSet& a, const ClosedSet& b, const FinitePointSpace& space)
{
    if (a.universe() != space.size() || b.universe() != space.size()) {
        throw InvalidInput("sets do not belong to the given space");
    }
    return std::max(detail::directed_hausdorff_rank(a, b, space), detail::directed_hausdorff_rank(b, a, space));
}

/// max( max_{x in A} min_{y in B} d(x,y), max_{y in B} min_{x in A} d(x,y) ).
inline Rational hausdorff_distance(const ClosedSet& a, const ClosedSet& b, const FinitePointSpace& space)
{
    return space.levels()[hausdorff_rank(a, b, space)];
}

/// Basic open <U_1, ..., U_n> of the Vietoris topology over a finite space.
class VietorisOpen {
public:
    static VietorisOpen make(std::vector<ClosedSet> cells)
    {
        if (cells.empty()) {
            throw InvalidInput("a Vietoris basic open needs at least one cell");
        }
        for (const auto& c : cells) {
            if (c.universe() != cells.front().universe()) {
                throw InvalidInput("Vietoris cells live in spaces of different sizes");
            }
        }
        return VietorisOpen(std::move(cells));
    }

    const std::vector<ClosedSet>& cells() const noexcept { return cells_; }

private:
    explicit VietorisOpen(std::vector<ClosedSet> cells) : cells_(std::move(cells)) {}

    std::vector<ClosedSet> cells_;
};

/// A belongs to <U_1..U_n> iff A is covered by the union and meets every U_i.
inline bool vietoris_contains(const ClosedSet& a, const VietorisOpen& open)
{
    ClosedSet::Bits cover(a.universe());
    for (const auto& cell : open.cells()) {
        if (cell.universe() != a.universe()) {
            throw InvalidInput("set and Vietoris cells live in different spaces");
        }
        if (!a.bits().intersects(cell.bits())) {
            return false;
        }
        cover |= cell.bits();
    }
    return a.bits().is_subset_of(cover);
}

} // namespace hypercheck
