#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "hypercheck/certificates.hpp"
#include "hypercheck/constructions.hpp"
#include "hypercheck/error.hpp"
#include "hypercheck/finite_system.hpp"
#include "hypercheck/pl_system.hpp"
#include "hypercheck/shift_system.hpp"
#include "hypercheck/verdict.hpp"

namespace hypercheck {

enum class Property { transitive, totally_transitive, weakly_mixing, dense_periodic, dense_small_periodic, exact };

inline constexpr std::array<Property, 6> all_properties{Property::transitive,     Property::totally_transitive,
                                                        Property::weakly_mixing,  Property::dense_periodic,
                                                        Property::dense_small_periodic, Property::exact};

inline std::string_view to_string(Property p)
{
    switch (p) {
    case Property::transitive: return "transitive";
    case Property::totally_transitive: return "totally-transitive";
    case Property::weakly_mixing: return "weakly-mixing";
    case Property::dense_periodic: return "dense-periodic";
    case Property::dense_small_periodic: return "dense-small-periodic";
    case Property::exact: return "exact";
    }
    return "?";
}

inline Property parse_property(std::string_view name)
{
    for (auto p : all_properties) {
        if (to_string(p) == name) {
            return p;
        }
    }
    throw InvalidInput("unknown property '" + std::string(name) + "'");
}

/// Search budgets. Zero means "pick the default for the system at hand".
struct Budgets {
    std::uint32_t level = 1;        // shift cylinder length
    std::uint64_t horizon = 0;      // iterate bound
    std::uint64_t k_max = 0;        // period bound for small periodic sets
    std::uint64_t n_max = 0;        // powers checked for total transitivity (interval maps)
    std::size_t powerset_cap = 16;  // base points allowed in a powerset hyperspace
    std::uint32_t depth = 3;        // dyadic depth for interval maps
};

using AnySystem = std::variant<FiniteSystem, ShiftSystem, PLSystem>;

// ---- finite systems (discrete topology) ----------------------------------------

/// Transitive iff T is one cyclic permutation of all points.
inline Verdict is_transitive(const FiniteMap& map)
{
    const auto cs = cycle_structure(map);
    const std::size_t n = map.size();
    for (PointIndex x = 0; x < n; ++x) {
        if (cs.period[x] == 0) {
            // x never returns, so {x} is never hit again from {x}.
            return Verdict::refuted(Method::exhaustive, Unreachable{1, x, x});
        }
    }
    if (cs.cycle_count > 1) {
        PointIndex y = 0;
        while (cs.cycle[y] == cs.cycle[0]) {
            ++y;
        }
        return Verdict::refuted(Method::exhaustive, Unreachable{1, 0, y});
    }
    CycleCover cover;
    PointIndex x = 0;
    for (std::size_t i = 0; i < n; ++i, x = map(x)) {
        cover.order.push_back(x);
    }
    return Verdict::proved(Method::exhaustive, std::move(cover));
}

/// Only the one-point system: a c-cycle with c >= 2 has T^c = id.
inline Verdict is_totally_transitive(const FiniteMap& map)
{
    Verdict base = is_transitive(map);
    if (base.status() == Status::refuted || map.size() == 1) {
        return base;
    }
    return Verdict::refuted(Method::exhaustive, Unreachable{map.size(), 0, 1});
}

inline constexpr std::size_t product_point_cap = std::size_t{1} << 22;

inline Verdict is_weakly_mixing(const FiniteMap& map)
{
    const std::size_t n = map.size();
    auto pair = [n](PointIndex z) { return std::make_pair(z / static_cast<PointIndex>(n), z % static_cast<PointIndex>(n)); };
    if (n * n > product_point_cap) {
        // The diagonal is invariant under T x T, so (0,0) never reaches (0,1).
        return Verdict::refuted(Method::exhaustive, ProductUnreachable{{0, 0}, {0, 1}});
    }
    Verdict product = is_transitive(product_map(map));
    if (product.status() == Status::proved) {
        ProductCycleCover cover;
        for (PointIndex z : std::get<CycleCover>(product.certificate()).order) {
            cover.order.push_back(pair(z));
        }
        return Verdict::proved(Method::exhaustive, std::move(cover));
    }
    const auto& u = std::get<Unreachable>(product.certificate());
    return Verdict::refuted(Method::exhaustive, ProductUnreachable{pair(u.from), pair(u.to)});
}

inline Verdict has_dense_periodic_points(const FiniteMap& map)
{
    const auto cs = cycle_structure(map);
    PeriodicPoints per;
    for (PointIndex x = 0; x < map.size(); ++x) {
        if (cs.period[x] == 0) {
            return Verdict::refuted(Method::exhaustive, NonPeriodicPoint{x});
        }
        per.points.emplace_back(x, cs.period[x]);
    }
    return Verdict::proved(Method::exhaustive, std::move(per));
}

/// Singleton opens suffice; inside {x} the only candidate is Y = {x} with k
/// the least period of x.
inline Verdict has_dense_small_periodic_sets(const FiniteMap& map, std::uint64_t k_max = 0)
{
    if (k_max == 0) {
        k_max = map.size();
    }
    const auto cs = cycle_structure(map);
    SmallPeriodicSets sets;
    std::optional<PointIndex> too_long;
    for (PointIndex x = 0; x < map.size(); ++x) {
        if (cs.period[x] == 0) {
            return Verdict::refuted(Method::exhaustive, NonPeriodicPoint{x});
        }
        if (cs.period[x] > k_max) {
            too_long = too_long.value_or(x);
            continue;
        }
        sets.cells.push_back({{x}, {x}, cs.period[x]});
    }
    if (too_long) {
        return Verdict::unknown(Method::exhaustive, "point " + std::to_string(*too_long) + " has period " +
                                                        std::to_string(cs.period[*too_long]) + " > k_max " +
                                                        std::to_string(k_max));
    }
    return Verdict::proved(Method::exhaustive, std::move(sets));
}

/// T^n {x} is one point, so only the one-point system is exact.
inline Verdict is_topologically_exact(const FiniteMap& map)
{
    if (map.size() == 1) {
        return Verdict::proved(Method::exhaustive, CoverTimes{{{0, 1}}});
    }
    return Verdict::refuted(Method::exhaustive, NeverCovers{{0}});
}

inline Verdict check_property(const FiniteMap& map, Property p, const Budgets& b = {})
{
    switch (p) {
    case Property::transitive: return is_transitive(map);
    case Property::totally_transitive: return is_totally_transitive(map);
    case Property::weakly_mixing: return is_weakly_mixing(map);
    case Property::dense_periodic: return has_dense_periodic_points(map);
    case Property::dense_small_periodic: return has_dense_small_periodic_sets(map, b.k_max);
    case Property::exact: return is_topologically_exact(map);
    }
    throw InvalidInput("unknown property");
}

// ---- shift systems -------------------------------------------------------------

namespace detail {

inline std::vector<Symbol> symbols_of(SymbolMask mask)
{
    std::vector<Symbol> out;
    for (; mask != 0; mask &= mask - 1) {
        out.push_back(static_cast<Symbol>(std::countr_zero(mask)));
    }
    return out;
}

/// First (a, b) with b not reachable from a, as a certificate.
inline std::optional<SymbolUnreachable> unreachable_pair(const ShiftSystem& sft)
{
    for (Symbol a = 0; a < sft.size(); ++a) {
        SymbolMask reach = sft.reachable_from(SymbolMask{1} << a);
        if (reach != sft.all_symbols()) {
            auto b = static_cast<Symbol>(std::countr_zero(~reach & sft.all_symbols()));
            return SymbolUnreachable{a, b, symbols_of(reach)};
        }
    }
    return std::nullopt;
}

/// Closed walk from symbol 0 through every symbol in index order.
inline Word covering_loop(const ShiftSystem& sft)
{
    Word loop{0};
    for (Symbol s = 1; s <= sft.size(); ++s) {
        Symbol target = s == sft.size() ? 0 : s;
        if (s < sft.size() && std::find(loop.begin(), loop.end(), s) != loop.end()) {
            continue;
        }
        Word path = sft.shortest_path(loop.back(), target);
        loop.insert(loop.end(), path.begin() + 1, path.end());
    }
    return loop;
}

/// BFS distance from symbol 0; requires every symbol reachable.
inline std::vector<std::uint64_t> bfs_levels(const ShiftSystem& sft)
{
    std::vector<std::uint64_t> level(sft.size(), UINT64_MAX);
    std::vector<Symbol> frontier{0};
    level[0] = 0;
    for (std::uint64_t d = 1; !frontier.empty(); ++d) {
        std::vector<Symbol> next;
        for (Symbol a : frontier) {
            for (Symbol b : symbols_of(sft.successors(a))) {
                if (level[b] == UINT64_MAX) {
                    level[b] = d;
                    next.push_back(b);
                }
            }
        }
        frontier.swap(next);
    }
    return level;
}

inline std::vector<SymbolMask> power_rows(const ShiftSystem& sft, std::uint64_t power)
{
    std::vector<SymbolMask> rows(sft.size());
    for (Symbol a = 0; a < sft.size(); ++a) {
        SymbolMask r = SymbolMask{1} << a;
        for (std::uint64_t i = 0; i < power; ++i) {
            r = sft.successors(r);
        }
        rows[a] = r;
    }
    return rows;
}

inline std::uint64_t wielandt_bound(std::size_t m) { return (m - 1) * (m - 1) + 1; }

inline std::uint32_t periodic_level(std::uint32_t level) { return std::max<std::uint32_t>(2, level); }

} // namespace detail

inline Verdict is_transitive(const ShiftSystem& sft)
{
    if (auto gap = detail::unreachable_pair(sft)) {
        return Verdict::refuted(Method::graph_reduction, *gap);
    }
    return Verdict::proved(Method::graph_reduction, CoveringLoop{detail::covering_loop(sft)});
}

/// Primitivity by power positivity: M^k > 0 for some k <= (m-1)^2 + 1.
inline Verdict is_totally_transitive(const ShiftSystem& sft)
{
    const std::uint64_t bound = detail::wielandt_bound(sft.size());
    std::vector<SymbolMask> rows(sft.size());
    for (Symbol a = 0; a < sft.size(); ++a) {
        rows[a] = SymbolMask{1} << a;
    }
    for (std::uint64_t k = 1; k <= bound; ++k) {
        bool positive = true;
        for (auto& r : rows) {
            r = sft.successors(r);
            positive = positive && r == sft.all_symbols();
        }
        if (positive) {
            return Verdict::proved(Method::graph_reduction, PrimitiveExponent{k});
        }
    }
    for (Symbol a = 0; a < sft.size(); ++a) {
        if (rows[a] != sft.all_symbols()) {
            auto b = static_cast<Symbol>(std::countr_zero(~rows[a] & sft.all_symbols()));
            return Verdict::refuted(Method::graph_reduction, ZeroEntry{bound, a, b});
        }
    }
    throw PreconditionViolation("unreachable: positive rows without positivity");
}

/// Irreducible with cycle lengths of gcd 1, computed from BFS levels.
inline Verdict is_weakly_mixing(const ShiftSystem& sft)
{
    if (auto gap = detail::unreachable_pair(sft)) {
        return Verdict::refuted(Method::graph_reduction, *gap);
    }
    const auto level = detail::bfs_levels(sft);
    std::uint64_t g = 0;
    for (Symbol a = 0; a < sft.size(); ++a) {
        for (Symbol b : detail::symbols_of(sft.successors(a))) {
            auto d = static_cast<std::int64_t>(level[a] + 1) - static_cast<std::int64_t>(level[b]);
            g = std::gcd(g, static_cast<std::uint64_t>(d < 0 ? -d : d));
        }
    }
    if (g > 1) {
        CyclicClasses classes{static_cast<std::uint32_t>(g), {}};
        for (Symbol a = 0; a < sft.size(); ++a) {
            classes.classes.push_back(static_cast<std::uint32_t>(level[a] % g));
        }
        return Verdict::refuted(Method::graph_reduction, std::move(classes));
    }
    // Closed walks through 0: tree path to a, edge a -> b, shortest path back.
    auto tree_path = [&](Symbol to) {
        Word path{to};
        while (path.back() != 0) {
            for (Symbol p : detail::symbols_of(sft.predecessors(path.back()))) {
                if (level[p] + 1 == level[path.back()]) {
                    path.push_back(p);
                    break;
                }
            }
        }
        return Word(path.rbegin(), path.rend());
    };
    auto walk_through = [&](Symbol a, Symbol b) {
        Word w = tree_path(a);
        Word back = b == 0 ? Word{0} : sft.shortest_path(b, 0);
        if (b == 0) {
            w.push_back(0);
        } else {
            w.insert(w.end(), back.begin(), back.end());
        }
        return w;
    };
    CoprimeCycles cert{detail::covering_loop(sft), {}};
    std::uint64_t running = 0;
    for (Symbol a = 0; a < sft.size() && running != 1; ++a) {
        for (Symbol b : detail::symbols_of(sft.successors(a))) {
            Word w = walk_through(a, b);
            const std::uint64_t len = w.size() - 1;
            if (std::gcd(running, len) != running || running == 0) {
                running = std::gcd(running, len);
                cert.cycles.push_back(std::move(w));
            }
            if (running == 1) {
                break;
            }
        }
    }
    return Verdict::proved(Method::graph_reduction, std::move(cert));
}

/// Exact-n coverage: each [a] must reach every symbol in exactly n steps.
inline Verdict is_topologically_exact(const ShiftSystem& sft)
{
    const std::uint64_t cap = 4 * sft.size() * sft.size() + 64;
    ExactCoverTimes times{1, {}};
    for (Symbol a = 0; a < sft.size(); ++a) {
        std::set<SymbolMask> seen;
        SymbolMask r = sft.successors(a);
        std::uint64_t n = 1;
        for (; r != sft.all_symbols(); ++n) {
            if (!seen.insert(r).second) {
                return Verdict::refuted(Method::graph_reduction, NeverFull{1, {a}});
            }
            if (n > cap) {
                return Verdict::unknown(Method::graph_reduction, "reach sets of [" + sft.render({a}) +
                                                                     "] did not settle within " + std::to_string(cap));
            }
            r = sft.successors(r);
        }
        times.entries.push_back({{a}, n});
    }
    return Verdict::proved(Method::graph_reduction, std::move(times));
}

/// Every word of length max(2, level) on a cycle. Length 2 already decides
/// density; level-1 cylinders are not enough (a non-returning edge between
/// two self-loops has no periodic point in its cylinder).
inline Verdict has_dense_periodic_points(const ShiftSystem& sft, std::uint32_t level = 2)
{
    const std::uint32_t len = detail::periodic_level(level);
    PeriodicCylinders cert{len, {}};
    for (const auto& w : allowed_words(sft, len)) {
        SymbolMask closed = sft.reachable_from(SymbolMask{1} << w.back());
        if (!(closed >> w.front() & 1)) {
            return Verdict::refuted(Method::graph_reduction, AperiodicCylinder{w, detail::symbols_of(closed)});
        }
        cert.entries.emplace_back(w, find_periodic_point_in_cylinder(sft, w));
    }
    return Verdict::proved(Method::graph_reduction, std::move(cert));
}

/// Y = {p} for a periodic point p in each cylinder, k its period.
inline Verdict has_dense_small_periodic_sets(const ShiftSystem& sft, std::uint32_t level = 2, std::uint64_t k_max = 0)
{
    const std::uint32_t len = detail::periodic_level(level);
    if (k_max == 0) {
        k_max = len;
        for (std::uint32_t i = 0; i < len; ++i) {
            k_max *= sft.size();
        }
    }
    Verdict v = has_dense_periodic_points(sft, level);
    if (v.status() == Status::proved) {
        for (const auto& [w, p] : std::get<PeriodicCylinders>(v.certificate()).entries) {
            if (p.period() > k_max) {
                return Verdict::unknown(Method::graph_reduction, "[" + sft.render(w) + "] needs period " +
                                                                     std::to_string(p.period()) + " > k_max " +
                                                                     std::to_string(k_max));
            }
        }
    }
    return v;
}

inline Verdict check_property(const ShiftSystem& sft, Property p, const Budgets& b = {})
{
    switch (p) {
    case Property::transitive: return is_transitive(sft);
    case Property::totally_transitive: return is_totally_transitive(sft);
    case Property::weakly_mixing: return is_weakly_mixing(sft);
    case Property::dense_periodic: return has_dense_periodic_points(sft, b.level);
    case Property::dense_small_periodic: return has_dense_small_periodic_sets(sft, b.level, b.k_max);
    case Property::exact: return is_topologically_exact(sft);
    }
    throw InvalidInput("unknown property");
}

// ---- piecewise-linear interval maps (closed dyadic cells) ----------------------

namespace detail {

inline std::uint64_t pl_horizon(const Budgets& b) { return b.horizon != 0 ? b.horizon : 4 * std::uint64_t{b.depth}; }

inline std::uint64_t pl_cells(std::uint32_t depth)
{
    if (depth > 12) {
        throw CapExceeded("dyadic depth above 12 is not supported");
    }
    return std::uint64_t{1} << depth;
}

/// Whether the closed interval j meets the interior of the cell.
inline bool meets_interior(const Interval& j, const Interval& cell)
{
    if (j.lo < j.hi) {
        return j.lo < cell.hi && j.hi > cell.lo;
    }
    return cell.lo < j.lo && j.lo < cell.hi;
}

/// hits[i][j] bit m: f^(power*m)(C_i) meets int C_j, m in 1..horizon.
inline std::vector<std::vector<boost::dynamic_bitset<>>> pl_hits(const PLSystem& f, std::uint32_t depth,
                                                                 std::uint64_t power, std::uint64_t horizon)
{
    const std::uint64_t cells = pl_cells(depth);
    std::vector<std::vector<boost::dynamic_bitset<>>> hits(
        cells, std::vector<boost::dynamic_bitset<>>(cells, boost::dynamic_bitset<>(horizon + 1)));
    for (std::uint64_t i = 0; i < cells; ++i) {
        Interval img = dyadic_cell(depth, i);
        for (std::uint64_t m = 1; m <= horizon; ++m) {
            img = pl_iterate_interval(f, img, power);
            for (std::uint64_t j = 0; j < cells; ++j) {
                if (meets_interior(img, dyadic_cell(depth, j))) {
                    hits[i][j].set(m);
                }
            }
        }
    }
    return hits;
}

inline std::string cell_name(std::uint32_t depth, std::uint64_t j)
{
    return "[" + std::to_string(j) + "/2^" + std::to_string(depth) + ", " + std::to_string(j + 1) + "/2^" +
           std::to_string(depth) + "]";
}

} // namespace detail

inline Verdict pl_reach(const PLSystem& f, const Budgets& b, std::uint64_t max_power)
{
    const std::uint64_t horizon = detail::pl_horizon(b);
    const std::uint64_t cells = detail::pl_cells(b.depth);
    PLReachTable table{b.depth, {}};
    for (std::uint64_t p = 1; p <= max_power; ++p) {
        auto hits = detail::pl_hits(f, b.depth, p, horizon);
        for (std::uint64_t i = 0; i < cells; ++i) {
            for (std::uint64_t j = 0; j < cells; ++j) {
                auto m = hits[i][j].find_next(0);
                if (m == boost::dynamic_bitset<>::npos) {
                    return Verdict::unknown(Method::bounded_search,
                                            "f^" + std::to_string(p) + " iterates of " +
                                                detail::cell_name(b.depth, i) + " miss " +
                                                detail::cell_name(b.depth, j) + " within " +
                                                std::to_string(horizon) + " steps",
                                            b.depth);
                }
                table.entries.push_back({p, i, j, m});
            }
        }
    }
    return Verdict::proved(Method::bounded_search, std::move(table), b.depth);
}

inline Verdict is_transitive(const PLSystem& f, const Budgets& b = {}) { return pl_reach(f, b, 1); }

inline Verdict is_totally_transitive(const PLSystem& f, const Budgets& b = {})
{
    return pl_reach(f, b, b.n_max != 0 ? b.n_max : 3);
}

inline Verdict is_weakly_mixing(const PLSystem& f, const Budgets& b = {})
{
    const std::uint64_t horizon = detail::pl_horizon(b);
    const std::uint64_t cells = detail::pl_cells(b.depth);
    auto hits = detail::pl_hits(f, b.depth, 1, horizon);
    PLMixingTable table{b.depth, {}};
    for (std::uint64_t i = 0; i < cells; ++i) {
        for (std::uint64_t j = 0; j < cells; ++j) {
            for (std::uint64_t k = 0; k < cells; ++k) {
                for (std::uint64_t l = 0; l < cells; ++l) {
                    auto n = (hits[i][k] & hits[j][l]).find_next(0);
                    if (n == boost::dynamic_bitset<>::npos) {
                        return Verdict::unknown(Method::bounded_search,
                                                "no common n <= " + std::to_string(horizon) + " for cells " +
                                                    std::to_string(i) + "," + std::to_string(j) + " -> " +
                                                    std::to_string(k) + "," + std::to_string(l),
                                                b.depth);
                    }
                    table.entries.push_back({i, j, k, l, n});
                }
            }
        }
    }
    return Verdict::proved(Method::bounded_search, std::move(table), b.depth);
}

/// Per cell, a sub-interval J clear of the cell boundary with f^n(J) containing
/// J (so f^n has a fixed point inside the cell's interior).
inline Verdict pl_brackets(const PLSystem& f, const Budgets& b)
{
    const std::uint64_t horizon = detail::pl_horizon(b);
    const std::uint64_t cells = detail::pl_cells(b.depth);
    constexpr std::uint32_t extra_depth = 4;
    PLPeriodicBrackets cert{b.depth, {}};
    for (std::uint64_t c = 0; c < cells; ++c) {
        std::optional<PLBracket> found;
        for (std::uint64_t n = 1; n <= horizon && !found; ++n) {
            for (std::uint32_t e = 2; e <= extra_depth && !found; ++e) {
                const std::uint64_t per = std::uint64_t{1} << e;
                for (std::uint64_t s = 1; s + 1 < per && !found; ++s) {
                    Interval j = dyadic_cell(b.depth + e, c * per + s);
                    if (pl_iterate_interval(f, j, n).contains(j)) {
                        found = PLBracket{c, j.lo, j.hi, n};
                    }
                }
            }
        }
        if (!found) {
            return Verdict::unknown(Method::bounded_search,
                                    "no periodic bracket in " + detail::cell_name(b.depth, c) + " within " +
                                        std::to_string(horizon) + " steps",
                                    b.depth);
        }
        cert.brackets.push_back(*found);
    }
    return Verdict::proved(Method::bounded_search, std::move(cert), b.depth);
}

inline Verdict has_dense_periodic_points(const PLSystem& f, const Budgets& b = {}) { return pl_brackets(f, b); }

inline Verdict has_dense_small_periodic_sets(const PLSystem& f, const Budgets& b = {})
{
    return pl_brackets(f, b);
}

inline Verdict is_topologically_exact(const PLSystem& f, const Budgets& b = {})
{
    const std::uint64_t horizon = detail::pl_horizon(b);
    const std::uint64_t cells = detail::pl_cells(b.depth);
    PLCoverTimes cert{b.depth, {}};
    for (std::uint64_t c = 0; c < cells; ++c) {
        Interval img = dyadic_cell(b.depth, c);
        std::uint64_t n = 0;
        while (img != unit_interval() && n < horizon) {
            img = pl_iterate_interval(f, img, 1);
            ++n;
        }
        if (img != unit_interval()) {
            return Verdict::unknown(Method::bounded_search,
                                    detail::cell_name(b.depth, c) + " does not cover [0,1] within " +
                                        std::to_string(horizon) + " steps",
                                    b.depth);
        }
        cert.steps.push_back(n);
    }
    return Verdict::proved(Method::bounded_search, std::move(cert), b.depth);
}

inline Verdict check_property(const PLSystem& f, Property p, const Budgets& b = {})
{
    switch (p) {
    case Property::transitive: return is_transitive(f, b);
    case Property::totally_transitive: return is_totally_transitive(f, b);
    case Property::weakly_mixing: return is_weakly_mixing(f, b);
    case Property::dense_periodic: return has_dense_periodic_points(f, b);
    case Property::dense_small_periodic: return has_dense_small_periodic_sets(f, b);
    case Property::exact: return is_topologically_exact(f, b);
    }
    throw InvalidInput("unknown property");
}

inline Verdict check_property(const FiniteSystem& sys, Property p, const Budgets& b = {})
{
    return check_property(sys.map(), p, b);
}

inline Verdict check_property(const AnySystem& sys, Property p, const Budgets& b = {})
{
    return std::visit([&](const auto& s) { return check_property(s, p, b); }, sys);
}

// ---- composite classifications --------------------------------------------------

struct Classification {
    std::vector<NamedVerdict> atomic;  // one per property, in all_properties order
    Verdict devaney;                   // transitive and dense periodic points
    Verdict f_system;                  // totally transitive and dense periodic points
    Verdict hy_system;                 // totally transitive and dense small periodic sets

    const Verdict& at(Property p) const { return atomic.at(static_cast<std::size_t>(p)).verdict; }
};

inline Classification classify(const AnySystem& sys, const Budgets& b = {})
{
    std::vector<NamedVerdict> atomic;
    for (auto p : all_properties) {
        atomic.push_back({std::string(to_string(p)), check_property(sys, p, b)});
    }
    auto pick = [&](std::initializer_list<Property> ps) {
        std::vector<NamedVerdict> out;
        for (auto p : ps) {
            out.push_back(atomic[static_cast<std::size_t>(p)]);
        }
        return conjunction(out);
    };
    Verdict devaney = pick({Property::transitive, Property::dense_periodic});
    Verdict f_system = pick({Property::totally_transitive, Property::dense_periodic});
    Verdict hy_system = pick({Property::totally_transitive, Property::dense_small_periodic});
    return Classification{std::move(atomic), std::move(devaney), std::move(f_system), std::move(hy_system)};
}

} // namespace hypercheck
