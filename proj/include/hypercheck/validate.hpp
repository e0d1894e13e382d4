#pragma once

// Re-validation of certificates by direct evaluation on the system. None of
// these routines call the checker that produced the certificate.

#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <variant>
#include <vector>

#include "hypercheck/certificates.hpp"
#include "hypercheck/constructions.hpp"
#include "hypercheck/finite_system.hpp"
#include "hypercheck/hyperspace.hpp"
#include "hypercheck/oracle.hpp"
#include "hypercheck/pl_system.hpp"
#include "hypercheck/properties.hpp"
#include "hypercheck/shift_system.hpp"
#include "hypercheck/verdict.hpp"

namespace hypercheck {

/// Empty when the verdict checks out, otherwise the reason it does not.
using ValidationFailure = std::optional<std::string>;

namespace detail {

inline ValidationFailure fail(std::string why) { return ValidationFailure{std::move(why)}; }

template <class... Ps>
bool one_of(Property p, Ps... ps)
{
    return ((p == ps) || ...);
}

/// Shared preamble: unknown verdicts are fine, composites are checked through
/// their parts, and the certificate kind must suit the status.
inline std::optional<ValidationFailure> preamble(const Verdict& v)
{
    if (v.status() == Status::unknown) {
        return v.budget_note().empty() ? fail("unknown verdict without a note") : ValidationFailure{};
    }
    if (std::holds_alternative<Composite>(v.certificate())) {
        return fail("composite certificate: validate the named component verdicts instead");
    }
    return std::nullopt;
}

inline ValidationFailure mismatch(const Verdict& v, Property p)
{
    return fail(std::string(certificate_kind(v.certificate())) + " does not decide " + std::string(to_string(p)) +
                " as " + std::string(to_string(v.status())));
}

// ---- finite ------------------------------------------------------------------

inline bool never_reaches(const FiniteMap& map, PointIndex from, PointIndex to, std::uint64_t power)
{
    const Orbit orbit(map, from);
    // The sequence T^(power*m)(from) repeats within |X| + 1 terms.
    for (std::uint64_t m = 1; m <= map.size() + 1; ++m) {
        if (orbit.at(power * m) == to) {
            return false;
        }
    }
    return true;
}

inline ValidationFailure validate_oracle_table(const FiniteMap& map, Property p, const OracleTable& t)
{
    const SubsetDynamics d(map);
    const Mask full = d.full();
    std::set<std::vector<std::uint64_t>> keys;
    std::uint64_t max_power = 0;
    for (const auto& r : t.rows) {
        auto mask_ok = [&](std::uint64_t m) { return m >= 1 && m <= full; };
        switch (p) {
        case Property::transitive:
        case Property::totally_transitive: {
            if (r.size() != 4 || !mask_ok(r[1]) || !mask_ok(r[2]) || r[0] == 0 || r[3] == 0) {
                return fail("malformed transitivity row");
            }
            if ((d.apply(r[1], r[0] * r[3]) & r[2]) == 0) {
                return fail("row fails: T^n U misses V");
            }
            max_power = std::max(max_power, r[0]);
            keys.insert({r[0], r[1], r[2]});
            break;
        }
        case Property::weakly_mixing: {
            if (r.size() != 5 || !mask_ok(r[0]) || !mask_ok(r[1]) || !mask_ok(r[2]) || !mask_ok(r[3]) || r[4] == 0) {
                return fail("malformed mixing row");
            }
            if ((d.apply(r[0], r[4]) & r[2]) == 0 || (d.apply(r[1], r[4]) & r[3]) == 0) {
                return fail("row fails: product image misses target");
            }
            keys.insert({r[0], r[1], r[2], r[3]});
            break;
        }
        case Property::dense_periodic: {
            if (r.size() != 3 || !mask_ok(r[0]) || r[1] >= map.size() || !(r[0] >> r[1] & 1) || r[2] == 0) {
                return fail("malformed periodic row");
            }
            if (map.iterate(static_cast<PointIndex>(r[1]), r[2]) != r[1]) {
                return fail("row point is not periodic");
            }
            keys.insert({r[0]});
            break;
        }
        case Property::dense_small_periodic: {
            if (r.size() != 3 || !mask_ok(r[0]) || !mask_ok(r[1]) || (r[1] & ~r[0]) != 0 || r[2] == 0) {
                return fail("malformed small periodic row");
            }
            if ((d.apply(r[1], r[2]) & ~r[1]) != 0) {
                return fail("T^k Y escapes Y");
            }
            keys.insert({r[0]});
            break;
        }
        case Property::exact: {
            if (r.size() != 2 || !mask_ok(r[0]) || r[1] == 0) {
                return fail("malformed exactness row");
            }
            if (d.apply(r[0], r[1]) != full) {
                return fail("T^n U is not X");
            }
            keys.insert({r[0]});
            break;
        }
        }
    }
    std::uint64_t expected = 0;
    switch (p) {
    case Property::transitive: expected = full * full; break;
    case Property::totally_transitive: expected = max_power * full * full; break;
    case Property::weakly_mixing: expected = full * full * full * full; break;
    default: expected = full; break;
    }
    if (p == Property::transitive && max_power != 1) {
        return fail("transitivity rows must use power 1");
    }
    if (p == Property::totally_transitive && max_power < map.size()) {
        return fail("total transitivity rows stop below |X| powers");
    }
    if (keys.size() != expected) {
        return fail("rows do not cover every open set combination");
    }
    return std::nullopt;
}

inline ValidationFailure validate_oracle_failure(const FiniteMap& map, Property p, const OracleFailure& f)
{
    const SubsetDynamics d(map);
    const Mask full = d.full();
    for (auto m : f.masks) {
        if (m == 0 || m > full) {
            return fail("oracle failure names an invalid subset");
        }
    }
    const auto& m = f.masks;
    switch (p) {
    case Property::transitive:
    case Property::totally_transitive:
        if (m.size() != 2 || f.power == 0 || (p == Property::transitive && f.power != 1)) {
            return fail("malformed transitivity failure");
        }
        if (hit_times(d, m[0], m[1], f.power, f.bound) != 0) {
            return fail("some iterate does hit V");
        }
        return std::nullopt;
    case Property::weakly_mixing:
        if (m.size() != 4) {
            return fail("malformed mixing failure");
        }
        if ((hit_times(d, m[0], m[2], 1, f.bound) & hit_times(d, m[1], m[3], 1, f.bound)) != 0) {
            return fail("a common iterate exists");
        }
        return std::nullopt;
    case Property::dense_periodic:
        if (m.size() != 1) {
            return fail("malformed periodic failure");
        }
        for (PointIndex x = 0; x < map.size(); ++x) {
            for (std::uint64_t q = 1; (m[0] >> x & 1) && q <= f.bound; ++q) {
                if (map.iterate(x, q) == x) {
                    return fail("the subset holds a periodic point");
                }
            }
        }
        return std::nullopt;
    case Property::dense_small_periodic:
        if (m.size() != 1) {
            return fail("malformed small periodic failure");
        }
        for (Mask y = 1; y <= m[0]; ++y) {
            for (std::uint64_t k = 1; (y & ~m[0]) == 0 && k <= f.bound; ++k) {
                if ((d.apply(y, k) & ~y) == 0) {
                    return fail("the subset holds an invariant Y");
                }
            }
        }
        return std::nullopt;
    case Property::exact:
        if (m.size() != 1) {
            return fail("malformed exactness failure");
        }
        for (std::uint64_t n = 1; n <= f.bound; ++n) {
            if (d.apply(m[0], n) == full) {
                return fail("the subset does cover X");
            }
        }
        return std::nullopt;
    }
    return fail("unknown property");
}

} // namespace detail

inline ValidationFailure validate(const FiniteMap& map, Property p, const Verdict& v)
{
    using namespace detail;
    if (auto pre = preamble(v)) {
        return *pre;
    }
    const std::size_t n = map.size();
    const bool proved = v.status() == Status::proved;
    return std::visit(
        [&](const auto& c) -> ValidationFailure {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, CycleCover>) {
                if (!proved || !one_of(p, Property::transitive, Property::totally_transitive)) {
                    return mismatch(v, p);
                }
                if (p == Property::totally_transitive && n != 1) {
                    return fail("a cycle proves total transitivity only on one point");
                }
                if (c.order.size() != n) {
                    return fail("cycle does not list every point");
                }
                std::vector<bool> seen(n, false);
                for (std::size_t i = 0; i < n; ++i) {
                    if (c.order[i] >= n || seen[c.order[i]]) {
                        return fail("cycle repeats or leaves the space");
                    }
                    seen[c.order[i]] = true;
                    if (map(c.order[i]) != c.order[(i + 1) % n]) {
                        return fail("cycle order does not follow T");
                    }
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, Unreachable>) {
                if (proved || !one_of(p, Property::transitive, Property::totally_transitive)) {
                    return mismatch(v, p);
                }
                if (c.power == 0 || (p == Property::transitive && c.power != 1) || c.from >= n || c.to >= n) {
                    return fail("malformed unreachability claim");
                }
                if (!never_reaches(map, c.from, c.to, c.power)) {
                    return fail("target is reached");
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, ProductCycleCover>) {
                if (!proved || p != Property::weakly_mixing) {
                    return mismatch(v, p);
                }
                if (c.order.size() != n * n) {
                    return fail("product cycle does not list every pair");
                }
                std::set<std::pair<PointIndex, PointIndex>> seen;
                for (std::size_t i = 0; i < c.order.size(); ++i) {
                    auto [a, b] = c.order[i];
                    auto [a2, b2] = c.order[(i + 1) % c.order.size()];
                    if (a >= n || b >= n || !seen.insert(c.order[i]).second) {
                        return fail("product cycle repeats or leaves the space");
                    }
                    if (map(a) != a2 || map(b) != b2) {
                        return fail("product cycle does not follow T x T");
                    }
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, ProductUnreachable>) {
                if (proved || p != Property::weakly_mixing) {
                    return mismatch(v, p);
                }
                if (c.from.first >= n || c.from.second >= n || c.to.first >= n || c.to.second >= n) {
                    return fail("pair outside the space");
                }
                const Orbit oa(map, c.from.first);
                const Orbit ob(map, c.from.second);
                const std::uint64_t span = oa.tail() + ob.tail() + oa.cycle_length() * ob.cycle_length();
                for (std::uint64_t m = 1; m <= span; ++m) {
                    if (oa.at(m) == c.to.first && ob.at(m) == c.to.second) {
                        return fail("target pair is reached");
                    }
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, PeriodicPoints>) {
                if (!proved || p != Property::dense_periodic) {
                    return mismatch(v, p);
                }
                std::vector<bool> seen(n, false);
                for (auto [x, period] : c.points) {
                    if (x >= n || seen[x] || period == 0) {
                        return fail("malformed periodic point list");
                    }
                    seen[x] = true;
                    if (map.iterate(x, period) != x) {
                        return fail("listed point is not periodic");
                    }
                    for (std::uint64_t q = 1; q < period; ++q) {
                        if (map.iterate(x, q) == x) {
                            return fail("listed period is not least");
                        }
                    }
                }
                if (c.points.size() != n) {
                    return fail("some point is not listed (density needs every singleton)");
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, NonPeriodicPoint>) {
                if (proved || !one_of(p, Property::dense_periodic, Property::dense_small_periodic)) {
                    return mismatch(v, p);
                }
                if (c.point >= n || Orbit(map, c.point).tail() == 0) {
                    return fail("point is periodic");
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, SmallPeriodicSets>) {
                if (!proved || p != Property::dense_small_periodic) {
                    return mismatch(v, p);
                }
                std::vector<bool> singleton(n, false);
                for (const auto& cell : c.cells) {
                    if (cell.closed.empty() || cell.k == 0) {
                        return fail("empty Y or zero k");
                    }
                    ClosedSet::Bits u(n);
                    ClosedSet::Bits y(n);
                    for (auto x : cell.open_cell) {
                        if (x >= n) {
                            return fail("open cell leaves the space");
                        }
                        u.set(x);
                    }
                    for (auto x : cell.closed) {
                        if (x >= n) {
                            return fail("Y leaves the space");
                        }
                        y.set(x);
                    }
                    if (!y.is_subset_of(u)) {
                        return fail("Y is not inside U");
                    }
                    if (!map.image(y, cell.k).is_subset_of(y)) {
                        return fail("T^k Y is not inside Y");
                    }
                    if (u.count() == 1) {
                        singleton[u.find_first()] = true;
                    }
                }
                for (std::size_t x = 0; x < n; ++x) {
                    if (!singleton[x]) {
                        return fail("no witness for the open set {" + std::to_string(x) + "}");
                    }
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, CoverTimes>) {
                if (!proved || p != Property::exact) {
                    return mismatch(v, p);
                }
                std::vector<bool> seen(n, false);
                for (auto [x, steps] : c.cells) {
                    if (x >= n) {
                        return fail("point outside the space");
                    }
                    ClosedSet::Bits s(n);
                    s.set(x);
                    if (!map.image(s, steps).all()) {
                        return fail("T^n {x} is not X");
                    }
                    seen[x] = true;
                }
                for (bool b : seen) {
                    if (!b) {
                        return fail("some singleton has no cover time");
                    }
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, NeverCovers>) {
                if (proved || p != Property::exact) {
                    return mismatch(v, p);
                }
                ClosedSet::Bits s(n);
                for (auto x : c.open_set) {
                    if (x >= n) {
                        return fail("point outside the space");
                    }
                    s.set(x);
                }
                if (s.none()) {
                    return fail("empty open set");
                }
                std::set<ClosedSet::Bits> seen;
                for (s = map.image(s); seen.insert(s).second; s = map.image(s)) {
                    if (s.all()) {
                        return fail("the open set does cover X");
                    }
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, OracleTable>) {
                if (!proved || n > oracle_cap) {
                    return mismatch(v, p);
                }
                return validate_oracle_table(map, p, c);
            } else if constexpr (std::is_same_v<T, OracleFailure>) {
                if (proved || n > oracle_cap) {
                    return mismatch(v, p);
                }
                return validate_oracle_failure(map, p, c);
            } else {
                return mismatch(v, p);
            }
        },
        v.certificate());
}

inline ValidationFailure validate(const FiniteSystem& sys, Property p, const Verdict& v)
{
    return validate(sys.map(), p, v);
}

// ---- shifts ----------------------------------------------------------------------

namespace detail {

inline constexpr std::uint64_t max_checked_power = 1u << 20;

inline bool closed_under_successors(const ShiftSystem& sft, const std::vector<Symbol>& members, SymbolMask& out)
{
    out = 0;
    for (auto s : members) {
        if (s >= sft.size()) {
            return false;
        }
        out |= SymbolMask{1} << s;
    }
    return (sft.successors(out) & ~out) == 0;
}

inline ValidationFailure check_loop(const ShiftSystem& sft, const Word& loop)
{
    if (loop.size() < 2 || loop.front() != loop.back() || !sft.is_allowed(loop)) {
        return fail("not an allowed closed walk");
    }
    SymbolMask seen = 0;
    for (auto s : loop) {
        seen |= SymbolMask{1} << s;
    }
    if (seen != sft.all_symbols()) {
        return fail("closed walk misses a symbol");
    }
    return std::nullopt;
}

/// sigma^n [u] = X for a word of length l: after l - 1 steps the image is
/// [last(u)], then it spreads along exact-length paths.
inline bool covers_after(const ShiftSystem& sft, const Word& u, std::uint64_t n)
{
    if (n + 1 < u.size()) {
        return sft.size() == 1;
    }
    SymbolMask r = SymbolMask{1} << u.back();
    for (std::uint64_t i = 0; i < n + 1 - u.size(); ++i) {
        r = sft.successors(r);
    }
    return r == sft.all_symbols();
}

inline ValidationFailure check_exact_times(const ShiftSystem& sft, const ExactCoverTimes& c)
{
    if (c.level == 0) {
        return fail("level must be positive");
    }
    std::set<Word> listed;
    for (const auto& [w, steps] : c.entries) {
        if (w.size() != c.level || !sft.is_allowed(w) || steps > max_checked_power) {
            return fail("malformed cover time entry");
        }
        if (!covers_after(sft, w, steps)) {
            return fail("sigma^n [" + sft.render(w) + "] is not X");
        }
        listed.insert(w);
    }
    if (listed.size() != allowed_words(sft, c.level).size()) {
        return fail("some cylinder has no cover time");
    }
    return std::nullopt;
}

inline ValidationFailure check_never_full(const ShiftSystem& sft, const NeverFull& c)
{
    if (c.word.size() != c.level || c.level == 0 || !sft.is_allowed(c.word)) {
        return fail("malformed never-full claim");
    }
    // Steps below l - 1 give a proper cylinder unless X is one point; the
    // later images are unions of [b] over exact-length reach sets.
    if (sft.size() == 1) {
        return fail("a one-symbol shift is covered by every cylinder");
    }
    std::set<SymbolMask> seen;
    for (SymbolMask r = SymbolMask{1} << c.word.back(); seen.insert(r).second; r = sft.successors(r)) {
        if (r == sft.all_symbols()) {
            return fail("the cylinder does cover X");
        }
    }
    return std::nullopt;
}

inline ValidationFailure check_aperiodic(const ShiftSystem& sft, const AperiodicCylinder& c)
{
    SymbolMask closed = 0;
    if (c.cylinder.empty() || !sft.is_allowed(c.cylinder) || !closed_under_successors(sft, c.closed, closed)) {
        return fail("malformed aperiodic cylinder claim");
    }
    if ((sft.successors(c.cylinder.back()) & ~closed) != 0 || (closed >> c.cylinder.front() & 1)) {
        return fail("closed set does not separate the cylinder from itself");
    }
    return std::nullopt;
}

inline ValidationFailure check_shift_base(const ShiftSystem& sft, Property p, const Verdict& v)
{
    const bool proved = v.status() == Status::proved;
    const std::size_t m = sft.size();
    return std::visit(
        [&](const auto& c) -> ValidationFailure {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, CoveringLoop>) {
                if (!proved || p != Property::transitive) {
                    return mismatch(v, p);
                }
                return check_loop(sft, c.loop);
            } else if constexpr (std::is_same_v<T, PrimitiveExponent>) {
                if (!proved || !one_of(p, Property::transitive, Property::totally_transitive,
                                       Property::weakly_mixing, Property::exact)) {
                    return mismatch(v, p);
                }
                if (c.exponent == 0 || c.exponent > max_checked_power) {
                    return fail("exponent out of range");
                }
                for (auto row : power_rows(sft, c.exponent)) {
                    if (row != sft.all_symbols()) {
                        return fail("M^k has a zero entry");
                    }
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, CoprimeCycles>) {
                if (!proved || !one_of(p, Property::transitive, Property::totally_transitive,
                                       Property::weakly_mixing, Property::exact)) {
                    return mismatch(v, p);
                }
                if (auto f = check_loop(sft, c.covering_loop)) {
                    return f;
                }
                std::uint64_t g = 0;
                for (const auto& cyc : c.cycles) {
                    if (cyc.size() < 2 || cyc.front() != cyc.back() || !sft.is_allowed(cyc)) {
                        return fail("listed cycle is not an allowed closed walk");
                    }
                    g = std::gcd(g, cyc.size() - 1);
                }
                if (g != 1) {
                    return fail("cycle lengths are not coprime");
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, ExactCoverTimes>) {
                if (!proved || p != Property::exact) {
                    return mismatch(v, p);
                }
                return check_exact_times(sft, c);
            } else if constexpr (std::is_same_v<T, PeriodicCylinders>) {
                if (!proved || !one_of(p, Property::dense_periodic, Property::dense_small_periodic)) {
                    return mismatch(v, p);
                }
                if (c.level < 2) {
                    return fail("density needs cylinders of length at least 2");
                }
                std::set<Word> listed;
                for (const auto& [w, point] : c.entries) {
                    if (w.size() != c.level || !sft.is_allowed(w) || point.block.empty()) {
                        return fail("malformed periodic cylinder entry");
                    }
                    if (!sft.is_allowed(point.block) || !sft.allowed(point.block.back(), point.block.front())) {
                        return fail("periodic point is not in the shift");
                    }
                    if (!point.in_cylinder(w)) {
                        return fail("periodic point is not in its cylinder");
                    }
                    listed.insert(w);
                }
                if (listed.size() != allowed_words(sft, c.level).size()) {
                    return fail("some cylinder has no periodic point");
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, SymbolUnreachable>) {
                if (proved || !one_of(p, Property::transitive, Property::totally_transitive,
                                      Property::weakly_mixing, Property::exact)) {
                    return mismatch(v, p);
                }
                SymbolMask closed = 0;
                if (c.source >= m || c.target >= m || !closed_under_successors(sft, c.closed, closed)) {
                    return fail("malformed unreachability claim");
                }
                if ((sft.successors(c.source) & ~closed) != 0 || (closed >> c.target & 1)) {
                    return fail("closed set does not separate source from target");
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, ZeroEntry>) {
                if (proved || !one_of(p, Property::totally_transitive, Property::weakly_mixing, Property::exact)) {
                    return mismatch(v, p);
                }
                if (c.row >= m || c.col >= m || c.power < wielandt_bound(m) || c.power > max_checked_power) {
                    return fail("zero entry below the primitivity bound");
                }
                if (power_rows(sft, c.power)[c.row] >> c.col & 1) {
                    return fail("entry is not zero");
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, CyclicClasses>) {
                if (proved || !one_of(p, Property::totally_transitive, Property::weakly_mixing, Property::exact)) {
                    return mismatch(v, p);
                }
                if (c.period < 2 || c.classes.size() != m) {
                    return fail("malformed cyclic classes");
                }
                for (Symbol a = 0; a < m; ++a) {
                    for (Symbol b = 0; b < m; ++b) {
                        if (sft.allowed(a, b) && c.classes[b] != (c.classes[a] + 1) % c.period) {
                            return fail("an edge breaks the cyclic class order");
                        }
                    }
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, NeverFull>) {
                if (proved || p != Property::exact) {
                    return mismatch(v, p);
                }
                return check_never_full(sft, c);
            } else if constexpr (std::is_same_v<T, AperiodicCylinder>) {
                if (proved || !one_of(p, Property::dense_periodic, Property::dense_small_periodic)) {
                    return mismatch(v, p);
                }
                return check_aperiodic(sft, c);
            } else {
                return mismatch(v, p);
            }
        },
        v.certificate());
}

/// The forward orbit of the single point in [u], as explicit symbols with
/// a repeating suffix: x = prefix then cycle forever.
struct ForcedPoint {
    Word prefix;
    Word cycle;

    Symbol at(std::uint64_t i) const
    {
        return i < prefix.size() ? prefix[i] : cycle[(i - prefix.size()) % cycle.size()];
    }
};

inline std::optional<ForcedPoint> forced_point(const ShiftSystem& sft, const Word& u)
{
    Word x = u;
    std::map<Symbol, std::size_t> first_seen;  // symbol -> position, from the end of u on
    for (std::size_t pos = u.size() - 1;; ++pos) {
        Symbol s = x[pos];
        if (std::popcount(sft.successors(s)) != 1) {
            return std::nullopt;
        }
        if (auto it = first_seen.find(s); it != first_seen.end()) {
            ForcedPoint fp;
            fp.prefix.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(it->second));
            fp.cycle.assign(x.begin() + static_cast<std::ptrdiff_t>(it->second), x.begin() + static_cast<std::ptrdiff_t>(pos));
            return fp;
        }
        first_seen.emplace(s, pos);
        x.push_back(static_cast<Symbol>(std::countr_zero(sft.successors(s))));
    }
}

inline ValidationFailure check_obstruction(const ShiftSystem& sft, const VietorisObstruction& c)
{
    if (c.level == 0 || c.step == 0 || c.p_mask == 0 || c.q_mask == 0) {
        return fail("malformed obstruction");
    }
    const auto words = allowed_words(sft, c.level);
    if (words.size() > 64 || (words.size() < 64 && ((c.p_mask | c.q_mask) >> words.size()) != 0)) {
        return fail("mask outside the level's words");
    }
    std::vector<ForcedPoint> points;
    std::uint64_t tail = 0;
    std::uint64_t period = c.step;
    for (auto i : mask_members(c.p_mask)) {
        auto fp = forced_point(sft, words[i]);
        if (!fp) {
            return fail("[" + sft.render(words[i]) + "] is not a single point");
        }
        tail = std::max<std::uint64_t>(tail, fp->prefix.size());
        period = std::lcm(period, fp->cycle.size());
        points.push_back(std::move(*fp));
    }
    if (period > max_checked_power) {
        return fail("orbit period too large to check");
    }
    std::map<Word, std::uint32_t> index;
    for (std::size_t i = 0; i < words.size(); ++i) {
        index.emplace(words[i], static_cast<std::uint32_t>(i));
    }
    for (std::uint64_t n = c.step; n <= tail + period + c.step; n += c.step) {
        std::uint64_t hit = 0;
        bool inside = true;
        for (const auto& fp : points) {
            Word window;
            for (std::uint64_t i = 0; i < c.level; ++i) {
                window.push_back(fp.at(n + i));
            }
            auto it = index.find(window);
            if (it == index.end() || !(c.q_mask >> it->second & 1)) {
                inside = false;
                break;
            }
            hit |= std::uint64_t{1} << it->second;
        }
        if (inside && hit == c.q_mask) {
            return fail("the orbit enters <Q> at n = " + std::to_string(n));
        }
    }
    return std::nullopt;
}

class ReachCache {
public:
    explicit ReachCache(const ShiftSystem& sft) : sft_(sft) {}

    bool operator()(const Word& u, const Word& v, std::uint64_t n)
    {
        auto key = std::make_tuple(u, v, n);
        auto it = cache_.find(key);
        if (it == cache_.end()) {
            it = cache_.emplace(key, cylinder_reach(sft_, u, v, n)).first;
        }
        return it->second;
    }

    bool pair(const std::vector<Word>& words, std::uint64_t p, std::uint64_t q, std::uint64_t n)
    {
        for (auto i : mask_members(p)) {
            bool any = false;
            for (auto j : mask_members(q)) {
                any = any || (*this)(words[i], words[j], n);
            }
            if (!any) {
                return false;
            }
        }
        for (auto j : mask_members(q)) {
            bool any = false;
            for (auto i : mask_members(p)) {
                any = any || (*this)(words[i], words[j], n);
            }
            if (!any) {
                return false;
            }
        }
        return true;
    }

private:
    const ShiftSystem& sft_;
    std::map<std::tuple<Word, Word, std::uint64_t>, bool> cache_;
};

inline std::optional<std::vector<Word>> level_words(const ShiftSystem& sft, std::uint32_t level, std::size_t cap)
{
    if (level == 0) {
        return std::nullopt;
    }
    auto words = allowed_words(sft, level);
    if (words.size() > cap) {
        return std::nullopt;
    }
    return words;
}

} // namespace detail

inline ValidationFailure validate(const ShiftSystem& sft, Property p, const Verdict& v)
{
    if (auto pre = detail::preamble(v)) {
        return *pre;
    }
    return detail::check_shift_base(sft, p, v);
}

/// Verdicts about (K(X), sigma_K) for a shift X. Vietoris tables are checked
/// cylinder by cylinder through cylinder_reach; cover-time and periodicity
/// certificates carry over from X as described on each type.
inline ValidationFailure validate_hyperspace(const ShiftSystem& sft, Property p, const Verdict& v)
{
    using namespace detail;
    if (auto pre = preamble(v)) {
        return *pre;
    }
    const bool proved = v.status() == Status::proved;
    return std::visit(
        [&](const auto& c) -> ValidationFailure {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, VietorisReachTable>) {
                // Step 1 proves transitivity; a larger step proves it for that power.
                if (!proved || !one_of(p, Property::transitive, Property::totally_transitive) ||
                    (p == Property::transitive && c.step != 1) || c.step == 0) {
                    return mismatch(v, p);
                }
                auto words = level_words(sft, c.level, 16);
                if (!words) {
                    return fail("level has too many words to check");
                }
                const std::uint64_t sets = (std::uint64_t{1} << words->size()) - 1;
                ReachCache reach(sft);
                std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
                for (const auto& [pm, qm, n] : c.entries) {
                    if (pm == 0 || qm == 0 || pm > sets || qm > sets || n == 0 || n % c.step != 0) {
                        return fail("malformed reach entry");
                    }
                    if (!reach.pair(*words, pm, qm, n)) {
                        return fail("entry fails the cylinder reach condition");
                    }
                    seen.emplace(pm, qm);
                }
                if (seen.size() != sets * sets) {
                    return fail("some pair of basic opens is missing");
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, VietorisObstruction>) {
                if (proved || (c.step == 1 ? !one_of(p, Property::transitive, Property::totally_transitive,
                                                     Property::weakly_mixing, Property::exact)
                                           : p != Property::totally_transitive)) {
                    return mismatch(v, p);
                }
                return check_obstruction(sft, c);
            } else if constexpr (std::is_same_v<T, VietorisPeriodicTable>) {
                if (!proved || !one_of(p, Property::dense_periodic, Property::dense_small_periodic)) {
                    return mismatch(v, p);
                }
                auto words = level_words(sft, c.level, 16);
                if (!words) {
                    return fail("level has too many words to check");
                }
                const std::uint64_t sets = (std::uint64_t{1} << words->size()) - 1;
                std::set<std::uint64_t> seen;
                for (const auto& [mask, w] : c.entries) {
                    if (mask == 0 || mask > sets || !is_periodic_set(sft, w)) {
                        return fail("entry is not a periodic set");
                    }
                    // Z in <[u_1],...,[u_m]>: inside the union, meeting each.
                    std::uint64_t met = 0;
                    for (const auto& point : w.points) {
                        bool inside = false;
                        for (auto i : mask_members(mask)) {
                            if (point.in_cylinder((*words)[i])) {
                                inside = true;
                                met |= std::uint64_t{1} << i;
                            }
                        }
                        if (!inside) {
                            return fail("a periodic point lies outside the open");
                        }
                    }
                    if (met != mask) {
                        return fail("some cylinder of the open holds no point of Z");
                    }
                    seen.insert(mask);
                }
                if (seen.size() != sets) {
                    return fail("some basic open has no periodic set");
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, VietorisMixingTable>) {
                if (!proved || p != Property::weakly_mixing) {
                    return mismatch(v, p);
                }
                auto words = level_words(sft, c.level, 8);
                if (!words) {
                    return fail("level has too many words to check");
                }
                const std::uint64_t sets = (std::uint64_t{1} << words->size()) - 1;
                ReachCache reach(sft);
                std::set<std::array<std::uint64_t, 4>> seen;
                for (const auto& e : c.entries) {
                    for (int i = 0; i < 4; ++i) {
                        if (e[i] == 0 || e[i] > sets) {
                            return fail("malformed mixing entry");
                        }
                    }
                    if (e[4] == 0 || !reach.pair(*words, e[0], e[1], e[4]) || !reach.pair(*words, e[2], e[3], e[4])) {
                        return fail("entry fails the cylinder reach condition");
                    }
                    seen.insert({e[0], e[1], e[2], e[3]});
                }
                if (seen.size() != sets * sets * sets * sets) {
                    return fail("some quadruple of basic opens is missing");
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, ExactCoverTimes>) {
                // sigma_K^n <P> = K(X) exactly when sigma^n [u] = X for all u in P.
                if (!proved || p != Property::exact) {
                    return mismatch(v, p);
                }
                return check_exact_times(sft, c);
            } else if constexpr (std::is_same_v<T, NeverFull>) {
                // A point outside sigma^n [u] gives a singleton outside sigma_K^n <[u]>.
                if (proved || p != Property::exact) {
                    return mismatch(v, p);
                }
                return check_never_full(sft, c);
            } else if constexpr (std::is_same_v<T, AperiodicCylinder>) {
                // A periodic set in <[u]> would be sigma^k-invariant inside [u].
                if (proved || !one_of(p, Property::dense_periodic, Property::dense_small_periodic)) {
                    return mismatch(v, p);
                }
                return check_aperiodic(sft, c);
            } else {
                return mismatch(v, p);
            }
        },
        v.certificate());
}

// ---- interval maps ------------------------------------------------------------------

inline ValidationFailure validate(const PLSystem& f, Property p, const Verdict& v)
{
    using namespace detail;
    if (auto pre = preamble(v)) {
        return *pre;
    }
    if (v.status() == Status::refuted) {
        return fail("a finite cover cannot refute a property of an interval map");
    }
    return std::visit(
        [&](const auto& c) -> ValidationFailure {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, PLReachTable> || std::is_same_v<T, PLMixingTable> ||
                          std::is_same_v<T, PLPeriodicBrackets> || std::is_same_v<T, PLCoverTimes>) {
                if (c.depth > 12 || v.resolution() != c.depth) {
                    return fail("resolution does not match the certificate depth");
                }
            }
            if constexpr (std::is_same_v<T, PLReachTable>) {
                if (!one_of(p, Property::transitive, Property::totally_transitive)) {
                    return mismatch(v, p);
                }
                const std::uint64_t cells = std::uint64_t{1} << c.depth;
                std::set<std::array<std::uint64_t, 3>> seen;
                std::uint64_t max_power = 0;
                for (const auto& [power, i, j, m] : c.entries) {
                    if (power == 0 || i >= cells || j >= cells || m == 0 || power * m > 4096) {
                        return fail("malformed reach entry");
                    }
                    Interval img = pl_iterate_interval(f, dyadic_cell(c.depth, i), power * m);
                    if (!meets_interior(img, dyadic_cell(c.depth, j))) {
                        return fail("image misses the target cell interior");
                    }
                    seen.insert({power, i, j});
                    max_power = std::max(max_power, power);
                }
                if (p == Property::transitive && max_power != 1) {
                    return fail("transitivity table must use power 1");
                }
                if (seen.size() != max_power * cells * cells) {
                    return fail("some (power, cell, cell) combination is missing");
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, PLMixingTable>) {
                if (p != Property::weakly_mixing) {
                    return mismatch(v, p);
                }
                const std::uint64_t cells = std::uint64_t{1} << c.depth;
                std::set<std::array<std::uint64_t, 4>> seen;
                for (const auto& [i, j, k, l, n] : c.entries) {
                    if (i >= cells || j >= cells || k >= cells || l >= cells || n == 0 || n > 4096) {
                        return fail("malformed mixing entry");
                    }
                    if (!meets_interior(pl_iterate_interval(f, dyadic_cell(c.depth, i), n), dyadic_cell(c.depth, k)) ||
                        !meets_interior(pl_iterate_interval(f, dyadic_cell(c.depth, j), n), dyadic_cell(c.depth, l))) {
                        return fail("image misses a target cell interior");
                    }
                    seen.insert({i, j, k, l});
                }
                if (seen.size() != cells * cells * cells * cells) {
                    return fail("some quadruple of cells is missing");
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, PLPeriodicBrackets>) {
                if (!one_of(p, Property::dense_periodic, Property::dense_small_periodic)) {
                    return mismatch(v, p);
                }
                const std::uint64_t cells = std::uint64_t{1} << c.depth;
                std::set<std::uint64_t> seen;
                for (const auto& b : c.brackets) {
                    if (b.cell >= cells || b.n == 0 || b.n > 4096 || !(b.lo < b.hi)) {
                        return fail("malformed bracket");
                    }
                    Interval cell = dyadic_cell(c.depth, b.cell);
                    Interval j{b.lo, b.hi};
                    if (!(cell.lo < b.lo && b.hi < cell.hi)) {
                        return fail("bracket touches the cell boundary");
                    }
                    if (!pl_iterate_interval(f, j, b.n).contains(j)) {
                        return fail("f^n(J) does not contain J");
                    }
                    seen.insert(b.cell);
                }
                if (seen.size() != cells) {
                    return fail("some cell has no bracket");
                }
                return std::nullopt;
            } else if constexpr (std::is_same_v<T, PLCoverTimes>) {
                if (p != Property::exact) {
                    return mismatch(v, p);
                }
                const std::uint64_t cells = std::uint64_t{1} << c.depth;
                if (c.steps.size() != cells) {
                    return fail("one cover time per cell expected");
                }
                for (std::uint64_t i = 0; i < cells; ++i) {
                    if (c.steps[i] > 4096 || pl_iterate_interval(f, dyadic_cell(c.depth, i), c.steps[i]) != unit_interval()) {
                        return fail("cell image is not [0,1]");
                    }
                }
                return std::nullopt;
            } else {
                return mismatch(v, p);
            }
        },
        v.certificate());
}

} // namespace hypercheck
