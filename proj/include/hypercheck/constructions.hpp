#pragma once

// Witness constructions used when a basic open of K(X) needs a periodic point:
// one periodic part per disjoint cell, combined into a single set.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "hypercheck/certificates.hpp"
#include "hypercheck/error.hpp"
#include "hypercheck/finite_system.hpp"
#include "hypercheck/shift_system.hpp"

namespace hypercheck {

enum class CombineMode { product, lcm };

/// Whether (T_K)^k Z = Z for a finite point set.
inline bool is_periodic_set(const FiniteMap& map, const PeriodicSetWitness<PointIndex>& w)
{
    if (w.points.empty() || w.k == 0) {
        return false;
    }
    ClosedSet::Bits z(map.size());
    ClosedSet::Bits image(map.size());
    for (PointIndex p : w.points) {
        if (p >= map.size()) {
            return false;
        }
        z.set(p);
        image.set(Orbit(map, p).at(w.k));
    }
    return z == image;
}

/// Whether (sigma_K)^k Z = Z for a finite set of periodic points.
inline bool is_periodic_set(const ShiftSystem& sft, const PeriodicSetWitness<PeriodicWord>& w)
{
    if (w.points.empty() || w.k == 0) {
        return false;
    }
    std::vector<Word> z;
    std::vector<Word> image;
    for (const auto& p : w.points) {
        if (p.block.empty() || !sft.is_allowed(p.block) || !sft.allowed(p.block.back(), p.block.front())) {
            return false;
        }
        z.push_back(p.root());
        image.push_back(p.shifted(w.k).root());
    }
    std::sort(z.begin(), z.end());
    z.erase(std::unique(z.begin(), z.end()), z.end());
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    return z == image;
}

/// The point (u r)^inf of [u], written with its least period, where r is the lexicographically least
/// shortest return path from the last symbol of u to its first.
inline PeriodicWord find_periodic_point_in_cylinder(const ShiftSystem& sft, const Word& u)
{
    if (!sft.is_allowed(u)) {
        throw InvalidInput("word '" + sft.render(u) + "' is not allowed");
    }
    Word path = sft.shortest_path(u.back(), u.front());
    if (path.empty()) {
        throw PreconditionViolation("cylinder [" + sft.render(u) + "] lies on no cycle");
    }
    Word block = u;
    block.insert(block.end(), path.begin() + 1, path.end() - 1);
    return PeriodicWord{PeriodicWord{std::move(block)}.root()};
}

namespace detail {

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b)
{
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw CapExceeded("period product overflows 64 bits; use lcm mode");
    }
    return out;
}

template <class Point, class System>
PeriodicSetWitness<Point> combine(const System& sys, const std::vector<PeriodicSetWitness<Point>>& parts,
                                  CombineMode mode)
{
    if (parts.empty()) {
        throw InvalidInput("no witnesses to combine");
    }
    PeriodicSetWitness<Point> out;
    out.k = 1;
    for (const auto& part : parts) {
        if (!is_periodic_set(sys, part)) {
            throw PreconditionViolation("part does not satisfy T^k Z = Z");
        }
        out.k = mode == CombineMode::product ? checked_mul(out.k, part.k) : std::lcm(out.k, part.k);
        for (const auto& p : part.points) {
            if (std::find(out.points.begin(), out.points.end(), p) == out.points.end()) {
                out.points.push_back(p);
            }
        }
    }
    std::sort(out.points.begin(), out.points.end());
    if (!is_periodic_set(sys, out)) {
        throw PreconditionViolation("combined witness fails (T_K)^k Z = Z");
    }
    return out;
}

} // namespace detail

/// Z = union of the parts; k = product of the k_i (default) or their lcm.
inline PeriodicSetWitness<PointIndex> combine_witnesses(const FiniteMap& map,
                                                        const std::vector<PeriodicSetWitness<PointIndex>>& parts,
                                                        CombineMode mode = CombineMode::product)
{
    return detail::combine(map, parts, mode);
}

inline PeriodicSetWitness<PeriodicWord> combine_witnesses(const ShiftSystem& sft,
                                                          const std::vector<PeriodicSetWitness<PeriodicWord>>& parts,
                                                          CombineMode mode = CombineMode::product)
{
    return detail::combine(sft, parts, mode);
}

/// Eventual image of Y under T^k: the intersection of T^{km} Y over m >= 0.
/// Requires T^k Y to be a subset of Y; the result satisfies T^k Z = Z.
inline ClosedSet periodic_kernel(const ClosedSet& y, std::uint64_t k, const FiniteMap& map)
{
    if (k == 0) {
        throw PreconditionViolation("k must be positive");
    }
    if (y.universe() != map.size()) {
        throw InvalidInput("set and system live in different spaces");
    }
    ClosedSet::Bits current = y.bits();
    ClosedSet::Bits next = map.image(current, k);
    if (!next.is_subset_of(current)) {
        throw PreconditionViolation("T^k Y is not contained in Y");
    }
    while (next != current) {
        current = next;
        next = map.image(current, k);
    }
    return ClosedSet::from_bits(current);
}

} // namespace hypercheck
