#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hypercheck/error.hpp"
#include "hypercheck/rational.hpp"

namespace hypercheck {

/// Closed interval [lo, hi] with rational endpoints; lo == hi is a point.
struct Interval {
    Rational lo;
    Rational hi;

    bool contains(const Interval& other) const { return lo <= other.lo && other.hi <= hi; }
    bool degenerate() const { return lo == hi; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Sorted, pairwise disjoint closed intervals. Overlapping or touching parts
/// are merged on construction.
class IntervalUnion {
public:
    IntervalUnion() = default;

    explicit IntervalUnion(std::vector<Interval> parts)
    {
        for (const auto& p : parts) {
            if (p.lo > p.hi) {
                throw InvalidInput("interval with lo > hi");
            }
        }
        std::sort(parts.begin(), parts.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
        for (auto& p : parts) {
            if (!parts_.empty() && p.lo <= parts_.back().hi) {
                parts_.back().hi = std::max(parts_.back().hi, p.hi);
            } else {
                parts_.push_back(std::move(p));
            }
        }
    }

    const std::vector<Interval>& parts() const noexcept { return parts_; }
    bool empty() const noexcept { return parts_.empty(); }

    /// Single-interval view; throws when the union is empty or disconnected.
    const Interval& as_interval() const
    {
        if (parts_.size() != 1) {
            throw PreconditionViolation("interval union is not a single interval");
        }
        return parts_.front();
    }

    bool contains(const Interval& j) const
    {
        return std::any_of(parts_.begin(), parts_.end(), [&](const Interval& p) { return p.contains(j); });
    }

    friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

private:
    std::vector<Interval> parts_;
};

/// Continuous piecewise-linear self-map of [0, 1] interpolating
/// (breakpoints[i], values[i]).
class PLSystem {
public:
    static PLSystem make(std::vector<Rational> breakpoints, std::vector<Rational> values)
    {
        if (breakpoints.size() < 2) {
            throw InvalidInput("a piecewise-linear map needs at least two breakpoints");
        }
        if (breakpoints.size() != values.size()) {
            throw InvalidInput("breakpoints and values differ in length");
        }
        if (breakpoints.front() != 0 || breakpoints.back() != 1) {
            throw InvalidInput("breakpoints must start at 0 and end at 1");
        }
        for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
            if (!(breakpoints[i] < breakpoints[i + 1])) {
                throw InvalidInput("breakpoints must be strictly increasing");
            }
        }
        for (const auto& v : values) {
            if (v < 0 || v > 1) {
                throw InvalidInput("map values must lie in [0, 1]");
            }
        }
        PLSystem out;
        out.breakpoints_ = std::move(breakpoints);
        out.values_ = std::move(values);
        return out;
    }

    /// Tent map: 0 -> 0, 1/2 -> 1, 1 -> 0.
    static PLSystem tent()
    {
        return make({Rational(0), Rational(1, 2), Rational(1)}, {Rational(0), Rational(1), Rational(0)});
    }

    const std::vector<Rational>& breakpoints() const noexcept { return breakpoints_; }
    const std::vector<Rational>& values() const noexcept { return values_; }
    std::size_t pieces() const noexcept { return breakpoints_.size() - 1; }

    Rational operator()(const Rational& x) const
    {
        if (x < 0 || x > 1) {
            throw InvalidInput("point outside [0, 1]");
        }
        auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
        std::size_t i = it == breakpoints_.end() ? pieces() - 1 : static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
        return value_on_piece(i, x);
    }

    Rational value_on_piece(std::size_t i, const Rational& x) const
    {
        const Rational& b0 = breakpoints_[i];
        const Rational& b1 = breakpoints_[i + 1];
        return values_[i] + (values_[i + 1] - values_[i]) * (x - b0) / (b1 - b0);
    }

private:
    PLSystem() = default;

    std::vector<Rational> breakpoints_;
    std::vector<Rational> values_;
};

/// Exact image f(J): on each linear piece meeting J the image is spanned by
/// the two clipped endpoint values; the union is merged.
inline IntervalUnion pl_image_of_interval(const PLSystem& f, const Interval& j)
{
    if (j.lo < 0 || j.hi > 1 || j.lo > j.hi) {
        throw InvalidInput("interval must satisfy 0 <= lo <= hi <= 1");
    }
    std::vector<Interval> images;
    const auto& b = f.breakpoints();
    for (std::size_t i = 0; i < f.pieces(); ++i) {
        if (b[i + 1] < j.lo || b[i] > j.hi) {
            continue;
        }
        Rational lo = std::max(b[i], j.lo);
        Rational hi = std::min(b[i + 1], j.hi);
        Rational a = f.value_on_piece(i, lo);
        Rational c = f.value_on_piece(i, hi);
        images.push_back(a <= c ? Interval{a, c} : Interval{c, a});
    }
    return IntervalUnion(std::move(images));
}

inline IntervalUnion pl_image(const PLSystem& f, const IntervalUnion& set)
{
    std::vector<Interval> images;
    for (const auto& part : set.parts()) {
        const auto& img = pl_image_of_interval(f, part).parts();
        images.insert(images.end(), img.begin(), img.end());
    }
    return IntervalUnion(std::move(images));
}

/// f^n(J) as a single interval (images of intervals under a continuous map
/// stay intervals).
inline Interval pl_iterate_interval(const PLSystem& f, Interval j, std::uint64_t n)
{
    for (std::uint64_t i = 0; i < n; ++i) {
        j = pl_image_of_interval(f, j).as_interval();
    }
    return j;
}

/// The j-th dyadic cell [j / 2^depth, (j + 1) / 2^depth].
inline Interval dyadic_cell(std::uint32_t depth, std::uint64_t j)
{
    if (depth >= 63 || j >= (std::uint64_t{1} << depth)) {
        throw InvalidInput("dyadic cell index out of range");
    }
    Integer scale = Integer(1) << depth;
    return Interval{Rational(Integer(j), scale), Rational(Integer(j + 1), scale)};
}

inline const Interval& unit_interval()
{
    static const Interval unit{Rational(0), Rational(1)};
    return unit;
}

} // namespace hypercheck
