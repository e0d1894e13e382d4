#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hypercheck/error.hpp"
#include "hypercheck/metric.hpp"

namespace hypercheck {

/// Total self-map of {0, ..., n-1}. The topology of a finite metric space is
/// discrete, so the map alone determines every dynamical property.
class FiniteMap {
public:
    FiniteMap() = default;

    explicit FiniteMap(std::vector<PointIndex> image) : image_(std::move(image))
    {
        if (image_.empty()) {
            throw InvalidInput("a finite map needs at least one point");
        }
        for (std::size_t i = 0; i < image_.size(); ++i) {
            if (image_[i] >= image_.size()) {
                throw InvalidInput("map entry " + std::to_string(i) + " -> " + std::to_string(image_[i]) +
                                   " is outside a space of " + std::to_string(image_.size()) + " points");
            }
        }
    }

    std::size_t size() const noexcept { return image_.size(); }
    PointIndex operator()(PointIndex x) const { return image_[x]; }
    const std::vector<PointIndex>& table() const noexcept { return image_; }

    PointIndex iterate(PointIndex x, std::uint64_t times) const
    {
        for (std::uint64_t i = 0; i < times; ++i) {
            x = image_[x];
        }
        return x;
    }

    ClosedSet::Bits image(const ClosedSet::Bits& set) const
    {
        ClosedSet::Bits out(image_.size());
        for (auto i = set.find_first(); i != ClosedSet::Bits::npos; i = set.find_next(i)) {
            out.set(image_[i]);
        }
        return out;
    }

    ClosedSet image(const ClosedSet& set) const { return ClosedSet::from_bits(image(set.bits())); }

    /// k-fold image of a set.
    ClosedSet::Bits image(ClosedSet::Bits set, std::uint64_t k) const
    {
        for (std::uint64_t i = 0; i < k; ++i) {
            set = image(set);
        }
        return set;
    }

    friend bool operator==(const FiniteMap&, const FiniteMap&) = default;

private:
    std::vector<PointIndex> image_;
};

/// Product map T x T on pairs encoded as a * n + b.
inline FiniteMap product_map(const FiniteMap& map)
{
    const std::size_t n = map.size();
    std::vector<PointIndex> image(n * n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            image[a * n + b] = static_cast<PointIndex>(map(static_cast<PointIndex>(a)) * n +
                                                        map(static_cast<PointIndex>(b)));
        }
    }
    return FiniteMap(std::move(image));
}

/// Cycle structure of a functional graph: period[x] is the least period of x,
/// or 0 when x is not periodic; cycle[x] names the cycle x lies on or falls into.
struct CycleStructure {
    std::vector<std::uint64_t> period;
    std::vector<std::uint32_t> cycle;
    std::uint32_t cycle_count = 0;
};

inline CycleStructure cycle_structure(const FiniteMap& map)
{
    const std::size_t n = map.size();
    constexpr std::uint32_t unset = UINT32_MAX;
    CycleStructure out;
    out.period.assign(n, 0);
    out.cycle.assign(n, unset);
    std::vector<std::uint32_t> visit(n, unset); // walk id that first touched the point
    std::vector<PointIndex> path;
    for (PointIndex start = 0; start < n; ++start) {
        if (out.cycle[start] != unset) {
            continue;
        }
        path.clear();
        PointIndex x = start;
        while (out.cycle[x] == unset && visit[x] != start) {
            visit[x] = start;
            path.push_back(x);
            x = map(x);
        }
        std::uint32_t id;
        if (out.cycle[x] == unset) {
            // Closed a new cycle at x; it is the suffix of the path from x.
            id = out.cycle_count++;
            std::size_t from = 0;
            while (path[from] != x) {
                ++from;
            }
            const std::uint64_t len = path.size() - from;
            for (std::size_t i = from; i < path.size(); ++i) {
                out.period[path[i]] = len;
                out.cycle[path[i]] = id;
            }
            path.resize(from);
        } else {
            id = out.cycle[x];
        }
        for (PointIndex p : path) {
            out.cycle[p] = id;
        }
    }
    return out;
}

/// Forward orbit of one point, stored as tail followed by cycle, so that
/// T^k(x) is available in O(1) for any k.
class Orbit {
public:
    Orbit(const FiniteMap& map, PointIndex x)
    {
        std::vector<std::uint64_t> seen(map.size(), UINT64_MAX);
        std::vector<PointIndex> walk;
        while (seen[x] == UINT64_MAX) {
            seen[x] = walk.size();
            walk.push_back(x);
            x = map(x);
        }
        tail_ = seen[x];
        points_ = std::move(walk);
    }

    PointIndex at(std::uint64_t k) const
    {
        if (k < tail_) {
            return points_[k];
        }
        const std::uint64_t cycle = points_.size() - tail_;
        return points_[tail_ + (k - tail_) % cycle];
    }

    std::uint64_t tail() const noexcept { return tail_; }
    std::uint64_t cycle_length() const noexcept { return points_.size() - tail_; }

private:
    std::vector<PointIndex> points_;
    std::uint64_t tail_ = 0;
};

/// Finite metric space together with a total self-map.
class FiniteSystem {
public:
    FiniteSystem(FinitePointSpace space, FiniteMap map) : space_(std::move(space)), map_(std::move(map))
    {
        if (space_.size() != map_.size()) {
            throw InvalidInput("map table has " + std::to_string(map_.size()) + " entries for " +
                               std::to_string(space_.size()) + " points");
        }
    }

    /// Map on a discrete space (all distinct points at distance 1).
    static FiniteSystem discrete(std::vector<PointIndex> table)
    {
        auto space = FinitePointSpace::discrete(table.size());
        return FiniteSystem(std::move(space), FiniteMap(std::move(table)));
    }

    const FinitePointSpace& space() const noexcept { return space_; }
    const FiniteMap& map() const noexcept { return map_; }
    std::size_t size() const noexcept { return map_.size(); }

private:
    FinitePointSpace space_;
    FiniteMap map_;
};

/// Validated construction from a raw table; negative or out-of-range targets
/// and missing entries are rejected.
inline FiniteSystem make_finite_system(FinitePointSpace space, std::span<const std::int64_t> table)
{
    if (table.size() < space.size()) {
        throw InvalidInput("map table is missing entries: " + std::to_string(table.size()) + " of " +
                           std::to_string(space.size()));
    }
    if (table.size() > space.size()) {
        throw InvalidInput("map table has more entries than points");
    }
    std::vector<PointIndex> image;
    image.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (table[i] < 0 || static_cast<std::uint64_t>(table[i]) >= space.size()) {
            throw InvalidInput("map entry " + std::to_string(i) + " -> " + std::to_string(table[i]) +
                               " is outside a space of " + std::to_string(space.size()) + " points");
        }
        image.push_back(static_cast<PointIndex>(table[i]));
    }
    return FiniteSystem(std::move(space), FiniteMap(std::move(image)));
}

} // namespace hypercheck
