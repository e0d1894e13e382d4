#pragma once

// Definition-level evaluation on small finite systems: every nonempty subset is
// an open set, and each quantifier is run literally with the stated bounds.
// Used to validate the optimized checkers, never to produce fast answers.

#include <cstdint>
#include <string>
#include <vector>

#include "hypercheck/error.hpp"
#include "hypercheck/finite_system.hpp"
#include "hypercheck/properties.hpp"
#include "hypercheck/verdict.hpp"

namespace hypercheck {

inline constexpr std::size_t oracle_cap = 6;

namespace detail {

using Mask = std::uint64_t;

struct SubsetDynamics {
    std::size_t n;
    std::vector<Mask> image;  // image[mask] = T(mask)

    explicit SubsetDynamics(const FiniteMap& map) : n(map.size()), image(Mask{1} << map.size(), 0)
    {
        for (Mask m = 1; m < image.size(); ++m) {
            for (PointIndex x = 0; x < n; ++x) {
                if (m >> x & 1) {
                    image[m] |= Mask{1} << map(x);
                }
            }
        }
    }

    Mask full() const { return (Mask{1} << n) - 1; }
    Mask apply(Mask m, std::uint64_t times) const
    {
        for (std::uint64_t i = 0; i < times; ++i) {
            m = image[m];
        }
        return m;
    }
};

/// Bit n - 1 set when T^(power*n) U meets V, n in 1..bound.
inline std::uint64_t hit_times(const SubsetDynamics& d, Mask u, Mask v, std::uint64_t power, std::uint64_t bound)
{
    std::uint64_t bits = 0;
    Mask img = u;
    for (std::uint64_t n = 1; n <= bound; ++n) {
        img = d.apply(img, power);
        if (img & v) {
            bits |= std::uint64_t{1} << (n - 1);
        }
    }
    return bits;
}

inline Verdict oracle_transitive(const SubsetDynamics& d, std::uint64_t power)
{
    const std::uint64_t bound = d.n;
    OracleTable table;
    for (Mask u = 1; u <= d.full(); ++u) {
        for (Mask v = 1; v <= d.full(); ++v) {
            std::uint64_t bits = hit_times(d, u, v, power, bound);
            if (bits == 0) {
                return Verdict::refuted(Method::exhaustive, OracleFailure{{u, v}, bound, power});
            }
            table.rows.push_back({power, u, v, static_cast<std::uint64_t>(std::countr_zero(bits)) + 1});
        }
    }
    return Verdict::proved(Method::exhaustive, std::move(table));
}

inline Verdict oracle_weakly_mixing(const SubsetDynamics& d)
{
    // Rectangles U1 x U2, V1 x V2 form a basis of the product topology.
    const std::uint64_t bound = d.n * d.n;
    const std::size_t sets = d.full();
    std::vector<std::uint64_t> hits(sets * sets);
    for (Mask u = 1; u <= d.full(); ++u) {
        for (Mask v = 1; v <= d.full(); ++v) {
            hits[(u - 1) * sets + (v - 1)] = hit_times(d, u, v, 1, bound);
        }
    }
    OracleTable table;
    for (Mask u1 = 1; u1 <= d.full(); ++u1) {
        for (Mask v1 = 1; v1 <= d.full(); ++v1) {
            for (Mask u2 = 1; u2 <= d.full(); ++u2) {
                for (Mask v2 = 1; v2 <= d.full(); ++v2) {
                    std::uint64_t both = hits[(u1 - 1) * sets + (v1 - 1)] & hits[(u2 - 1) * sets + (v2 - 1)];
                    if (both == 0) {
                        return Verdict::refuted(Method::exhaustive, OracleFailure{{u1, u2, v1, v2}, bound, 1});
                    }
                    table.rows.push_back({u1, u2, v1, v2, static_cast<std::uint64_t>(std::countr_zero(both)) + 1});
                }
            }
        }
    }
    return Verdict::proved(Method::exhaustive, std::move(table));
}

inline Verdict oracle_dense_periodic(const SubsetDynamics& d, const FiniteMap& map)
{
    OracleTable table;
    for (Mask u = 1; u <= d.full(); ++u) {
        bool found = false;
        for (PointIndex x = 0; x < d.n && !found; ++x) {
            if (!(u >> x & 1)) {
                continue;
            }
            for (std::uint64_t p = 1; p <= d.n && !found; ++p) {
                if (map.iterate(x, p) == x) {
                    table.rows.push_back({u, x, p});
                    found = true;
                }
            }
        }
        if (!found) {
            return Verdict::refuted(Method::exhaustive, OracleFailure{{u}, d.n, 1});
        }
    }
    return Verdict::proved(Method::exhaustive, std::move(table));
}

inline Verdict oracle_dense_small_periodic(const SubsetDynamics& d, std::uint64_t k_max)
{
    const std::uint64_t bound = d.n * k_max;
    OracleTable table;
    for (Mask u = 1; u <= d.full(); ++u) {
        bool found = false;
        // Smallest k first, then smallest Y.
        for (std::uint64_t k = 1; k <= bound && !found; ++k) {
            for (Mask y = 1; y <= u && !found; ++y) {
                if ((y & ~u) == 0 && (d.apply(y, k) & ~y) == 0) {
                    table.rows.push_back({u, y, k});
                    found = true;
                }
            }
        }
        if (!found) {
            return Verdict::refuted(Method::exhaustive, OracleFailure{{u}, bound, 1});
        }
    }
    return Verdict::proved(Method::exhaustive, std::move(table));
}

inline Verdict oracle_exact(const SubsetDynamics& d, std::uint64_t horizon)
{
    OracleTable table;
    for (Mask u = 1; u <= d.full(); ++u) {
        Mask img = u;
        std::uint64_t hit = 0;
        for (std::uint64_t n = 1; n <= horizon && hit == 0; ++n) {
            img = d.image[img];
            if (img == d.full()) {
                hit = n;
            }
        }
        if (hit == 0) {
            return Verdict::refuted(Method::exhaustive, OracleFailure{{u}, horizon, 1});
        }
        table.rows.push_back({u, hit});
    }
    return Verdict::proved(Method::exhaustive, std::move(table));
}

} // namespace detail

/// Literal evaluation of a property's definition. Bounds: n <= |X| for
/// transitivity (|X|^2 for weak mixing), powers up to n_max, k <= |X| * k_max
/// for invariant sets, n <= horizon for exactness. Zero budgets mean |X|.
inline Verdict brute_force_oracle(const FiniteMap& map, Property property, const Budgets& b = {})
{
    if (map.size() > oracle_cap) {
        throw CapExceeded("oracle is limited to " + std::to_string(oracle_cap) + " points");
    }
    const detail::SubsetDynamics d(map);
    const std::uint64_t n = map.size();
    switch (property) {
    case Property::transitive: return detail::oracle_transitive(d, 1);
    case Property::totally_transitive: {
        const std::uint64_t n_max = b.n_max != 0 ? b.n_max : n;
        OracleTable all;
        for (std::uint64_t p = 1; p <= n_max; ++p) {
            Verdict v = detail::oracle_transitive(d, p);
            if (v.status() == Status::refuted) {
                return v;
            }
            const auto& rows = std::get<OracleTable>(v.certificate()).rows;
            all.rows.insert(all.rows.end(), rows.begin(), rows.end());
        }
        return Verdict::proved(Method::exhaustive, std::move(all));
    }
    case Property::weakly_mixing: return detail::oracle_weakly_mixing(d);
    case Property::dense_periodic: return detail::oracle_dense_periodic(d, map);
    case Property::dense_small_periodic: return detail::oracle_dense_small_periodic(d, b.k_max != 0 ? b.k_max : n);
    case Property::exact: return detail::oracle_exact(d, b.horizon != 0 ? b.horizon : n);
    }
    throw InvalidInput("unknown property");
}

inline Verdict brute_force_oracle(const FiniteSystem& sys, Property property, const Budgets& b = {})
{
    return brute_force_oracle(sys.map(), property, b);
}

} // namespace hypercheck
