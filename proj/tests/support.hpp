#pragma once

// Independent reference computations shared by the unit tests and the
// acceptance binary. Nothing here calls the code under test.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "hypercheck/metric.hpp"
#include "hypercheck/rational.hpp"

namespace testsupport {

using hypercheck::DistanceTable;
using hypercheck::Rational;

/// Shortest-path closure of random positive rational edge weights. The result
/// is a metric by construction.
inline DistanceTable random_metric(std::mt19937_64& rng, std::size_t n)
{
    std::uniform_int_distribution<int> num(1, 12);
    std::uniform_int_distribution<int> den(1, 4);
    DistanceTable d(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            d[i][j] = d[j][i] = Rational(num(rng), den(rng));
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                Rational via = d[i][k] + d[k][j];
                d[i][j] = std::min(d[i][j], via);
            }
        }
    }
    return d;
}

inline std::vector<std::size_t> members(std::uint64_t mask)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; mask >> i; ++i) {
        if (mask >> i & 1) {
            out.push_back(i);
        }
    }
    return out;
}

/// max of the two directed max-min distances, straight from the table.
inline Rational naive_hausdorff(const DistanceTable& d, std::uint64_t a, std::uint64_t b)
{
    auto directed = [&](std::uint64_t from, std::uint64_t to) {
        Rational worst(0);
        for (auto x : members(from)) {
            std::optional<Rational> best;
            for (auto y : members(to)) {
                if (!best || d[x][y] < *best) {
                    best = d[x][y];
                }
            }
            worst = std::max(worst, *best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

/// Every self-map of {0..n-1}, in lexicographic order of the table.
inline std::vector<std::vector<std::uint32_t>> all_maps(std::size_t n)
{
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t> t(n, 0);
    for (;;) {
        out.push_back(t);
        std::size_t i = 0;
        while (i < n && ++t[i] == n) {
            t[i++] = 0;
        }
        if (i == n) {
            return out;
        }
    }
}

using BoolMatrix = std::vector<std::vector<bool>>;

inline BoolMatrix multiply(const BoolMatrix& a, const BoolMatrix& b)
{
    const std::size_t n = a.size();
    BoolMatrix c(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k]) {
                for (std::size_t j = 0; j < n; ++j) {
                    c[i][j] = c[i][j] || b[k][j];
                }
            }
        }
    }
    return c;
}

inline bool all_true(const BoolMatrix& m)
{
    for (const auto& r : m) {
        for (bool x : r) {
            if (!x) {
                return false;
            }
        }
    }
    return true;
}

/// Transitive closure by Warshall: irreducible iff every entry is reachable.
inline bool irreducible(const BoolMatrix& m)
{
    BoolMatrix r = m;
    const std::size_t n = m.size();
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                r[i][j] = r[i][j] || (r[i][k] && r[k][j]);
            }
        }
    }
    return all_true(r);
}

/// Some power up to (n-1)^2 + 1 is strictly positive.
inline bool primitive(const BoolMatrix& m)
{
    const std::size_t n = m.size();
    BoolMatrix p = m;
    for (std::size_t e = 1; e <= (n - 1) * (n - 1) + 1; ++e) {
        if (all_true(p)) {
            return true;
        }
        p = multiply(p, m);
    }
    return false;
}

/// Edge (a,b) -> (c,d) iff a -> c and b -> d.
inline BoolMatrix product_graph(const BoolMatrix& m)
{
    const std::size_t n = m.size();
    BoolMatrix g(n * n, std::vector<bool>(n * n, false));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                for (std::size_t d = 0; d < n; ++d) {
                    g[a * n + b][c * n + d] = m[a][c] && m[b][d];
                }
            }
        }
    }
    return g;
}

} // namespace testsupport
