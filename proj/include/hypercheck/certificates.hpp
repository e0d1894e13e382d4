#pragma once

// Proof objects carried by verdicts. Each type states, in its comment, the
// claim that re-validation checks by direct evaluation (see validate.hpp).

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hypercheck/metric.hpp"
#include "hypercheck/rational.hpp"
#include "hypercheck/shift_system.hpp"

namespace hypercheck {

/// The periodic point block^inf of a shift space; its period divides block.size().
struct PeriodicWord {
    Word block;

    std::uint64_t period() const noexcept { return block.size(); }

    /// Shortest block generating the same point.
    Word root() const
    {
        const std::size_t n = block.size();
        for (std::size_t p = 1; p <= n; ++p) {
            if (n % p != 0) {
                continue;
            }
            bool ok = true;
            for (std::size_t i = p; i < n && ok; ++i) {
                ok = block[i] == block[i - p];
            }
            if (ok) {
                return Word(block.begin(), block.begin() + static_cast<std::ptrdiff_t>(p));
            }
        }
        return block;
    }

    /// sigma^k of the point.
    PeriodicWord shifted(std::uint64_t k) const
    {
        Word out(block.size());
        const std::size_t off = static_cast<std::size_t>(k % block.size());
        for (std::size_t i = 0; i < block.size(); ++i) {
            out[i] = block[(i + off) % block.size()];
        }
        return PeriodicWord{std::move(out)};
    }

    /// Whether the point lies in the cylinder [u].
    bool in_cylinder(const Word& u) const
    {
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (block[i % block.size()] != u[i]) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const PeriodicWord& a, const PeriodicWord& b) { return a.root() == b.root(); }
    friend bool operator<(const PeriodicWord& a, const PeriodicWord& b) { return a.root() < b.root(); }
};

/// (Z, k) with (T_K)^k Z = Z. Point is PointIndex for finite systems and
/// PeriodicWord for shifts.
template <class Point>
struct PeriodicSetWitness {
    std::vector<Point> points;
    std::uint64_t k = 1;

    friend bool operator==(const PeriodicSetWitness&, const PeriodicSetWitness&) = default;
};

/// (U, Y, k) with Y a nonempty subset of U and T^k Y a subset of Y.
struct SmallPeriodicWitness {
    std::vector<PointIndex> open_cell;
    std::vector<PointIndex> closed;
    std::uint64_t k = 1;

    friend bool operator==(const SmallPeriodicWitness&, const SmallPeriodicWitness&) = default;
};

// ---- finite systems -------------------------------------------------------

/// T is one cycle visiting `order` in sequence: transitive.
struct CycleCover {
    static constexpr std::string_view kind = "cycle_cover";
    std::vector<PointIndex> order;
};

/// `to` is never T^(power*m)(from) for m >= 1: T^power is not transitive.
struct Unreachable {
    static constexpr std::string_view kind = "unreachable";
    std::uint64_t power = 1;
    PointIndex from = 0;
    PointIndex to = 0;
};

/// T x T is one cycle through the listed pairs: weakly mixing.
struct ProductCycleCover {
    static constexpr std::string_view kind = "product_cycle_cover";
    std::vector<std::pair<PointIndex, PointIndex>> order;
};

/// The pair `to` is never reached from `from` under T x T.
struct ProductUnreachable {
    static constexpr std::string_view kind = "product_unreachable";
    std::pair<PointIndex, PointIndex> from;
    std::pair<PointIndex, PointIndex> to;
};

/// Per(X,T) with least periods; covering all of X proves density.
struct PeriodicPoints {
    static constexpr std::string_view kind = "periodic_points";
    std::vector<std::pair<PointIndex, std::uint64_t>> points;
};

/// The open {point} contains no periodic point and no T^k-invariant subset.
struct NonPeriodicPoint {
    static constexpr std::string_view kind = "non_periodic_point";
    PointIndex point = 0;
};

/// One small periodic set inside every singleton open.
struct SmallPeriodicSets {
    static constexpr std::string_view kind = "small_periodic_sets";
    std::vector<SmallPeriodicWitness> cells;
};

/// T^n {point} = X for each listed (point, n).
struct CoverTimes {
    static constexpr std::string_view kind = "cover_times";
    std::vector<std::pair<PointIndex, std::uint64_t>> cells;
};

/// The image sequence of `open_set` cycles without ever equalling X.
struct NeverCovers {
    static constexpr std::string_view kind = "never_covers";
    std::vector<PointIndex> open_set;
};

// ---- shift systems --------------------------------------------------------

/// Allowed closed walk through every symbol: the graph is strongly connected.
struct CoveringLoop {
    static constexpr std::string_view kind = "covering_loop";
    Word loop;
};

/// `closed` contains the successors of `source`, is closed under successors
/// and misses `target`: [target] is never reached from [source].
struct SymbolUnreachable {
    static constexpr std::string_view kind = "symbol_unreachable";
    Symbol source = 0;
    Symbol target = 0;
    std::vector<Symbol> closed;
};

/// Strongly connected (covering loop) with closed walks of coprime lengths:
/// the transition matrix is primitive.
struct CoprimeCycles {
    static constexpr std::string_view kind = "coprime_cycles";
    Word covering_loop;
    std::vector<Word> cycles;
};

/// M^exponent is strictly positive.
struct PrimitiveExponent {
    static constexpr std::string_view kind = "primitive_exponent";
    std::uint64_t exponent = 1;
};

/// (M^power)[row][col] = 0 with power >= (m-1)^2 + 1: M is not primitive.
struct ZeroEntry {
    static constexpr std::string_view kind = "zero_entry";
    std::uint64_t power = 1;
    Symbol row = 0;
    Symbol col = 0;
};

/// Every edge a -> b has classes[b] = classes[a] + 1 mod period, period >= 2.
struct CyclicClasses {
    static constexpr std::string_view kind = "cyclic_classes";
    std::uint32_t period = 2;
    std::vector<std::uint32_t> classes;
};

/// sigma^n [word] = X for each listed (word, n), words of length `level`.
struct ExactCoverTimes {
    static constexpr std::string_view kind = "exact_cover_times";
    std::uint32_t level = 1;
    std::vector<std::pair<Word, std::uint64_t>> entries;
};

/// The n-step reach sets of [word] cycle without covering X.
struct NeverFull {
    static constexpr std::string_view kind = "never_full";
    std::uint32_t level = 1;
    Word word;
};

/// A periodic point in every cylinder of length `level`.
struct PeriodicCylinders {
    static constexpr std::string_view kind = "periodic_cylinders";
    std::uint32_t level = 2;
    std::vector<std::pair<Word, PeriodicWord>> entries;
};

/// `closed` contains the successors of the last symbol of `cylinder`, is
/// closed under successors and misses its first symbol: [cylinder] holds no
/// periodic point and no sigma^k-invariant closed set.
struct AperiodicCylinder {
    static constexpr std::string_view kind = "aperiodic_cylinder";
    Word cylinder;
    std::vector<Symbol> closed;
};

// ---- shift hyperspaces (level-l Vietoris basic opens) ----------------------
// Masks index allowed_words(sft, level) in order.

/// (P, Q, n): T_K^n <P> meets <Q>, with n a multiple of `step`.
struct VietorisReachTable {
    static constexpr std::string_view kind = "vietoris_reach_table";
    std::uint32_t level = 1;
    std::uint64_t step = 1;
    std::vector<std::array<std::uint64_t, 3>> entries;
};

/// Every cylinder of P is a single point, and the exact orbit of that finite
/// set never enters <Q> at a multiple of `step`.
struct VietorisObstruction {
    static constexpr std::string_view kind = "vietoris_obstruction";
    std::uint32_t level = 1;
    std::uint64_t step = 1;
    std::uint64_t p_mask = 0;
    std::uint64_t q_mask = 0;
};

/// A periodic point of K(X) in every level-l basic open.
struct VietorisPeriodicTable {
    static constexpr std::string_view kind = "vietoris_periodic_table";
    std::uint32_t level = 1;
    std::vector<std::pair<std::uint64_t, PeriodicSetWitness<PeriodicWord>>> entries;
};

/// (P1, Q1, P2, Q2, n): one n serves both pairs of basic opens.
struct VietorisMixingTable {
    static constexpr std::string_view kind = "vietoris_mixing_table";
    std::uint32_t level = 1;
    std::vector<std::array<std::uint64_t, 5>> entries;
};

// ---- piecewise-linear maps (closed dyadic cells at `depth`) ---------------

/// (power, i, j, m): f^(power*m)(C_i) meets the interior of C_j.
struct PLReachTable {
    static constexpr std::string_view kind = "pl_reach_table";
    std::uint32_t depth = 0;
    std::vector<std::array<std::uint64_t, 4>> entries;
};

/// (i, j, k, l, n): f^n(C_i) meets int C_k and f^n(C_j) meets int C_l.
struct PLMixingTable {
    static constexpr std::string_view kind = "pl_mixing_table";
    std::uint32_t depth = 0;
    std::vector<std::array<std::uint64_t, 5>> entries;
};

/// [lo, hi] inside cell C_cell with f^n([lo, hi]) containing [lo, hi]: f^n has
/// a fixed point there, and Fix(f^n) within [lo, hi] is a small periodic set.
struct PLBracket {
    std::uint64_t cell = 0;
    Rational lo;
    Rational hi;
    std::uint64_t n = 1;

    friend bool operator==(const PLBracket&, const PLBracket&) = default;
};

struct PLPeriodicBrackets {
    static constexpr std::string_view kind = "pl_periodic_brackets";
    std::uint32_t depth = 0;
    std::vector<PLBracket> brackets;
};

/// f^steps[i](C_i) = [0, 1] for every cell.
struct PLCoverTimes {
    static constexpr std::string_view kind = "pl_cover_times";
    std::uint32_t depth = 0;
    std::vector<std::uint64_t> steps;
};

// ---- definition-level oracle ------------------------------------------------

/// Rows of subset masks plus the iterate that satisfies the definition.
struct OracleTable {
    static constexpr std::string_view kind = "oracle_table";
    std::vector<std::vector<std::uint64_t>> rows;
};

/// Subset masks for which no iterate of T^power up to `bound` satisfies the
/// definition.
struct OracleFailure {
    static constexpr std::string_view kind = "oracle_failure";
    std::vector<std::uint64_t> masks;
    std::uint64_t bound = 0;
    std::uint64_t power = 1;
};

/// Conjunction of the named component verdicts (all Proved, or the refuting one).
struct Composite {
    static constexpr std::string_view kind = "composite";
    std::vector<std::string> parts;
};

using Certificate =
    std::variant<std::monostate, CycleCover, Unreachable, ProductCycleCover, ProductUnreachable, PeriodicPoints,
                 NonPeriodicPoint, SmallPeriodicSets, CoverTimes, NeverCovers, CoveringLoop, SymbolUnreachable,
                 CoprimeCycles, PrimitiveExponent, ZeroEntry, CyclicClasses, ExactCoverTimes, NeverFull,
                 PeriodicCylinders, AperiodicCylinder, VietorisReachTable, VietorisObstruction,
                 VietorisPeriodicTable, VietorisMixingTable, PLReachTable, PLMixingTable, PLPeriodicBrackets,
                 PLCoverTimes, OracleTable, OracleFailure, Composite>;

inline std::string_view certificate_kind(const Certificate& c)
{
    return std::visit(
        [](const auto& v) -> std::string_view {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return "none";
            } else {
                return T::kind;
            }
        },
        c);
}

} // namespace hypercheck
