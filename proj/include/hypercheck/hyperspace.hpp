#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "hypercheck/constructions.hpp"
#include "hypercheck/error.hpp"
#include "hypercheck/finite_system.hpp"
#include "hypercheck/metric.hpp"
#include "hypercheck/shift_system.hpp"
#include "hypercheck/verdict.hpp"

namespace hypercheck {

inline constexpr std::size_t default_powerset_cap = 16;
inline constexpr std::size_t max_powerset_cap = 24;
inline constexpr std::size_t default_metric_cap = 1023;

// ---- finite systems: the literal (K(X), T_K) --------------------------------

/// Image of C under the base map.
inline ClosedSet induced_image(const ClosedSet& c, const FiniteSystem& sys)
{
    if (c.universe() != sys.size()) {
        throw InvalidInput("set and system live in different spaces");
    }
    return sys.map().image(c);
}

/// Powerset hyperspace of a finite system. State i is the subset with bit mask
/// i + 1, so states are ordered by numeric mask value.
class HyperSystem {
public:
    const FiniteSystem& base() const noexcept { return base_; }
    std::size_t size() const noexcept { return dynamics_.size(); }
    const FiniteMap& dynamics() const noexcept { return dynamics_; }

    static std::uint32_t mask_of(PointIndex state) { return state + 1; }
    static PointIndex state_of(std::uint32_t mask)
    {
        if (mask == 0) {
            throw InvalidInput("the empty set is not a state");
        }
        return mask - 1;
    }

    ClosedSet state(PointIndex s) const { return ClosedSet::from_mask(base_.size(), mask_of(s)); }
    PointIndex state_of(const ClosedSet& c) const
    {
        return state_of(static_cast<std::uint32_t>(c.mask()));
    }

    std::uint32_t distance_rank(PointIndex s, PointIndex t) const
    {
        return std::max(directed(mask_of(s), mask_of(t)), directed(mask_of(t), mask_of(s)));
    }
    const Rational& distance(PointIndex s, PointIndex t) const
    {
        return base_.space().levels()[distance_rank(s, t)];
    }

    std::string state_name(PointIndex s) const
    {
        std::string out = "{";
        bool first = true;
        for (std::uint32_t m = mask_of(s); m != 0; m &= m - 1) {
            if (!first) {
                out += ",";
            }
            out += base_.space().name(static_cast<PointIndex>(std::countr_zero(m)));
            first = false;
        }
        return out + "}";
    }

    /// The hyperspace as a FiniteSystem with the Hausdorff metric materialized.
    FiniteSystem as_finite_system(std::size_t metric_cap = default_metric_cap) const
    {
        if (size() > metric_cap) {
            throw CapExceeded("hyperspace has " + std::to_string(size()) + " states; metric table cap is " +
                              std::to_string(metric_cap));
        }
        std::vector<std::string> names;
        std::vector<std::uint32_t> ranks(size() * size());
        for (PointIndex s = 0; s < size(); ++s) {
            names.push_back(state_name(s));
            for (PointIndex t = 0; t < size(); ++t) {
                ranks[s * size() + t] = distance_rank(s, t);
            }
        }
        auto space = FinitePointSpace::from_ranks(std::move(names), base_.space().levels(), std::move(ranks));
        return FiniteSystem(std::move(space), dynamics_);
    }

private:
    friend HyperSystem powerset_hyperspace(const FiniteSystem&, std::size_t);

    HyperSystem(FiniteSystem base, FiniteMap dynamics) : base_(std::move(base)), dynamics_(std::move(dynamics)) {}

    std::uint32_t directed(std::uint32_t a, std::uint32_t b) const
    {
        std::uint32_t worst = 0;
        for (; a != 0; a &= a - 1) {
            auto x = static_cast<PointIndex>(std::countr_zero(a));
            std::uint32_t best = UINT32_MAX;
            for (std::uint32_t bb = b; bb != 0; bb &= bb - 1) {
                best = std::min(best, base_.space().rank(x, static_cast<PointIndex>(std::countr_zero(bb))));
            }
            worst = std::max(worst, best);
        }
        return worst;
    }

    FiniteSystem base_;
    FiniteMap dynamics_;
};

/// All 2^n - 1 nonempty subsets with T_K(C) = TC. Fails past `cap` base points.
inline HyperSystem powerset_hyperspace(const FiniteSystem& sys, std::size_t cap = default_powerset_cap)
{
    const std::size_t n = sys.size();
    if (cap > max_powerset_cap) {
        throw InvalidInput("powerset cap may not exceed " + std::to_string(max_powerset_cap));
    }
    if (n > cap) {
        throw CapExceeded("finite system has " + std::to_string(n) + " points; powerset cap is " +
                          std::to_string(cap) + " (use bounded shift-level verification instead)");
    }
    const std::uint32_t masks = std::uint32_t{1} << n;
    std::vector<std::uint32_t> image(masks, 0);
    for (std::uint32_t m = 1; m < masks; ++m) {
        auto low = static_cast<PointIndex>(std::countr_zero(m));
        image[m] = image[m & (m - 1)] | (std::uint32_t{1} << sys.map()(low));
    }
    std::vector<PointIndex> table(masks - 1);
    for (std::uint32_t m = 1; m < masks; ++m) {
        table[m - 1] = image[m] - 1;
    }
    return HyperSystem(sys, FiniteMap(std::move(table)));
}

// ---- shift systems: level-l cylinder fingerprints ---------------------------

/// Higher-block graph of level-l words; u -> u' when u' extends u by one step.
class WordGraph {
public:
    WordGraph(const ShiftSystem& sft, std::uint32_t level) : level_(level)
    {
        if (level == 0) {
            throw InvalidInput("cylinder level must be positive");
        }
        words_ = allowed_words(sft, level);
        if (words_.empty()) {
            throw InvalidInput("level yields no allowed words");
        }
        if (words_.size() > 64) {
            throw CapExceeded("level " + std::to_string(level) + " has " + std::to_string(words_.size()) +
                              " words; at most 64 supported");
        }
        for (std::size_t i = 0; i < words_.size(); ++i) {
            index_.emplace(words_[i], static_cast<std::uint32_t>(i));
        }
        succ_.assign(words_.size(), 0);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            Word next(words_[i].begin() + 1, words_[i].end());
            for (Symbol s = 0; s < sft.size(); ++s) {
                if (!sft.allowed(words_[i].back(), s)) {
                    continue;
                }
                next.push_back(s);
                succ_[i] |= std::uint64_t{1} << index_.at(next);
                next.pop_back();
            }
        }
    }

    std::uint32_t level() const noexcept { return level_; }
    std::size_t size() const noexcept { return words_.size(); }
    const std::vector<Word>& words() const noexcept { return words_; }
    const Word& word(std::size_t i) const { return words_.at(i); }
    std::uint64_t all() const noexcept { return size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1; }

    std::optional<std::uint32_t> find(const Word& w) const
    {
        auto it = index_.find(w);
        if (it == index_.end()) {
            return std::nullopt;
        }
        return it->second;
    }

    std::uint64_t successors(std::uint64_t set) const
    {
        std::uint64_t out = 0;
        for (; set != 0; set &= set - 1) {
            out |= succ_[static_cast<std::size_t>(std::countr_zero(set))];
        }
        return out;
    }

    /// Rows of the one-step relation composed `n` times.
    std::vector<std::uint64_t> reach(std::uint64_t n) const
    {
        std::vector<std::uint64_t> rows(size());
        for (std::size_t i = 0; i < size(); ++i) {
            std::uint64_t r = std::uint64_t{1} << i;
            for (std::uint64_t k = 0; k < n; ++k) {
                r = successors(r);
            }
            rows[i] = r;
        }
        return rows;
    }

    /// Relation composition: (a then b)[i] = union of b[j] over j in a[i].
    static std::vector<std::uint64_t> compose(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b)
    {
        std::vector<std::uint64_t> out(a.size(), 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            for (std::uint64_t s = a[i]; s != 0; s &= s - 1) {
                out[i] |= b[static_cast<std::size_t>(std::countr_zero(s))];
            }
        }
        return out;
    }

    std::string render_set(const ShiftSystem& sft, std::uint64_t mask) const
    {
        std::string out = "{";
        bool first = true;
        for (; mask != 0; mask &= mask - 1) {
            if (!first) {
                out += ",";
            }
            out += sft.render(words_[static_cast<std::size_t>(std::countr_zero(mask))]);
            first = false;
        }
        return out + "}";
    }

private:
    std::uint32_t level_;
    std::vector<Word> words_;
    std::map<Word, std::uint32_t> index_;
    std::vector<std::uint64_t> succ_;
};

inline std::uint64_t default_shift_horizon(std::size_t alphabet, std::uint32_t level)
{
    std::uint64_t words = 1;
    for (std::uint32_t i = 0; i < level; ++i) {
        words *= alphabet;
    }
    return 2 * words * words + level;
}

/// Whether some x in [u] has sigma^n x in [v]: an allowed word of length
/// n + l starting with u whose length-l subword at position n is v.
inline bool cylinder_reach(const ShiftSystem& sft, const Word& u, const Word& v, std::uint64_t n)
{
    if (u.size() != v.size()) {
        throw InvalidInput("cylinder words must have equal length");
    }
    if (!sft.is_allowed(u) || !sft.is_allowed(v)) {
        throw InvalidInput("cylinder words must be allowed");
    }
    if (n == 0) {
        throw InvalidInput("step count must be positive");
    }
    const std::size_t len = u.size();
    auto required = [&](std::uint64_t t) -> SymbolMask {
        SymbolMask m = sft.all_symbols();
        if (t < len) {
            m &= SymbolMask{1} << u[t];
        }
        if (t >= n && t - n < len) {
            m &= SymbolMask{1} << v[t - n];
        }
        return m;
    };
    SymbolMask possible = required(0);
    for (std::uint64_t t = 1; t < n + len && possible != 0; ++t) {
        possible = sft.successors(possible) & required(t);
    }
    return possible != 0;
}

namespace detail {

inline std::vector<std::uint32_t> mask_members(std::uint64_t mask)
{
    std::vector<std::uint32_t> out;
    for (; mask != 0; mask &= mask - 1) {
        out.push_back(static_cast<std::uint32_t>(std::countr_zero(mask)));
    }
    return out;
}

/// Whether [u] is a single point: every symbol reachable from its last symbol
/// has exactly one successor.
inline bool single_point_cylinder(const ShiftSystem& sft, const Word& u)
{
    SymbolMask reach = sft.reachable_from(SymbolMask{1} << u.back()) | (SymbolMask{1} << u.back());
    for (; reach != 0; reach &= reach - 1) {
        if (std::popcount(sft.successors(static_cast<Symbol>(std::countr_zero(reach)))) != 1) {
            return false;
        }
    }
    return true;
}

/// For P made of single-point cylinders, A = the set of those points is the
/// only member of <P>. Returns the first n >= 1, n a multiple of `step`, with
/// sigma^n A in <Q>, or nothing when the exact orbit never gets there.
inline std::optional<std::uint64_t> pointwise_entry(const ShiftSystem& sft, const WordGraph& graph,
                                                    std::uint64_t p_mask, std::uint64_t q_mask,
                                                    std::uint64_t step)
{
    const std::size_t level = graph.level();
    auto next = [&](Symbol a) { return static_cast<Symbol>(std::countr_zero(sft.successors(a))); };
    std::vector<Word> points;
    for (auto i : mask_members(p_mask)) {
        points.push_back(graph.word(i));
    }
    // cur[i] = symbol of point i at position n.
    std::vector<Symbol> cur;
    for (const auto& u : points) {
        cur.push_back(u[0]);
    }
    auto symbol_after = [&](std::size_t i, std::uint64_t pos, Symbol at_pos) {
        return pos + 1 < level ? points[i][pos + 1] : next(at_pos);
    };
    std::set<std::pair<std::vector<Symbol>, std::uint64_t>> seen;
    for (std::uint64_t n = 1;; ++n) {
        for (std::size_t i = 0; i < points.size(); ++i) {
            cur[i] = symbol_after(i, n - 1, cur[i]);
        }
        if (n % step == 0) {
            std::uint64_t hit = 0;
            bool inside = true;
            for (std::size_t i = 0; i < points.size() && inside; ++i) {
                Word window{cur[i]};
                Symbol s = cur[i];
                for (std::uint64_t pos = n; window.size() < level; ++pos) {
                    s = symbol_after(i, pos, s);
                    window.push_back(s);
                }
                auto idx = graph.find(window);
                inside = idx && (q_mask >> *idx & 1);
                if (inside) {
                    hit |= std::uint64_t{1} << *idx;
                }
            }
            if (inside && hit == q_mask) {
                return n;
            }
        }
        if (n + 1 >= level) {
            // From here on the state determines the future.
            if (!seen.emplace(cur, n % step).second) {
                return std::nullopt;
            }
        }
    }
}

inline std::string stuck_note(const ShiftSystem& sft, const WordGraph& graph, std::uint64_t p, std::uint64_t q,
                              std::uint64_t horizon)
{
    return "no n <= " + std::to_string(horizon) + " for P=" + graph.render_set(sft, p) +
           " Q=" + graph.render_set(sft, q);
}

inline void require_words(const WordGraph& graph, std::size_t limit, const char* what)
{
    if (graph.size() > limit) {
        throw CapExceeded(std::string(what) + ": level " + std::to_string(graph.level()) + " has " +
                          std::to_string(graph.size()) + " words; at most " + std::to_string(limit) +
                          " can be enumerated as basic opens");
    }
}

/// Whether every u in P reaches Q and every v in Q is reached from P.
inline bool pair_condition(const std::vector<std::uint64_t>& reach, std::uint64_t p, std::uint64_t q)
{
    std::uint64_t covered = 0;
    for (; p != 0; p &= p - 1) {
        std::uint64_t row = reach[static_cast<std::size_t>(std::countr_zero(p))] & q;
        if (row == 0) {
            return false;
        }
        covered |= row;
    }
    return covered == q;
}

} // namespace detail

inline constexpr std::size_t vietoris_transitive_word_cap = 10;
inline constexpr std::size_t vietoris_mixing_word_cap = 4;
inline constexpr std::size_t vietoris_periodic_word_cap = 12;

/// Transitivity of (K(X), sigma_K) over all pairs of level-l basic opens
/// <P>, <Q>: finds n (a multiple of `step`, at most horizon * step) with every
/// u in P reaching some v in Q and every v in Q reached from P.
inline Verdict vietoris_transitive_bounded(const ShiftSystem& sft, std::uint32_t level, std::uint64_t horizon,
                                           std::uint64_t step = 1)
{
    if (horizon == 0 || step == 0) {
        throw InvalidInput("horizon and step must be positive");
    }
    WordGraph graph(sft, level);
    detail::require_words(graph, vietoris_transitive_word_cap, "vietoris transitivity");
    const std::uint64_t sets = (std::uint64_t{1} << graph.size()) - 1;

    std::vector<std::pair<std::uint64_t, std::uint64_t>> open;
    for (std::uint64_t p = 1; p <= sets; ++p) {
        for (std::uint64_t q = 1; q <= sets; ++q) {
            open.emplace_back(p, q);
        }
    }
    VietorisReachTable table{level, step, {}};
    const auto one_step = graph.reach(step);
    auto reach = one_step;
    for (std::uint64_t j = 1; j <= horizon && !open.empty(); ++j) {
        if (j > 1) {
            reach = WordGraph::compose(reach, one_step);
        }
        std::vector<std::pair<std::uint64_t, std::uint64_t>> still;
        for (auto [p, q] : open) {
            if (detail::pair_condition(reach, p, q)) {
                table.entries.push_back({p, q, j * step});
            } else {
                still.emplace_back(p, q);
            }
        }
        open.swap(still);
    }

    std::optional<std::pair<std::uint64_t, std::uint64_t>> stuck;
    for (auto [p, q] : open) {
        bool pointwise = true;
        for (auto i : detail::mask_members(p)) {
            pointwise = pointwise && detail::single_point_cylinder(sft, graph.word(i));
        }
        if (!pointwise) {
            if (!stuck) {
                stuck = std::make_pair(p, q);
            }
            continue;
        }
        if (auto n = detail::pointwise_entry(sft, graph, p, q, step)) {
            table.entries.push_back({p, q, *n});
        } else {
            return Verdict::refuted(Method::bounded_search, VietorisObstruction{level, step, p, q});
        }
    }
    if (stuck) {
        return Verdict::unknown(Method::bounded_search,
                                detail::stuck_note(sft, graph, stuck->first, stuck->second, horizon * step), level);
    }
    std::sort(table.entries.begin(), table.entries.end());
    return Verdict::proved(Method::bounded_search, std::move(table), level);
}

/// Weak mixing of (K(X), sigma_K) over all quadruples of level-l basic opens.
inline Verdict vietoris_weakly_mixing_bounded(const ShiftSystem& sft, std::uint32_t level, std::uint64_t horizon)
{
    if (horizon == 0) {
        throw InvalidInput("horizon must be positive");
    }
    WordGraph graph(sft, level);
    detail::require_words(graph, vietoris_mixing_word_cap, "vietoris weak mixing");
    const std::uint64_t sets = (std::uint64_t{1} << graph.size()) - 1;

    // hits[(p-1)*sets + (q-1)] has bit n set when n works for the pair.
    std::vector<boost::dynamic_bitset<>> hits(sets * sets, boost::dynamic_bitset<>(horizon + 1));
    auto reach = graph.reach(1);
    for (std::uint64_t n = 1; n <= horizon; ++n) {
        if (n > 1) {
            reach = WordGraph::compose(reach, graph.reach(1));
        }
        for (std::uint64_t p = 1; p <= sets; ++p) {
            for (std::uint64_t q = 1; q <= sets; ++q) {
                if (detail::pair_condition(reach, p, q)) {
                    hits[(p - 1) * sets + (q - 1)].set(n);
                }
            }
        }
    }
    for (std::uint64_t p = 1; p <= sets; ++p) {
        for (std::uint64_t q = 1; q <= sets; ++q) {
            if (hits[(p - 1) * sets + (q - 1)].any()) {
                continue;
            }
            bool pointwise = true;
            for (auto i : detail::mask_members(p)) {
                pointwise = pointwise && detail::single_point_cylinder(sft, graph.word(i));
            }
            if (pointwise && !detail::pointwise_entry(sft, graph, p, q, 1)) {
                return Verdict::refuted(Method::bounded_search, VietorisObstruction{level, 1, p, q});
            }
        }
    }
    VietorisMixingTable table{level, {}};
    for (std::uint64_t a = 0; a < sets * sets; ++a) {
        for (std::uint64_t b = 0; b < sets * sets; ++b) {
            auto common = hits[a] & hits[b];
            auto n = common.find_first();
            if (n == boost::dynamic_bitset<>::npos) {
                return Verdict::unknown(Method::bounded_search,
                                        "no common n <= " + std::to_string(horizon) + " for pairs (" +
                                            graph.render_set(sft, a / sets + 1) + "," +
                                            graph.render_set(sft, a % sets + 1) + ") and (" +
                                            graph.render_set(sft, b / sets + 1) + "," +
                                            graph.render_set(sft, b % sets + 1) + ")",
                                        level);
            }
            table.entries.push_back({a / sets + 1, a % sets + 1, b / sets + 1, b % sets + 1, n});
        }
    }
    return Verdict::proved(Method::bounded_search, std::move(table), level);
}

/// Exactness of (K(X), sigma_K) at level l: sigma_K^n <P> = K(X) exactly when
/// sigma^n [u] = X for every u in P, and full reach persists, so one n per
/// word suffices.
inline Verdict vietoris_exact_bounded(const ShiftSystem& sft, std::uint32_t level, std::uint64_t horizon)
{
    if (horizon == 0) {
        throw InvalidInput("horizon must be positive");
    }
    WordGraph graph(sft, level);
    ExactCoverTimes times{level, {}};
    for (std::size_t i = 0; i < graph.size(); ++i) {
        std::set<std::uint64_t> seen;
        std::uint64_t r = graph.successors(std::uint64_t{1} << i);
        std::uint64_t n = 1;
        for (; r != graph.all(); ++n) {
            if (!seen.insert(r).second) {
                return Verdict::refuted(Method::bounded_search, NeverFull{level, graph.word(i)});
            }
            if (n >= horizon) {
                return Verdict::unknown(Method::bounded_search,
                                        "[" + sft.render(graph.word(i)) + "] not onto within " +
                                            std::to_string(horizon) + " steps",
                                        level);
            }
            r = graph.successors(r);
        }
        times.entries.emplace_back(graph.word(i), n);
    }
    return Verdict::proved(Method::bounded_search, std::move(times), level);
}

/// Dense periodic points of (K(X), sigma_K) over level-l basic opens: for each
/// set {u_1..u_m} of words, Z = one periodic point per cylinder and k = the
/// product of their periods. A word on no cycle refutes through <[u]>.
inline Verdict vietoris_periodic_dense_bounded(const ShiftSystem& sft, std::uint32_t level)
{
    WordGraph graph(sft, level);
    detail::require_words(graph, vietoris_periodic_word_cap, "vietoris periodic density");
    std::vector<PeriodicSetWitness<PeriodicWord>> atoms;
    for (const auto& u : graph.words()) {
        SymbolMask closed = sft.reachable_from(SymbolMask{1} << u.back());
        if (!(closed >> u.front() & 1)) {
            std::vector<Symbol> members;
            for (auto s : detail::mask_members(closed)) {
                members.push_back(s);
            }
            return Verdict::refuted(Method::graph_reduction, AperiodicCylinder{u, std::move(members)});
        }
        PeriodicWord p = find_periodic_point_in_cylinder(sft, u);
        const std::uint64_t k = p.period();
        atoms.push_back({{std::move(p)}, k});
    }
    VietorisPeriodicTable table{level, {}};
    const std::uint64_t sets = (std::uint64_t{1} << graph.size()) - 1;
    for (std::uint64_t mask = 1; mask <= sets; ++mask) {
        std::vector<PeriodicSetWitness<PeriodicWord>> parts;
        for (auto i : detail::mask_members(mask)) {
            parts.push_back(atoms[i]);
        }
        table.entries.emplace_back(mask, combine_witnesses(sft, parts, CombineMode::product));
    }
    return Verdict::proved(Method::graph_reduction, std::move(table), level);
}

} // namespace hypercheck
