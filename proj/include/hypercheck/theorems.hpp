#pragma once

// Equivalence harness: evaluates the conditions of each equivalence on one
// system, records how every condition was decided, and reports agreement.

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "hypercheck/constructions.hpp"
#include "hypercheck/error.hpp"
#include "hypercheck/hyperspace.hpp"
#include "hypercheck/properties.hpp"
#include "hypercheck/validate.hpp"
#include "hypercheck/verdict.hpp"

namespace hypercheck {

// ---- finite-model proof constructions ------------------------------------------

/// A family of states of K(X) with (T_K)^k mapping the family into itself.
struct FamilyWitness {
    std::vector<ClosedSet> family;
    std::uint64_t k = 1;
};

/// Y = union of the family. In a finite space Y is closed automatically; the
/// function re-checks Y within U and T^k Y within Y before returning.
inline SmallPeriodicWitness union_closure(const FamilyWitness& fw, const HyperSystem& hyper, const ClosedSet& u)
{
    if (fw.family.empty() || fw.k == 0) {
        throw PreconditionViolation("family must be nonempty with positive k");
    }
    const FiniteMap& map = hyper.base().map();
    ClosedSet y = fw.family.front();
    for (const auto& a : fw.family) {
        if (a.universe() != map.size() || u.universe() != map.size()) {
            throw InvalidInput("family and open set must live in the base space");
        }
        if (!a.is_subset_of(u)) {
            throw PreconditionViolation("a member of the family escapes U");
        }
        ClosedSet image = ClosedSet::from_bits(map.image(a.bits(), fw.k));
        if (std::find(fw.family.begin(), fw.family.end(), image) == fw.family.end()) {
            throw PreconditionViolation("family is not invariant under (T_K)^k");
        }
        y = y.unite(a);
    }
    if (!y.is_subset_of(u) || !map.image(y.bits(), fw.k).is_subset_of(y.bits())) {
        throw PreconditionViolation("union fails Y in U or T^k Y in Y");
    }
    return SmallPeriodicWitness{u.members(), y.members(), fw.k};
}

// ---- reports ---------------------------------------------------------------------

enum class Subject { base, hyperspace };
enum class Role { primary, equivalent_check, weaker_check };
enum class Agreement { agree, disagree, inconclusive };

inline std::string_view to_string(Subject s) { return s == Subject::base ? "X" : "K(X)"; }
inline std::string_view to_string(Agreement a)
{
    switch (a) {
    case Agreement::agree: return "agree";
    case Agreement::disagree: return "disagree";
    case Agreement::inconclusive: return "inconclusive";
    }
    return "?";
}
inline std::string_view to_string(Role r)
{
    switch (r) {
    case Role::primary: return "primary";
    case Role::equivalent_check: return "cross-check";
    case Role::weaker_check: return "weaker-cross-check";
    }
    return "?";
}

/// One decided (or undecided) fact feeding a condition. `subject` and
/// `property` say which system the certificate is about; `method` is the
/// checker's method, or "reduction" when a hyperspace fact is read off X.
struct Component {
    std::string name;
    Subject subject = Subject::base;
    Property property = Property::transitive;
    std::string method;
    Verdict verdict;
    Role role = Role::primary;
};

struct Condition {
    std::string label;
    Verdict verdict;  // conjunction of the primary components
    std::vector<Component> components;
};

struct EquivalenceReport {
    std::string name;
    std::vector<Condition> conditions;
    Agreement agreement = Agreement::inconclusive;
    std::string hypothesis;
    std::vector<std::string> notes;
    std::optional<PeriodicSetWitness<PointIndex>> construction;  // finite systems only
};

namespace detail {

inline Verdict guarded(Method method, const std::function<Verdict()>& run)
{
    try {
        return run();
    } catch (const CapExceeded& e) {
        return Verdict::unknown(method, e.what());
    }
}

inline Component component(std::string name, Subject subject, Property property, Verdict verdict,
                           Role role = Role::primary, std::string method = {})
{
    if (method.empty()) {
        method = std::string(to_string(verdict.method()));
    }
    return Component{std::move(name), subject, property, std::move(method), std::move(verdict), role};
}

/// Same fact about X, used as a reduction for a hyperspace condition.
inline Component reduction(std::string name, Property property, Verdict verdict, Role role = Role::primary)
{
    return component(std::move(name), Subject::base, property, std::move(verdict), role, "reduction");
}

inline Condition condition(std::string label, std::vector<Component> parts)
{
    std::vector<NamedVerdict> primary;
    for (const auto& c : parts) {
        if (c.role == Role::primary) {
            primary.push_back({c.name, c.verdict});
        }
    }
    Verdict v = conjunction(primary);
    return Condition{std::move(label), std::move(v), std::move(parts)};
}

inline void settle(EquivalenceReport& r)
{
    std::optional<Status> seen;
    std::size_t decided = 0;
    bool split = false;
    for (const auto& c : r.conditions) {
        for (const auto& comp : c.components) {
            const Status cs = comp.verdict.status();
            const Status main = c.verdict.status();
            bool contradicts = false;
            if (comp.role == Role::equivalent_check) {
                contradicts = comp.verdict.decided() && c.verdict.decided() && cs != main;
            } else if (comp.role == Role::weaker_check) {
                contradicts = cs == Status::refuted && main == Status::proved;
            }
            if (contradicts) {
                split = true;
                r.notes.push_back("cross-check " + comp.name + " is " + std::string(to_string(cs)) + " but " +
                                  c.label + " is " + std::string(to_string(main)));
            }
        }
        if (!c.verdict.decided()) {
            continue;
        }
        ++decided;
        if (seen && *seen != c.verdict.status()) {
            split = true;
        }
        seen = c.verdict.status();
    }
    if (split) {
        r.agreement = Agreement::disagree;
    } else if (decided >= 2) {
        r.agreement = Agreement::agree;
    } else {
        r.agreement = Agreement::inconclusive;
    }
}

// ---- per-family fact sources --------------------------------------------------

/// Facts for a finite system: X directly, K(X) through the powerset hyperspace.
class FiniteFacts {
public:
    FiniteFacts(const FiniteSystem& sys, const Budgets& b) : sys_(sys), budgets_(b)
    {
        try {
            hyper_.emplace(powerset_hyperspace(sys, b.powerset_cap));
        } catch (const CapExceeded& e) {
            cap_note_ = e.what();
        }
    }

    const std::optional<HyperSystem>& hyper() const { return hyper_; }

    Component base(Property p) const
    {
        return component(std::string(to_string(p)) + "(X)", Subject::base, p, check_property(sys_.map(), p, budgets_));
    }

    Component lifted(Property p) const
    {
        std::string name = std::string(to_string(p)) + "(K(X))";
        if (!hyper_) {
            return component(name, Subject::hyperspace, p, Verdict::unknown(Method::exhaustive, cap_note_));
        }
        Budgets kb = budgets_;
        kb.k_max = 0;  // default to the number of hyperspace states
        return component(name, Subject::hyperspace, p, check_property(hyper_->dynamics(), p, kb));
    }

    std::string hypothesis() const
    {
        return "X is finite (" + std::to_string(sys_.size()) + (sys_.size() == 1 ? " point" : " points") +
               "): the infinite-space hypothesis is unmet; agreement is expected, not guaranteed";
    }

    /// Z in <{x_1},...,{x_n}> with (T_K)^k Z = Z, built point by point
    /// through union_closure, periodic_kernel and combine_witnesses.
    std::optional<PeriodicSetWitness<PointIndex>> construction() const
    {
        if (!hyper_) {
            return std::nullopt;
        }
        const auto cs = cycle_structure(sys_.map());
        std::vector<PeriodicSetWitness<PointIndex>> parts;
        for (PointIndex x = 0; x < sys_.size(); ++x) {
            if (cs.period[x] == 0) {
                return std::nullopt;
            }
            ClosedSet u = ClosedSet::of(sys_.size(), {x});
            auto small = union_closure(FamilyWitness{{u}, cs.period[x]}, *hyper_, u);
            ClosedSet z = periodic_kernel(ClosedSet::of(sys_.size(), small.closed), small.k, sys_.map());
            parts.push_back({z.members(), small.k});
        }
        return combine_witnesses(sys_.map(), parts, CombineMode::product);
    }

private:
    const FiniteSystem& sys_;
    Budgets budgets_;
    std::optional<HyperSystem> hyper_;
    std::string cap_note_;
};

class ShiftFacts {
public:
    ShiftFacts(const ShiftSystem& sft, const Budgets& b) : sft_(sft), budgets_(b)
    {
        horizon_ = b.horizon != 0 ? b.horizon : default_shift_horizon(sft.size(), b.level);
    }

    Component base(Property p) const
    {
        return component(std::string(to_string(p)) + "(X)", Subject::base, p, check_property(sft_, p, budgets_));
    }

    Component vietoris_transitive(std::uint64_t step, Role role = Role::primary) const
    {
        std::string name = step == 1 ? "transitive(K(X))" : "transitive(K(X), T_K^" + std::to_string(step) + ")";
        Property p = step == 1 ? Property::transitive : Property::totally_transitive;
        return component(name + " at level " + std::to_string(budgets_.level), Subject::hyperspace, p,
                         guarded(Method::bounded_search,
                                 [&] { return vietoris_transitive_bounded(sft_, budgets_.level, horizon_, step); }),
                         role);
    }

    Component vietoris_periodic(Property p) const
    {
        const std::uint32_t level = std::max<std::uint32_t>(2, budgets_.level);
        return component(std::string(to_string(p)) + "(K(X)) at level " + std::to_string(level), Subject::hyperspace,
                         p, guarded(Method::graph_reduction, [&] { return vietoris_periodic_dense_bounded(sft_, level); }));
    }

    Component vietoris_mixing() const
    {
        return component("weakly-mixing(K(X)) at level " + std::to_string(budgets_.level), Subject::hyperspace,
                         Property::weakly_mixing, guarded(Method::bounded_search, [&] {
                             return vietoris_weakly_mixing_bounded(sft_, budgets_.level, horizon_);
                         }));
    }

    Component vietoris_exact() const
    {
        return component("exact(K(X)) at level " + std::to_string(budgets_.level), Subject::hyperspace,
                         Property::exact, guarded(Method::bounded_search, [&] {
                             return vietoris_exact_bounded(sft_, budgets_.level, horizon_);
                         }));
    }

    std::string hypothesis() const
    {
        return sft_.finite_space() ? "X is finite (every symbol has one successor): the infinite-space hypothesis "
                                     "is unmet; agreement is expected, not guaranteed"
                                   : "X is infinite";
    }

private:
    const ShiftSystem& sft_;
    Budgets budgets_;
    std::uint64_t horizon_ = 0;
};

} // namespace detail

// ---- harness operations -----------------------------------------------------------

/// (1) Devaney(K(X))  (2) HY(K(X))  (3) HY(X).
inline EquivalenceReport check_theorem_main(const AnySystem& sys, const Budgets& b = {})
{
    using namespace detail;
    EquivalenceReport r{"theorem-main", {}, Agreement::inconclusive, {}, {}, {}};
    const auto TT = Property::totally_transitive;
    const auto DSPS = Property::dense_small_periodic;
    const auto DP = Property::dense_periodic;
    if (const auto* fs = std::get_if<FiniteSystem>(&sys)) {
        FiniteFacts f(*fs, b);
        r.conditions.push_back(condition("Devaney(K(X))", {f.lifted(Property::transitive), f.lifted(DP)}));
        r.conditions.push_back(condition("HY(K(X))", {f.lifted(TT), f.lifted(DSPS)}));
        r.conditions.push_back(condition("HY(X)", {f.base(TT), f.base(DSPS)}));
        r.hypothesis = f.hypothesis();
        if (r.conditions[2].components[1].verdict.status() == Status::proved) {
            r.construction = f.construction();
        }
    } else if (const auto* sft = std::get_if<ShiftSystem>(&sys)) {
        ShiftFacts f(*sft, b);
        Component wm = f.base(Property::weakly_mixing);
        r.conditions.push_back(condition(
            "Devaney(K(X))",
            {f.vietoris_transitive(1), f.vietoris_periodic(DP),
             reduction("transitive(K(X)) via weakly-mixing(X)", Property::weakly_mixing, wm.verdict,
                       Role::equivalent_check)}));
        r.conditions.push_back(condition(
            "HY(K(X))", {reduction("totally-transitive(K(X)) via weakly-mixing(X)", Property::weakly_mixing, wm.verdict),
                         f.vietoris_periodic(DSPS), f.vietoris_transitive(1, Role::weaker_check),
                         f.vietoris_transitive(2, Role::weaker_check), f.vietoris_transitive(3, Role::weaker_check)}));
        r.conditions.push_back(condition("HY(X)", {f.base(TT), f.base(DSPS)}));
        r.hypothesis = f.hypothesis();
    } else {
        const auto& pl = std::get<PLSystem>(sys);
        auto tt = check_property(pl, TT, b);
        auto dsps = check_property(pl, DSPS, b);
        r.conditions.push_back(condition("Devaney(K(X))", {reduction("totally-transitive(X) [equivalence]", TT, tt),
                                                            reduction("dense-small-periodic(X) [equivalence]", DSPS, dsps)}));
        r.conditions.push_back(condition("HY(K(X))", {reduction("totally-transitive(X) [equivalence]", TT, tt),
                                                       reduction("dense-small-periodic(X) [equivalence]", DSPS, dsps)}));
        r.conditions.push_back(condition("HY(X)", {component("totally-transitive(X)", Subject::base, TT, tt),
                                                   component("dense-small-periodic(X)", Subject::base, DSPS, dsps)}));
        r.hypothesis = "X = [0,1] is infinite";
        r.notes.push_back("hyperspace conditions of an interval map are read off X");
    }
    settle(r);
    return r;
}

/// weakly-mixing(K(X)), transitive(K(X)), weakly-mixing(X).
inline EquivalenceReport check_lemma_wm(const AnySystem& sys, const Budgets& b = {})
{
    using namespace detail;
    EquivalenceReport r{"lemma-wm", {}, Agreement::inconclusive, {}, {}, {}};
    const auto WM = Property::weakly_mixing;
    if (const auto* fs = std::get_if<FiniteSystem>(&sys)) {
        FiniteFacts f(*fs, b);
        r.conditions.push_back(condition("weakly-mixing(K(X))", {f.lifted(WM)}));
        r.conditions.push_back(condition("transitive(K(X))", {f.lifted(Property::transitive)}));
        r.conditions.push_back(condition("weakly-mixing(X)", {f.base(WM)}));
        r.hypothesis = f.hypothesis();
    } else if (const auto* sft = std::get_if<ShiftSystem>(&sys)) {
        ShiftFacts f(*sft, b);
        r.conditions.push_back(condition("weakly-mixing(K(X))", {f.vietoris_mixing()}));
        r.conditions.push_back(condition("transitive(K(X))", {f.vietoris_transitive(1)}));
        r.conditions.push_back(condition("weakly-mixing(X)", {f.base(WM)}));
        r.hypothesis = f.hypothesis();
    } else {
        const auto& pl = std::get<PLSystem>(sys);
        auto wm = check_property(pl, WM, b);
        r.conditions.push_back(condition("weakly-mixing(K(X))", {reduction("weakly-mixing(X) [equivalence]", WM, wm)}));
        r.conditions.push_back(condition("transitive(K(X))", {reduction("weakly-mixing(X) [equivalence]", WM, wm)}));
        r.conditions.push_back(condition("weakly-mixing(X)", {component("weakly-mixing(X)", Subject::base, WM, wm)}));
        r.hypothesis = "X = [0,1] is infinite";
        r.notes.push_back("hyperspace conditions of an interval map are read off X");
    }
    settle(r);
    return r;
}

/// exact(K(X)) against exact(X).
inline EquivalenceReport check_lemma_exact(const AnySystem& sys, const Budgets& b = {})
{
    using namespace detail;
    EquivalenceReport r{"lemma-exact", {}, Agreement::inconclusive, {}, {}, {}};
    const auto EX = Property::exact;
    if (const auto* fs = std::get_if<FiniteSystem>(&sys)) {
        FiniteFacts f(*fs, b);
        r.conditions.push_back(condition("exact(K(X))", {f.lifted(EX)}));
        r.conditions.push_back(condition("exact(X)", {f.base(EX)}));
        r.hypothesis = f.hypothesis();
    } else if (const auto* sft = std::get_if<ShiftSystem>(&sys)) {
        ShiftFacts f(*sft, b);
        r.conditions.push_back(condition("exact(K(X))", {f.vietoris_exact()}));
        r.conditions.push_back(condition("exact(X)", {f.base(EX)}));
        r.hypothesis = f.hypothesis();
    } else {
        const auto& pl = std::get<PLSystem>(sys);
        auto ex = check_property(pl, EX, b);
        r.conditions.push_back(condition("exact(K(X))", {reduction("exact(X) [equivalence]", EX, ex)}));
        r.conditions.push_back(condition("exact(X)", {component("exact(X)", Subject::base, EX, ex)}));
        r.hypothesis = "X = [0,1] is infinite";
        r.notes.push_back("hyperspace conditions of an interval map are read off X");
    }
    settle(r);
    return r;
}

/// exactly-Devaney(K(X)) = exact and dense periodic points on K(X), against
/// X being an exact HY-system.
inline EquivalenceReport check_corollary(const AnySystem& sys, const Budgets& b = {})
{
    using namespace detail;
    EquivalenceReport r{"corollary", {}, Agreement::inconclusive, {}, {}, {}};
    const auto EX = Property::exact;
    const auto TT = Property::totally_transitive;
    const auto DSPS = Property::dense_small_periodic;
    if (const auto* fs = std::get_if<FiniteSystem>(&sys)) {
        FiniteFacts f(*fs, b);
        r.conditions.push_back(condition("exactly-Devaney(K(X))", {f.lifted(EX), f.lifted(Property::dense_periodic)}));
        r.conditions.push_back(condition("exact-HY(X)", {f.base(EX), f.base(TT), f.base(DSPS)}));
        r.hypothesis = f.hypothesis();
    } else if (const auto* sft = std::get_if<ShiftSystem>(&sys)) {
        ShiftFacts f(*sft, b);
        r.conditions.push_back(
            condition("exactly-Devaney(K(X))", {f.vietoris_exact(), f.vietoris_periodic(Property::dense_periodic)}));
        r.conditions.push_back(condition("exact-HY(X)", {f.base(EX), f.base(TT), f.base(DSPS)}));
        r.hypothesis = f.hypothesis();
    } else {
        const auto& pl = std::get<PLSystem>(sys);
        auto ex = check_property(pl, EX, b);
        auto tt = check_property(pl, TT, b);
        auto dsps = check_property(pl, DSPS, b);
        r.conditions.push_back(condition("exactly-Devaney(K(X))", {reduction("exact(X) [equivalence]", EX, ex),
                                                                    reduction("totally-transitive(X) [equivalence]", TT, tt),
                                                                    reduction("dense-small-periodic(X) [equivalence]", DSPS, dsps)}));
        r.conditions.push_back(condition("exact-HY(X)", {component("exact(X)", Subject::base, EX, ex),
                                                         component("totally-transitive(X)", Subject::base, TT, tt),
                                                         component("dense-small-periodic(X)", Subject::base, DSPS, dsps)}));
        r.hypothesis = "X = [0,1] is infinite";
        r.notes.push_back("hyperspace conditions of an interval map are read off X");
    }
    settle(r);
    return r;
}

inline std::vector<EquivalenceReport> run_harness(const AnySystem& sys, const Budgets& b = {})
{
    return {check_theorem_main(sys, b), check_lemma_wm(sys, b), check_lemma_exact(sys, b), check_corollary(sys, b)};
}

// ---- validation of harness output ---------------------------------------------------

inline ValidationFailure validate(const AnySystem& sys, Property p, const Verdict& v)
{
    return std::visit([&](const auto& s) { return validate(s, p, v); }, sys);
}

/// Re-validates every component certificate of a report against the system
/// (and, for hyperspace components, against K(X) or its cylinder model).
inline std::vector<std::string> validate_report(const AnySystem& sys, const EquivalenceReport& r, const Budgets& b = {})
{
    std::vector<std::string> failures;
    std::optional<HyperSystem> hyper;
    for (const auto& c : r.conditions) {
        for (const auto& comp : c.components) {
            ValidationFailure f;
            if (comp.subject == Subject::base) {
                f = validate(sys, comp.property, comp.verdict);
            } else if (const auto* fs = std::get_if<FiniteSystem>(&sys)) {
                if (!comp.verdict.decided()) {
                    f = validate(sys, comp.property, comp.verdict);  // only the note is checked
                } else {
                    if (!hyper) {
                        hyper.emplace(powerset_hyperspace(*fs, b.powerset_cap));
                    }
                    f = validate(hyper->dynamics(), comp.property, comp.verdict);
                }
            } else if (const auto* sft = std::get_if<ShiftSystem>(&sys)) {
                f = validate_hyperspace(*sft, comp.property, comp.verdict);
            } else {
                f = "interval-map hyperspace facts must come from X";
            }
            if (f) {
                failures.push_back(r.name + " / " + comp.name + ": " + *f);
            }
        }
    }
    if (r.construction) {
        const auto& fs = std::get<FiniteSystem>(sys);
        if (!is_periodic_set(fs.map(), *r.construction) || r.construction->points.size() != fs.size()) {
            failures.push_back(r.name + " / construction: Z fails (T_K)^k Z = Z or misses a cell");
        }
    }
    return failures;
}

} // namespace hypercheck
