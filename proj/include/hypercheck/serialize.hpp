#pragma once

// JSON forms of certificates and verdicts. Rationals travel as "p/q" strings,
// words as arrays of symbol indices, subsets as numeric masks.

#include <string>
#include <utility>
#include <variant>

#include <nlohmann/json.hpp>

#include "hypercheck/certificates.hpp"
#include "hypercheck/error.hpp"
#include "hypercheck/rational.hpp"
#include "hypercheck/verdict.hpp"

namespace nlohmann {

template <>
struct adl_serializer<hypercheck::Rational> {
    static void to_json(json& j, const hypercheck::Rational& r) { j = hypercheck::to_string(r); }
    static void from_json(const json& j, hypercheck::Rational& r) { r = hypercheck::parse_rational(j.get<std::string>()); }
};

} // namespace nlohmann

namespace hypercheck {

using Json = nlohmann::json;

inline void to_json(Json& j, const PeriodicWord& p) { j = p.block; }
inline void from_json(const Json& j, PeriodicWord& p) { j.get_to(p.block); }

template <class Point>
void to_json(Json& j, const PeriodicSetWitness<Point>& w)
{
    j = Json{{"points", w.points}, {"k", w.k}};
}

template <class Point>
void from_json(const Json& j, PeriodicSetWitness<Point>& w)
{
    j.at("points").get_to(w.points);
    j.at("k").get_to(w.k);
}

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SmallPeriodicWitness, open_cell, closed, k)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PLBracket, cell, lo, hi, n)

NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CycleCover, order)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Unreachable, power, from, to)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ProductCycleCover, order)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ProductUnreachable, from, to)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PeriodicPoints, points)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(NonPeriodicPoint, point)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SmallPeriodicSets, cells)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CoverTimes, cells)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(NeverCovers, open_set)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CoveringLoop, loop)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(SymbolUnreachable, source, target, closed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CoprimeCycles, covering_loop, cycles)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PrimitiveExponent, exponent)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ZeroEntry, power, row, col)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(CyclicClasses, period, classes)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ExactCoverTimes, level, entries)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(NeverFull, level, word)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PeriodicCylinders, level, entries)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(AperiodicCylinder, cylinder, closed)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(VietorisReachTable, level, step, entries)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(VietorisObstruction, level, step, p_mask, q_mask)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(VietorisPeriodicTable, level, entries)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(VietorisMixingTable, level, entries)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PLReachTable, depth, entries)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PLMixingTable, depth, entries)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PLPeriodicBrackets, depth, brackets)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(PLCoverTimes, depth, steps)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(OracleTable, rows)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(OracleFailure, masks, bound, power)
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(Composite, parts)

inline Json certificate_to_json(const Certificate& c)
{
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else {
                Json j = v;
                j["type"] = std::string(T::kind);
                return j;
            }
        },
        c);
}

namespace detail {

template <std::size_t I = 1>
Certificate certificate_from_kind(const std::string& kind, const Json& j)
{
    if constexpr (I == std::variant_size_v<Certificate>) {
        throw InvalidInput("unknown certificate type '" + kind + "'");
    } else {
        using T = std::variant_alternative_t<I, Certificate>;
        if (kind == T::kind) {
            return j.get<T>();
        }
        return certificate_from_kind<I + 1>(kind, j);
    }
}

} // namespace detail

inline Certificate certificate_from_json(const Json& j)
{
    if (j.is_null()) {
        return std::monostate{};
    }
    try {
        return detail::certificate_from_kind(j.at("type").get<std::string>(), j);
    } catch (const Json::exception& e) {
        throw InvalidInput(std::string("malformed certificate: ") + e.what());
    }
}

inline Method parse_method(const std::string& name)
{
    for (auto m : {Method::exhaustive, Method::graph_reduction, Method::bounded_search}) {
        if (to_string(m) == name) {
            return m;
        }
    }
    throw InvalidInput("unknown method '" + name + "'");
}

/// {"status", "method", "resolution", and one of "witness",
/// "counterexample", "budget_note"}.
inline Json verdict_to_json(const Verdict& v)
{
    Json j{{"status", std::string(to_string(v.status()))},
           {"method", std::string(to_string(v.method()))},
           {"resolution", v.resolution()}};
    switch (v.status()) {
    case Status::proved: j["witness"] = certificate_to_json(v.certificate()); break;
    case Status::refuted: j["counterexample"] = certificate_to_json(v.certificate()); break;
    case Status::unknown: j["budget_note"] = v.budget_note(); break;
    }
    return j;
}

inline Verdict verdict_from_json(const Json& j)
{
    try {
        const auto status = j.at("status").get<std::string>();
        const Method method = parse_method(j.at("method").get<std::string>());
        const auto resolution = j.value("resolution", std::uint32_t{0});
        if (status == "proved") {
            return Verdict::proved(method, certificate_from_json(j.at("witness")), resolution);
        }
        if (status == "refuted") {
            return Verdict::refuted(method, certificate_from_json(j.at("counterexample")));
        }
        if (status == "unknown") {
            return Verdict::unknown(method, j.at("budget_note").get<std::string>(), resolution);
        }
        throw InvalidInput("unknown status '" + status + "'");
    } catch (const Json::exception& e) {
        throw InvalidInput(std::string("malformed verdict: ") + e.what());
    }
}

} // namespace hypercheck
