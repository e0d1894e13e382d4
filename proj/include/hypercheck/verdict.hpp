#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hypercheck/certificates.hpp"
#include "hypercheck/error.hpp"

namespace hypercheck {

enum class Status { proved, refuted, unknown };
enum class Method { exhaustive, graph_reduction, bounded_search };

inline std::string_view to_string(Status s)
{
    switch (s) {
    case Status::proved: return "proved";
    case Status::refuted: return "refuted";
    case Status::unknown: return "unknown";
    }
    return "?";
}

inline std::string_view to_string(Method m)
{
    switch (m) {
    case Method::exhaustive: return "exhaustive";
    case Method::graph_reduction: return "graph-reduction";
    case Method::bounded_search: return "bounded-search";
    }
    return "?";
}

/// Three-valued result. A Proved verdict carries a witness, a Refuted one a
/// counterexample, an Unknown one a budget note; the factories enforce this.
/// A nonzero resolution marks a claim established only at that level
/// (cylinder length for shifts, dyadic depth for interval maps).
class Verdict {
public:
    static Verdict proved(Method method, Certificate witness, std::uint32_t resolution = 0)
    {
        require_certificate(witness);
        return Verdict(Status::proved, method, std::move(witness), {}, resolution);
    }

    static Verdict refuted(Method method, Certificate counterexample)
    {
        require_certificate(counterexample);
        return Verdict(Status::refuted, method, std::move(counterexample), {}, 0);
    }

    static Verdict unknown(Method method, std::string budget_note, std::uint32_t resolution = 0)
    {
        if (budget_note.empty()) {
            throw PreconditionViolation("unknown verdicts need a budget note");
        }
        return Verdict(Status::unknown, method, std::monostate{}, std::move(budget_note), resolution);
    }

    Status status() const noexcept { return status_; }
    Method method() const noexcept { return method_; }
    bool decided() const noexcept { return status_ != Status::unknown; }
    std::uint32_t resolution() const noexcept { return resolution_; }

    const Certificate& certificate() const noexcept { return certificate_; }
    const Certificate* witness() const noexcept { return status_ == Status::proved ? &certificate_ : nullptr; }
    const Certificate* counterexample() const noexcept
    {
        return status_ == Status::refuted ? &certificate_ : nullptr;
    }
    const std::string& budget_note() const noexcept { return budget_note_; }

    /// "proved", "proved@3", "refuted", "unknown".
    std::string label() const
    {
        std::string out(to_string(status_));
        if (status_ == Status::proved && resolution_ != 0) {
            out += "@" + std::to_string(resolution_);
        }
        return out;
    }

private:
    Verdict(Status status, Method method, Certificate certificate, std::string note, std::uint32_t resolution)
        : status_(status), method_(method), certificate_(std::move(certificate)), budget_note_(std::move(note)),
          resolution_(resolution)
    {
    }

    static void require_certificate(const Certificate& c)
    {
        if (std::holds_alternative<std::monostate>(c)) {
            throw PreconditionViolation("decided verdicts need a certificate");
        }
    }

    Status status_;
    Method method_;
    Certificate certificate_;
    std::string budget_note_;
    std::uint32_t resolution_;
};

struct NamedVerdict {
    std::string name;
    Verdict verdict;
};

/// Three-valued conjunction: any Refuted part refutes, otherwise any Unknown
/// part makes the whole Unknown.
inline Verdict conjunction(const std::vector<NamedVerdict>& parts)
{
    if (parts.empty()) {
        throw PreconditionViolation("conjunction of no verdicts");
    }
    auto weakest = Method::exhaustive;
    std::uint32_t resolution = 0;
    for (const auto& p : parts) {
        if (p.verdict.method() == Method::bounded_search ||
            (p.verdict.method() == Method::graph_reduction && weakest == Method::exhaustive)) {
            weakest = p.verdict.method();
        }
        resolution = std::max(resolution, p.verdict.resolution());
    }
    for (const auto& p : parts) {
        if (p.verdict.status() == Status::refuted) {
            return Verdict::refuted(p.verdict.method(), Composite{{p.name}});
        }
    }
    std::vector<std::string> names;
    for (const auto& p : parts) {
        if (p.verdict.status() == Status::unknown) {
            return Verdict::unknown(weakest, p.name + ": " + p.verdict.budget_note(), resolution);
        }
        names.push_back(p.name);
    }
    return Verdict::proved(weakest, Composite{std::move(names)}, resolution);
}

} // namespace hypercheck
