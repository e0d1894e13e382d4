#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <string>
#include <utility>
#include <vector>

#include "hypercheck/error.hpp"

namespace hypercheck {

using Symbol = std::uint32_t;
using Word = std::vector<Symbol>;
using SymbolMask = std::uint64_t;

inline constexpr std::size_t max_alphabet = 64;

/// One-sided vertex shift of finite type: sequences x with
/// transition[x_i][x_{i+1}] = 1. Stored in essential form; symbols without a
/// predecessor or successor are removed at construction and listed in trimmed().
class ShiftSystem {
public:
    static ShiftSystem make(std::vector<std::string> alphabet, const std::vector<std::vector<int>>& transition)
    {
        const std::size_t m = alphabet.size();
        if (m == 0) {
            throw InvalidInput("shift alphabet is empty");
        }
        if (m > max_alphabet) {
            throw InvalidInput("shift alphabet larger than " + std::to_string(max_alphabet) + " symbols");
        }
        if (transition.size() != m) {
            throw InvalidInput("transition matrix must be " + std::to_string(m) + "x" + std::to_string(m));
        }
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = i + 1; j < m; ++j) {
                if (alphabet[i] == alphabet[j]) {
                    throw InvalidInput("duplicate symbol '" + alphabet[i] + "'");
                }
            }
        }
        std::vector<SymbolMask> succ(m, 0);
        for (std::size_t i = 0; i < m; ++i) {
            if (transition[i].size() != m) {
                throw InvalidInput("transition matrix row " + std::to_string(i) + " has wrong length");
            }
            for (std::size_t j = 0; j < m; ++j) {
                if (transition[i][j] != 0 && transition[i][j] != 1) {
                    throw InvalidInput("transition matrix entries must be 0 or 1");
                }
                if (transition[i][j] == 1) {
                    succ[i] |= SymbolMask{1} << j;
                }
            }
        }

        SymbolMask alive = m == 64 ? ~SymbolMask{0} : (SymbolMask{1} << m) - 1;
        for (bool changed = true; changed;) {
            changed = false;
            for (std::size_t i = 0; i < m; ++i) {
                if (!(alive >> i & 1)) {
                    continue;
                }
                bool has_out = (succ[i] & alive) != 0;
                bool has_in = false;
                for (std::size_t j = 0; j < m && !has_in; ++j) {
                    has_in = (alive >> j & 1) && (succ[j] >> i & 1);
                }
                if (!has_out || !has_in) {
                    alive &= ~(SymbolMask{1} << i);
                    changed = true;
                }
            }
        }
        if (alive == 0) {
            throw InvalidInput("shift space is empty after trimming non-essential symbols");
        }

        ShiftSystem out;
        std::vector<std::size_t> new_index(m, SIZE_MAX);
        for (std::size_t i = 0; i < m; ++i) {
            if (alive >> i & 1) {
                new_index[i] = out.alphabet_.size();
                out.alphabet_.push_back(alphabet[i]);
            } else {
                out.trimmed_.push_back(alphabet[i]);
            }
        }
        out.succ_.assign(out.alphabet_.size(), 0);
        for (std::size_t i = 0; i < m; ++i) {
            if (new_index[i] == SIZE_MAX) {
                continue;
            }
            for (std::size_t j = 0; j < m; ++j) {
                if (new_index[j] != SIZE_MAX && (succ[i] >> j & 1)) {
                    out.succ_[new_index[i]] |= SymbolMask{1} << new_index[j];
                }
            }
        }
        return out;
    }

    /// Row-major 0/1 strings, e.g. {"11", "10"}.
    static ShiftSystem make(std::vector<std::string> alphabet, const std::vector<std::string>& rows)
    {
        std::vector<std::vector<int>> matrix;
        for (const auto& row : rows) {
            std::vector<int> r;
            for (char c : row) {
                if (c != '0' && c != '1') {
                    throw InvalidInput("matrix row '" + row + "' must contain only 0 and 1");
                }
                r.push_back(c - '0');
            }
            matrix.push_back(std::move(r));
        }
        return make(std::move(alphabet), matrix);
    }

    /// Full shift on symbols "0", ..., "m-1".
    static ShiftSystem full(std::size_t m)
    {
        return make(default_alphabet(m), std::vector<std::vector<int>>(m, std::vector<int>(m, 1)));
    }

    static std::vector<std::string> default_alphabet(std::size_t m)
    {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < m; ++i) {
            out.push_back(std::to_string(i));
        }
        return out;
    }

    std::size_t size() const noexcept { return alphabet_.size(); }
    const std::vector<std::string>& alphabet() const noexcept { return alphabet_; }
    const std::vector<std::string>& trimmed() const noexcept { return trimmed_; }

    SymbolMask all_symbols() const noexcept
    {
        return size() == 64 ? ~SymbolMask{0} : (SymbolMask{1} << size()) - 1;
    }
    SymbolMask successors(Symbol a) const { return succ_.at(a); }
    SymbolMask successors(SymbolMask set) const
    {
        SymbolMask out = 0;
        for (; set != 0; set &= set - 1) {
            out |= succ_[static_cast<std::size_t>(std::countr_zero(set))];
        }
        return out;
    }
    SymbolMask predecessors(Symbol b) const
    {
        SymbolMask out = 0;
        for (std::size_t a = 0; a < size(); ++a) {
            if (succ_[a] >> b & 1) {
                out |= SymbolMask{1} << a;
            }
        }
        return out;
    }
    bool allowed(Symbol a, Symbol b) const { return a < size() && b < size() && (succ_[a] >> b & 1); }

    bool is_allowed(const Word& w) const
    {
        if (w.empty()) {
            return false;
        }
        for (Symbol s : w) {
            if (s >= size()) {
                return false;
            }
        }
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            if (!allowed(w[i], w[i + 1])) {
                return false;
            }
        }
        return true;
    }

    std::vector<std::vector<int>> matrix() const
    {
        std::vector<std::vector<int>> out(size(), std::vector<int>(size(), 0));
        for (std::size_t a = 0; a < size(); ++a) {
            for (std::size_t b = 0; b < size(); ++b) {
                out[a][b] = static_cast<int>(succ_[a] >> b & 1);
            }
        }
        return out;
    }

    /// Symbols reachable from `from` in one or more steps.
    SymbolMask reachable_from(SymbolMask from) const
    {
        SymbolMask seen = 0;
        SymbolMask frontier = successors(from);
        while ((frontier & ~seen) != 0) {
            seen |= frontier;
            frontier = successors(frontier);
        }
        return seen;
    }

    bool strongly_connected() const
    {
        for (Symbol a = 0; a < size(); ++a) {
            if (reachable_from(SymbolMask{1} << a) != all_symbols()) {
                return false;
            }
        }
        return true;
    }

    /// True when every symbol has exactly one successor, i.e. each cylinder [a]
    /// holds a single point and the shift space is finite.
    bool finite_space() const
    {
        for (Symbol a = 0; a < size(); ++a) {
            if (std::popcount(succ_[a]) != 1) {
                return false;
            }
        }
        return true;
    }

    /// Lexicographically least shortest path from -> ... -> to with at least
    /// one edge, as the full vertex sequence. Empty when `to` is unreachable.
    Word shortest_path(Symbol from, Symbol to) const
    {
        constexpr std::size_t inf = SIZE_MAX;
        std::vector<std::size_t> dist_to(size(), inf);
        std::deque<Symbol> queue{to};
        dist_to[to] = 0;
        while (!queue.empty()) {
            Symbol v = queue.front();
            queue.pop_front();
            for (SymbolMask preds = predecessors(v); preds != 0; preds &= preds - 1) {
                auto u = static_cast<Symbol>(std::countr_zero(preds));
                if (dist_to[u] == inf) {
                    dist_to[u] = dist_to[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        // First step must be an actual edge even when from == to.
        Symbol first = 0;
        std::size_t best = inf;
        for (SymbolMask s = succ_[from]; s != 0; s &= s - 1) {
            auto v = static_cast<Symbol>(std::countr_zero(s));
            if (dist_to[v] != inf && dist_to[v] < best) {
                best = dist_to[v];
                first = v;
            }
        }
        if (best == inf) {
            return {};
        }
        Word path{from, first};
        Symbol at = first;
        while (dist_to[at] != 0) {
            for (SymbolMask s = succ_[at]; s != 0; s &= s - 1) {
                auto v = static_cast<Symbol>(std::countr_zero(s));
                if (dist_to[v] + 1 == dist_to[at]) {
                    at = v;
                    break;
                }
            }
            path.push_back(at);
        }
        return path;
    }

    std::string render(const Word& w) const
    {
        bool single_char = true;
        for (const auto& s : alphabet_) {
            single_char = single_char && s.size() == 1;
        }
        std::string out;
        for (std::size_t i = 0; i < w.size(); ++i) {
            if (!single_char && i > 0) {
                out += '.';
            }
            out += w[i] < size() ? alphabet_[w[i]] : "?";
        }
        return out;
    }

private:
    ShiftSystem() = default;

    std::vector<std::string> alphabet_;
    std::vector<std::string> trimmed_;
    std::vector<SymbolMask> succ_;
};

/// All allowed words of the given length in lexicographic (alphabet) order;
/// they index the cylinders [w] of that level.
inline std::vector<Word> allowed_words(const ShiftSystem& sft, std::size_t length)
{
    if (length == 0) {
        throw InvalidInput("word length must be positive");
    }
    std::vector<Word> out;
    Word current;
    auto extend = [&](auto&& self) -> void {
        if (current.size() == length) {
            out.push_back(current);
            return;
        }
        for (Symbol s = 0; s < sft.size(); ++s) {
            if (current.empty() || sft.allowed(current.back(), s)) {
                current.push_back(s);
                self(self);
                current.pop_back();
            }
        }
    };
    extend(extend);
    return out;
}

} // namespace hypercheck
