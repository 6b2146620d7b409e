#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lcslab/rng.hpp"

namespace lcslab {

using Symbol = std::int32_t;

// A word over the alphabet {0,...,k-1}. The customary 1-based alphabet {1..k}
// is shifted down by one everywhere inside the library; parsing/formatting
// helpers below can apply the shift at the boundary.
struct Word {
    std::vector<Symbol> symbols;
    Symbol k = 0;

    Word() = default;
    Word(std::vector<Symbol> syms, Symbol alphabet) : symbols(std::move(syms)), k(alphabet) {}

    std::int64_t size() const { return static_cast<std::int64_t>(symbols.size()); }
    bool empty() const { return symbols.empty(); }
    Symbol operator[](std::int64_t i) const { return symbols[static_cast<std::size_t>(i)]; }

    Word prefix(std::int64_t m) const {
        return Word(std::vector<Symbol>(symbols.begin(), symbols.begin() + m), k);
    }
    Word slice(std::int64_t from, std::int64_t to) const {
        return Word(std::vector<Symbol>(symbols.begin() + from, symbols.begin() + to), k);
    }

    bool valid() const {
        if (k < 1) return false;
        for (Symbol s : symbols)
            if (s < 0 || s >= k) return false;
        return true;
    }

    friend bool operator==(const Word&, const Word&) = default;
};

// w ~ [k]^n, each symbol independently uniform. Deterministic in (seed, stream).
Word sample_word(Symbol k, std::int64_t n, RngStream rng);

// Infinite random word over {0,...,k-1}, materialized one symbol at a time.
class LazyWord {
public:
    LazyWord(Symbol k, RngStream rng) : rng_(rng) { buf_.k = k; }

    Symbol at(std::int64_t i) {
        while (buf_.size() <= i)
            buf_.symbols.push_back(static_cast<Symbol>(rng_.uniform_int(static_cast<std::uint32_t>(buf_.k))));
        return buf_[i];
    }

    Symbol k() const { return buf_.k; }
    std::int64_t materialized() const { return buf_.size(); }
    const Word& exposed() const { return buf_; }

private:
    Word buf_;
    RngStream rng_;
};

// Digit string for k <= 10 (k <= 9 when one_based), JSON-style integer list
// otherwise, e.g. "[0,2,1]".
std::string word_to_string(const Word& w, bool one_based = false);
Word word_from_string(const std::string& text, Symbol k, bool one_based = false);

}  // namespace lcslab
