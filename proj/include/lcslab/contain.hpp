#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "lcslab/seq.hpp"
#include "lcslab/word.hpp"

namespace lcslab {

// Thrown when a finite word ends before the queried quantity is certified.
struct WordExhausted : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// u is a subsequence of w (greedy left-to-right matching).
bool is_subsequence(const Word& u, const Word& w);

// Minimum number of symbols to delete from u so the rest is a subsequence of
// w; equals len(u) - LCS(u, w).
std::int64_t min_deletions(const Word& u, const Word& w);

// u may be turned into a subsequence of w by deleting at most d symbols.
bool almost_contained(const Word& u, const Word& w, std::int64_t d);

struct DeletionBudgetVector {
    std::vector<std::int64_t> budgets;   // d_1, ..., d_M
    std::int64_t block_length = 1;       // L

    std::int64_t total() const {
        std::int64_t s = 0;
        for (auto b : budgets) s += b;
        return s;
    }
    bool valid() const {
        if (block_length < 1) return false;
        for (auto b : budgets)
            if (b < 0) return false;
        return true;
    }
};

// Largest m with w_{<m} almost contained in the given prefix of w' under
// budget d. The finite overload throws WordExhausted when w ends while the
// containment still holds (the true value is then not certified); the lazy
// overload extends w as needed and always returns.
std::int64_t waiting_time(const Word& w, const Word& w_prime_prefix, std::int64_t d);
std::int64_t waiting_time(LazyWord& w, const Word& w_prime_prefix, std::int64_t d);

struct StandardPrefix {
    std::vector<Word> blocks;   // w_1, ..., w_M
    std::int64_t consumed = 0;  // sum of block lengths
};

// Greedy block decomposition: block i is the longest prefix of the remainder
// of w that is d_i-almost contained in the i'th length-L block of w'. Trailing
// blocks may be empty once w is used up.
StandardPrefix standard_prefix(const Word& w, const Word& w_prime, const DeletionBudgetVector& dvec);

// Budget vector with sum len(w) - LCS(w, w') under which w is blockwise almost
// contained in w' (w' split into blocks of block_length). Built by splitting a
// canonical longest common subsequence at block boundaries.
DeletionBudgetVector lcs_dominating_dvec(const Word& w, const Word& w_prime, std::int64_t block_length);

}  // namespace lcslab
