#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "lcslab/word.hpp"

namespace lcslab {

// Length of the longest common subsequence. Dispatches between a rolling-row
// DP and a bit-parallel scan; both compute the exact value.
std::int64_t lcs_length(const Word& u, const Word& w);

// Reference rolling-row DP, O(|u||w|) time, O(min) memory.
std::int64_t lcs_length_dp(const Word& u, const Word& w);

// Bit-parallel LCS length, O(|w| * ceil(|u|/64)).
std::int64_t lcs_length_bitparallel(const Word& u, const Word& w);

// One canonical longest common subsequence as index pairs (i in u, j in w),
// increasing in both coordinates. Full-table DP with traceback.
std::vector<std::pair<std::int64_t, std::int64_t>> lcs_matching(const Word& u, const Word& w);

// Length of the longest non-decreasing subsequence (patience piles with a
// "rightmost pile top <= x" binary search).
std::int64_t lnds(const Word& w);

// LNDS of w after deleting all symbols greater than ceiling.
std::int64_t lnds_restricted(const Word& w, Symbol ceiling);

}  // namespace lcslab
