#pragma once

#include <cstdint>

#include "lcslab/contain.hpp"
#include "lcslab/walk.hpp"
#include "lcslab/word.hpp"

// Independent reference routes used by the verification suites and tests.
// Nothing here shares code with the implementations it checks.

namespace lcslab::oracles {

// Definitional waiting time: scan m upward, testing almost containment each
// time. Throws WordExhausted like the production routine.
std::int64_t waiting_time_by_scan(const Word& w, const Word& w_prime_prefix, std::int64_t d);

// Containment by enumerating every deletion set of size <= d.
bool almost_contained_by_enumeration(const Word& u, const Word& w, std::int64_t d);

// LCS by enumerating all subsequences of the shorter word.
std::int64_t lcs_by_enumeration(const Word& u, const Word& w);

// Quadratic-DP longest non-decreasing subsequence.
std::int64_t lnds_quadratic(const Word& w);

// E|endpoint| of the half-integer random walk by summing all 2^T paths.
Rational walk_abs_expectation_by_enumeration(std::int64_t T);

// E[final gap] of the walk reflected at 1, by summing all 2^T paths.
Rational reflected_walk_value_by_enumeration(std::int64_t T);

// Same value by exact backward induction (usable up to T of a few hundred).
Rational reflected_walk_value_dp(std::int64_t T);

// Exact check that the closed-form stationary vector is a fixed point of the
// pair-exposure chain, in rational arithmetic.
bool chain_closed_form_is_stationary_exact(std::int64_t k);

}  // namespace lcslab::oracles
