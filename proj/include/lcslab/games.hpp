#pragma once

#include <cstdint>
#include <vector>

#include "lcslab/rng.hpp"

namespace lcslab {

// The gap game: a single positive integer gap, adversary picks one of the
// canonical perturbation vectors each turn, a uniform coordinate lands, gaps
// that drop to zero or below reset to 1.
enum class DeltaAction : std::uint8_t {
    kNone = 0,        // all-zero vector
    kPlusMinus,       // one +1 and one -1
    kMinusOnly,       // single -1 (the +1 was cancelled by the decrement)
    kPlusMinusTwo,    // +1 and -2 (the -1 was decremented)
    kPlusMinusMinus,  // +1, -1, -1 (a zero coordinate was decremented; needs k >= 3)
};

struct GameValueTable {
    std::int64_t k = 0;
    std::int64_t horizon = 0;   // number of turns computed
    std::int64_t delta_cap = 0;
    bool second_moment = false;
    // value[t][delta] = optimal expected objective with t turns left from gap
    // delta (index 0 unused). action[t][delta] = an argmax action.
    std::vector<std::vector<double>> value;
    std::vector<std::vector<DeltaAction>> action;

    double at(std::int64_t turns, std::int64_t delta = 1) const;
};

// Exact backward induction for the adversary maximizing E[gap] after L turns.
GameValueTable delta_game_table(std::int64_t k, std::int64_t L, bool second_moment = false,
                                std::int64_t delta_cap = -1);
double delta_game_optimal_value(std::int64_t k, std::int64_t L);
// Adversary maximizing E[(gap - 1/2)^2] instead.
double delta_game_second_moment(std::int64_t k, std::int64_t L);

// Same values computed over the raw action set (all placements of the +1/-1
// pair and of the optional decrement) without the symmetry reduction. Small
// sizes only; used to validate the canonical action list.
double delta_game_value_full_actions(std::int64_t k, std::int64_t L, bool second_moment);

// The gap-and-flag game of the drift lower bound.
enum class TwoGameRule {
    kAlwaysSame,
    kAlwaysDiff,
    kHonest,  // fresh symbol comparison: same with probability 1/k
};

struct TwoGameResult {
    std::int64_t delta = 1;
    std::int64_t good_turns = 0;  // turns where the gap moved
    std::int64_t heads = 0;       // coin tosses that landed heads
};

TwoGameResult two_game_simulate(std::int64_t k, std::int64_t L, TwoGameRule rule, RngStream rng);

// Exact optimal (adversary-maximal) expected star count over T turns of the
// exposure game behind the pair-coincidence chain, starting from (s0, b0).
// The adversary picks the flag after every particle move and may reset the
// exposure set by jumping; the claim under test is that this optimum equals
// the plain chain started at the same state.
double trivial_game_optimal_bbar(std::int64_t k, std::int64_t T, std::int64_t s0, bool b0_in);

}  // namespace lcslab
