#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "lcslab/rng.hpp"
#include "lcslab/word.hpp"

namespace lcslab {

// Positions P_0 < P_1 < ... < P_d of d+1 particles on w. P_{-1} is the
// sentinel far below zero, so max(P_0, P_{-1}+1) = P_0.
struct ParticleState {
    std::vector<std::int64_t> pos;

    static ParticleState initial(int d);
    int d() const { return static_cast<int>(pos.size()) - 1; }
    bool strictly_increasing() const;

    friend bool operator==(const ParticleState&, const ParticleState&) = default;
};

constexpr std::int64_t kNegInf = std::numeric_limits<std::int64_t>::min() / 2;

// Grouping of particle indices by the symbol each one sits on. Trivial when
// every part is a singleton.
struct ExpectantPartition {
    std::vector<std::pair<Symbol, std::vector<int>>> parts;  // (symbol, ascending particle ids)
    bool trivial() const;
};

ExpectantPartition expectant_partition(const ParticleState& st, const Word& w);
ExpectantPartition expectant_partition(const ParticleState& st, LazyWord& w);

// One update step: particles matching the exposed symbol advance, the rest
// get bumped forward of their left neighbour if needed. Returns the matched
// index set A in descending order.
std::vector<int> evolve_step(ParticleState& st, const Word& w, Symbol symbol);
std::vector<int> evolve_step(ParticleState& st, LazyWord& w, Symbol symbol);

// One step of the jump variant: excited particles, taken in decreasing order
// of position, each move to the next vacant position on their right. Sorted
// q-positions track the bump dynamics step for step.
void q_step(std::vector<std::int64_t>& q, const Word& w, Symbol symbol);
void q_step(std::vector<std::int64_t>& q, LazyWord& w, Symbol symbol);

struct TrajectoryStep {
    std::vector<int> a_set;            // descending
    bool partition_trivial = true;     // of the expectant partition before the step
    ParticleState state;               // after the step
    std::vector<std::int64_t> q;       // after the step (empty when q-tracking is off)
};

struct Trajectory {
    Symbol k = 0;
    int d = 0;
    std::int64_t L = 0;
    std::vector<TrajectoryStep> steps;
    Word w_exposed;        // prefix of w revealed during the run
    Word w_prime;          // the L symbols that drove the run
    std::int64_t b_count = 0;  // steps with a non-trivial expectant partition

    // A[0]A[1]...A[L-1], each set written in descending order; a word over
    // the alphabet {0,...,d}.
    Word a_concat() const;
};

struct DynamicsOptions {
    bool record_steps = true;
    bool track_q = true;
};

// L steps driven by lazily sampled w and w'.
Trajectory run_dynamics(Symbol k, int d, std::int64_t L, RngStream rng,
                        DynamicsOptions options = {});

// Same dynamics with both words fixed; w must be long enough to cover every
// particle it ever carries.
Trajectory run_dynamics_words(const Word& w, const Word& w_prime, int d,
                              DynamicsOptions options = {});

struct TrivialityStats {
    std::int64_t b_count = 0;
    std::map<std::pair<int, int>, std::int64_t> pair_counts;  // |B_ij| for i < j
};

// Recounts |B| and the pairwise coincidence sets from a recorded trajectory
// (requires q-tracking).
TrivialityStats triviality_stats(const Trajectory& t);

// Hot paths for the estimators: no recording.
struct DriftSample {
    std::int64_t p0 = 0;
    std::int64_t pd = 0;
};
DriftSample simulate_drift(Symbol k, int d, std::int64_t L, RngStream rng);
std::int64_t simulate_b_count(Symbol k, int d, std::int64_t L, RngStream rng);

// One JSON object per step; schema described in the README.
std::string trajectory_to_jsonl(const Trajectory& t);

}  // namespace lcslab
