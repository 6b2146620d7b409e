#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lcslab/rng.hpp"
#include "lcslab/walk.hpp"

namespace lcslab {

struct ChainState {
    std::int64_t s = 0;
    bool in = false;

    friend bool operator==(const ChainState&, const ChainState&) = default;
};

// A transition arc; parallel arcs to the same target are kept separate so a
// starred and an unstarred arc never get merged.
struct ChainEdge {
    int to = 0;
    double prob = 0.0;
    bool star = false;
};

struct ChainSpec {
    std::int64_t k = 0;
    std::vector<ChainState> states;
    std::vector<std::vector<ChainEdge>> edges;

    int index_of(std::int64_t s, bool in) const;
    std::vector<std::vector<double>> transition_matrix() const;  // arcs aggregated
    std::vector<double> star_mass() const;  // starred outgoing probability per state
    void validate() const;                  // rows sum to 1 within 1e-12, entries >= 0
};

// The reduced pair-exposure chain on {0..k} x {out,in} minus the two excluded
// corners, with starred arcs marking the turns the coincidence counter picks
// up. States are ordered (0,out), (1,out), (1,in), ..., (k-1,in), (k,in).
ChainSpec trivial_chain_spec(std::int64_t k);

// Solves pi P = pi, sum pi = 1 by dense elimination; throws if the chain is
// not strongly connected or the residual exceeds 1e-12.
std::vector<double> stationary_distribution(const ChainSpec& spec);

// Closed form of the stationary distribution, aligned with the state order of
// trivial_chain_spec(k).
std::vector<double> stationary_closed_form(std::int64_t k);
std::vector<Rational> stationary_closed_form_exact(std::int64_t k);

// (2^k - 1) / (k 2^(k-1)); asserted equal to the starred mass under the exact
// stationary distribution before returning.
Rational star_probability(std::int64_t k);

// Expected star count over L steps from a given start state, by forward
// evolution of the distribution vector.
double exact_bbar_mean(const ChainSpec& spec, int start, std::int64_t L);

struct BbarTailEstimate {
    std::int64_t samples = 0;
    double threshold = 0.0;       // 3 p L
    double frequency = 0.0;       // empirical Pr[bbar >= threshold]
    double stderr_ = 0.0;         // binomial standard error
    double mean_bbar = 0.0;
    double stderr_mean = 0.0;
    double tail_bound = 0.0;     // min(1, 2 L exp(-p sqrt(2L/k)))
};

// Monte Carlo tail of the star count started from (k,in).
BbarTailEstimate chain_bbar_tail(std::int64_t k, std::int64_t L, std::int64_t samples,
                                 RngStream rng);

void to_json(nlohmann::json& j, const ChainSpec& spec);
void from_json(const nlohmann::json& j, ChainSpec& spec);

}  // namespace lcslab
