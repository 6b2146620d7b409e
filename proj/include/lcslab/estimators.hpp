#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lcslab/rng.hpp"

namespace lcslab {

struct Welford {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x);
    void merge(const Welford& other);
    double variance() const;       // unbiased; 0 when n < 2
    double standard_error() const;
};

struct EstimateReport {
    std::string quantity;
    std::vector<std::pair<std::string, double>> params;
    std::uint64_t samples = 0;
    double mean = 0.0;
    double variance = 0.0;
    double stderr_ = 0.0;
    double ci_lo = 0.0;  // mean -/+ 1.96 stderr
    double ci_hi = 0.0;
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, double>> extras;
    double wall_ms = 0.0;

    double extra(const std::string& name) const;
    bool has_extra(const std::string& name) const;

    // Canonical form drops timing so reruns compare byte-for-byte.
    nlohmann::json to_json(bool canonical = false) const;
    std::string to_csv() const;  // header line + one data row, RFC 4180 quoting

    static EstimateReport from_welford(const Welford& w);  // fills the moment fields

    // Combine two reports over disjoint sample sets of the same quantity.
    static EstimateReport merged(const EstimateReport& a, const EstimateReport& b);
};

struct McOptions {
    std::int64_t samples = 10000;
    std::uint64_t seed = 0;
    int threads = 0;                 // 0 = hardware concurrency (or LCSLAB_THREADS)
    std::int64_t sample_offset = 0;  // first stream index of this run's range
};

int resolve_threads(int requested);

// Deterministic parallel map-reduce: sample i writes dim values, accumulators
// are combined in fixed chunk order so the result does not depend on the
// thread count.
std::vector<Welford> mc_accumulate(std::int64_t samples, int threads, std::size_t dim,
                                   const std::function<void(std::int64_t, double*)>& fn);

// Stream layout: each estimator salt owns a block of stream indices, one per
// (sample, substream) pair.
RngStream make_stream(std::uint64_t seed, std::uint64_t salt, std::int64_t sample, std::uint64_t sub);

// mean LCS(w, w')/n for independent w, w' of length n over k symbols. The
// report always carries the plain finite-n mean; with_extrapolation adds a
// labelled, non-certified extrapolation column from a half-length companion
// run (1/sqrt(n) correction model).
EstimateReport estimate_gamma(std::int64_t k, std::int64_t n, McOptions opt,
                              bool with_extrapolation = false);

// mean LCS(w, w')/n with |w'| = floor((1-eps) k n)
EstimateReport estimate_gamma_eps(std::int64_t k, double eps, std::int64_t n, McOptions opt);

// mean P_d(L) - P_0(L) over dynamics runs; extras carry the P_0 calibration
EstimateReport estimate_drift(std::int64_t k, int d, std::int64_t L, McOptions opt);

// mean LNDS of w ~ [k]^n plus the (mean - n/k)/(2 sqrt(n)) normalization
EstimateReport estimate_lnds_mean(std::int64_t k, std::int64_t n, McOptions opt);

// LNDS of a Binomial(n,p)-length word; normalization uses pn in place of n
EstimateReport estimate_lnds_binomial(std::int64_t k, std::int64_t n, double p, McOptions opt);

struct ConcatParams {
    std::int64_t k = 2;
    double eps = 0.01;
    int d = 1;
    double alpha = 0.377964473;  // 1/sqrt(7)
    std::int64_t L0 = 400;
    std::int64_t n = 4000;
};

// Block-concatenation lower-bound construction: Y = sum of per-block consumed
// lengths; reports Pr[Y >= n], the implied LCS bound, and the variance
// additivity cross-check.
EstimateReport estimate_concat_lower(const ConcatParams& params, McOptions opt);

}  // namespace lcslab
