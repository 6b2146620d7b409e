#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "lcslab/estimators.hpp"
#include "lcslab/particles.hpp"
#include "lcslab/verify.hpp"

using namespace lcslab;

TEST_CASE("three-sigma convention: pass, fail and the straddling band") {
    CHECK(check_mean_ge("x", 10.0, 1.0, 6.9).status == CheckStatus::kPass);
    CHECK(check_mean_ge("x", 10.0, 1.0, 13.1).status == CheckStatus::kFail);
    CHECK(check_mean_ge("x", 10.0, 1.0, 10.5).status == CheckStatus::kInconclusive);
    CHECK(check_mean_le("x", 10.0, 1.0, 13.1).status == CheckStatus::kPass);
    CHECK(check_mean_le("x", 10.0, 1.0, 6.9).status == CheckStatus::kFail);
    CHECK(check_mean_le("x", 10.0, 1.0, 9.5).status == CheckStatus::kInconclusive);
    CHECK(check_in_interval("x", 0.9, 0.75, 1.25).status == CheckStatus::kPass);
    CHECK(check_in_interval("x", 0.7, 0.75, 1.25).status == CheckStatus::kFail);
}

TEST_CASE("welford merge reproduces the single pass") {
    RngStream rng(1, 2);
    std::vector<double> xs;
    for (int i = 0; i < 5000; ++i) xs.push_back(rng.next_double() * 10.0 - 3.0);

    Welford all, left, right;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        all.add(xs[i]);
        (i < xs.size() / 3 ? left : right).add(xs[i]);
    }
    left.merge(right);
    CHECK(left.n == all.n);
    CHECK(left.mean == doctest::Approx(all.mean).epsilon(1e-12));
    CHECK(left.variance() == doctest::Approx(all.variance()).epsilon(1e-12));
}

TEST_CASE("report merge over disjoint stream ranges matches one pass") {
    const EstimateReport full = estimate_drift(2, 1, 50, {2000, 9, 1, 0});
    const EstimateReport lo = estimate_drift(2, 1, 50, {1000, 9, 1, 0});
    const EstimateReport hi = estimate_drift(2, 1, 50, {1000, 9, 1, 1000});
    const EstimateReport merged = EstimateReport::merged(lo, hi);
    CHECK(merged.samples == full.samples);
    CHECK(merged.mean == doctest::Approx(full.mean).epsilon(1e-12));
    CHECK(merged.variance == doctest::Approx(full.variance).epsilon(1e-12));
    CHECK(merged.stderr_ == doctest::Approx(full.stderr_).epsilon(1e-12));
}

TEST_CASE("identical seeds give bit-identical reports for any thread count") {
    for (const char* quantity : {"drift", "gamma"}) {
        std::string one, four;
        for (int threads : {1, 4}) {
            const EstimateReport r = std::string(quantity) == "drift"
                                         ? estimate_drift(2, 1, 100, {3000, 123, threads})
                                         : estimate_gamma(2, 400, {200, 123, threads});
            (threads == 1 ? one : four) = r.to_json(true).dump();
        }
        CHECK(one == four);
    }
}

TEST_CASE("different seeds give different reports") {
    const EstimateReport a = estimate_drift(2, 1, 100, {500, 1, 1});
    const EstimateReport b = estimate_drift(2, 1, 100, {500, 2, 1});
    CHECK(a.to_json(true).dump() != b.to_json(true).dump());
}

TEST_CASE("gamma rejects a unary alphabet and is exact at n = 1") {
    CHECK_THROWS_AS(estimate_gamma(1, 10, {10, 0, 1}), std::invalid_argument);
    // two symbols agree with probability 1/2
    const EstimateReport r = estimate_gamma(2, 1, {40000, 11, 0});
    CHECK(std::abs(r.mean - 0.5) <= 4.0 * r.stderr_);
}

TEST_CASE("gamma at moderate n sits in the reference band") {
    const EstimateReport r = estimate_gamma(2, 2000, {30, 21, 0});
    CHECK(r.mean > 0.78);
    CHECK(r.mean < 0.8263);
    CHECK(r.extra("lueker_lower") == 0.788071);
}

TEST_CASE("gamma-eps flags a longer-word shorter than w") {
    const EstimateReport r = estimate_gamma_eps(2, 0.8, 100, {10, 3, 1});
    CHECK(r.extra("warn_short_w_prime") == 1.0);
    CHECK(r.extra("len_w_prime") == 40.0);
    const EstimateReport ok = estimate_gamma_eps(2, 0.3, 100, {10, 3, 1});
    CHECK(ok.extra("warn_short_w_prime") == 0.0);
}

TEST_CASE("drift report carries the calibration extras") {
    const EstimateReport r = estimate_drift(3, 2, 60, {2000, 5, 0});
    CHECK(r.extra("target_p0") == 20.0);
    CHECK(std::abs(r.extra("mean_p0") - 20.0) <= 4.0 * r.extra("stderr_p0"));
    CHECK(r.mean >= 0.0);
}

TEST_CASE("lnds estimator degenerate paths") {
    // unary alphabet: every word is non-decreasing, normalized statistic 0
    const EstimateReport unary = estimate_lnds_mean(1, 100, {50, 7, 1});
    CHECK(unary.mean == 100.0);
    CHECK(unary.extra("normalized") == 0.0);
    const EstimateReport single = estimate_lnds_mean(4, 1, {50, 7, 1});
    CHECK(single.mean == 1.0);
}

TEST_CASE("binomial length sampling is exact in distribution") {
    const EstimateReport r = estimate_lnds_binomial(4, 400, 0.25, {4000, 13, 0});
    CHECK(std::abs(r.extra("mean_length") - 100.0) <= 4.0 * r.extra("stderr_length"));
    CHECK_THROWS_AS(estimate_lnds_binomial(4, 400, 1.5, {10, 0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(estimate_lnds_binomial(4, 400, 0.0, {10, 0, 1}), std::invalid_argument);
}

TEST_CASE("concat construction rejects an inadmissible eps") {
    CHECK_THROWS_AS(estimate_concat_lower({2, 0.04, 1, 0.377964473, 400, 1000}, {10, 0, 1}),
                    std::invalid_argument);
}

TEST_CASE("drift estimator matches the exactly enumerated mean at a tiny size") {
    // E[P_1(4) - P_0(4)] at k = 2 by summing over all word pairs
    const std::int64_t L = 4, wlen = L + 3;
    double exact = 0.0;
    for (std::uint32_t wp_bits = 0; wp_bits < (1u << L); ++wp_bits)
        for (std::uint32_t w_bits = 0; w_bits < (1u << wlen); ++w_bits) {
            Word w{{}, 2}, wp{{}, 2};
            for (std::int64_t i = 0; i < wlen; ++i) w.symbols.push_back((w_bits >> i) & 1);
            for (std::int64_t i = 0; i < L; ++i) wp.symbols.push_back((wp_bits >> i) & 1);
            const Trajectory t = run_dynamics_words(w, wp, 1, {true, false});
            exact += static_cast<double>(t.steps.back().state.pos[1] - t.steps.back().state.pos[0]);
        }
    exact /= static_cast<double>(1u << (L + wlen));

    const EstimateReport r = estimate_drift(2, 1, L, {40000, 77, 0});
    CHECK(std::abs(r.mean - exact) <= 4.0 * r.stderr_);
}

TEST_CASE("gamma extrapolation column is labelled and optional") {
    const EstimateReport plain = estimate_gamma(2, 200, {50, 4, 1});
    CHECK(!plain.has_extra("fekete_extrapolated_uncertified"));
    const EstimateReport extr = estimate_gamma(2, 200, {50, 4, 1}, true);
    CHECK(extr.has_extra("fekete_extrapolated_uncertified"));
    CHECK(extr.mean == plain.mean);  // headline mean is untouched
}

TEST_CASE("json report schema and canonical form") {
    const EstimateReport r = estimate_drift(2, 1, 30, {200, 3, 1});
    const nlohmann::json full = r.to_json(false);
    for (const char* key : {"schema_version", "quantity", "params", "samples", "mean", "variance",
                            "stderr", "ci95", "seed", "extras", "wall_ms"})
        CHECK(full.contains(key));
    const nlohmann::json canonical = r.to_json(true);
    CHECK(!canonical.contains("wall_ms"));
    CHECK(full["params"].contains("k"));
    CHECK(full["ci95"].size() == 2);
    CHECK(full["ci95"][0].get<double>() == doctest::Approx(r.mean - 1.96 * r.stderr_));
}

TEST_CASE("csv report has a header and a quoted-safe row") {
    const EstimateReport r = estimate_gamma(2, 50, {20, 3, 1});
    const std::string csv = r.to_csv();
    const auto newline = csv.find('\n');
    REQUIRE(newline != std::string::npos);
    const std::string header = csv.substr(0, newline);
    CHECK(header.find("schema_version,quantity,k,n,samples,mean,variance,stderr") == 0);
    CHECK(csv.substr(newline + 1).find("1,gamma,2,50,20,") == 0);
}

TEST_CASE("stderr and ci are consistent with the variance") {
    const EstimateReport r = estimate_gamma(2, 100, {300, 5, 0});
    CHECK(r.stderr_ ==
          doctest::Approx(std::sqrt(r.variance / static_cast<double>(r.samples))).epsilon(1e-12));
    CHECK(r.ci_hi - r.ci_lo == doctest::Approx(2 * 1.96 * r.stderr_).epsilon(1e-12));
}
