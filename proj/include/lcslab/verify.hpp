#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace lcslab {

enum class CheckStatus { kPass, kFail, kInconclusive };
std::string to_string(CheckStatus s);

struct VerifyRow {
    std::string name;
    CheckStatus status = CheckStatus::kFail;
    double observed = 0.0;
    double bound = 0.0;
    std::string relation;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::uint64_t seed = 0;
    std::vector<VerifyRow> rows;
    double wall_ms = 0.0;

    bool failed() const;
    nlohmann::json to_json(bool canonical = false) const;
    std::string table() const;  // aligned text, one row per check
};

struct VerifyOptions {
    std::uint64_t seed = 20260809;
    int threads = 0;  // 0 = auto
    std::int64_t k = 0;  // when > 0, narrows the chain suite's stationary sweep to this k
};

// Registered suites: props, walk, chain, thm1, thm2, thm3, thm4, thm5,
// lemma11 (plus "all"). Desk-scale parameters are pinned inside.
std::vector<std::string> suite_names();
SuiteReport run_suite(const std::string& name, const VerifyOptions& opt);

// Statistical acceptance convention: an inequality holds when the bound sits
// outside the mean -/+ 3 stderr band on the claimed side, fails when it sits
// outside on the wrong side, and is inconclusive when the band straddles it.
VerifyRow check_mean_ge(std::string name, double mean, double se, double bound);
VerifyRow check_mean_le(std::string name, double mean, double se, double bound);
VerifyRow check_exact(std::string name, bool ok, double observed, double bound,
                      std::string relation = "==");
VerifyRow check_in_interval(std::string name, double value, double lo, double hi);

}  // namespace lcslab
