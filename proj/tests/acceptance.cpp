// Acceptance suite: every release gate in one binary, one line per criterion.
// Exit code 0 only if every criterion passes.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lcslab/estimators.hpp"
#include "lcslab/verify.hpp"

namespace {

using namespace lcslab;

constexpr std::uint64_t kSeed = 20260809;

struct Criterion {
    std::string name;
    double time_limit_s;  // <= 0 means no limit
    std::function<std::vector<VerifyRow>()> run;
};

bool rows_pass(const std::vector<VerifyRow>& rows) {
    for (const VerifyRow& r : rows)
        if (r.status != CheckStatus::kPass) return false;
    return true;
}

}  // namespace

int main() {
    const VerifyOptions opt{kSeed, 0};
    std::vector<Criterion> criteria;

    auto suite_rows = [&](const std::string& suite, const std::string& prefix) {
        return [suite, prefix, &opt]() {
            std::vector<VerifyRow> picked;
            for (const VerifyRow& r : run_suite(suite, opt).rows)
                if (r.name.rfind(prefix, 0) == 0) picked.push_back(r);
            return picked;
        };
    };

    criteria.push_back({"dynamics-vs-definition oracle equivalence (1000 instances)", 10.0,
                        suite_rows("props", "props/")});
    criteria.push_back({"worked p-dynamics regression", 0.0, suite_rows("props", "example-p/")});
    criteria.push_back({"worked q-step regression + lockstep fuzz", 0.0, suite_rows("props", "example-q/")});
    criteria.push_back({"walk closed form vs enumeration (T=0..16)", 5.0,
                        suite_rows("walk", "walk/")});
    criteria.push_back({"reduced chain: stationary law and star probability", 0.0,
                        suite_rows("chain", "chain/")});
    criteria.push_back({"gap-game DP bounds (k=2..5, L=0..50)", 60.0,
                        suite_rows("thm4", "thm4/dp-")});
    criteria.push_back({"drift lower bound, k=2 L=400 (statistical)", 120.0,
                        suite_rows("thm3", "thm3/drift-lower-L400")});
    criteria.push_back({"drift upper bound grid (statistical)", 0.0,
                        suite_rows("thm4", "thm4/drift-upper-")});
    criteria.push_back({"drift ratio at k=50, d=3, L=1e5 (statistical)", 600.0,
                        suite_rows("thm5", "thm5/drift-ratio")});
    criteria.push_back({"non-trivial partition tail, k=16 d=2 L=2048", 0.0,
                        suite_rows("lemma11", "lemma11/b-tail")});
    criteria.push_back({"gamma_2 sanity window at n=1e5", 0.0, suite_rows("thm1", "thm1/gamma2-window")});
    criteria.push_back({"E[P_0(L)] = L/k at k=3, L=30", 0.0, suite_rows("thm5", "thm5/p0-mean")});

    criteria.push_back(
        {"reproducibility across thread counts", 0.0, [&]() {
             std::vector<VerifyRow> rows;
             std::string first;
             bool identical = true;
             for (const int threads : {1, 2, 4}) {
                 const SuiteReport rep = run_suite("thm3", {kSeed, threads});
                 const std::string canon = rep.to_json(true).dump();
                 if (first.empty())
                     first = canon;
                 else if (canon != first)
                     identical = false;
             }
             rows.push_back(check_exact("repro/thm3-canonical-json-threads-1-2-4", identical,
                                        identical ? 1 : 0, 1));
             return rows;
         }});

    int failures = 0;
    for (const Criterion& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::vector<VerifyRow> rows;
        bool threw = false;
        std::string what;
        try {
            rows = c.run();
        } catch (const std::exception& e) {
            threw = true;
            what = e.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool in_time = c.time_limit_s <= 0.0 || elapsed <= c.time_limit_s;
        const bool ok = !threw && !rows.empty() && rows_pass(rows) && in_time;
        if (!ok) ++failures;

        std::printf("%s  %-55s (%.1fs", ok ? "PASS" : "FAIL", c.name.c_str(), elapsed);
        if (c.time_limit_s > 0.0) std::printf(" / limit %.0fs", c.time_limit_s);
        std::printf(")\n");
        if (threw) std::printf("      exception: %s\n", what.c_str());
        for (const VerifyRow& r : rows)
            if (r.status != CheckStatus::kPass)
                std::printf("      %s %s: observed=%.10g %s bound=%.10g %s\n",
                            to_string(r.status).c_str(), r.name.c_str(), r.observed,
                            r.relation.c_str(), r.bound, r.detail.c_str());
    }

    std::printf("%d/%zu acceptance criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
