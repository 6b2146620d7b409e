#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "lcslab/chain.hpp"
#include "lcslab/estimators.hpp"
#include "lcslab/games.hpp"
#include "lcslab/particles.hpp"
#include "lcslab/verify.hpp"
#include "lcslab/walk.hpp"

namespace {

using namespace lcslab;

struct CommonOpts {
    std::uint64_t seed = 0;
    bool seed_given = false;
    int threads = 0;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& common) {
    cmd->add_option("--seed", common.seed, "master seed (default: random, always printed)")
        ->each([&common](const std::string&) { common.seed_given = true; });
    cmd->add_option("--threads", common.threads,
                    "worker threads (default: LCSLAB_THREADS or hardware)");
    cmd->add_option("--out", common.out, "write the report to this path");
    cmd->add_option("--format", common.format, "report format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
}

std::uint64_t resolve_seed(CommonOpts& common) {
    if (!common.seed_given) {
        std::random_device rd;
        common.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
    }
    std::cout << "seed: " << common.seed << "\n";
    return common.seed;
}

void emit_report(const EstimateReport& report, const CommonOpts& common) {
    const std::string payload =
        common.format == "csv" ? report.to_csv() : report.to_json().dump(2) + "\n";
    if (common.out.empty()) {
        std::cout << payload;
    } else {
        std::ofstream file(common.out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot open output file: " + common.out);
        file << payload;
        std::cout << "report written to " << common.out << "\n";
    }
}

void summarize(const EstimateReport& r) {
    std::cout << r.quantity << ": mean=" << r.mean << " stderr=" << r.stderr_ << " ci95=["
              << r.ci_lo << "," << r.ci_hi << "] samples=" << r.samples << "\n";
    if (r.has_extra("lueker_lower"))
        std::cout << "  reference band (Lueker): [" << r.extra("lueker_lower") << ", "
                  << r.extra("lueker_upper") << "]\n";
    if (r.has_extra("window_lower"))
        std::cout << "  limit window 1-8e^2 .. 1-e^2/72: [" << r.extra("window_lower") << ", "
                  << r.extra("window_upper") << "]\n";
    if (r.has_extra("warn_short_w_prime") && r.extra("warn_short_w_prime") != 0.0)
        std::cout << "  warning: (1-eps)kn < n, the longer word is shorter than w\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lcslab: subsequence dynamics, games and Monte Carlo estimators"};
    app.require_subcommand(1);

    // gamma
    auto* gamma = app.add_subcommand("gamma", "estimate E[LCS]/n for equal-length random words");
    std::int64_t g_k = 2, g_n = 1000, g_samples = 10000;
    CommonOpts g_common;
    bool g_extrapolate = false;
    gamma->add_option("--k", g_k, "alphabet size")->required();
    gamma->add_option("--n", g_n, "word length")->required();
    gamma->add_option("--samples", g_samples, "sample count");
    gamma->add_flag("--extrapolate", g_extrapolate,
                    "add a labelled, non-certified extrapolation column");
    add_common(gamma, g_common);

    // gamma-eps
    auto* geps = app.add_subcommand("gamma-eps", "estimate E[LCS]/n with |w'| = (1-eps)kn");
    std::int64_t ge_k = 2, ge_n = 1000, ge_samples = 10000;
    double ge_eps = 0.1;
    CommonOpts ge_common;
    geps->add_option("--k", ge_k, "alphabet size")->required();
    geps->add_option("--eps", ge_eps, "imbalance parameter in (0,1)")->required();
    geps->add_option("--n", ge_n, "length of the shorter word")->required();
    geps->add_option("--samples", ge_samples, "sample count");
    add_common(geps, ge_common);

    // drift
    auto* drift = app.add_subcommand("drift", "estimate E[P_d(L) - P_0(L)] from particle runs");
    std::int64_t d_k = 2, d_L = 400, d_samples = 10000;
    int d_d = 1;
    CommonOpts d_common;
    drift->add_option("--k", d_k, "alphabet size")->required();
    drift->add_option("--d", d_d, "deletion budget / particle count minus one")->required();
    drift->add_option("--L", d_L, "number of exposed symbols")->required();
    drift->add_option("--samples", d_samples, "sample count");
    add_common(drift, d_common);

    // lnds
    auto* lnds_cmd = app.add_subcommand("lnds", "estimate E[LNDS] of random words");
    std::int64_t l_k = 8, l_n = 1024, l_samples = 10000;
    double l_p = -1.0;
    CommonOpts l_common;
    lnds_cmd->add_option("--k", l_k, "alphabet size")->required();
    lnds_cmd->add_option("--n", l_n, "word length (or binomial n when --p is given)")->required();
    lnds_cmd->add_option("--p", l_p, "sample the length as Binomial(n, p)");
    lnds_cmd->add_option("--samples", l_samples, "sample count");
    add_common(lnds_cmd, l_common);

    // concat
    auto* concat = app.add_subcommand("concat", "block-concatenation lower-bound construction");
    ConcatParams c_params;
    std::int64_t c_samples = 10000;
    CommonOpts c_common;
    concat->add_option("--k", c_params.k, "alphabet size")->required();
    concat->add_option("--eps", c_params.eps, "imbalance parameter")->required();
    concat->add_option("--d", c_params.d, "per-block deletion budget")->required();
    concat->add_option("--alpha", c_params.alpha, "drift coefficient alpha");
    concat->add_option("--L0", c_params.L0, "smallest admissible block length");
    concat->add_option("--n", c_params.n, "target length of the shorter word")->required();
    concat->add_option("--samples", c_samples, "sample count");
    add_common(concat, c_common);

    // trajectory
    auto* traj = app.add_subcommand("trajectory", "dump one dynamics run as JSON lines");
    std::int64_t t_k = 3, t_L = 20;
    int t_d = 2;
    CommonOpts t_common;
    traj->add_option("--k", t_k, "alphabet size")->required();
    traj->add_option("--d", t_d, "particle count minus one")->required();
    traj->add_option("--L", t_L, "number of steps")->required();
    add_common(traj, t_common);

    // game-dp
    auto* gamedp = app.add_subcommand("game-dp", "exact optimal value of the gap game");
    std::int64_t gd_k = 2, gd_L = 1;
    bool gd_second = false;
    gamedp->add_option("--k", gd_k, "alphabet size")->required();
    gamedp->add_option("--L", gd_L, "number of turns")->required();
    gamedp->add_flag("--second-moment", gd_second, "maximize E[(gap-1/2)^2] instead of E[gap]");

    // walk
    auto* walk_cmd = app.add_subcommand("walk", "exact E|walk endpoint| (half-integer start)");
    std::int64_t w_T = 0;
    walk_cmd->add_option("--T", w_T, "number of steps")->required();

    // chain
    auto* chain_cmd = app.add_subcommand("chain", "the reduced pair-exposure chain");
    std::int64_t ch_k = 2;
    bool ch_star = false, ch_stationary = false;
    std::string ch_export, ch_import;
    chain_cmd->add_option("--k", ch_k, "alphabet size");
    chain_cmd->add_flag("--star", ch_star, "print the exact starred-step probability");
    chain_cmd->add_flag("--stationary", ch_stationary, "print the stationary distribution");
    chain_cmd->add_option("--export", ch_export, "write the chain spec as JSON");
    chain_cmd->add_option("--import", ch_import, "load a chain spec from JSON instead of building it");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run a named verification suite");
    std::vector<std::string> v_suites;
    std::int64_t v_k = 0;
    CommonOpts v_common;
    verify_cmd->add_option("suite", v_suites, "props|walk|chain|thm1..thm5|lemma11|all")->required();
    verify_cmd->add_option("--k", v_k, "narrow the chain suite's stationary sweep to one k");
    add_common(verify_cmd, v_common);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);  // prints usage or help text
        return code == 0 ? 0 : 2;     // --help exits clean, bad usage exits 2
    }

    try {
        if (*gamma) {
            const std::uint64_t seed = resolve_seed(g_common);
            const EstimateReport r =
                estimate_gamma(g_k, g_n, {g_samples, seed, g_common.threads}, g_extrapolate);
            summarize(r);
            emit_report(r, g_common);
        } else if (*geps) {
            const std::uint64_t seed = resolve_seed(ge_common);
            const EstimateReport r =
                estimate_gamma_eps(ge_k, ge_eps, ge_n, {ge_samples, seed, ge_common.threads});
            summarize(r);
            emit_report(r, ge_common);
        } else if (*drift) {
            const std::uint64_t seed = resolve_seed(d_common);
            const EstimateReport r =
                estimate_drift(d_k, d_d, d_L, {d_samples, seed, d_common.threads});
            summarize(r);
            emit_report(r, d_common);
        } else if (*lnds_cmd) {
            const std::uint64_t seed = resolve_seed(l_common);
            const EstimateReport r =
                l_p > 0.0 ? estimate_lnds_binomial(l_k, l_n, l_p, {l_samples, seed, l_common.threads})
                          : estimate_lnds_mean(l_k, l_n, {l_samples, seed, l_common.threads});
            summarize(r);
            emit_report(r, l_common);
        } else if (*concat) {
            const std::uint64_t seed = resolve_seed(c_common);
            const EstimateReport r = estimate_concat_lower(c_params, {c_samples, seed, c_common.threads});
            summarize(r);
            emit_report(r, c_common);
        } else if (*traj) {
            const std::uint64_t seed = resolve_seed(t_common);
            const Trajectory trajectory =
                run_dynamics(static_cast<Symbol>(t_k), t_d, t_L, RngStream(seed, 0));
            const std::string payload = trajectory_to_jsonl(trajectory);
            if (t_common.out.empty()) {
                std::cout << payload;
            } else {
                std::ofstream file(t_common.out, std::ios::binary);
                if (!file) throw std::runtime_error("cannot open output file: " + t_common.out);
                file << payload;
                std::cout << "trajectory written to " << t_common.out << "\n";
            }
        } else if (*gamedp) {
            const double value = gd_second ? delta_game_second_moment(gd_k, gd_L)
                                           : delta_game_optimal_value(gd_k, gd_L);
            const double bound =
                gd_second ? 0.25 + 2.0 * static_cast<double>(gd_L) / static_cast<double>(gd_k)
                          : std::sqrt(2.0 * static_cast<double>(gd_L) / static_cast<double>(gd_k)) + 1.0;
            std::cout << value << " (bound " << bound << ")\n";
        } else if (*walk_cmd) {
            std::cout << rational_to_string(random_walk_abs_expectation(w_T)) << "\n";
        } else if (*chain_cmd) {
            const bool imported = !ch_import.empty();
            ChainSpec spec;
            if (imported) {
                std::ifstream in(ch_import);
                if (!in) throw std::invalid_argument("cannot open chain spec: " + ch_import);
                nlohmann::json j;
                in >> j;
                spec = j.get<ChainSpec>();
            } else {
                spec = trivial_chain_spec(ch_k);
            }
            if (ch_star) {
                if (imported) {
                    // numeric starred mass under the imported chain's stationary law
                    const auto pi = stationary_distribution(spec);
                    const auto mass = spec.star_mass();
                    double p = 0.0;
                    for (std::size_t i = 0; i < pi.size(); ++i) p += pi[i] * mass[i];
                    std::cout << p << "\n";
                } else {
                    std::cout << rational_to_string(star_probability(spec.k)) << "\n";
                }
            }
            if (ch_stationary) {
                const auto pi = stationary_distribution(spec);
                for (std::size_t i = 0; i < pi.size(); ++i)
                    std::cout << "(" << spec.states[i].s << "," << (spec.states[i].in ? "in" : "out")
                              << ") " << pi[i] << "\n";
            }
            if (!ch_export.empty()) {
                nlohmann::json j = spec;
                std::ofstream file(ch_export, std::ios::binary);
                if (!file) throw std::runtime_error("cannot open output file: " + ch_export);
                file << j.dump(2) << "\n";
                std::cout << "chain spec written to " << ch_export << "\n";
            }
            if (!ch_star && !ch_stationary && ch_export.empty())
                std::cout << "states: " << spec.states.size()
                          << ", star probability: " << rational_to_string(star_probability(spec.k))
                          << "\n";
        } else if (*verify_cmd) {
            const std::uint64_t seed = v_common.seed_given ? v_common.seed : VerifyOptions{}.seed;
            std::cout << "seed: " << seed << "\n";
            bool any_fail = false;
            nlohmann::json all = nlohmann::json::array();
            for (const std::string& suite : v_suites) {
                const SuiteReport report = run_suite(suite, {seed, v_common.threads, v_k});
                std::cout << "== suite " << suite << " ==\n" << report.table();
                any_fail = any_fail || report.failed();
                all.push_back(report.to_json());
            }
            if (!v_common.out.empty()) {
                std::ofstream file(v_common.out, std::ios::binary);
                if (!file) throw std::runtime_error("cannot open output file: " + v_common.out);
                file << all.dump(2) << "\n";
                std::cout << "report written to " << v_common.out << "\n";
            }
            return any_fail ? 1 : 0;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
