#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lcslab/chain.hpp"
#include "lcslab/contain.hpp"
#include "lcslab/estimators.hpp"
#include "lcslab/games.hpp"
#include "lcslab/particles.hpp"
#include "lcslab/seq.hpp"
#include "lcslab/verify.hpp"
#include "lcslab/walk.hpp"
#include "lcslab/word.hpp"

namespace py = pybind11;
using namespace lcslab;

namespace {

Word make_word(const std::vector<Symbol>& symbols, Symbol k) {
    Word w{symbols, k};
    if (!w.valid()) throw std::invalid_argument("symbols must lie in [0, k)");
    return w;
}

py::dict report_to_dict(const EstimateReport& r) {
    py::dict out;
    out["quantity"] = r.quantity;
    py::dict params;
    for (const auto& [key, value] : r.params) params[py::str(key)] = value;
    out["params"] = params;
    out["samples"] = r.samples;
    out["mean"] = r.mean;
    out["variance"] = r.variance;
    out["stderr"] = r.stderr_;
    out["ci95"] = py::make_tuple(r.ci_lo, r.ci_hi);
    out["seed"] = r.seed;
    py::dict extras;
    for (const auto& [key, value] : r.extras) extras[py::str(key)] = value;
    out["extras"] = extras;
    return out;
}

}  // namespace

PYBIND11_MODULE(lcslab, m) {
    m.doc() = "Subsequence dynamics, adversarial games and Monte Carlo estimators";

    m.def(
        "sample_word",
        [](Symbol k, std::int64_t n, std::uint64_t seed, std::uint64_t stream) {
            return sample_word(k, n, RngStream(seed, stream)).symbols;
        },
        py::arg("k"), py::arg("n"), py::arg("seed"), py::arg("stream") = 0);

    m.def(
        "lcs_length",
        [](const std::vector<Symbol>& u, const std::vector<Symbol>& w, Symbol k) {
            return lcs_length(make_word(u, k), make_word(w, k));
        },
        py::arg("u"), py::arg("w"), py::arg("k"));

    m.def(
        "lnds",
        [](const std::vector<Symbol>& w, Symbol k) { return lnds(make_word(w, k)); }, py::arg("w"),
        py::arg("k"));

    m.def(
        "lnds_restricted",
        [](const std::vector<Symbol>& w, Symbol k, Symbol ceiling) {
            return lnds_restricted(make_word(w, k), ceiling);
        },
        py::arg("w"), py::arg("k"), py::arg("ceiling"));

    m.def(
        "is_subsequence",
        [](const std::vector<Symbol>& u, const std::vector<Symbol>& w, Symbol k) {
            return is_subsequence(make_word(u, k), make_word(w, k));
        },
        py::arg("u"), py::arg("w"), py::arg("k"));

    m.def(
        "almost_contained",
        [](const std::vector<Symbol>& u, const std::vector<Symbol>& w, Symbol k, std::int64_t d) {
            return almost_contained(make_word(u, k), make_word(w, k), d);
        },
        py::arg("u"), py::arg("w"), py::arg("k"), py::arg("d"));

    m.def(
        "waiting_time",
        [](const std::vector<Symbol>& w, const std::vector<Symbol>& wp, Symbol k, std::int64_t d) {
            return waiting_time(make_word(w, k), make_word(wp, k), d);
        },
        py::arg("w"), py::arg("w_prime_prefix"), py::arg("k"), py::arg("d"));

    m.def(
        "run_dynamics",
        [](Symbol k, int d, std::int64_t L, std::uint64_t seed, std::uint64_t stream) {
            const Trajectory t = run_dynamics(k, d, L, RngStream(seed, stream));
            py::dict out;
            out["positions"] = L == 0 ? ParticleState::initial(d).pos : t.steps.back().state.pos;
            out["b_count"] = t.b_count;
            out["a_concat"] = t.a_concat().symbols;
            return out;
        },
        py::arg("k"), py::arg("d"), py::arg("L"), py::arg("seed"), py::arg("stream") = 0);

    m.def(
        "q_step",
        [](std::vector<std::int64_t> q, const std::vector<Symbol>& w, Symbol k, Symbol symbol) {
            const Word word = make_word(w, k);
            q_step(q, word, symbol);
            return q;
        },
        py::arg("q"), py::arg("w"), py::arg("k"), py::arg("symbol"));

    m.def("delta_game_optimal_value", &delta_game_optimal_value, py::arg("k"), py::arg("L"));
    m.def("delta_game_second_moment", &delta_game_second_moment, py::arg("k"), py::arg("L"));

    m.def(
        "random_walk_abs_expectation",
        [](std::int64_t T) { return rational_to_string(random_walk_abs_expectation(T)); },
        py::arg("T"));
    m.def(
        "good_turn_walk_value",
        [](std::int64_t T) { return rational_to_string(good_turn_walk_value(T)); }, py::arg("T"));
    m.def(
        "star_probability",
        [](std::int64_t k) { return rational_to_string(star_probability(k)); }, py::arg("k"));

    m.def(
        "stationary_distribution",
        [](std::int64_t k) {
            const ChainSpec spec = trivial_chain_spec(k);
            const auto pi = stationary_distribution(spec);
            py::list out;
            for (std::size_t i = 0; i < pi.size(); ++i)
                out.append(py::make_tuple(spec.states[i].s, spec.states[i].in ? "in" : "out", pi[i]));
            return out;
        },
        py::arg("k"));

    m.def(
        "estimate_gamma",
        [](std::int64_t k, std::int64_t n, std::int64_t samples, std::uint64_t seed, int threads) {
            return report_to_dict(estimate_gamma(k, n, {samples, seed, threads}));
        },
        py::arg("k"), py::arg("n"), py::arg("samples") = 1000, py::arg("seed") = 0,
        py::arg("threads") = 0);

    m.def(
        "estimate_drift",
        [](std::int64_t k, int d, std::int64_t L, std::int64_t samples, std::uint64_t seed,
           int threads) { return report_to_dict(estimate_drift(k, d, L, {samples, seed, threads})); },
        py::arg("k"), py::arg("d"), py::arg("L"), py::arg("samples") = 1000, py::arg("seed") = 0,
        py::arg("threads") = 0);

    m.def(
        "estimate_lnds_mean",
        [](std::int64_t k, std::int64_t n, std::int64_t samples, std::uint64_t seed, int threads) {
            return report_to_dict(estimate_lnds_mean(k, n, {samples, seed, threads}));
        },
        py::arg("k"), py::arg("n"), py::arg("samples") = 1000, py::arg("seed") = 0,
        py::arg("threads") = 0);

    m.def(
        "run_suite",
        [](const std::string& name, std::uint64_t seed, int threads) {
            const SuiteReport rep = run_suite(name, {seed, threads});
            py::list rows;
            for (const VerifyRow& r : rep.rows)
                rows.append(py::dict(py::arg("name") = r.name,
                                     py::arg("status") = to_string(r.status),
                                     py::arg("observed") = r.observed, py::arg("bound") = r.bound,
                                     py::arg("relation") = r.relation, py::arg("detail") = r.detail));
            py::dict out;
            out["suite"] = rep.suite;
            out["seed"] = rep.seed;
            out["failed"] = rep.failed();
            out["rows"] = rows;
            return out;
        },
        py::arg("name"), py::arg("seed") = 20260809, py::arg("threads") = 0);

    m.def("suite_names", &suite_names);
}
