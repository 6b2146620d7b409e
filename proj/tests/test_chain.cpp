#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <nlohmann/json.hpp>

#include "lcslab/chain.hpp"
#include "lcslab/oracles.hpp"

using namespace lcslab;

TEST_CASE("the k = 2 chain has exactly the four expected states") {
    const ChainSpec spec = trivial_chain_spec(2);
    REQUIRE(spec.states.size() == 4);
    CHECK(spec.states[0] == ChainState{0, false});
    CHECK(spec.states[1] == ChainState{1, false});
    CHECK(spec.states[2] == ChainState{1, true});
    CHECK(spec.states[3] == ChainState{2, true});
    spec.validate();
}

TEST_CASE("rows sum to one and the mass into (k,in) is exactly 1/k") {
    for (std::int64_t k = 2; k <= 24; ++k) {
        const ChainSpec spec = trivial_chain_spec(k);
        spec.validate();
        const auto m = spec.transition_matrix();
        const auto kin = static_cast<std::size_t>(spec.index_of(k, true));
        for (std::size_t i = 0; i < m.size(); ++i)
            CHECK(std::abs(m[i][kin] - 1.0 / static_cast<double>(k)) < 1e-15);
    }
}

TEST_CASE("stationary distribution at k = 2 is (3/8, 0, 1/8, 1/2)") {
    const auto pi = stationary_distribution(trivial_chain_spec(2));
    REQUIRE(pi.size() == 4);
    CHECK(pi[0] == doctest::Approx(0.375).epsilon(1e-12));
    CHECK(pi[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(pi[2] == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(pi[3] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("numeric stationary distribution matches the closed form for k = 2..20") {
    for (std::int64_t k = 2; k <= 20; ++k) {
        const ChainSpec spec = trivial_chain_spec(k);
        const auto pi = stationary_distribution(spec);
        const auto closed = stationary_closed_form(k);
        double sum = 0.0;
        for (std::size_t i = 0; i < pi.size(); ++i) {
            CHECK(std::abs(pi[i] - closed[i]) < 1e-10);
            sum += pi[i];
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("closed form is an exact fixed point in rational arithmetic") {
    for (std::int64_t k = 2; k <= 12; ++k) CHECK(oracles::chain_closed_form_is_stationary_exact(k));
}

TEST_CASE("starred-step probability: worked values, closed form, range") {
    CHECK(star_probability(2) == Rational(3, 4));
    CHECK(star_probability(3) == Rational(7, 12));
    for (std::int64_t k = 2; k <= 64; ++k) {
        const Rational p = star_probability(k);
        CHECK(p >= Rational(1, k));
        CHECK(p <= Rational(2, k));
    }
}

TEST_CASE("chain spec round-trips through json") {
    const ChainSpec spec = trivial_chain_spec(4);
    nlohmann::json j = spec;
    const auto back = j.get<ChainSpec>();
    CHECK(back.k == spec.k);
    CHECK(back.states.size() == spec.states.size());
    const auto pi_a = stationary_distribution(spec);
    const auto pi_b = stationary_distribution(back);
    for (std::size_t i = 0; i < pi_a.size(); ++i) CHECK(pi_a[i] == doctest::Approx(pi_b[i]));

    // starred and unstarred arcs into the same target stay distinct
    std::int64_t starred = 0, plain = 0;
    const auto kin = spec.index_of(4, true);
    for (const ChainEdge& e : back.edges[static_cast<std::size_t>(back.index_of(2, true))])
        if (e.to == kin) (e.star ? starred : plain) += 1;
    CHECK(starred == 1);
    CHECK(plain == 1);
}

TEST_CASE("expected star count: monte carlo matches forward evolution") {
    const std::int64_t k = 3, L = 50;
    const ChainSpec spec = trivial_chain_spec(k);
    const double exact = exact_bbar_mean(spec, spec.index_of(k, true), L);
    const BbarTailEstimate est = chain_bbar_tail(k, L, 20000, RngStream(17, 0));
    CHECK(std::abs(est.mean_bbar - exact) <= 4.0 * est.stderr_mean);
}

TEST_CASE("degenerate horizon: the tail event at threshold zero always happens") {
    const BbarTailEstimate est = chain_bbar_tail(2, 0, 50, RngStream(3, 3));
    CHECK(est.frequency == 1.0);
    CHECK(est.mean_bbar == 0.0);
}

TEST_CASE("a periodic two-cycle is rejected") {
    ChainSpec spec;
    spec.k = 2;
    spec.states = {{0, false}, {1, false}};
    spec.edges = {{{1, 1.0, false}}, {{0, 1.0, false}}};
    CHECK_THROWS_AS(stationary_distribution(spec), std::invalid_argument);
}

TEST_CASE("two separate absorbing loops are rejected") {
    ChainSpec spec;
    spec.k = 2;
    spec.states = {{0, false}, {1, false}, {2, true}};
    spec.edges = {{{0, 1.0, false}}, {{1, 1.0, false}}, {{0, 0.5, false}, {1, 0.5, false}}};
    CHECK_THROWS_AS(stationary_distribution(spec), std::invalid_argument);
}
