#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lcslab/chain.hpp"
#include "lcslab/games.hpp"
#include "lcslab/oracles.hpp"
#include "lcslab/walk.hpp"

using namespace lcslab;

TEST_CASE("gap game base values") {
    CHECK(delta_game_optimal_value(2, 0) == doctest::Approx(1.0));
    // best single turn from gap 1: +1/-1 pair, (2 + reset-to-1)/2
    CHECK(delta_game_optimal_value(2, 1) == doctest::Approx(1.5));
    CHECK(delta_game_second_moment(2, 0) == doctest::Approx(0.25));
    CHECK(delta_game_second_moment(2, 1) == doctest::Approx(1.25));
}

TEST_CASE("gap game values are monotone in the horizon and respect the bounds") {
    for (std::int64_t k = 2; k <= 5; ++k) {
        const GameValueTable mean_table = delta_game_table(k, 50, false);
        const GameValueTable m2_table = delta_game_table(k, 50, true);
        double prev = 0.0;
        for (std::int64_t L = 0; L <= 50; ++L) {
            const double v = mean_table.at(L, 1);
            CHECK(v >= prev - 1e-12);
            prev = v;
            CHECK(v <= std::sqrt(2.0 * static_cast<double>(L) / static_cast<double>(k)) + 1.0 + 1e-9);
            CHECK(m2_table.at(L, 1) <=
                  0.25 + 2.0 * static_cast<double>(L) / static_cast<double>(k) + 1e-9);
        }
    }
}

TEST_CASE("canonical actions match the unreduced action sweep at tiny sizes") {
    for (std::int64_t k = 2; k <= 3; ++k)
        for (std::int64_t L = 0; L <= 5; ++L) {
            CHECK(delta_game_optimal_value(k, L) ==
                  doctest::Approx(delta_game_value_full_actions(k, L, false)).epsilon(1e-12));
            CHECK(delta_game_second_moment(k, L) ==
                  doctest::Approx(delta_game_value_full_actions(k, L, true)).epsilon(1e-12));
        }
}

TEST_CASE("gap game rejects bad parameters") {
    CHECK_THROWS_AS(delta_game_optimal_value(1, 5), std::invalid_argument);
    CHECK_THROWS_AS(delta_game_table(2, 5, false, 3), std::invalid_argument);
}

TEST_CASE("two-player rollout starts at gap one and honours the bookkeeping bound") {
    const TwoGameResult zero = two_game_simulate(2, 0, TwoGameRule::kHonest, RngStream(1, 1));
    CHECK(zero.delta == 1);
    CHECK(zero.good_turns == 0);

    for (int trial = 0; trial < 2000; ++trial) {
        RngStream rng(400, static_cast<std::uint64_t>(trial));
        const auto rule = static_cast<TwoGameRule>(trial % 3);
        const TwoGameResult r = two_game_simulate(2 + trial % 3, 200, rule, rng);
        CHECK(r.delta >= 1);
        CHECK(r.good_turns >= r.heads - 1);
    }
}

TEST_CASE("good-turn game value equals the reflected-walk dp") {
    for (std::int64_t T = 0; T <= 40; ++T)
        CHECK(good_turn_walk_value(T) == oracles::reflected_walk_value_dp(T));
}

TEST_CASE("exposure game: the chain is an optimal adversary and smaller sets help") {
    for (std::int64_t k = 2; k <= 4; ++k) {
        const ChainSpec spec = trivial_chain_spec(k);
        for (std::int64_t T = 0; T <= 6; ++T) {
            for (std::size_t i = 0; i < spec.states.size(); ++i) {
                const auto [s, in] = spec.states[i];
                CHECK(trivial_game_optimal_bbar(k, T, s, in) ==
                      doctest::Approx(exact_bbar_mean(spec, static_cast<int>(i), T)).epsilon(1e-12));
            }
            for (std::int64_t s = 1; s + 1 <= k; ++s)
                CHECK(trivial_game_optimal_bbar(k, T, s + 1, true) <=
                      trivial_game_optimal_bbar(k, T, s, true) + 1e-12);
        }
    }
}

TEST_CASE("exposure game rejects excluded start states") {
    CHECK_THROWS_AS(trivial_game_optimal_bbar(3, 4, 0, true), std::invalid_argument);
    CHECK_THROWS_AS(trivial_game_optimal_bbar(3, 4, 3, false), std::invalid_argument);
}
