#include "lcslab/games.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace lcslab {

namespace {

std::int64_t next_delta(std::int64_t delta, std::int64_t change, std::int64_t cap) {
    std::int64_t v = delta + change;
    if (v <= 0) v = 1;           // reset rule
    if (v > cap) v = cap;        // unreachable with cap >= L+2; keeps the table closed
    return v;
}

struct Outcome {
    std::int64_t change;
    std::int64_t multiplicity;
};

// Coordinate multisets of the canonical adversary vectors.
std::vector<Outcome> action_outcomes(DeltaAction a, std::int64_t k) {
    switch (a) {
        case DeltaAction::kNone:
            return {{0, k}};
        case DeltaAction::kPlusMinus:
            return {{+1, 1}, {-1, 1}, {0, k - 2}};
        case DeltaAction::kMinusOnly:
            return {{-1, 1}, {0, k - 1}};
        case DeltaAction::kPlusMinusTwo:
            return {{+1, 1}, {-2, 1}, {0, k - 2}};
        case DeltaAction::kPlusMinusMinus:
            return {{+1, 1}, {-1, 2}, {0, k - 3}};
    }
    throw std::logic_error("action_outcomes: bad action");
}

}  // namespace

double GameValueTable::at(std::int64_t turns, std::int64_t delta) const {
    return value[static_cast<std::size_t>(turns)][static_cast<std::size_t>(delta)];
}

GameValueTable delta_game_table(std::int64_t k, std::int64_t L, bool second_moment,
                                std::int64_t delta_cap) {
    if (k < 2) throw std::invalid_argument("delta_game: k must be >= 2");
    if (L < 0) throw std::invalid_argument("delta_game: L must be >= 0");
    if (delta_cap < 0) delta_cap = L + 2;
    if (delta_cap < L + 2) throw std::invalid_argument("delta_game: delta_cap must be >= L+2");

    std::vector<DeltaAction> actions = {DeltaAction::kNone, DeltaAction::kPlusMinus,
                                        DeltaAction::kMinusOnly, DeltaAction::kPlusMinusTwo};
    if (k >= 3) actions.push_back(DeltaAction::kPlusMinusMinus);

    GameValueTable table;
    table.k = k;
    table.horizon = L;
    table.delta_cap = delta_cap;
    table.second_moment = second_moment;
    table.value.assign(static_cast<std::size_t>(L) + 1,
                       std::vector<double>(static_cast<std::size_t>(delta_cap) + 1, 0.0));
    table.action.assign(static_cast<std::size_t>(L) + 1,
                        std::vector<DeltaAction>(static_cast<std::size_t>(delta_cap) + 1,
                                                 DeltaAction::kNone));

    for (std::int64_t delta = 1; delta <= delta_cap; ++delta)
        table.value[0][static_cast<std::size_t>(delta)] =
            second_moment ? (delta - 0.5) * (delta - 0.5) : static_cast<double>(delta);

    for (std::int64_t t = 1; t <= L; ++t) {
        const auto& prev = table.value[static_cast<std::size_t>(t - 1)];
        auto& cur = table.value[static_cast<std::size_t>(t)];
        auto& act = table.action[static_cast<std::size_t>(t)];
        for (std::int64_t delta = 1; delta <= delta_cap; ++delta) {
            double best = -1.0;
            DeltaAction best_action = DeltaAction::kNone;
            for (DeltaAction a : actions) {
                double v = 0.0;
                for (const Outcome& o : action_outcomes(a, k))
                    v += static_cast<double>(o.multiplicity) *
                         prev[static_cast<std::size_t>(next_delta(delta, o.change, delta_cap))];
                v /= static_cast<double>(k);
                if (v > best) {
                    best = v;
                    best_action = a;
                }
            }
            cur[static_cast<std::size_t>(delta)] = best;
            act[static_cast<std::size_t>(delta)] = best_action;
        }
    }
    return table;
}

double delta_game_optimal_value(std::int64_t k, std::int64_t L) {
    return delta_game_table(k, L, false).at(L, 1);
}

double delta_game_second_moment(std::int64_t k, std::int64_t L) {
    return delta_game_table(k, L, true).at(L, 1);
}

double delta_game_value_full_actions(std::int64_t k, std::int64_t L, bool second_moment) {
    if (k < 2 || k > 6) throw std::invalid_argument("full action sweep is for tiny k only");
    const std::int64_t cap = L + 2;

    // All raw vectors u + w: u places a +1 and a -1 (or nothing), w subtracts
    // one from a single coordinate (or nothing).
    std::vector<std::vector<std::int64_t>> vectors;
    std::vector<std::vector<std::int64_t>> us;
    us.emplace_back(static_cast<std::size_t>(k), 0);
    for (std::int64_t i = 0; i < k; ++i)
        for (std::int64_t j = 0; j < k; ++j) {
            if (i == j) continue;
            std::vector<std::int64_t> u(static_cast<std::size_t>(k), 0);
            u[static_cast<std::size_t>(i)] = +1;
            u[static_cast<std::size_t>(j)] = -1;
            us.push_back(std::move(u));
        }
    for (const auto& u : us) {
        vectors.push_back(u);
        for (std::int64_t c = 0; c < k; ++c) {
            std::vector<std::int64_t> v = u;
            v[static_cast<std::size_t>(c)] -= 1;
            vectors.push_back(std::move(v));
        }
    }

    std::vector<double> prev(static_cast<std::size_t>(cap) + 1, 0.0);
    std::vector<double> cur(static_cast<std::size_t>(cap) + 1, 0.0);
    for (std::int64_t delta = 1; delta <= cap; ++delta)
        prev[static_cast<std::size_t>(delta)] =
            second_moment ? (delta - 0.5) * (delta - 0.5) : static_cast<double>(delta);
    for (std::int64_t t = 1; t <= L; ++t) {
        for (std::int64_t delta = 1; delta <= cap; ++delta) {
            double best = -1.0;
            for (const auto& v : vectors) {
                double val = 0.0;
                for (std::int64_t c = 0; c < k; ++c)
                    val += prev[static_cast<std::size_t>(
                        next_delta(delta, v[static_cast<std::size_t>(c)], cap))];
                val /= static_cast<double>(k);
                best = std::max(best, val);
            }
            cur[static_cast<std::size_t>(delta)] = best;
        }
        std::swap(prev, cur);
    }
    return prev[1];
}

TwoGameResult two_game_simulate(std::int64_t k, std::int64_t L, TwoGameRule rule, RngStream rng) {
    if (k < 2) throw std::invalid_argument("two_game_simulate: k must be >= 2");
    if (L < 0) throw std::invalid_argument("two_game_simulate: L must be >= 0");

    const auto kk = static_cast<std::uint32_t>(k);
    auto toss_heads = [&]() { return rng.uniform_int(kk) != 0; };  // heads w.p. 1-1/k
    auto adversary_same = [&]() {
        switch (rule) {
            case TwoGameRule::kAlwaysSame: return true;
            case TwoGameRule::kAlwaysDiff: return false;
            case TwoGameRule::kHonest: return rng.uniform_int(kk) == 0;
        }
        return false;
    };

    TwoGameResult r;
    bool same = rng.uniform_int(kk) == 0;  // initial flag
    for (std::int64_t turn = 0; turn < L; ++turn) {
        const std::uint32_t u = rng.uniform_int(kk);
        if (same) {
            if (u == 0) {  // coin toss
                if (toss_heads()) {
                    ++r.heads;
                    same = false;
                }
            }
        } else {
            if (u == 0) {  // gap shrinks, adversary picks the new flag
                r.delta = std::max<std::int64_t>(r.delta - 1, 1);
                ++r.good_turns;
                same = adversary_same();
            } else if (u == 1) {  // gap grows, then a coin toss
                ++r.delta;
                ++r.good_turns;
                if (toss_heads()) {
                    ++r.heads;
                    same = false;
                } else {
                    same = true;
                }
            }
        }
    }
    return r;
}

double trivial_game_optimal_bbar(std::int64_t k, std::int64_t T, std::int64_t s0, bool b0_in) {
    if (k < 2) throw std::invalid_argument("trivial_game: k must be >= 2");
    if (T < 0 || s0 < 0 || s0 > k) throw std::invalid_argument("trivial_game: bad parameters");
    if ((s0 == 0 && b0_in) || (s0 == k && !b0_in))
        throw std::invalid_argument("trivial_game: excluded start state");

    // V[s][b], b: 0 = out, 1 = in.
    const auto S = static_cast<std::size_t>(k) + 1;
    std::vector<std::array<double, 2>> prev(S, {0.0, 0.0}), cur(S, {0.0, 0.0});
    const double inv_k = 1.0 / static_cast<double>(k);

    for (std::int64_t t = 1; t <= T; ++t) {
        auto phase2 = [&](std::int64_t sp) {
            if (sp == 0)
                return inv_k * prev[static_cast<std::size_t>(k)][1] + (1.0 - inv_k) * prev[0][0];
            // The moved low particle: adversary keeps the flag in or out, or
            // jumps past the high one (full reset).
            const double menu = std::max({prev[static_cast<std::size_t>(sp)][1],
                                          prev[static_cast<std::size_t>(sp)][0],
                                          prev[static_cast<std::size_t>(k)][1]});
            return inv_k * menu + inv_k * prev[static_cast<std::size_t>(k)][1] +
                   (1.0 - 2.0 * inv_k) * prev[static_cast<std::size_t>(sp)][0];
        };
        for (std::int64_t s = 0; s <= k; ++s) {
            if (s >= 1) {  // b = in
                const double p_empty = 1.0 / static_cast<double>(s);
                cur[static_cast<std::size_t>(s)][1] =
                    p_empty * (1.0 + phase2(0)) + (1.0 - p_empty) * phase2(s - 1);
            }
            if (s < k) {  // b = out
                cur[static_cast<std::size_t>(s)][0] =
                    (s == 0) ? (1.0 + phase2(0)) : phase2(s);
            }
        }
        std::swap(prev, cur);
    }
    return prev[static_cast<std::size_t>(s0)][b0_in ? 1 : 0];
}

}  // namespace lcslab
