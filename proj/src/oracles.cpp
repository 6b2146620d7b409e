#include "lcslab/oracles.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace lcslab::oracles {

std::int64_t waiting_time_by_scan(const Word& w, const Word& w_prime_prefix, std::int64_t d) {
    std::int64_t m = 0;
    while (true) {
        if (m + 1 > w.size())
            throw WordExhausted("waiting_time_by_scan: w ended while still contained");
        if (!almost_contained(w.prefix(m + 1), w_prime_prefix, d)) return m;
        ++m;
    }
}

namespace {

bool subsequence_plain(const std::vector<Symbol>& u, const Word& w) {
    std::size_t i = 0;
    for (std::int64_t j = 0; j < w.size() && i < u.size(); ++j)
        if (w[j] == u[i]) ++i;
    return i == u.size();
}

bool contained_after_deletions(const Word& u, const Word& w, std::int64_t d, std::size_t from,
                               std::vector<Symbol>& kept) {
    if (from == u.symbols.size()) return subsequence_plain(kept, w);
    kept.push_back(u.symbols[from]);
    if (contained_after_deletions(u, w, d, from + 1, kept)) {
        kept.pop_back();
        return true;
    }
    kept.pop_back();
    if (d > 0 && contained_after_deletions(u, w, d - 1, from + 1, kept)) return true;
    return false;
}

}  // namespace

bool almost_contained_by_enumeration(const Word& u, const Word& w, std::int64_t d) {
    std::vector<Symbol> kept;
    return contained_after_deletions(u, w, d, 0, kept);
}

std::int64_t lcs_by_enumeration(const Word& u, const Word& w) {
    const Word& a = (u.size() <= w.size()) ? u : w;
    const Word& b = (u.size() <= w.size()) ? w : u;
    if (a.size() > 20) throw std::invalid_argument("lcs_by_enumeration: word too long");
    std::int64_t best = 0;
    const std::uint32_t limit = 1u << a.size();
    for (std::uint32_t mask = 0; mask < limit; ++mask) {
        std::vector<Symbol> sub;
        for (std::int64_t i = 0; i < a.size(); ++i)
            if (mask & (1u << i)) sub.push_back(a[i]);
        if (static_cast<std::int64_t>(sub.size()) <= best) continue;
        if (subsequence_plain(sub, b)) best = static_cast<std::int64_t>(sub.size());
    }
    return best;
}

std::int64_t lnds_quadratic(const Word& w) {
    const std::int64_t n = w.size();
    std::vector<std::int64_t> best(static_cast<std::size_t>(n), 1);
    std::int64_t answer = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        for (std::int64_t j = 0; j < i; ++j)
            if (w[j] <= w[i])
                best[static_cast<std::size_t>(i)] =
                    std::max(best[static_cast<std::size_t>(i)], best[static_cast<std::size_t>(j)] + 1);
        answer = std::max(answer, best[static_cast<std::size_t>(i)]);
    }
    return answer;
}

Rational walk_abs_expectation_by_enumeration(std::int64_t T) {
    if (T < 0 || T > 24) throw std::invalid_argument("walk enumeration: T out of range");
    // Positions live on Z + 1/2; track 2*position as an odd integer.
    BigInt sum_abs2 = 0;
    const std::uint64_t paths = 1ULL << T;
    for (std::uint64_t mask = 0; mask < paths; ++mask) {
        std::int64_t twice = 1;  // 2 * 1/2
        for (std::int64_t t = 0; t < T; ++t) twice += (mask & (1ULL << t)) ? 2 : -2;
        sum_abs2 += twice < 0 ? -twice : twice;
    }
    return Rational(sum_abs2, BigInt(2) * paths);
}

Rational reflected_walk_value_by_enumeration(std::int64_t T) {
    if (T < 0 || T > 24) throw std::invalid_argument("walk enumeration: T out of range");
    BigInt sum = 0;
    const std::uint64_t paths = 1ULL << T;
    for (std::uint64_t mask = 0; mask < paths; ++mask) {
        std::int64_t delta = 1;
        for (std::int64_t t = 0; t < T; ++t) {
            delta += (mask & (1ULL << t)) ? 1 : -1;
            if (delta <= 0) delta = 1;
        }
        sum += delta;
    }
    return Rational(sum, BigInt(paths));
}

Rational reflected_walk_value_dp(std::int64_t T) {
    if (T < 0) throw std::invalid_argument("walk dp: T must be >= 0");
    const std::int64_t cap = T + 2;
    std::vector<Rational> prev(static_cast<std::size_t>(cap) + 2);
    std::vector<Rational> cur(static_cast<std::size_t>(cap) + 2);
    for (std::int64_t delta = 1; delta <= cap + 1; ++delta)
        prev[static_cast<std::size_t>(delta)] = delta;
    for (std::int64_t t = 1; t <= T; ++t) {
        for (std::int64_t delta = 1; delta <= cap; ++delta) {
            const std::int64_t down = std::max<std::int64_t>(delta - 1, 1);
            cur[static_cast<std::size_t>(delta)] =
                (prev[static_cast<std::size_t>(delta + 1)] + prev[static_cast<std::size_t>(down)]) / 2;
        }
        std::swap(prev, cur);
    }
    return prev[1];
}

bool chain_closed_form_is_stationary_exact(std::int64_t k) {
    // Exact transition masses of the pair-exposure chain, mirrored from its
    // definition but kept in rationals.
    struct State {
        std::int64_t s;
        bool in;
    };
    std::vector<State> states;
    states.push_back({0, false});
    for (std::int64_t s = 1; s < k; ++s) {
        states.push_back({s, false});
        states.push_back({s, true});
    }
    states.push_back({k, true});
    auto index_of = [&](std::int64_t s, bool in) {
        for (std::size_t i = 0; i < states.size(); ++i)
            if (states[i].s == s && states[i].in == in) return i;
        throw std::logic_error("no state");
    };

    const std::size_t n = states.size();
    std::vector<std::vector<Rational>> P(n, std::vector<Rational>(n, Rational(0)));
    const Rational inv_k(1, k);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [s, in] = states[i];
        if (s == 0) {
            P[i][index_of(k, true)] += inv_k;
            P[i][index_of(0, false)] += 1 - inv_k;
        } else if (!in) {
            P[i][index_of(s, true)] += inv_k;
            P[i][index_of(k, true)] += inv_k;
            P[i][i] += 1 - 2 * inv_k;
        } else {
            const Rational inv_s(1, s);
            P[i][index_of(k, true)] += inv_k * inv_s;
            P[i][index_of(0, false)] += inv_s * (1 - inv_k);
            if (s > 1) {
                P[i][index_of(s - 1, true)] += (1 - inv_s) * inv_k;
                P[i][index_of(k, true)] += (1 - inv_s) * inv_k;
                P[i][index_of(s - 1, false)] += (1 - inv_s) * (1 - 2 * inv_k);
            }
        }
    }

    const BigInt norm = BigInt(k) * k * (BigInt(1) << static_cast<unsigned>(k - 1));
    std::vector<Rational> pi(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto [s, in] = states[i];
        BigInt weight;
        if (s == 0)
            weight = ((BigInt(1) << static_cast<unsigned>(k)) - 1) * (k - 1);
        else if (in)
            weight = BigInt(s) * (BigInt(1) << static_cast<unsigned>(s - 1));
        else
            weight = BigInt(s) * (BigInt(1) << static_cast<unsigned>(s - 1)) * (k - 2);
        pi[i] = Rational(weight, norm);
    }

    Rational total = 0;
    for (const Rational& r : pi) total += r;
    if (total != 1) return false;
    for (std::size_t j = 0; j < n; ++j) {
        Rational acc = 0;
        for (std::size_t i = 0; i < n; ++i) acc += pi[i] * P[i][j];
        if (acc != pi[j]) return false;
    }
    return true;
}

}  // namespace lcslab::oracles
