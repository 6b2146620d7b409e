#include "lcslab/contain.hpp"

#include <algorithm>
#include <limits>

namespace lcslab {

bool is_subsequence(const Word& u, const Word& w) {
    if (u.k != w.k) throw std::invalid_argument("is_subsequence: different alphabets");
    std::int64_t i = 0;
    for (std::int64_t j = 0; j < w.size() && i < u.size(); ++j)
        if (w[j] == u[i]) ++i;
    return i == u.size();
}

std::int64_t min_deletions(const Word& u, const Word& w) {
    return u.size() - lcs_length(u, w);
}

bool almost_contained(const Word& u, const Word& w, std::int64_t d) {
    if (d < 0) throw std::invalid_argument("almost_contained: negative budget");
    if (u.size() - w.size() > d) return false;  // cannot even fit by counting
    return min_deletions(u, w) <= d;
}

namespace {

// Incremental scan shared by waiting_time and standard_prefix. Appends symbols
// of w one at a time, maintaining the DP row lcs(w_{<m}, wp); stops as soon as
// m - lcs exceeds d and reports the last valid m. `limit` bounds how many
// symbols may be consumed; returns -1 if the limit was reached while the
// containment still held (caller decides whether that is an answer or an
// error).
template <typename SymbolAt>
std::int64_t longest_contained_prefix(SymbolAt&& at, std::int64_t limit, const Word& wp,
                                      std::int64_t d) {
    const std::int64_t L = wp.size();
    std::vector<std::int64_t> row(static_cast<std::size_t>(L) + 1, 0);
    std::int64_t m = 0;
    while (true) {
        if (m - row[static_cast<std::size_t>(L)] > d) return m - 1;
        if (m == limit) return -1;
        const Symbol c = at(m);
        std::int64_t diag = row[0];
        for (std::int64_t j = 1; j <= L; ++j) {
            const std::int64_t tmp = row[static_cast<std::size_t>(j)];
            if (wp[j - 1] == c)
                row[static_cast<std::size_t>(j)] = diag + 1;
            else
                row[static_cast<std::size_t>(j)] = std::max(row[static_cast<std::size_t>(j)],
                                                            row[static_cast<std::size_t>(j - 1)]);
            diag = tmp;
        }
        ++m;
    }
}

constexpr std::int64_t kUnbounded = std::numeric_limits<std::int64_t>::max();

}  // namespace

std::int64_t waiting_time(const Word& w, const Word& w_prime_prefix, std::int64_t d) {
    if (d < 0) throw std::invalid_argument("waiting_time: negative budget");
    if (w.k != w_prime_prefix.k) throw std::invalid_argument("waiting_time: different alphabets");
    const std::int64_t m =
        longest_contained_prefix([&](std::int64_t i) { return w[i]; }, w.size(), w_prime_prefix, d);
    if (m < 0)
        throw WordExhausted("waiting_time: w ended while its full prefix was still contained");
    return m;
}

std::int64_t waiting_time(LazyWord& w, const Word& w_prime_prefix, std::int64_t d) {
    if (d < 0) throw std::invalid_argument("waiting_time: negative budget");
    if (w.k() != w_prime_prefix.k) throw std::invalid_argument("waiting_time: different alphabets");
    return longest_contained_prefix([&](std::int64_t i) { return w.at(i); }, kUnbounded,
                                    w_prime_prefix, d);
}

StandardPrefix standard_prefix(const Word& w, const Word& w_prime, const DeletionBudgetVector& dvec) {
    if (!dvec.valid()) throw std::invalid_argument("standard_prefix: invalid budget vector");
    const std::int64_t M = static_cast<std::int64_t>(dvec.budgets.size());
    if (w_prime.size() != M * dvec.block_length)
        throw std::invalid_argument("standard_prefix: len(w') != M * L");
    StandardPrefix out;
    std::int64_t cursor = 0;
    for (std::int64_t i = 0; i < M; ++i) {
        const Word block = w_prime.slice(i * dvec.block_length, (i + 1) * dvec.block_length);
        const std::int64_t remaining = w.size() - cursor;
        std::int64_t len = longest_contained_prefix(
            [&](std::int64_t t) { return w[cursor + t]; }, remaining, block, dvec.budgets[static_cast<std::size_t>(i)]);
        if (len < 0) len = remaining;  // the whole remainder fits in this block
        out.blocks.push_back(w.slice(cursor, cursor + len));
        cursor += len;
    }
    out.consumed = cursor;
    return out;
}

DeletionBudgetVector lcs_dominating_dvec(const Word& w, const Word& w_prime, std::int64_t block_length) {
    if (block_length < 1) throw std::invalid_argument("lcs_dominating_dvec: block length must be >= 1");
    if (w_prime.size() % block_length != 0)
        throw std::invalid_argument("lcs_dominating_dvec: len(w') not divisible by L");
    const std::int64_t M = w_prime.size() / block_length;
    const auto matches = lcs_matching(w, w_prime);

    DeletionBudgetVector dvec;
    dvec.block_length = block_length;
    dvec.budgets.assign(static_cast<std::size_t>(M), 0);

    // Block i of w ends just before the first symbol the matching sends past
    // block i of w'; everything unmatched inside the block costs one deletion.
    std::size_t next = 0;
    std::int64_t cursor = 0;
    for (std::int64_t i = 0; i < M; ++i) {
        std::int64_t cut;
        std::int64_t matched_here = 0;
        if (i + 1 < M) {
            std::size_t probe = next;
            while (probe < matches.size() && matches[probe].second < (i + 1) * block_length) ++probe;
            cut = (probe < matches.size()) ? matches[probe].first : w.size();
            matched_here = static_cast<std::int64_t>(probe - next);
            next = probe;
        } else {
            cut = w.size();
            matched_here = static_cast<std::int64_t>(matches.size() - next);
            next = matches.size();
        }
        dvec.budgets[static_cast<std::size_t>(i)] = (cut - cursor) - matched_here;
        cursor = cut;
    }
    return dvec;
}

}  // namespace lcslab
