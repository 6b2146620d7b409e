#include "lcslab/seq.hpp"

#include <algorithm>
#include <stdexcept>

namespace lcslab {

namespace {

void check_same_alphabet(const Word& u, const Word& w) {
    if (u.k != w.k) throw std::invalid_argument("lcs: words use different alphabets");
}

}  // namespace

std::int64_t lcs_length_dp(const Word& u, const Word& w) {
    const Word& a = (u.size() <= w.size()) ? u : w;
    const Word& b = (u.size() <= w.size()) ? w : u;
    const std::int64_t m = a.size(), n = b.size();
    if (m == 0) return 0;
    std::vector<std::int64_t> row(static_cast<std::size_t>(m) + 1, 0);
    for (std::int64_t j = 0; j < n; ++j) {
        const Symbol bj = b[j];
        std::int64_t diag = 0;  // row[i-1] from the previous iteration of j
        for (std::int64_t i = 1; i <= m; ++i) {
            const std::int64_t tmp = row[static_cast<std::size_t>(i)];
            if (a[i - 1] == bj)
                row[static_cast<std::size_t>(i)] = diag + 1;
            else
                row[static_cast<std::size_t>(i)] =
                    std::max(row[static_cast<std::size_t>(i)], row[static_cast<std::size_t>(i - 1)]);
            diag = tmp;
        }
    }
    return row[static_cast<std::size_t>(m)];
}

std::int64_t lcs_length_bitparallel(const Word& u, const Word& w) {
    // Crochemore-Iliopoulos-Pinzon recurrence: V' = (V + (V & M[c])) | (V & ~M[c]);
    // zeros of V among the first m bits count matched rows.
    const Word& a = (u.size() <= w.size()) ? u : w;  // bit dimension
    const Word& b = (u.size() <= w.size()) ? w : u;
    const std::int64_t m = a.size();
    if (m == 0) return 0;
    const std::size_t words = static_cast<std::size_t>((m + 63) / 64);
    std::vector<std::vector<std::uint64_t>> masks(static_cast<std::size_t>(a.k),
                                                  std::vector<std::uint64_t>(words, 0));
    for (std::int64_t i = 0; i < m; ++i)
        masks[static_cast<std::size_t>(a[i])][static_cast<std::size_t>(i >> 6)] |= 1ULL << (i & 63);

    const std::uint64_t top_mask =
        (m % 64 == 0) ? ~0ULL : ((1ULL << (m % 64)) - 1);
    std::vector<std::uint64_t> v(words, ~0ULL);
    v[words - 1] &= top_mask;

    for (std::int64_t j = 0; j < b.size(); ++j) {
        const std::vector<std::uint64_t>& mask = masks[static_cast<std::size_t>(b[j])];
        std::uint64_t carry = 0;
        for (std::size_t t = 0; t < words; ++t) {
            const std::uint64_t p = v[t] & mask[t];
            const std::uint64_t sum1 = v[t] + p;
            const std::uint64_t c1 = sum1 < v[t] ? 1 : 0;
            const std::uint64_t sum2 = sum1 + carry;
            const std::uint64_t c2 = sum2 < sum1 ? 1 : 0;
            carry = c1 | c2;
            v[t] = sum2 | (v[t] & ~mask[t]);
        }
        v[words - 1] &= top_mask;
    }
    std::int64_t zeros = m;
    for (std::size_t t = 0; t < words; ++t) zeros -= __builtin_popcountll(v[t]);
    return zeros;
}

std::int64_t lcs_length(const Word& u, const Word& w) {
    check_same_alphabet(u, w);
    if (u.empty() || w.empty()) return 0;
    if (std::min(u.size(), w.size()) > 128) return lcs_length_bitparallel(u, w);
    return lcs_length_dp(u, w);
}

std::vector<std::pair<std::int64_t, std::int64_t>> lcs_matching(const Word& u, const Word& w) {
    check_same_alphabet(u, w);
    const std::int64_t m = u.size(), n = w.size();
    std::vector<std::vector<std::int32_t>> dp(static_cast<std::size_t>(m) + 1,
                                              std::vector<std::int32_t>(static_cast<std::size_t>(n) + 1, 0));
    for (std::int64_t i = 1; i <= m; ++i)
        for (std::int64_t j = 1; j <= n; ++j) {
            if (u[i - 1] == w[j - 1])
                dp[i][j] = dp[i - 1][j - 1] + 1;
            else
                dp[i][j] = std::max(dp[i - 1][j], dp[i][j - 1]);
        }
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    std::int64_t i = m, j = n;
    while (i > 0 && j > 0) {
        if (u[i - 1] == w[j - 1] && dp[i][j] == dp[i - 1][j - 1] + 1) {
            pairs.emplace_back(i - 1, j - 1);
            --i;
            --j;
        } else if (dp[i - 1][j] >= dp[i][j - 1]) {
            --i;
        } else {
            --j;
        }
    }
    std::reverse(pairs.begin(), pairs.end());
    return pairs;
}

std::int64_t lnds(const Word& w) {
    std::vector<Symbol> tails;  // tails[j] = least possible last symbol of a run of length j+1
    for (Symbol x : w.symbols) {
        auto it = std::upper_bound(tails.begin(), tails.end(), x);
        if (it == tails.end())
            tails.push_back(x);
        else
            *it = x;
    }
    return static_cast<std::int64_t>(tails.size());
}

std::int64_t lnds_restricted(const Word& w, Symbol ceiling) {
    if (ceiling < 0 || ceiling >= w.k)
        throw std::invalid_argument("lnds_restricted: ceiling outside alphabet");
    std::vector<Symbol> tails;
    for (Symbol x : w.symbols) {
        if (x > ceiling) continue;
        auto it = std::upper_bound(tails.begin(), tails.end(), x);
        if (it == tails.end())
            tails.push_back(x);
        else
            *it = x;
    }
    return static_cast<std::int64_t>(tails.size());
}

}  // namespace lcslab
