#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lcslab/oracles.hpp"
#include "lcslab/seq.hpp"
#include "lcslab/word.hpp"

using namespace lcslab;

namespace {

Word from_letters(const std::string& s) {
    Word w;
    w.k = 26;
    for (char c : s) w.symbols.push_back(c - 'a');
    return w;
}

}  // namespace

TEST_CASE("abada is a subsequence of abracadabra, so LCS is its length") {
    CHECK(lcs_length(from_letters("abada"), from_letters("abracadabra")) == 5);
}

TEST_CASE("empty word has LCS zero") {
    CHECK(lcs_length(from_letters(""), from_letters("xyz")) == 0);
}

TEST_CASE("macabre vs abracadabra") {
    const Word u = from_letters("macabre");
    const Word w = from_letters("abracadabra");
    CHECK(lcs_length(u, w) == 5);
    CHECK(oracles::lcs_by_enumeration(u, w) == 5);
}

TEST_CASE("lcs basic properties on random words") {
    RngStream rng(2024, 0);
    for (int trial = 0; trial < 200; ++trial) {
        RngStream local = rng.split(trial);
        const Symbol k = 2 + static_cast<Symbol>(local.uniform_int(4));
        const Word u = sample_word(k, local.uniform_int(40), local.split(1));
        const Word w = sample_word(k, local.uniform_int(40), local.split(2));
        const auto l = lcs_length(u, w);
        CHECK(l == lcs_length(w, u));
        CHECK(l <= std::min(u.size(), w.size()));
        CHECK(lcs_length(u, u) == u.size());

        // appending a common symbol raises the LCS by exactly one
        Word u2 = u, w2 = w;
        u2.symbols.push_back(0);
        w2.symbols.push_back(0);
        CHECK(lcs_length(u2, w2) == l + 1);
    }
}

TEST_CASE("bit-parallel LCS agrees with the rolling DP across the dispatch threshold") {
    RngStream rng(77, 0);
    for (int trial = 0; trial < 60; ++trial) {
        RngStream local = rng.split(trial);
        const Symbol k = 2 + static_cast<Symbol>(local.uniform_int(5));
        const std::int64_t len_u = 1 + local.uniform_int(300);
        const std::int64_t len_w = 1 + local.uniform_int(300);
        const Word u = sample_word(k, len_u, local.split(1));
        const Word w = sample_word(k, len_w, local.split(2));
        CHECK(lcs_length_bitparallel(u, w) == lcs_length_dp(u, w));
    }
}

TEST_CASE("lcs_matching returns a monotone matching of the right length") {
    RngStream rng(99, 0);
    for (int trial = 0; trial < 100; ++trial) {
        RngStream local = rng.split(trial);
        const Word u = sample_word(3, local.uniform_int(30), local.split(1));
        const Word w = sample_word(3, local.uniform_int(30), local.split(2));
        const auto pairs = lcs_matching(u, w);
        CHECK(static_cast<std::int64_t>(pairs.size()) == lcs_length(u, w));
        for (std::size_t t = 0; t < pairs.size(); ++t) {
            CHECK(u[pairs[t].first] == w[pairs[t].second]);
            if (t > 0) {
                CHECK(pairs[t].first > pairs[t - 1].first);
                CHECK(pairs[t].second > pairs[t - 1].second);
            }
        }
    }
}

TEST_CASE("lnds worked examples") {
    CHECK(lnds(word_from_string("22120", 3)) == 3);
    CHECK(lnds(word_from_string("001224", 5)) == 6);  // already non-decreasing
    Word decreasing;
    decreasing.k = 9;
    for (Symbol s = 8; s >= 0; --s) decreasing.symbols.push_back(s);
    CHECK(lnds(decreasing) == 1);
    CHECK(lnds(Word{{}, 3}) == 0);
}

TEST_CASE("lnds_restricted worked examples") {
    const Word w = word_from_string("22120", 3);
    CHECK(lnds_restricted(w, 1) == 1);
    CHECK(lnds_restricted(w, 0) == 1);
    CHECK(lnds_restricted(w, 2) == lnds(w));
    CHECK_THROWS_AS(lnds_restricted(w, 3), std::invalid_argument);
    CHECK_THROWS_AS(lnds_restricted(w, -1), std::invalid_argument);
}

TEST_CASE("lnds equals the quadratic oracle on every short word") {
    // all words over k <= 3 with length <= 10
    for (Symbol k = 1; k <= 3; ++k) {
        for (std::int64_t n = 0; n <= 10; ++n) {
            Word w;
            w.k = k;
            w.symbols.assign(static_cast<std::size_t>(n), 0);
            while (true) {
                CHECK(lnds(w) == oracles::lnds_quadratic(w));
                std::int64_t pos = n - 1;
                while (pos >= 0 && w.symbols[static_cast<std::size_t>(pos)] == k - 1) {
                    w.symbols[static_cast<std::size_t>(pos)] = 0;
                    --pos;
                }
                if (pos < 0) break;
                ++w.symbols[static_cast<std::size_t>(pos)];
            }
        }
    }
}

TEST_CASE("lnds equals the quadratic oracle on random words") {
    RngStream rng(31337, 0);
    for (int trial = 0; trial < 10000; ++trial) {
        RngStream local = rng.split(trial);
        const Symbol k = 1 + static_cast<Symbol>(local.uniform_int(8));
        const Word w = sample_word(k, local.uniform_int(201), local.split(1));
        CHECK(lnds(w) == oracles::lnds_quadratic(w));
    }
}

TEST_CASE("partitioning positions bounds lnds by the two halves") {
    RngStream rng(555, 0);
    for (int trial = 0; trial < 500; ++trial) {
        RngStream local = rng.split(trial);
        const Symbol k = 2 + static_cast<Symbol>(local.uniform_int(4));
        const Word w = sample_word(k, 1 + local.uniform_int(40), local.split(1));
        Word u1{{}, k}, u2{{}, k};
        for (Symbol s : w.symbols)
            (local.uniform_int(2) == 0 ? u1 : u2).symbols.push_back(s);
        CHECK(lnds(w) <= lnds(u1) + lnds(u2));
    }
}

TEST_CASE("inserting a uniformly chosen part raises expected lnds by at least 1/k") {
    // Exhaustive: words over {0..d}, both lengths <= 4 (<= 5 for d <= 2), all
    // set partitions of {0..d} into at most kparts parts.
    for (int d = 0; d <= 3; ++d) {
        const Symbol alphabet = static_cast<Symbol>(d + 1);
        const std::int64_t max_len = d == 3 ? 4 : 5;

        // enumerate set partitions of {0..d} as assignment vectors
        std::vector<std::vector<int>> assignments;
        std::vector<int> assign(static_cast<std::size_t>(d) + 1, 0);
        while (true) {
            int parts = 0;
            for (int i = 0; i <= d; ++i) parts = std::max(parts, assign[static_cast<std::size_t>(i)] + 1);
            bool canonical = true;  // first occurrence order must be 0,1,2,...
            int seen = 0;
            for (int i = 0; i <= d && canonical; ++i) {
                if (assign[static_cast<std::size_t>(i)] > seen) canonical = false;
                if (assign[static_cast<std::size_t>(i)] == seen) ++seen;
            }
            if (canonical) assignments.push_back(assign);
            int pos = d;
            while (pos >= 0 && assign[static_cast<std::size_t>(pos)] == d) {
                assign[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
            ++assign[static_cast<std::size_t>(pos)];
        }

        auto words_up_to = [&](std::int64_t cap) {
            std::vector<Word> out;
            for (std::int64_t n = 0; n <= cap; ++n) {
                Word w;
                w.k = alphabet;
                w.symbols.assign(static_cast<std::size_t>(n), 0);
                while (true) {
                    out.push_back(w);
                    std::int64_t pos = n - 1;
                    while (pos >= 0 && w.symbols[static_cast<std::size_t>(pos)] == alphabet - 1) {
                        w.symbols[static_cast<std::size_t>(pos)] = 0;
                        --pos;
                    }
                    if (pos < 0) break;
                    ++w.symbols[static_cast<std::size_t>(pos)];
                }
            }
            return out;
        };
        const std::vector<Word> words = words_up_to(max_len);

        for (const Word& w : words)
            for (const Word& wp : words) {
                Word glued{{}, alphabet};
                glued.symbols = w.symbols;
                glued.symbols.insert(glued.symbols.end(), wp.symbols.begin(), wp.symbols.end());
                const std::int64_t base = lnds(glued);

                for (const auto& assignment : assignments) {
                    int part_count = 0;
                    for (int i = 0; i <= d; ++i)
                        part_count = std::max(part_count, assignment[static_cast<std::size_t>(i)] + 1);
                    // value of LNDS(w A wp) for each nonempty part A (descending)
                    std::vector<std::int64_t> part_value;
                    for (int part = 0; part < part_count; ++part) {
                        Word extended{{}, alphabet};
                        extended.symbols = w.symbols;
                        for (int sym = d; sym >= 0; --sym)
                            if (assignment[static_cast<std::size_t>(sym)] == part)
                                extended.symbols.push_back(sym);
                        extended.symbols.insert(extended.symbols.end(), wp.symbols.begin(),
                                                wp.symbols.end());
                        part_value.push_back(lnds(extended));
                    }
                    for (int kparts = part_count; kparts <= 4; ++kparts) {
                        // expectation over the k parts, empty ones contribute base
                        std::int64_t total = 0;
                        for (std::int64_t v : part_value) total += v;
                        total += static_cast<std::int64_t>(kparts - part_count) * base;
                        // E >= base + 1/k  <=>  total >= kparts*base + 1
                        CHECK(total >= kparts * base + 1);
                    }
                }
            }
    }
}
