#include "lcslab/particles.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lcslab {

ParticleState ParticleState::initial(int d) {
    if (d < 0) throw std::invalid_argument("ParticleState: d must be >= 0");
    ParticleState st;
    st.pos.resize(static_cast<std::size_t>(d) + 1);
    for (int i = 0; i <= d; ++i) st.pos[static_cast<std::size_t>(i)] = i;
    return st;
}

bool ParticleState::strictly_increasing() const {
    for (std::size_t i = 1; i < pos.size(); ++i)
        if (pos[i - 1] >= pos[i]) return false;
    return true;
}

bool ExpectantPartition::trivial() const {
    for (const auto& [sym, ids] : parts)
        if (ids.size() > 1) return false;
    return true;
}

namespace {

struct LazyAccess {
    LazyWord& w;
    Symbol operator()(std::int64_t i) const { return w.at(i); }
};

struct FixedAccess {
    const Word& w;
    Symbol operator()(std::int64_t i) const {
        if (i >= w.size())
            throw std::out_of_range("dynamics: fixed word too short for particle positions");
        return w[i];
    }
};

template <typename WordLike>
ExpectantPartition partition_impl(const ParticleState& st, WordLike at) {
    ExpectantPartition p;
    for (int i = 0; i <= st.d(); ++i) {
        const Symbol s = at(st.pos[static_cast<std::size_t>(i)]);
        auto it = std::find_if(p.parts.begin(), p.parts.end(),
                               [s](const auto& part) { return part.first == s; });
        if (it == p.parts.end())
            p.parts.push_back({s, {i}});
        else
            it->second.push_back(i);
    }
    return p;
}

// Step (A)+(B): A = {i : w[P_i] = symbol}; members advance one step, the
// others land in front of their left neighbour if bumped.
template <typename WordLike>
std::vector<int> evolve_impl(ParticleState& st, WordLike at, Symbol symbol) {
    const int d = st.d();
    std::vector<int> a;
    for (int i = 0; i <= d; ++i)
        if (at(st.pos[static_cast<std::size_t>(i)]) == symbol) a.push_back(i);

    std::size_t next_in_a = 0;
    std::int64_t prev = kNegInf;
    for (int i = 0; i <= d; ++i) {
        auto& p = st.pos[static_cast<std::size_t>(i)];
        if (next_in_a < a.size() && a[next_in_a] == i) {
            p += 1;
            ++next_in_a;
        } else {
            p = std::max(p, prev + 1);
        }
        prev = p;
    }
    std::reverse(a.begin(), a.end());
    return a;
}

template <typename WordLike>
void q_step_impl(std::vector<std::int64_t>& q, WordLike at, Symbol symbol) {
    const std::size_t n = q.size();
    std::vector<std::size_t> excited;
    for (std::size_t i = 0; i < n; ++i)
        if (at(q[i]) == symbol) excited.push_back(i);
    std::sort(excited.begin(), excited.end(),
              [&q](std::size_t a, std::size_t b) { return q[a] > q[b]; });

    if (n <= 64) {
        for (std::size_t idx : excited) {
            std::int64_t p = q[idx] + 1;
            bool taken = true;
            while (taken) {
                taken = false;
                for (std::size_t j = 0; j < n; ++j)
                    if (q[j] == p) {
                        ++p;
                        taken = true;
                        break;
                    }
            }
            q[idx] = p;
            at(p);  // expose on landing
        }
    } else {
        std::set<std::int64_t> occupied(q.begin(), q.end());
        for (std::size_t idx : excited) {
            std::int64_t p = q[idx] + 1;
            while (occupied.count(p)) ++p;
            occupied.erase(q[idx]);
            occupied.insert(p);
            q[idx] = p;
            at(p);
        }
    }
}

template <typename WordLike, typename NextSymbol>
Trajectory run_impl(Symbol k, int d, std::int64_t L, WordLike at, NextSymbol next_wprime,
                    DynamicsOptions options) {
    if (k < 2) throw std::invalid_argument("run_dynamics: alphabet size must be >= 2");
    if (d < 0 || L < 0) throw std::invalid_argument("run_dynamics: d and L must be >= 0");

    Trajectory t;
    t.k = k;
    t.d = d;
    t.L = L;
    t.w_prime.k = k;

    ParticleState st = ParticleState::initial(d);
    std::vector<std::int64_t> q = st.pos;
    std::vector<Symbol> under(static_cast<std::size_t>(d) + 1);

    for (std::int64_t step = 0; step < L; ++step) {
        bool trivial = true;
        for (int i = 0; i <= d; ++i)
            under[static_cast<std::size_t>(i)] = at(st.pos[static_cast<std::size_t>(i)]);
        for (int i = 0; i <= d && trivial; ++i)
            for (int j = i + 1; j <= d; ++j)
                if (under[static_cast<std::size_t>(i)] == under[static_cast<std::size_t>(j)]) {
                    trivial = false;
                    break;
                }
        if (!trivial) ++t.b_count;

        const Symbol sym = next_wprime(step);
        t.w_prime.symbols.push_back(sym);

        std::vector<int> a = evolve_impl(st, at, sym);
        if (options.track_q) q_step_impl(q, at, sym);

        if (options.record_steps) {
            TrajectoryStep rec;
            rec.a_set = std::move(a);
            rec.partition_trivial = trivial;
            rec.state = st;
            if (options.track_q) rec.q = q;
            t.steps.push_back(std::move(rec));
        }
    }
    return t;
}

}  // namespace

ExpectantPartition expectant_partition(const ParticleState& st, const Word& w) {
    return partition_impl(st, FixedAccess{w});
}
ExpectantPartition expectant_partition(const ParticleState& st, LazyWord& w) {
    return partition_impl(st, LazyAccess{w});
}

std::vector<int> evolve_step(ParticleState& st, const Word& w, Symbol symbol) {
    return evolve_impl(st, FixedAccess{w}, symbol);
}
std::vector<int> evolve_step(ParticleState& st, LazyWord& w, Symbol symbol) {
    return evolve_impl(st, LazyAccess{w}, symbol);
}

void q_step(std::vector<std::int64_t>& q, const Word& w, Symbol symbol) {
    q_step_impl(q, FixedAccess{w}, symbol);
}
void q_step(std::vector<std::int64_t>& q, LazyWord& w, Symbol symbol) {
    q_step_impl(q, LazyAccess{w}, symbol);
}

Word Trajectory::a_concat() const {
    Word out;
    out.k = d + 1;
    for (const auto& s : steps)
        for (int i : s.a_set) out.symbols.push_back(i);
    return out;
}

Trajectory run_dynamics(Symbol k, int d, std::int64_t L, RngStream rng, DynamicsOptions options) {
    LazyWord w(k, rng.split(1));
    RngStream wp = rng.split(2);
    Trajectory t =
        run_impl(k, d, L, LazyAccess{w},
                 [&wp, k](std::int64_t) {
                     return static_cast<Symbol>(wp.uniform_int(static_cast<std::uint32_t>(k)));
                 },
                 options);
    t.w_exposed = w.exposed();
    return t;
}

Trajectory run_dynamics_words(const Word& w, const Word& w_prime, int d, DynamicsOptions options) {
    if (w.k != w_prime.k) throw std::invalid_argument("run_dynamics_words: different alphabets");
    Trajectory t = run_impl(w.k, d, w_prime.size(), FixedAccess{w},
                            [&w_prime](std::int64_t step) { return w_prime[step]; }, options);
    t.w_exposed = w;
    return t;
}

TrivialityStats triviality_stats(const Trajectory& t) {
    if (t.L > 0 && (t.steps.empty() || t.steps.front().q.empty()))
        throw std::invalid_argument("triviality_stats: trajectory was recorded without q-tracking");
    TrivialityStats stats;
    const Word& w = t.w_exposed;
    std::vector<std::int64_t> positions = ParticleState::initial(t.d).pos;
    for (std::int64_t step = 0; step < t.L; ++step) {
        const auto& rec = t.steps[static_cast<std::size_t>(step)];
        bool any_pair = false;
        for (int i = 0; i <= t.d; ++i)
            for (int j = i + 1; j <= t.d; ++j)
                if (w[positions[static_cast<std::size_t>(i)]] == w[positions[static_cast<std::size_t>(j)]]) {
                    ++stats.pair_counts[{i, j}];
                    any_pair = true;
                }
        if (any_pair) ++stats.b_count;
        if (any_pair == rec.partition_trivial)
            throw std::logic_error("triviality_stats: flag disagrees with pair coincidence");
        positions = rec.q;
    }
    return stats;
}

DriftSample simulate_drift(Symbol k, int d, std::int64_t L, RngStream rng) {
    LazyWord w(k, rng.split(1));
    RngStream wp = rng.split(2);
    ParticleState st = ParticleState::initial(d);
    std::vector<char> in_a(static_cast<std::size_t>(d) + 1);
    for (std::int64_t step = 0; step < L; ++step) {
        const Symbol sym = static_cast<Symbol>(wp.uniform_int(static_cast<std::uint32_t>(k)));
        for (int i = 0; i <= d; ++i)
            in_a[static_cast<std::size_t>(i)] = (w.at(st.pos[static_cast<std::size_t>(i)]) == sym);
        std::int64_t prev = kNegInf;
        for (int i = 0; i <= d; ++i) {
            auto& p = st.pos[static_cast<std::size_t>(i)];
            if (in_a[static_cast<std::size_t>(i)])
                p += 1;
            else
                p = std::max(p, prev + 1);
            prev = p;
        }
    }
    return {st.pos.front(), st.pos.back()};
}

std::int64_t simulate_b_count(Symbol k, int d, std::int64_t L, RngStream rng) {
    LazyWord w(k, rng.split(1));
    RngStream wp = rng.split(2);
    ParticleState st = ParticleState::initial(d);
    std::vector<Symbol> under(static_cast<std::size_t>(d) + 1);
    std::int64_t b = 0;
    for (std::int64_t step = 0; step < L; ++step) {
        bool trivial = true;
        for (int i = 0; i <= d; ++i)
            under[static_cast<std::size_t>(i)] = w.at(st.pos[static_cast<std::size_t>(i)]);
        for (int i = 0; i <= d && trivial; ++i)
            for (int j = i + 1; j <= d; ++j)
                if (under[static_cast<std::size_t>(i)] == under[static_cast<std::size_t>(j)]) {
                    trivial = false;
                    break;
                }
        if (!trivial) ++b;
        const Symbol sym = static_cast<Symbol>(wp.uniform_int(static_cast<std::uint32_t>(k)));
        std::int64_t prev = kNegInf;
        for (int i = 0; i <= d; ++i) {
            auto& p = st.pos[static_cast<std::size_t>(i)];
            if (under[static_cast<std::size_t>(i)] == sym)
                p += 1;
            else
                p = std::max(p, prev + 1);
            prev = p;
        }
    }
    return b;
}

std::string trajectory_to_jsonl(const Trajectory& t) {
    std::ostringstream out;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        const auto& s = t.steps[i];
        nlohmann::json line;
        line["step"] = i;
        line["symbol"] = t.w_prime[static_cast<std::int64_t>(i)];
        line["a_set"] = s.a_set;
        line["partition_trivial"] = s.partition_trivial;
        line["positions"] = s.state.pos;
        if (!s.q.empty()) line["q_positions"] = s.q;
        out << line.dump() << '\n';
    }
    return out.str();
}

}  // namespace lcslab
