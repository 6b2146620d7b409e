#include "lcslab/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace lcslab {

int ChainSpec::index_of(std::int64_t s, bool in) const {
    for (std::size_t i = 0; i < states.size(); ++i)
        if (states[i].s == s && states[i].in == in) return static_cast<int>(i);
    throw std::invalid_argument("ChainSpec: no such state");
}

std::vector<std::vector<double>> ChainSpec::transition_matrix() const {
    std::vector<std::vector<double>> m(states.size(), std::vector<double>(states.size(), 0.0));
    for (std::size_t i = 0; i < states.size(); ++i)
        for (const ChainEdge& e : edges[i]) m[i][static_cast<std::size_t>(e.to)] += e.prob;
    return m;
}

std::vector<double> ChainSpec::star_mass() const {
    std::vector<double> mass(states.size(), 0.0);
    for (std::size_t i = 0; i < states.size(); ++i)
        for (const ChainEdge& e : edges[i])
            if (e.star) mass[i] += e.prob;
    return mass;
}

void ChainSpec::validate() const {
    if (states.size() != edges.size()) throw std::logic_error("ChainSpec: ragged spec");
    for (std::size_t i = 0; i < edges.size(); ++i) {
        double sum = 0.0;
        for (const ChainEdge& e : edges[i]) {
            if (e.prob < 0.0 || e.to < 0 || e.to >= static_cast<int>(states.size()))
                throw std::logic_error("ChainSpec: bad edge");
            sum += e.prob;
        }
        if (std::abs(sum - 1.0) > 1e-12) throw std::logic_error("ChainSpec: row does not sum to 1");
    }
}

ChainSpec trivial_chain_spec(std::int64_t k) {
    if (k < 2) throw std::invalid_argument("trivial_chain_spec: k must be >= 2");
    ChainSpec spec;
    spec.k = k;
    spec.states.push_back({0, false});
    for (std::int64_t s = 1; s < k; ++s) {
        spec.states.push_back({s, false});
        spec.states.push_back({s, true});
    }
    spec.states.push_back({k, true});
    spec.edges.resize(spec.states.size());

    const double inv_k = 1.0 / static_cast<double>(k);
    const int kin = spec.index_of(k, true);
    const int zout = spec.index_of(0, false);

    for (std::size_t i = 0; i < spec.states.size(); ++i) {
        const auto [s, in] = spec.states[i];
        auto add = [&](int to, double p, bool star) {
            if (p > 0.0) spec.edges[i].push_back({to, p, star});
        };
        if (s == 0) {
            // both arcs are counted
            add(kin, inv_k, true);
            add(zout, 1.0 - inv_k, true);
        } else if (!in) {
            add(spec.index_of(s, true), inv_k, false);
            add(kin, inv_k, false);
            add(static_cast<int>(i), 1.0 - 2.0 * inv_k, false);
        } else {
            const double inv_s = 1.0 / static_cast<double>(s);
            add(kin, inv_k * inv_s, true);
            add(zout, inv_s * (1.0 - inv_k), true);
            if (s > 1) {
                add(spec.index_of(s - 1, true), (1.0 - inv_s) * inv_k, false);
                add(kin, (1.0 - inv_s) * inv_k, false);
                add(spec.index_of(s - 1, false), (1.0 - inv_s) * (1.0 - 2.0 * inv_k), false);
            }
        }
    }
    spec.validate();
    return spec;
}

namespace {

std::vector<char> reachable_from(const std::vector<std::vector<double>>& m, std::size_t start) {
    const std::size_t n = m.size();
    std::vector<char> seen(n, 0);
    std::vector<std::size_t> stack = {start};
    seen[start] = 1;
    while (!stack.empty()) {
        std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t u = 0; u < n; ++u)
            if (m[v][u] > 0.0 && !seen[u]) {
                seen[u] = 1;
                stack.push_back(u);
            }
    }
    return seen;
}

// The stationary distribution is unique iff there is exactly one terminal
// communicating class; transient states then carry mass zero. Aperiodicity is
// checked on that class (gcd of cycle lengths via BFS levels).
void check_unichain_aperiodic(const std::vector<std::vector<double>>& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<char>> reach(n);
    for (std::size_t i = 0; i < n; ++i) reach[i] = reachable_from(m, i);

    std::vector<std::size_t> terminal;  // states whose class has no way out
    for (std::size_t i = 0; i < n; ++i) {
        bool term = true;
        for (std::size_t j = 0; j < n && term; ++j)
            if (reach[i][j] && !reach[j][i]) term = false;
        if (term) terminal.push_back(i);
    }
    if (terminal.empty()) throw std::invalid_argument("stationary_distribution: no recurrent class");
    for (std::size_t i : terminal)
        if (!reach[terminal.front()][i])
            throw std::invalid_argument("stationary_distribution: several recurrent classes");

    const std::size_t root = terminal.front();
    std::vector<std::int64_t> level(n, -1);
    std::vector<std::size_t> queue = {root};
    level[root] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const std::size_t v = queue[head];
        for (std::size_t u = 0; u < n; ++u)
            if (m[v][u] > 0.0 && reach[u][root] && level[u] < 0) {
                level[u] = level[v] + 1;
                queue.push_back(u);
            }
    }
    std::int64_t period = 0;
    for (std::size_t v : queue)
        for (std::size_t u = 0; u < n; ++u)
            if (m[v][u] > 0.0 && level[u] >= 0)
                period = std::gcd(period, level[v] + 1 - level[u]);
    if (period != 1) throw std::invalid_argument("stationary_distribution: chain is periodic");
}

}  // namespace

std::vector<double> stationary_distribution(const ChainSpec& spec) {
    spec.validate();
    const auto m = spec.transition_matrix();
    const std::size_t n = m.size();
    check_unichain_aperiodic(m);

    // Solve (P^T - I) pi = 0 with the last equation replaced by sum pi = 1.
    std::vector<std::vector<double>> a(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a[i][j] = m[j][i] - (i == j ? 1.0 : 0.0);
        a[i][n] = 0.0;
    }
    for (std::size_t j = 0; j < n; ++j) a[n - 1][j] = 1.0;
    a[n - 1][n] = 1.0;

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        std::swap(a[col], a[pivot]);
        if (std::abs(a[col][col]) < 1e-300)
            throw std::runtime_error("stationary_distribution: singular system");
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            if (f == 0.0) continue;
            for (std::size_t c = col; c <= n; ++c) a[r][c] -= f * a[col][c];
        }
    }
    std::vector<double> pi(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        pi[i] = a[i][n] / a[i][i];
        if (std::abs(pi[i]) < 1e-15) pi[i] = 0.0;  // transient states come out as -0
    }

    double residual = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double piP = 0.0;
        for (std::size_t i = 0; i < n; ++i) piP += pi[i] * m[i][j];
        residual = std::max(residual, std::abs(piP - pi[j]));
    }
    if (residual > 1e-12)
        throw std::runtime_error("stationary_distribution: residual above 1e-12");
    return pi;
}

std::vector<Rational> stationary_closed_form_exact(std::int64_t k) {
    const ChainSpec spec = trivial_chain_spec(k);
    const BigInt norm = BigInt(k) * k * (BigInt(1) << static_cast<unsigned>(k - 1));
    std::vector<Rational> pi;
    pi.reserve(spec.states.size());
    for (const ChainState& st : spec.states) {
        BigInt weight;
        if (st.s == 0)
            weight = ((BigInt(1) << static_cast<unsigned>(k)) - 1) * (k - 1);
        else if (st.in)
            weight = BigInt(st.s) * (BigInt(1) << static_cast<unsigned>(st.s - 1));
        else
            weight = BigInt(st.s) * (BigInt(1) << static_cast<unsigned>(st.s - 1)) * (k - 2);
        pi.emplace_back(weight, norm);
    }
    return pi;
}

std::vector<double> stationary_closed_form(std::int64_t k) {
    std::vector<double> out;
    for (const Rational& r : stationary_closed_form_exact(k)) out.push_back(rational_to_double(r));
    return out;
}

Rational star_probability(std::int64_t k) {
    if (k < 2) throw std::invalid_argument("star_probability: k must be >= 2");
    const BigInt two_k = BigInt(1) << static_cast<unsigned>(k);
    const Rational closed(two_k - 1, BigInt(k) * (two_k / 2));

    // Recompute as sum over states of pi(state) * starred mass out of it.
    const auto pi = stationary_closed_form_exact(k);
    const ChainSpec spec = trivial_chain_spec(k);
    Rational recomputed = 0;
    for (std::size_t i = 0; i < spec.states.size(); ++i) {
        const auto [s, in] = spec.states[i];
        Rational mass = 0;
        if (s == 0)
            mass = 1;
        else if (in)
            mass = Rational(1, s);
        recomputed += pi[i] * mass;
    }
    if (recomputed != closed)
        throw std::logic_error("star_probability: closed form disagrees with the chain");
    return closed;
}

double exact_bbar_mean(const ChainSpec& spec, int start, std::int64_t L) {
    const std::size_t n = spec.states.size();
    const auto m = spec.transition_matrix();
    const auto star = spec.star_mass();
    std::vector<double> dist(n, 0.0), next(n, 0.0);
    dist[static_cast<std::size_t>(start)] = 1.0;
    double total = 0.0;
    for (std::int64_t step = 0; step < L; ++step) {
        for (std::size_t i = 0; i < n; ++i) total += dist[i] * star[i];
        std::fill(next.begin(), next.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            if (dist[i] == 0.0) continue;
            for (std::size_t j = 0; j < n; ++j) next[j] += dist[i] * m[i][j];
        }
        std::swap(dist, next);
    }
    return total;
}

BbarTailEstimate chain_bbar_tail(std::int64_t k, std::int64_t L, std::int64_t samples,
                                 RngStream rng) {
    if (samples < 1) throw std::invalid_argument("chain_bbar_tail: need at least one sample");
    const ChainSpec spec = trivial_chain_spec(k);
    const int start = spec.index_of(k, true);
    const double p = rational_to_double(star_probability(k));

    BbarTailEstimate est;
    est.samples = samples;
    est.threshold = 3.0 * p * static_cast<double>(L);
    est.tail_bound =
        std::min(1.0, 2.0 * static_cast<double>(L) *
                          std::exp(-p * std::sqrt(2.0 * static_cast<double>(L) / static_cast<double>(k))));

    std::int64_t hits = 0;
    double mean = 0.0, m2 = 0.0;
    for (std::int64_t i = 0; i < samples; ++i) {
        RngStream stream = rng.split(static_cast<std::uint64_t>(i));
        int state = start;
        std::int64_t bbar = 0;
        for (std::int64_t step = 0; step < L; ++step) {
            const double u = stream.next_double();
            double acc = 0.0;
            const auto& out = spec.edges[static_cast<std::size_t>(state)];
            const ChainEdge* chosen = &out.back();
            for (const ChainEdge& e : out) {
                acc += e.prob;
                if (u < acc) {
                    chosen = &e;
                    break;
                }
            }
            if (chosen->star) ++bbar;
            state = chosen->to;
        }
        const double x = static_cast<double>(bbar);
        const double delta = x - mean;
        mean += delta / static_cast<double>(i + 1);
        m2 += delta * (x - mean);
        if (x >= est.threshold) ++hits;
    }
    est.frequency = static_cast<double>(hits) / static_cast<double>(samples);
    est.mean_bbar = mean;
    est.stderr_ = std::sqrt(est.frequency * (1.0 - est.frequency) / static_cast<double>(samples));
    est.stderr_mean =
        samples < 2 ? 0.0 : std::sqrt(m2 / static_cast<double>(samples - 1) / static_cast<double>(samples));
    return est;
}

void to_json(nlohmann::json& j, const ChainSpec& spec) {
    j = nlohmann::json::object();
    j["k"] = spec.k;
    auto states = nlohmann::json::array();
    for (const ChainState& st : spec.states)
        states.push_back({{"s", st.s}, {"b", st.in ? "in" : "out"}});
    j["states"] = states;
    auto edges = nlohmann::json::array();
    for (std::size_t i = 0; i < spec.edges.size(); ++i)
        for (const ChainEdge& e : spec.edges[i])
            edges.push_back({{"from", i}, {"to", e.to}, {"p", e.prob}, {"star", e.star}});
    j["edges"] = edges;
}

void from_json(const nlohmann::json& j, ChainSpec& spec) {
    spec.k = j.at("k").get<std::int64_t>();
    spec.states.clear();
    for (const auto& st : j.at("states"))
        spec.states.push_back({st.at("s").get<std::int64_t>(), st.at("b").get<std::string>() == "in"});
    spec.edges.assign(spec.states.size(), {});
    for (const auto& e : j.at("edges")) {
        const auto from = e.at("from").get<std::size_t>();
        spec.edges.at(from).push_back(
            {e.at("to").get<int>(), e.at("p").get<double>(), e.at("star").get<bool>()});
    }
    spec.validate();
}

}  // namespace lcslab
