#include "lcslab/estimators.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <nlohmann/json.hpp>

#include "lcslab/contain.hpp"
#include "lcslab/particles.hpp"
#include "lcslab/seq.hpp"
#include "lcslab/word.hpp"

namespace lcslab {

namespace {

constexpr std::int64_t kChunk = 512;  // fixed merge granularity, independent of threads

constexpr std::uint64_t kSaltGamma = 1;
constexpr std::uint64_t kSaltGammaEps = 2;
constexpr std::uint64_t kSaltDrift = 3;
constexpr std::uint64_t kSaltLnds = 4;
constexpr std::uint64_t kSaltLndsBinom = 5;
constexpr std::uint64_t kSaltConcat = 6;

// floor that forgives the last few ulps of the product that produced x
std::int64_t floor_stable(double x) {
    const double nearest = std::nearbyint(x);
    if (std::abs(x - nearest) < 1e-9 * std::max(1.0, std::abs(x)))
        return static_cast<std::int64_t>(nearest);
    return static_cast<std::int64_t>(std::floor(x));
}

double now_ms() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double, std::milli>(clock::now().time_since_epoch()).count();
}

class StopWatch {
public:
    StopWatch() : start_(now_ms()) {}
    double elapsed_ms() const { return now_ms() - start_; }

private:
    double start_;
};

}  // namespace

void Welford::add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
}

void Welford::merge(const Welford& other) {
    if (other.n == 0) return;
    if (n == 0) {
        *this = other;
        return;
    }
    const double delta = other.mean - mean;
    const double total = static_cast<double>(n + other.n);
    mean += delta * static_cast<double>(other.n) / total;
    m2 += other.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(other.n) / total;
    n += other.n;
}

double Welford::variance() const { return n < 2 ? 0.0 : m2 / static_cast<double>(n - 1); }

double Welford::standard_error() const {
    return n == 0 ? 0.0 : std::sqrt(variance() / static_cast<double>(n));
}

double EstimateReport::extra(const std::string& name) const {
    for (const auto& [key, value] : extras)
        if (key == name) return value;
    throw std::out_of_range("EstimateReport: no extra named " + name);
}

bool EstimateReport::has_extra(const std::string& name) const {
    for (const auto& [key, value] : extras)
        if (key == name) return true;
    return false;
}

EstimateReport EstimateReport::from_welford(const Welford& w) {
    EstimateReport r;
    r.samples = w.n;
    r.mean = w.mean;
    r.variance = w.variance();
    r.stderr_ = w.standard_error();
    r.ci_lo = r.mean - 1.96 * r.stderr_;
    r.ci_hi = r.mean + 1.96 * r.stderr_;
    return r;
}

EstimateReport EstimateReport::merged(const EstimateReport& a, const EstimateReport& b) {
    if (a.quantity != b.quantity) throw std::invalid_argument("merged: different quantities");
    auto to_m2 = [](const EstimateReport& r) {
        return r.samples < 2 ? 0.0 : r.variance * static_cast<double>(r.samples - 1);
    };
    Welford wa{a.samples, a.mean, to_m2(a)};
    Welford wb{b.samples, b.mean, to_m2(b)};
    wa.merge(wb);
    EstimateReport r = from_welford(wa);
    r.quantity = a.quantity;
    r.params = a.params;
    r.seed = a.seed;
    return r;
}

nlohmann::json EstimateReport::to_json(bool canonical) const {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["quantity"] = quantity;
    nlohmann::json p = nlohmann::json::object();
    for (const auto& [key, value] : params) p[key] = value;
    j["params"] = p;
    j["samples"] = samples;
    j["mean"] = mean;
    j["variance"] = variance;
    j["stderr"] = stderr_;
    j["ci95"] = {ci_lo, ci_hi};
    j["seed"] = seed;
    nlohmann::json e = nlohmann::json::object();
    for (const auto& [key, value] : extras) e[key] = value;
    j["extras"] = e;
    if (!canonical) j["wall_ms"] = wall_ms;
    return j;
}

namespace {

std::string csv_quote(const std::string& s) {
    bool needs = false;
    for (char c : s)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') needs = true;
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_number(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

}  // namespace

std::string EstimateReport::to_csv() const {
    std::ostringstream header, row;
    header << "schema_version,quantity";
    row << "1," << csv_quote(quantity);
    for (const auto& [key, value] : params) {
        header << ',' << csv_quote(key);
        row << ',' << csv_number(value);
    }
    header << ",samples,mean,variance,stderr,ci_lo,ci_hi,seed";
    row << ',' << samples << ',' << csv_number(mean) << ',' << csv_number(variance) << ','
        << csv_number(stderr_) << ',' << csv_number(ci_lo) << ',' << csv_number(ci_hi) << ','
        << seed;
    for (const auto& [key, value] : extras) {
        header << ',' << csv_quote(key);
        row << ',' << csv_number(value);
    }
    return header.str() + "\n" + row.str() + "\n";
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("LCSLAB_THREADS")) {
        const int parsed = std::atoi(env);
        if (parsed > 0) return parsed;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

std::vector<Welford> mc_accumulate(std::int64_t samples, int threads, std::size_t dim,
                                   const std::function<void(std::int64_t, double*)>& fn) {
    if (samples < 0) throw std::invalid_argument("mc_accumulate: negative sample count");
    const std::int64_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<std::vector<Welford>> per_chunk(static_cast<std::size_t>(chunks),
                                                std::vector<Welford>(dim));
    const int workers = static_cast<int>(
        std::max<std::int64_t>(1, std::min<std::int64_t>(resolve_threads(threads), chunks)));

    std::atomic<std::int64_t> next_chunk{0};
    auto work = [&]() {
        std::vector<double> values(dim);
        while (true) {
            const std::int64_t c = next_chunk.fetch_add(1);
            if (c >= chunks) break;
            auto& acc = per_chunk[static_cast<std::size_t>(c)];
            const std::int64_t lo = c * kChunk;
            const std::int64_t hi = std::min(samples, lo + kChunk);
            for (std::int64_t i = lo; i < hi; ++i) {
                fn(i, values.data());
                for (std::size_t v = 0; v < dim; ++v) acc[v].add(values[v]);
            }
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }

    // Merge in chunk order: identical result for every thread count.
    std::vector<Welford> out(dim);
    for (std::int64_t c = 0; c < chunks; ++c)
        for (std::size_t v = 0; v < dim; ++v) out[v].merge(per_chunk[static_cast<std::size_t>(c)][v]);
    return out;
}

RngStream make_stream(std::uint64_t seed, std::uint64_t salt, std::int64_t sample, std::uint64_t sub) {
    return RngStream(seed, (salt << 48) ^ (static_cast<std::uint64_t>(sample) << 4) ^ sub);
}

EstimateReport estimate_gamma(std::int64_t k, std::int64_t n, McOptions opt,
                              bool with_extrapolation) {
    if (k < 2) throw std::invalid_argument("estimate_gamma: k must be >= 2");
    if (n < 1) throw std::invalid_argument("estimate_gamma: n must be >= 1");
    StopWatch watch;
    auto run_at = [&](std::int64_t length, std::uint64_t sub_base) {
        return mc_accumulate(opt.samples, opt.threads, 1, [&, length, sub_base](std::int64_t i, double* out) {
            const Word w = sample_word(static_cast<Symbol>(k), length,
                                       make_stream(opt.seed, kSaltGamma, opt.sample_offset + i, sub_base));
            const Word wp = sample_word(static_cast<Symbol>(k), length,
                                        make_stream(opt.seed, kSaltGamma, opt.sample_offset + i, sub_base + 1));
            out[0] = static_cast<double>(lcs_length(w, wp)) / static_cast<double>(length);
        })[0];
    };
    const Welford acc = run_at(n, 0);
    EstimateReport r = EstimateReport::from_welford(acc);
    r.quantity = "gamma";
    r.params = {{"k", static_cast<double>(k)}, {"n", static_cast<double>(n)}};
    r.seed = opt.seed;
    if (k == 2) r.extras = {{"lueker_lower", 0.788071}, {"lueker_upper", 0.826280}};
    if (with_extrapolation && n >= 2) {
        // companion run at n/2; two-point fit of mean(n) = gamma - c/sqrt(n).
        // A heuristic aid, not a certified estimate.
        const Welford half = run_at(n / 2, 2);
        const double sqrt2 = std::sqrt(2.0);
        r.extras.push_back({"mean_half_n", half.mean});
        r.extras.push_back(
            {"fekete_extrapolated_uncertified", acc.mean + (acc.mean - half.mean) / (sqrt2 - 1.0)});
    }
    r.wall_ms = watch.elapsed_ms();
    return r;
}

EstimateReport estimate_gamma_eps(std::int64_t k, double eps, std::int64_t n, McOptions opt) {
    if (k < 2) throw std::invalid_argument("estimate_gamma_eps: k must be >= 2");
    if (!(eps > 0.0 && eps < 1.0)) throw std::invalid_argument("estimate_gamma_eps: eps in (0,1)");
    if (n < 1) throw std::invalid_argument("estimate_gamma_eps: n must be >= 1");
    StopWatch watch;
    const std::int64_t len_wp =
        floor_stable((1.0 - eps) * static_cast<double>(k) * static_cast<double>(n));
    const bool short_wp = len_wp < n;

    auto acc = mc_accumulate(opt.samples, opt.threads, 1, [&](std::int64_t i, double* out) {
        const Word w = sample_word(static_cast<Symbol>(k), n, make_stream(opt.seed, kSaltGammaEps, opt.sample_offset + i, 0));
        const Word wp =
            sample_word(static_cast<Symbol>(k), len_wp, make_stream(opt.seed, kSaltGammaEps, opt.sample_offset + i, 1));
        out[0] = static_cast<double>(lcs_length(w, wp)) / static_cast<double>(n);
    });
    EstimateReport r = EstimateReport::from_welford(acc[0]);
    r.quantity = "gamma_eps";
    r.params = {{"k", static_cast<double>(k)}, {"eps", eps}, {"n", static_cast<double>(n)}};
    r.seed = opt.seed;
    r.extras = {{"len_w_prime", static_cast<double>(len_wp)},
                {"window_lower", 1.0 - 8.0 * eps * eps},
                {"window_upper", 1.0 - eps * eps / 72.0},
                {"warn_short_w_prime", short_wp ? 1.0 : 0.0}};
    r.wall_ms = watch.elapsed_ms();
    return r;
}

EstimateReport estimate_drift(std::int64_t k, int d, std::int64_t L, McOptions opt) {
    if (k < 2) throw std::invalid_argument("estimate_drift: k must be >= 2");
    if (d < 0 || L < 0) throw std::invalid_argument("estimate_drift: d and L must be >= 0");
    StopWatch watch;
    auto acc = mc_accumulate(opt.samples, opt.threads, 2, [&](std::int64_t i, double* out) {
        const DriftSample s = simulate_drift(static_cast<Symbol>(k), d, L,
                                             make_stream(opt.seed, kSaltDrift, opt.sample_offset + i, 0));
        out[0] = static_cast<double>(s.pd - s.p0);
        out[1] = static_cast<double>(s.p0);
    });
    EstimateReport r = EstimateReport::from_welford(acc[0]);
    r.quantity = "drift";
    r.params = {{"k", static_cast<double>(k)},
                {"d", static_cast<double>(d)},
                {"L", static_cast<double>(L)}};
    r.seed = opt.seed;
    const double dd = static_cast<double>(d), LL = static_cast<double>(L), kk = static_cast<double>(k);
    r.extras = {{"mean_p0", acc[1].mean},
                {"stderr_p0", acc[1].standard_error()},
                {"target_p0", LL / kk},
                {"lower_bound_sqrt_L_over_7k", std::sqrt(LL / (7.0 * kk))},
                {"upper_bound_thm4", dd * std::sqrt(2.0 * LL / kk) + dd}};
    if (d > 0 && L > 0)
        r.extras.push_back({"ratio_to_2sqrt_dL_over_k", r.mean / (2.0 * std::sqrt(dd * LL / kk))});
    r.wall_ms = watch.elapsed_ms();
    return r;
}

EstimateReport estimate_lnds_mean(std::int64_t k, std::int64_t n, McOptions opt) {
    if (k < 1) throw std::invalid_argument("estimate_lnds_mean: k must be >= 1");
    if (n < 1) throw std::invalid_argument("estimate_lnds_mean: n must be >= 1");
    StopWatch watch;
    auto acc = mc_accumulate(opt.samples, opt.threads, 1, [&](std::int64_t i, double* out) {
        const Word w = sample_word(static_cast<Symbol>(k), n, make_stream(opt.seed, kSaltLnds, opt.sample_offset + i, 0));
        out[0] = static_cast<double>(lnds(w));
    });
    EstimateReport r = EstimateReport::from_welford(acc[0]);
    r.quantity = "lnds";
    r.params = {{"k", static_cast<double>(k)}, {"n", static_cast<double>(n)}};
    r.seed = opt.seed;
    const double normalized =
        (r.mean - static_cast<double>(n) / static_cast<double>(k)) / (2.0 * std::sqrt(static_cast<double>(n)));
    r.extras = {{"normalized", normalized}};
    r.wall_ms = watch.elapsed_ms();
    return r;
}

EstimateReport estimate_lnds_binomial(std::int64_t k, std::int64_t n, double p, McOptions opt) {
    if (k < 1) throw std::invalid_argument("estimate_lnds_binomial: k must be >= 1");
    if (n < 1) throw std::invalid_argument("estimate_lnds_binomial: n must be >= 1");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("estimate_lnds_binomial: p in (0,1]");
    StopWatch watch;
    auto acc = mc_accumulate(opt.samples, opt.threads, 2, [&](std::int64_t i, double* out) {
        RngStream len_rng = make_stream(opt.seed, kSaltLndsBinom, opt.sample_offset + i, 0);
        std::int64_t m = 0;  // exact Binomial(n, p) as a sum of Bernoulli draws
        for (std::int64_t t = 0; t < n; ++t)
            if (len_rng.next_double() < p) ++m;
        const Word w = sample_word(static_cast<Symbol>(k), m, make_stream(opt.seed, kSaltLndsBinom, opt.sample_offset + i, 1));
        out[0] = static_cast<double>(lnds(w));
        out[1] = static_cast<double>(m);
    });
    EstimateReport r = EstimateReport::from_welford(acc[0]);
    r.quantity = "lnds_binomial";
    r.params = {{"k", static_cast<double>(k)}, {"n", static_cast<double>(n)}, {"p", p}};
    r.seed = opt.seed;
    const double pn = p * static_cast<double>(n);
    r.extras = {{"normalized", (r.mean - pn / static_cast<double>(k)) / (2.0 * std::sqrt(pn))},
                {"mean_length", acc[1].mean},
                {"stderr_length", acc[1].standard_error()},
                {"target_length", pn}};
    r.wall_ms = watch.elapsed_ms();
    return r;
}

EstimateReport estimate_concat_lower(const ConcatParams& cp, McOptions opt) {
    if (cp.k < 2) throw std::invalid_argument("estimate_concat_lower: k must be >= 2");
    if (cp.d < 0) throw std::invalid_argument("estimate_concat_lower: d must be >= 0");
    if (cp.alpha <= 0.0) throw std::invalid_argument("estimate_concat_lower: alpha must be > 0");
    if (cp.L0 < 1) throw std::invalid_argument("estimate_concat_lower: L0 must be >= 1");
    const double eps_max =
        std::min(0.05, cp.alpha * std::sqrt(static_cast<double>(cp.k) / (2.0 * static_cast<double>(cp.L0))));
    if (!(cp.eps > 0.0 && cp.eps < eps_max))
        throw std::invalid_argument("estimate_concat_lower: eps must lie in (0, min(1/20, alpha sqrt(k/2 L0)))");

    const std::int64_t L = floor_stable((1.0 - 2.0 * cp.eps) * (1.0 - 2.0 * cp.eps) * cp.alpha *
                                        cp.alpha * static_cast<double>(cp.k) / (cp.eps * cp.eps));
    if (L < cp.L0)
        throw std::invalid_argument("estimate_concat_lower: derived block length fell below L0");
    const std::int64_t M = floor_stable((1.0 - cp.eps) * static_cast<double>(cp.k) *
                                        static_cast<double>(cp.n) / static_cast<double>(L));
    if (M < 1) throw std::invalid_argument("estimate_concat_lower: fewer than one block; raise n");

    StopWatch watch;
    const std::size_t dim = 2 + static_cast<std::size_t>(M);  // Y, [Y >= n], Y_1..Y_M
    // Raw per-sample block lengths back the variance-additivity check; skip
    // them when the matrix would be unreasonably large.
    const bool track_raw =
        static_cast<std::size_t>(opt.samples) * static_cast<std::size_t>(M) <= 8u << 20;
    std::vector<double> raw(track_raw
                                ? static_cast<std::size_t>(opt.samples) * static_cast<std::size_t>(M)
                                : 0);
    auto acc = mc_accumulate(opt.samples, opt.threads, dim, [&](std::int64_t i, double* out) {
        LazyWord wbar(static_cast<Symbol>(cp.k), make_stream(opt.seed, kSaltConcat, opt.sample_offset + i, 0));
        RngStream block_rng = make_stream(opt.seed, kSaltConcat, opt.sample_offset + i, 1);
        std::int64_t offset = 0;
        std::int64_t total = 0;
        for (std::int64_t r = 0; r < M; ++r) {
            // Longest prefix of the remaining suffix of wbar that fits in this
            // block: run the particle update against the block symbols.
            ParticleState st = ParticleState::initial(cp.d);
            std::vector<char> in_a(static_cast<std::size_t>(cp.d) + 1);
            for (std::int64_t step = 0; step < L; ++step) {
                const auto sym = static_cast<Symbol>(
                    block_rng.uniform_int(static_cast<std::uint32_t>(cp.k)));
                for (int q = 0; q <= cp.d; ++q)
                    in_a[static_cast<std::size_t>(q)] =
                        (wbar.at(offset + st.pos[static_cast<std::size_t>(q)]) == sym);
                std::int64_t prev = kNegInf;
                for (int q = 0; q <= cp.d; ++q) {
                    auto& pos = st.pos[static_cast<std::size_t>(q)];
                    if (in_a[static_cast<std::size_t>(q)])
                        pos += 1;
                    else
                        pos = std::max(pos, prev + 1);
                    prev = pos;
                }
            }
            const std::int64_t y = st.pos.back();  // P_d(L) for this block
            out[2 + r] = static_cast<double>(y);
            if (track_raw)
                raw[static_cast<std::size_t>(i) * static_cast<std::size_t>(M) +
                    static_cast<std::size_t>(r)] = static_cast<double>(y);
            total += y;
            offset += y;
        }
        out[0] = static_cast<double>(total);
        out[1] = total >= cp.n ? 1.0 : 0.0;
    });

    EstimateReport r = EstimateReport::from_welford(acc[0]);
    r.quantity = "concat_lower";
    r.params = {{"k", static_cast<double>(cp.k)}, {"eps", cp.eps},   {"d", static_cast<double>(cp.d)},
                {"alpha", cp.alpha},              {"L0", static_cast<double>(cp.L0)},
                {"n", static_cast<double>(cp.n)}};
    r.seed = opt.seed;

    double sum_var_blocks = 0.0;
    for (std::int64_t b = 0; b < M; ++b) sum_var_blocks += acc[2 + static_cast<std::size_t>(b)].variance();

    // Batched estimate of Var(Y) - sum_i Var(Y_i); near zero when the block
    // lengths are independent.
    const std::int64_t batches = track_raw ? std::clamp<std::int64_t>(opt.samples / 25, 2, 16) : 0;
    Welford diff;
    for (std::int64_t b = 0; b < batches; ++b) {
        const std::int64_t lo = b * opt.samples / batches;
        const std::int64_t hi = (b + 1) * opt.samples / batches;
        if (hi - lo < 2) continue;
        Welford total_acc;
        std::vector<Welford> block_acc(static_cast<std::size_t>(M));
        for (std::int64_t i = lo; i < hi; ++i) {
            double total = 0.0;
            for (std::int64_t q = 0; q < M; ++q) {
                const double y = raw[static_cast<std::size_t>(i) * static_cast<std::size_t>(M) +
                                     static_cast<std::size_t>(q)];
                block_acc[static_cast<std::size_t>(q)].add(y);
                total += y;
            }
            total_acc.add(total);
        }
        double sum_blocks = 0.0;
        for (const Welford& w : block_acc) sum_blocks += w.variance();
        diff.add(total_acc.variance() - sum_blocks);
    }

    const double LL = static_cast<double>(L), kk = static_cast<double>(cp.k);
    r.extras = {{"L", LL},
                {"M", static_cast<double>(M)},
                {"pr_y_ge_n", acc[1].mean},
                {"lcs_lower_bound", static_cast<double>(cp.n - static_cast<std::int64_t>(cp.d) * M)},
                {"ey_bound", static_cast<double>(M) * (LL / kk + cp.alpha * std::sqrt(LL / kk))},
                {"var_y", acc[0].variance()},
                {"sum_var_blocks", sum_var_blocks}};
    if (track_raw) {
        r.extras.push_back({"var_diff_mean", diff.mean});
        r.extras.push_back({"var_diff_stderr", diff.standard_error()});
    }
    r.wall_ms = watch.elapsed_ms();
    return r;
}

}  // namespace lcslab
