#include "speclab/degree_tails.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "speclab/rng.hpp"
#include "speclab/threading.hpp"

namespace speclab {

double b_star() { return 1.0 / (std::log(4.0) - 1.0); }

double TailBoundInput::d() const { return b * std::log(double(N)); }

void TailBoundInput::validate() const {
    if (N < 2) throw std::invalid_argument("tail bounds need N >= 2");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    if (b < 0.0) throw std::invalid_argument("b must be nonnegative");
    if (d() > std::sqrt(double(N)))
        throw std::invalid_argument("tail bounds require d <= sqrt(N)");
}

double upper_tail_bound(const TailBoundInput& in) {
    in.validate();
    const double logN = std::log(double(in.N));
    return 2.0 * std::exp(-logN * (in.b / b_star() - 1.0 - 2.0 * in.epsilon));
}

double lower_tail_bound(const TailBoundInput& in) {
    in.validate();
    const double logN = std::log(double(in.N));
    const double rate = in.b * (1.0 + 2.0 * in.epsilon * std::log(in.epsilon)) - 1.0;
    return 2.0 * std::exp(-logN * rate);
}

double poisson_lower_tail_exact(double d, double epsilon) {
    if (!(d > 0.0)) throw std::invalid_argument("poisson tail needs d > 0");
    if (!(epsilon > 0.0 && epsilon < 1.0))
        throw std::invalid_argument("epsilon must lie in (0, 1)");
    const auto K = static_cast<long long>(std::floor(epsilon * d));
    double sum = 0.0;
    for (long long k = K; k >= 0; --k)  // ascending terms: smallest first
        sum += std::exp(double(k) * std::log(d) - std::lgamma(double(k) + 1.0) - d);
    return sum;
}

StirlingChain stirling_chain_bound(double d, double epsilon, double N, double eps_max) {
    if (!(d > 0.0) || !(N > 1.0)) throw std::invalid_argument("need d > 0 and N > 1");
    if (!(epsilon > 0.0 && epsilon <= eps_max))
        throw std::invalid_argument("stirling chain validated only for epsilon <= eps_max");
    const double K = std::floor(epsilon * d);
    StirlingChain chain;
    chain.partial_sum_bound =
        (4.0 / 3.0) * std::exp(K * std::log(d) - std::lgamma(K + 1.0) - d);
    chain.stirling_bound =
        1.5 * std::exp(-d + epsilon * d * (1.0 - std::log(epsilon)));
    const double b = d / std::log(N);
    chain.rate_bound =
        1.5 * std::exp(-b * (1.0 + 2.0 * epsilon * std::log(epsilon)) * std::log(N));
    return chain;
}

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials, double z) {
    if (trials == 0) throw std::invalid_argument("wilson interval needs trials >= 1");
    const double n = double(trials);
    const double p = double(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double center = (p + z2 / (2.0 * n)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    WilsonInterval w{std::max(0.0, center - half), std::min(1.0, center + half)};
    if (successes == 0) w.lo = 0.0;        // endpoints are exact at the boundary
    if (successes == trials) w.hi = 1.0;
    return w;
}

ExtremesRaw empirical_extremes(const ModelConfig& cfg, std::uint32_t trials,
                               std::size_t threads) {
    if (trials == 0) throw std::invalid_argument("empirical_extremes needs trials >= 1");
    if (cfg.d > std::sqrt(double(cfg.N)))
        throw std::invalid_argument("degree-tail experiments require d <= sqrt(N)");
    ExtremesRaw raw;
    raw.N = cfg.N;
    raw.b = cfg.b();
    raw.d = cfg.d;
    raw.seed = cfg.seed;
    raw.min_alpha.resize(trials);
    raw.max_alpha.resize(trials);

    const std::size_t workers = resolve_thread_count(threads);
    parallel_for_index(trials, workers, [&](std::size_t t) {
        ModelConfig trial_cfg = cfg;
        trial_cfg.seed = derive_seed(cfg.seed, t);
        const std::vector<std::uint32_t> deg = sample_er_degrees(trial_cfg);
        const auto [lo, hi] = std::minmax_element(deg.begin(), deg.end());
        if (cfg.d > 0.0) {
            raw.min_alpha[t] = double(*lo) / cfg.d;
            raw.max_alpha[t] = double(*hi) / cfg.d;
        } else {
            raw.min_alpha[t] = 0.0;  // alpha := 0 when d = 0
            raw.max_alpha[t] = 0.0;
        }
    });
    return raw;
}

ExtremesSummary summarize_extremes(const ExtremesRaw& raw, double epsilon) {
    ExtremesSummary s;
    s.N = raw.N;
    s.b = raw.b;
    s.epsilon = epsilon;
    s.trials = static_cast<std::uint32_t>(raw.min_alpha.size());
    for (double a : raw.max_alpha)
        if (a >= 2.0 - epsilon) ++s.upper_hits;
    for (double a : raw.min_alpha)
        if (a <= epsilon) ++s.lower_hits;
    s.freq_upper = double(s.upper_hits) / double(s.trials);
    s.freq_lower = double(s.lower_hits) / double(s.trials);
    s.ci_upper = wilson_interval(s.upper_hits, s.trials);
    s.ci_lower = wilson_interval(s.lower_hits, s.trials);
    const TailBoundInput in{raw.N, raw.b, epsilon};
    s.bound_upper = upper_tail_bound(in);
    s.bound_lower = lower_tail_bound(in);
    return s;
}

}  // namespace speclab
