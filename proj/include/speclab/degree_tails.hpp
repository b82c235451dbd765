#pragma once

#include <cstdint>
#include <vector>

#include "speclab/matrix_model.hpp"

namespace speclab {

// b* = 1/(log 4 - 1): the critical sparseness constant separating edge
// delocalization from localization.
double b_star();

struct TailBoundInput {
    std::uint32_t N = 0;
    double b = 0.0;        // d = b log N
    double epsilon = 0.0;  // in (0, 1)

    double d() const;
    void validate() const;  // epsilon in (0,1), d <= sqrt(N)
};

// P(exists x: alpha_x >= 2 - eps) <= 2 exp[-log N (b/b* - 1 - 2 eps)].
// Returned as-is; values above 1 mean the bound is vacuous there.
double upper_tail_bound(const TailBoundInput& in);

// P(exists x: alpha_x <= eps) <= 2 exp[-log N (b (1 + 2 eps log eps) - 1)].
double lower_tail_bound(const TailBoundInput& in);

// Exact partial Poisson CDF P(X <= floor(eps d)) for X ~ Poisson(d),
// summed stably in log space.
double poisson_lower_tail_exact(double d, double epsilon);

// The three successive bounds from the proof of the lower tail estimate:
//   exact <= (4/3) d^K/K! e^{-d} <= (3/2) e^{-d + eps d (1 - log eps)}
//         <= (3/2) exp[-b (1 + 2 eps log eps) log N],  K = floor(eps d).
struct StirlingChain {
    double partial_sum_bound = 0.0;  // (4/3) d^K/K! e^{-d}
    double stirling_bound = 0.0;     // (3/2) e^{-d + eps d (1 - log eps)}
    double rate_bound = 0.0;         // (3/2) exp[-b (1 + 2 eps log eps) log N]
};

// Valid for small eps; eps above eps_max (default 0.2, validated numerically
// at configuration time) is rejected.
StirlingChain stirling_chain_bound(double d, double epsilon, double N, double eps_max = 0.2);

struct WilsonInterval {
    double lo = 0.0;
    double hi = 0.0;
};

// 95% Wilson score interval by default (z = 1.96).
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t trials,
                               double z = 1.959963984540054);

// Per-trial extreme normalized degrees of ER samples derived from cfg.seed.
struct ExtremesRaw {
    std::uint32_t N = 0;
    double b = 0.0;
    double d = 0.0;
    std::uint64_t seed = 0;
    std::vector<double> min_alpha;  // one entry per trial
    std::vector<double> max_alpha;
};

ExtremesRaw empirical_extremes(const ModelConfig& cfg, std::uint32_t trials,
                               std::size_t threads = 0);

// Comparison of the Monte Carlo frequencies at one epsilon against both
// closed-form bounds.
struct ExtremesSummary {
    std::uint32_t N = 0;
    double b = 0.0;
    double epsilon = 0.0;
    std::uint32_t trials = 0;
    std::uint64_t upper_hits = 0;  // trials with max alpha >= 2 - eps
    std::uint64_t lower_hits = 0;  // trials with min alpha <= eps
    double freq_upper = 0.0;
    double freq_lower = 0.0;
    WilsonInterval ci_upper;
    WilsonInterval ci_lower;
    double bound_upper = 0.0;
    double bound_lower = 0.0;
};

ExtremesSummary summarize_extremes(const ExtremesRaw& raw, double epsilon);

}  // namespace speclab
