#include <doctest.h>

#include <cmath>

#include "speclab/degree_tails.hpp"

using namespace speclab;

TEST_SUITE("degree_tails") {

TEST_CASE("b_star") {
    CHECK(b_star() > 2.588);
    CHECK(b_star() < 2.589);
    CHECK((std::log(4.0) - 1.0) * b_star() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(b_star() > 1.0);  // ordering of the two thresholds in the phase diagram
}

TEST_CASE("upper tail bound values") {
    // 2 exp[-log 4000 (3.5/b* - 1 - 0.1)]
    CHECK(upper_tail_bound({4000, 3.5, 0.05}) ==
          doctest::Approx(0.24728732997272862).epsilon(1e-12));
    // vacuous boundary: b = b*, eps -> 0 gives 2
    CHECK(upper_tail_bound({4000, b_star(), 1e-12}) == doctest::Approx(2.0).epsilon(1e-9));
    // vacuous values are reported, not clamped
    CHECK(upper_tail_bound({1000, 1.0, 0.1}) > 1.0);
}

TEST_CASE("lower tail bound values") {
    CHECK(lower_tail_bound({10000, 3.0, 0.1}) ==
          doctest::Approx(0.0067179105809770315).epsilon(1e-12));
    CHECK(lower_tail_bound({1000, 1.5, 0.1}) > 1.0);  // b too small: vacuous
    // eps -> 0+ limit: 2 N^{1-b} (connectivity-threshold heuristic)
    const double limit = 2.0 * std::pow(2000.0, 1.0 - 2.5);
    CHECK(lower_tail_bound({2000, 2.5, 1e-10}) == doctest::Approx(limit).epsilon(1e-6));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS((void)upper_tail_bound({4000, 3.5, 0.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)upper_tail_bound({4000, 3.5, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS((void)upper_tail_bound({100, 20.0, 0.1}), std::invalid_argument);  // d > sqrt(N)
}

TEST_CASE("exact Poisson lower tail") {
    // d = 10, eps = 0.2: floor(eps d) = 2, sum = (1 + 10 + 50) e^{-10}
    const double expected = 61.0 * std::exp(-10.0);
    CHECK(poisson_lower_tail_exact(10.0, 0.2) == doctest::Approx(expected).epsilon(1e-12));
    // eps d < 1: single term e^{-d}
    CHECK(poisson_lower_tail_exact(5.0, 0.1) == doctest::Approx(std::exp(-5.0)).epsilon(1e-14));
}

TEST_CASE("stirling chain at the reference point") {
    // d = 10, eps = 0.2, N = e (so b = d)
    const StirlingChain chain = stirling_chain_bound(10.0, 0.2, std::exp(1.0));
    CHECK(chain.partial_sum_bound == doctest::Approx(0.0030266619841656568).epsilon(1e-12));
    CHECK(chain.stirling_bound == doctest::Approx(0.012579848546344194).epsilon(1e-12));
    CHECK(chain.rate_bound == doctest::Approx(0.042562434152329548).epsilon(1e-12));
    CHECK(poisson_lower_tail_exact(10.0, 0.2) <= chain.partial_sum_bound);
}

TEST_CASE("stirling chain is monotone on a 50-point grid") {
    int points = 0;
    for (double d : {5.0, 8.0, 12.0, 17.0, 23.0, 28.0, 31.0, 35.0, 38.0, 40.0}) {
        for (double eps : {0.02, 0.05, 0.1, 0.15, 0.2}) {
            const StirlingChain chain = stirling_chain_bound(d, eps, 2000.0);
            const double exact = poisson_lower_tail_exact(d, eps);
            CHECK(exact <= chain.partial_sum_bound);
            CHECK(chain.partial_sum_bound <= chain.stirling_bound);
            CHECK(chain.stirling_bound <= chain.rate_bound);
            ++points;
        }
    }
    CHECK(points == 50);
}

TEST_CASE("integer boundary eps d = 2 uses floor consistently") {
    const double exact = poisson_lower_tail_exact(10.0, 0.2);
    double hand = 0.0;
    for (int k = 0; k <= 2; ++k)
        hand += std::exp(k * std::log(10.0) - std::lgamma(k + 1.0) - 10.0);
    CHECK(exact == doctest::Approx(hand).epsilon(1e-14));
}

TEST_CASE("epsilon above the validated range is rejected") {
    CHECK_THROWS_AS((void)stirling_chain_bound(10.0, 0.3, 2000.0), std::invalid_argument);
    CHECK_NOTHROW((void)stirling_chain_bound(10.0, 0.3, 2000.0, 0.35));  // explicit eps_max
}

TEST_CASE("wilson intervals") {
    const WilsonInterval zero = wilson_interval(0, 100);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi > 0.0);
    CHECK(zero.hi < 0.05);
    const WilsonInterval full = wilson_interval(100, 100);
    CHECK(full.hi == 1.0);
    CHECK(full.lo > 0.95);
    const WilsonInterval half = wilson_interval(50, 100);
    CHECK(half.lo < 0.5);
    CHECK(half.hi > 0.5);
    CHECK(half.lo == doctest::Approx(0.40383153036599564).epsilon(1e-12));
    CHECK(half.hi == doctest::Approx(0.59616846963400436).epsilon(1e-12));
    CHECK_THROWS_AS((void)wilson_interval(1, 0), std::invalid_argument);
}

TEST_CASE("empirical extremes: degenerate and deterministic cases") {
    ModelConfig cfg;
    cfg.N = 50;
    cfg.d = 0.0;
    cfg.seed = 1;
    const ExtremesRaw raw = empirical_extremes(cfg, 10);
    for (double v : raw.min_alpha) CHECK(v == 0.0);
    for (double v : raw.max_alpha) CHECK(v == 0.0);

    const ModelConfig c2 = ModelConfig::from_b(300, 2.0, 11);
    const ExtremesRaw a = empirical_extremes(c2, 20, 2);
    const ExtremesRaw b = empirical_extremes(c2, 20, 1);
    CHECK(a.min_alpha == b.min_alpha);  // thread count does not change results
    CHECK(a.max_alpha == b.max_alpha);
}

TEST_CASE("Monte Carlo frequencies respect both bounds (small cells)") {
    // lower tail: nonvacuous bound at b = 2.2
    {
        const ModelConfig cfg = ModelConfig::from_b(1000, 2.2, 3);
        const ExtremesRaw raw = empirical_extremes(cfg, 400);
        const ExtremesSummary s = summarize_extremes(raw, 0.1);
        REQUIRE(s.bound_lower <= 1.0);
        CHECK(s.ci_lower.hi <= s.bound_lower);
    }
    // upper tail: nonvacuous bound at b = 3.5 (d <= sqrt(N) still holds)
    {
        const ModelConfig cfg = ModelConfig::from_b(500, 3.5, 4);
        const ExtremesRaw raw = empirical_extremes(cfg, 400);
        const ExtremesSummary s = summarize_extremes(raw, 0.05);
        REQUIRE(s.bound_upper <= 1.0);
        CHECK(s.ci_upper.hi <= s.bound_upper);
    }
}

TEST_CASE("d > sqrt(N) is rejected for tail experiments") {
    const ModelConfig cfg = ModelConfig::from_b(100, 5.0, 1);  // d = 23 > 10
    CHECK_THROWS_AS((void)empirical_extremes(cfg, 5), std::invalid_argument);
}

}  // TEST_SUITE
