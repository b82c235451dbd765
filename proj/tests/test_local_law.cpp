#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "speclab/local_law.hpp"
#include "speclab/rng.hpp"
#include "speclab/stieltjes.hpp"

using namespace speclab;

namespace {

SparseHermitianModel zero_model(std::uint32_t n) {
    SparseHermitianModel m;
    m.kind = ModelKind::generic_sparse;
    m.N = n;
    m.H = Eigen::MatrixXd::Zero(n, n);
    m.beta = Eigen::VectorXd::Zero(n);
    return m;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
}

}  // namespace

TEST_SUITE("local_law") {

TEST_CASE("spectral domains") {
    const auto lower = SpectralDomain::lower(2000, 0.1);
    CHECK(lower.im_min() == doctest::Approx(std::pow(2000.0, -0.9)));
    CHECK(lower.contains(0.5, 0.01));
    CHECK(lower.contains(-1.9, 1.0));
    CHECK_FALSE(lower.contains(1.95, 0.5));
    CHECK_FALSE(lower.contains(0.5, 1e-6));

    const auto upper = SpectralDomain::upper(2000, 0.1);
    CHECK(upper.contains(3.0, 0.5));
    CHECK(upper.contains(-0.2, 0.5));
    CHECK_FALSE(upper.contains(0.05, 0.5));
}

TEST_CASE("grid construction") {
    const auto dom = SpectralDomain::lower(2000, 0.1);
    // target 1: K = 0 path
    CHECK(build_grid(dom, 0.5, 1.0, {}) == std::vector<double>{1.0});

    // geometric: 200 points, constant ratio
    GridSpec spec;
    spec.points = 200;
    const auto grid = build_grid(dom, 0.5, 1e-2, spec);
    REQUIRE(grid.size() == 200);
    CHECK(grid.front() == 1.0);
    CHECK(grid.back() == 1e-2);
    const double ratio = std::pow(1e-2, 1.0 / 199.0);
    for (std::size_t k = 1; k < grid.size(); ++k) {
        CHECK(grid[k] < grid[k - 1]);
        CHECK(grid[k] / grid[k - 1] == doctest::Approx(ratio).epsilon(1e-9));
    }

    // ratio floor bumps the point count
    GridSpec coarse;
    coarse.points = 3;
    coarse.min_ratio = 0.5;
    const auto bumped = build_grid(dom, 0.5, 1e-2, coarse);
    for (std::size_t k = 1; k < bumped.size(); ++k)
        CHECK(bumped[k] / bumped[k - 1] >= 0.5 - 1e-12);

    // target below the domain floor is rejected
    CHECK_THROWS_AS((void)build_grid(dom, 0.5, 1e-6, spec), std::invalid_argument);
}

TEST_CASE("paper grid: arithmetic N^{-3} steps") {
    const auto dom = SpectralDomain::lower(10, 0.1);
    GridSpec spec;
    spec.mode = GridSpec::Mode::paper;
    const auto grid = build_grid(dom, 0.5, 0.5, spec);
    REQUIRE(grid.size() == 501);  // K = (1 - 0.5)/10^{-3} = 500
    CHECK(grid.front() == 1.0);
    CHECK(grid.back() == 0.5);
    for (std::size_t k = 1; k < grid.size(); ++k)
        CHECK(grid[k - 1] - grid[k] == doctest::Approx(1e-3).epsilon(1e-9));

    const auto big = SpectralDomain::lower(200, 0.1);
    CHECK_THROWS_AS((void)build_grid(big, 0.5, 0.5, spec), std::invalid_argument);
}

TEST_CASE("K* split") {
    const std::uint32_t N = 2000;
    // Re z = 0: the gap exceeds the threshold on the whole grid
    {
        std::vector<double> grid;
        for (double im = 1.0; im >= 0.01; im *= 0.7) grid.push_back(im);
        CHECK(k_star_split(0.0, grid, N) == std::ptrdiff_t(grid.size()) - 1);
    }
    // Re z = 2: gap ~ 2 sqrt(eta) crosses the threshold at an interior index
    {
        std::vector<double> grid;
        for (double im = 1.0; im >= 1e-3; im *= 0.6) grid.push_back(im);
        const auto split = k_star_split(2.0, grid, N);
        CHECK(split > 0);
        CHECK(split < std::ptrdiff_t(grid.size()) - 1);
        const double threshold = 2.0 * std::pow(std::log(double(N)), -1.0 / 7.0);
        CHECK(gap({2.0, grid[std::size_t(split)]}) > threshold);
        CHECK(gap({2.0, grid[std::size_t(split) + 1]}) <= threshold);
    }
    // single-point grid at Im = 1: K* = K = 0 across Re in [-4, 4]
    for (double re : {-4.0, -1.0, 0.0, 1.7, 4.0})
        CHECK(k_star_split(re, {1.0}, N) == 0);
}

TEST_CASE("bootstrap on the zero fixture: Lambda = 0, unconditioned") {
    const auto model = zero_model(10);
    const auto dom = SpectralDomain::lower(10, 0.1);
    GridSpec spec;
    spec.points = 8;
    const auto trace = bootstrap_run(model, dom, 0.5, 0.3, spec);
    CHECK(trace.pass);
    CHECK_FALSE(trace.conditioned);  // beta = 0 fails psi_l
    for (double lam : trace.lambda_path) CHECK(lam <= 1e-12);
    for (bool phi : trace.phi7_path) CHECK(phi);
    for (bool phi : trace.phi8_path) CHECK(phi);
    CHECK(trace.gap_monotone);
}

TEST_CASE("phi7 implies phi8 along every trace (nested thresholds)") {
    const auto model = sample_er_adjacency(ModelConfig::from_b(500, 2.0, 31));
    const auto dom = SpectralDomain::lower(500, 0.1);
    GridSpec spec;
    spec.points = 10;
    const auto trace = bootstrap_run(model, dom, 0.5, 0.05, spec);
    CHECK(trace.threshold_phi8 > trace.threshold_phi7);
    for (std::size_t k = 0; k < trace.grid.size(); ++k)
        if (trace.phi7_path[k]) CHECK(trace.phi8_path[k]);
    CHECK(trace.conditioned);
    CHECK(trace.gap_monotone);
}

TEST_CASE("paper-mode step inequality at N = 50") {
    const auto model = sample_er_adjacency(ModelConfig::from_b(50, 1.5, 4));
    const auto dom = SpectralDomain::lower(50, 0.1);
    GridSpec spec;
    spec.mode = GridSpec::Mode::paper;
    const auto trace = bootstrap_run(model, dom, 0.5, 0.9, spec);
    double worst = 0.0;
    for (std::size_t k = 1; k < trace.lambda_path.size(); ++k)
        worst = std::max(worst, std::abs(trace.lambda_path[k] - trace.lambda_path[k - 1]));
    CHECK(worst <= 2.0 / 50.0 + 1e-6);
}

TEST_CASE("initial bound at Im z = 1 (Lemma 3.4 (i) scale)") {
    const auto dom = SpectralDomain::lower(2000, 0.1);
    int pass = 0, conditioned = 0;
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const auto model = sample_er_adjacency(ModelConfig::from_b(2000, 3.5, 100 + seed));
        const auto trace = bootstrap_run(model, dom, 0.3, 1.0, {});
        if (!trace.conditioned) continue;
        ++conditioned;
        if (trace.lambda_path[0] <= trace.threshold_phi7) ++pass;
    }
    CHECK(pass == conditioned);  // Lambda(E + i) is far below the threshold
    CHECK(conditioned >= 4);
}

TEST_CASE("median Lambda decreases with N at fixed z") {
    const SpectralParam z{0.3, 0.1};
    std::vector<double> medians;
    for (std::uint32_t N : {500u, 1000u}) {
        std::vector<double> lams;
        for (std::uint64_t s = 0; s < 5; ++s) {
            const auto model = sample_er_adjacency(ModelConfig::from_b(N, 3.5, 200 + s));
            lams.push_back(lambda_only(model, model.dense_m(), z));
        }
        medians.push_back(median(lams));
    }
    CHECK(medians[1] < medians[0]);
}

TEST_CASE("local-law report rows and thresholds") {
    // zero fixture: Lambda = 0 rows; trace error equals |(-1/z) - m| exactly
    const auto model = zero_model(16);
    const auto dom = SpectralDomain::lower(16, 0.1);
    const std::vector<double> res{0.0, 0.5};
    const std::vector<double> ims{0.5, 1.0};
    const auto report = local_law_report(model, dom, res, ims);
    REQUIRE(report.rows.size() == 4);
    for (const auto& row : report.rows) {
        CHECK(row.lambda <= 1e-12);
        const SpectralParam z{row.re, row.im};
        const double expected = std::abs(-1.0 / z.z() - eval_m(z));
        CHECK(row.trace_err == doctest::Approx(expected).epsilon(1e-10));
        CHECK(row.pass_lambda);
    }
    CHECK_FALSE(report.conditioned);
}

TEST_CASE("report trace bound obeys the typicality decomposition") {
    const auto model = sample_er_adjacency(ModelConfig::from_b(1000, 3.5, 17));
    const SpectralParam z{0.4, 0.2};
    const auto state = build_resolvent_state(model, z);
    const Complex m = eval_m(z);
    const double trace_err = std::abs(state.G.diagonal().mean() - m);

    std::vector<bool> is_typical(model.N, false);
    for (auto x : state.typical) is_typical[x] = true;
    double max_typ = 0.0, max_atyp = 0.0;
    std::size_t atypical = 0;
    for (std::uint32_t x = 0; x < model.N; ++x) {
        const double dev = std::abs(eval_m_alpha(model.beta[x], z) - m);
        if (is_typical[x])
            max_typ = std::max(max_typ, dev);
        else {
            max_atyp = std::max(max_atyp, dev);
            ++atypical;
        }
    }
    CHECK(trace_err <=
          state.lambda + max_typ + double(atypical) / double(model.N) * max_atyp + 1e-12);
}

TEST_CASE("upper-domain sweep skips the outlier band") {
    const auto model = sample_er_adjacency(ModelConfig::from_b(500, 3.5, 9));
    auto dom = SpectralDomain::upper(500, 0.1, 8.0);
    const double outlier = model.f + 1.0 / model.f;
    const std::vector<double> res{-3.0, 2.5, outlier, 3.0};
    const std::vector<double> ims{0.5};
    const auto report = local_law_report(model, dom, res, ims, 1.0, 0.4);
    CHECK(report.outlier_center == doctest::Approx(outlier));
    for (const auto& row : report.rows) CHECK(std::abs(row.re - outlier) >= 0.4);
}

TEST_CASE("trace serializes to JSON with the documented fields") {
    const auto model = zero_model(8);
    const auto dom = SpectralDomain::lower(8, 0.1);
    GridSpec spec;
    spec.points = 4;
    const auto trace = bootstrap_run(model, dom, 0.1, 0.5, spec);
    const std::string json = trace_to_json(trace, model);
    for (const char* key : {"\"config\"", "\"domain\"", "\"grid\"", "\"lambda_path\"", "\"phi7\"",
                            "\"phi8\"", "\"k_star\"", "\"verdict\"", "\"psi\""})
        CHECK(json.find(key) != std::string::npos);
}

}  // TEST_SUITE
