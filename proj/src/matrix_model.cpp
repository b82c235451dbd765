#include "speclab/matrix_model.hpp"

#include <cmath>
#include <stdexcept>

#include "speclab/rng.hpp"

namespace speclab {

namespace {

std::uint64_t pair_index(std::uint32_t i, std::uint32_t j, std::uint32_t N) {
    return static_cast<std::uint64_t>(i) * N + j;
}

void validate_common(const ModelConfig& cfg) {
    if (cfg.N == 0) throw std::invalid_argument("model dimension N must be positive");
    if (!(cfg.kappa > 0.0 && cfg.kappa < 0.5))
        throw std::invalid_argument("kappa must lie in (0, 1/2)");
    if (cfg.d < 0.0) throw std::invalid_argument("mean degree d must be nonnegative");
}

}  // namespace

double ModelConfig::b() const { return N > 1 ? d / std::log(double(N)) : 0.0; }

ModelConfig ModelConfig::from_b(std::uint32_t N, double b, std::uint64_t seed, double kappa) {
    ModelConfig cfg;
    cfg.N = N;
    cfg.d = N > 1 ? b * std::log(double(N)) : 0.0;
    cfg.seed = seed;
    cfg.kappa = kappa;
    return cfg;
}

bool ModelConfig::in_local_law_regime() const {
    const double logN = std::log(double(N));
    return d >= kappa * logN && d <= logN / kappa && f >= 0.0 &&
           f <= std::pow(double(N), kappa / 6.0);
}

double SparseHermitianModel::b() const { return N > 1 ? d / std::log(double(N)) : 0.0; }

Eigen::MatrixXd SparseHermitianModel::dense_m() const {
    if (!has_dense() && kind != ModelKind::erdos_renyi)
        throw std::logic_error("dense M requested for a model without dense storage");
    const std::uint32_t n = N;
    Eigen::MatrixXd M;
    if (kind == ModelKind::erdos_renyi) {
        M = Eigen::MatrixXd::Zero(n, n);
        if (d > 0.0) {
            const double w = 1.0 / std::sqrt(d);
            for (auto [i, j] : edges) {
                M(i, j) = w;
                M(j, i) = w;
            }
        }
    } else {
        M = H;
        if (f != 0.0) M.array() += f / double(n);
    }
    return M;
}

SparseHermitianModel sample_er_adjacency(const ModelConfig& cfg) {
    validate_common(cfg);
    if (cfg.d > double(cfg.N))
        throw std::invalid_argument("ER sampling requires d <= N (edge probability d/N <= 1)");

    const std::uint32_t n = cfg.N;
    const double p = cfg.d / double(n);

    SparseHermitianModel model;
    model.kind = ModelKind::erdos_renyi;
    model.N = n;
    model.d = cfg.d;
    model.kappa = cfg.kappa;
    model.seed = cfg.seed;
    model.f = cfg.d > 0.0 ? std::sqrt(cfg.d) : 0.0;
    model.degrees.assign(n, 0);

    const EntryRng rng(cfg.seed);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if (rng.uniform(pair_index(i, j, n)) < p) {
                model.edges.emplace_back(i, j);
                ++model.degrees[i];
                ++model.degrees[j];
            }
        }
    }

    model.alpha = Eigen::VectorXd::Zero(n);
    if (cfg.d > 0.0)
        for (std::uint32_t x = 0; x < n; ++x) model.alpha[x] = model.degrees[x] / cfg.d;

    if (n <= cfg.dense_threshold && cfg.d > 0.0) {
        const double inv_sqrt_d = 1.0 / std::sqrt(cfg.d);
        const double off = -p * inv_sqrt_d;  // centered non-edge value
        model.H = Eigen::MatrixXd::Constant(n, n, off);
        const double on = (1.0 - p) * inv_sqrt_d;
        for (auto [i, j] : model.edges) {
            model.H(i, j) = on;
            model.H(j, i) = on;
        }
    } else if (n <= cfg.dense_threshold) {
        model.H = Eigen::MatrixXd::Zero(n, n);
    }

    model.beta = compute_beta(model);
    return model;
}

SparseHermitianModel sample_generic_sparse(const ModelConfig& cfg, EntryLaw law) {
    validate_common(cfg);
    if (cfg.N > cfg.dense_threshold)
        throw std::invalid_argument("generic sparse sampling is dense-only; N exceeds dense_threshold");
    // f <= N^{kappa/6} is part of the local-law regime (in_local_law_regime),
    // not a sampling constraint: even f = sqrt(d) violates it at small N.
    if (cfg.f < 0.0) throw std::invalid_argument("rank-one strength must be nonnegative");

    const std::uint32_t n = cfg.N;
    SparseHermitianModel model;
    model.kind = ModelKind::generic_sparse;
    model.N = n;
    model.d = cfg.d;
    model.kappa = cfg.kappa;
    model.seed = cfg.seed;
    model.f = cfg.f;
    model.H = Eigen::MatrixXd::Zero(n, n);

    if (n == 1) {  // degenerate dimension: variance (1 + O(1))/N forces 0
        model.beta = compute_beta(model);
        return model;
    }
    if (!(cfg.d > 0.0)) throw std::invalid_argument("generic sparse sampling requires d > 0");

    const EntryRng rng(cfg.seed);
    const double a3_bound = 1.0 / (cfg.kappa * std::sqrt(cfg.d));

    if (law == EntryLaw::centered_bernoulli) {
        const double p = cfg.d / double(n);
        const double scale = 1.0 / std::sqrt(cfg.d * (1.0 - p));
        const double on = (1.0 - p) * scale;
        const double off = -p * scale;
        if (std::max(std::abs(on), std::abs(off)) > a3_bound)
            throw std::invalid_argument("centered-Bernoulli law violates the (A3) entry bound");
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = i; j < n; ++j) {
                const double v = rng.uniform(pair_index(i, j, n)) < p ? on : off;
                model.H(i, j) = v;
                model.H(j, i) = v;
            }
        }
    } else {
        const double a = cfg.entry_scale > 0.0 ? cfg.entry_scale : 1.0 / std::sqrt(cfg.d);
        const double p_nonzero = 1.0 / (a * a * double(n));
        if (p_nonzero > 1.0)
            throw std::invalid_argument("three-point law needs a >= N^{-1/2} for valid probabilities");
        if (a > a3_bound)
            throw std::invalid_argument("three-point entry scale violates the (A3) entry bound");
        for (std::uint32_t i = 0; i < n; ++i) {
            for (std::uint32_t j = i; j < n; ++j) {
                const std::uint64_t idx = pair_index(i, j, n);
                double v = 0.0;
                if (rng.uniform(idx) < p_nonzero)
                    v = rng.uniform2(idx) < 0.5 ? -a : a;
                model.H(i, j) = v;
                model.H(j, i) = v;
            }
        }
    }

    model.beta = compute_beta(model);
    return model;
}

Eigen::VectorXd compute_beta(const SparseHermitianModel& model) {
    const std::uint32_t n = model.N;
    if (model.has_dense()) return model.H.array().square().colwise().sum();
    if (model.kind != ModelKind::erdos_renyi)
        throw std::logic_error("beta needs dense H for non-ER models");
    Eigen::VectorXd beta = Eigen::VectorXd::Zero(n);
    if (model.d == 0.0) return beta;
    const double p = model.d / double(n);
    const double on = (1.0 - p) * (1.0 - p) / model.d;
    const double off = p * p / model.d;
    for (std::uint32_t x = 0; x < n; ++x) {
        const double deg = model.degrees[x];
        beta[x] = deg * on + (double(n) - deg) * off;
    }
    return beta;
}

PsiIndicators psi_indicators(const SparseHermitianModel& model, double kappa) {
    if (model.beta.size() == 0) throw std::invalid_argument("model has no beta vector");
    PsiIndicators psi;
    psi.beta_min = model.beta.minCoeff();
    psi.beta_max = model.beta.maxCoeff();
    psi.psi_l = psi.beta_min >= kappa;
    psi.psi_u = psi.beta_max <= 2.0 - kappa;
    return psi;
}

std::vector<std::uint32_t> sample_er_degrees(const ModelConfig& cfg) {
    validate_common(cfg);
    if (cfg.d > double(cfg.N))
        throw std::invalid_argument("ER sampling requires d <= N (edge probability d/N <= 1)");
    const std::uint32_t n = cfg.N;
    const double p = cfg.d / double(n);
    std::vector<std::uint32_t> deg(n, 0);
    const EntryRng rng(cfg.seed);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (std::uint32_t j = i + 1; j < n; ++j) {
            if (rng.uniform(pair_index(i, j, n)) < p) {
                ++deg[i];
                ++deg[j];
            }
        }
    }
    return deg;
}

const char* to_string(EntryLaw law) {
    return law == EntryLaw::centered_bernoulli ? "centered-bernoulli" : "symmetric-three-point";
}

EntryLaw entry_law_from_string(const std::string& name) {
    if (name == "centered-bernoulli" || name == "bernoulli") return EntryLaw::centered_bernoulli;
    if (name == "symmetric-three-point" || name == "three-point")
        return EntryLaw::symmetric_three_point;
    throw std::invalid_argument("unknown entry law: " + name);
}

}  // namespace speclab
