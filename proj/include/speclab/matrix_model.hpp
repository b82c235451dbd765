#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace speclab {

// Entry laws for the generic sparse ensemble. Both are mean-zero with
// variance 1/N and satisfy the almost-sure bound |H_ij| <= kappa^{-1} d^{-1/2}.
enum class EntryLaw {
    centered_bernoulli,   // (Bern(d/N) - d/N) / sqrt(d (1 - d/N))
    symmetric_three_point  // {-a, 0, +a} with P(+-a) = 1/(2 a^2 N)
};

enum class ModelKind { erdos_renyi, generic_sparse };

struct ModelConfig {
    std::uint32_t N = 0;
    double d = 0.0;        // mean degree; d = b log N
    double kappa = 0.1;    // the constant kappa, in (0, 1/2)
    double f = 0.0;        // rank-one strength; ER sampling overrides with sqrt(d)
    std::uint64_t seed = 0;
    std::uint32_t dense_threshold = 8192;
    // three-point law only: entry magnitude a; 0 means the default 1/sqrt(d)
    double entry_scale = 0.0;

    double b() const;  // d / log N
    static ModelConfig from_b(std::uint32_t N, double b, std::uint64_t seed,
                              double kappa = 0.1);

    // d-regime required by the local-law machinery:
    // kappa log N <= d <= kappa^{-1} log N, and 0 <= f <= N^{kappa/6}.
    bool in_local_law_regime() const;
};

// One sampled matrix H (+ rank-one data). H is kept real; real symmetric is
// the Hermitian case realized by every built-in law.
struct SparseHermitianModel {
    ModelKind kind = ModelKind::erdos_renyi;
    std::uint32_t N = 0;
    double d = 0.0;
    double f = 0.0;
    double kappa = 0.1;
    std::uint64_t seed = 0;

    // ER only: 0/1 adjacency as an upper-triangle edge list plus degrees.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    std::vector<std::uint32_t> degrees;
    Eigen::VectorXd alpha;  // normalized degrees deg_x / d (0 when d = 0)

    Eigen::VectorXd beta;  // beta_x = sum_y |H_xy|^2
    Eigen::MatrixXd H;     // dense H; materialized only when N <= dense_threshold

    bool has_dense() const { return H.size() > 0; }

    // M = H + f e e^*. For the ER ensemble this equals A/sqrt(d) identically
    // and is assembled from the adjacency to avoid the cancellation.
    Eigen::MatrixXd dense_m() const;

    double b() const;
};

struct PsiIndicators {
    bool psi_l = false;  // min_x beta_x >= kappa
    bool psi_u = false;  // max_x beta_x <= 2 - kappa
    double beta_min = 0.0;
    double beta_max = 0.0;
    bool both() const { return psi_l && psi_u; }
};

// Samples A ~ G(N, d/N) and decomposes A/sqrt(d) = H + sqrt(d) e e^* with
// H = (A - (d/N) J)/sqrt(d). Deterministic in cfg.seed; requires 0 <= d <= sqrt(N).
SparseHermitianModel sample_er_adjacency(const ModelConfig& cfg);

// Samples H with independent upper-triangular entries from the given law.
SparseHermitianModel sample_generic_sparse(const ModelConfig& cfg, EntryLaw law);

// beta_x = sum_y |H_xy|^2, from dense H when available, else from the ER
// degree counts in closed form.
Eigen::VectorXd compute_beta(const SparseHermitianModel& model);

PsiIndicators psi_indicators(const SparseHermitianModel& model, double kappa);

// Degree sequence of the ER sample that cfg would produce, without building
// the matrix. Matches sample_er_adjacency(cfg).degrees entry for entry.
std::vector<std::uint32_t> sample_er_degrees(const ModelConfig& cfg);

const char* to_string(EntryLaw law);
EntryLaw entry_law_from_string(const std::string& name);

}  // namespace speclab
