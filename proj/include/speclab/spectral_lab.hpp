#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "speclab/matrix_model.hpp"

namespace speclab {

// Delocalization measure q(u) = ||u||_inf^2 / ||u||_2^2, in [1/N, 1].
double q_measure(const Eigen::Ref<const Eigen::VectorXd>& u);
double q_measure(const Eigen::Ref<const Eigen::VectorXcd>& u);

enum class Rescale { raw, by_sqrt_d };

struct EigenReport {
    std::uint32_t N = 0;
    double d = 0.0;
    Rescale rescale = Rescale::by_sqrt_d;

    Eigen::VectorXd eigenvalues;  // ascending, in the requested units
    Eigen::VectorXd q_values;     // per returned eigenvector

    // Perron-Frobenius outlier: the single largest eigenvalue, flagged when
    // it exceeds 2 + delta_out in rescaled units.
    std::ptrdiff_t outlier_index = -1;
    double delta_out = 0.3;

    // Isolated vertices: each carries the exact eigenpair (0, e_x) with
    // q = 1 regardless of how the solver basis represents the degenerate
    // null space.
    std::vector<std::uint32_t> zero_mode_vertices;

    // window maxima over the non-outlier spectrum, |lambda| in rescaled units
    double kappa_window = 0.3;
    double max_q_center = 0.0;  //             |lambda| <  kappa_window
    double max_q_bulk = 0.0;    // kappa_window <= |lambda| <= 2 - kappa_window
    double max_q_edge = 0.0;    //             |lambda| >  2 - kappa_window

    double max_pair_residual = 0.0;  // max ||M u - lambda u||_2 over checked pairs
    std::size_t residual_pairs_checked = 0;

    double rescaled_eigenvalue(Eigen::Index k) const;
};

// Full dense eigendecomposition of M (or of A when rescale = raw on an ER
// model). Eigenvectors are kept only as q statistics plus the raw matrix on
// request.
struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd vectors;  // columns
};

EigenReport eigen_full(const SparseHermitianModel& model, Rescale rescale = Rescale::by_sqrt_d,
                       double delta_out = 0.3, double kappa_window = 0.3);

// Same, also handing back the decomposition (tests, bindings).
EigenReport eigen_full(const SparseHermitianModel& model, Rescale rescale, double delta_out,
                       double kappa_window, EigenDecomposition* decomposition);

enum class VerdictRegime { everywhere, bulk };

struct VerdictRecord {
    VerdictRegime regime = VerdictRegime::everywhere;
    double kappa_test = 0.3;
    double max_q = 0.0;
    double bound = 0.0;  // N^{-1 + kappa_test}
    bool pass = false;
    std::size_t vectors_considered = 0;
    bool zero_mode_in_window = false;
};

// Checks max q <= N^{-1+kappa_test} over the non-outlier eigenvectors;
// the bulk regime restricts to |lambda| <= (2 - kappa_test) sqrt(d) (i.e.
// 2 - kappa_test in rescaled units). Exact zero modes participate with q = 1.
VerdictRecord delocalization_verdict(const EigenReport& report, VerdictRegime regime,
                                     double kappa_test);

struct EnergyWindow {
    double lo = 0.0;  // on |lambda| in rescaled units
    double hi = std::numeric_limits<double>::infinity();
};

struct PhaseCell {
    double b = 0.0;
    EnergyWindow window;
    std::uint32_t N = 0;
    std::uint32_t trials = 0;
    std::uint32_t trials_with_vectors = 0;  // window occupied
    double q_p50 = 0.0;  // quantiles of the per-trial window max q
    double q_p90 = 0.0;
    double q_max = 0.0;
    double verdict_fraction = 0.0;  // trials with window max q <= N^{-1+kappa_test}
};

// Monte Carlo sweep over (b, window) cells, reconstructing the delocalization
// phase diagram empirically. Deterministic in base_seed.
std::vector<PhaseCell> phase_sweep(const std::vector<double>& b_grid,
                                   const std::vector<EnergyWindow>& windows, std::uint32_t N,
                                   std::uint32_t trials, double kappa_test,
                                   std::uint64_t base_seed, double kappa = 0.1,
                                   double delta_out = 0.3, std::size_t threads = 0);

std::string phase_cells_to_csv(const std::vector<PhaseCell>& cells);

}  // namespace speclab
