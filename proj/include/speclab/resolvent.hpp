#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "speclab/matrix_model.hpp"
#include "speclab/stieltjes.hpp"

namespace speclab {

// Resolvent data for one spectral point. G is complex symmetric (M is real
// symmetric), every entry is bounded by 1/Im z, and Im G_xx > 0.
struct ResolventState {
    SpectralParam z;
    Eigen::MatrixXcd G;
    Eigen::VectorXcd m_beta;  // reference values m_{beta_x}(z)

    double lambda = 0.0;                  // max_{x,y} |G_xy - delta_xy m_{beta_x}|
    std::vector<std::uint32_t> typical;   // the set T (depends on z)
    std::optional<Complex> s;             // |T|^{-1} sum_{x in T} G_xx; absent if T empty
    Eigen::VectorXcd residuals;           // 1 + z G_xx + s G_xx (only when s defined)

    double max_sampled_row_residual = 0.0;  // ||(M - z) G - I||_max over sampled rows
};

// G(z) = (M - z)^{-1} by dense factorization. Fills G, m_beta and the sampled
// row residual; the derived quantities are attached by the helpers below or
// all at once by build_resolvent_state.
ResolventState resolvent_dense(const SparseHermitianModel& model, const SpectralParam& z);

// Resolvent of an explicit dense symmetric matrix (test oracle entry point).
Eigen::MatrixXcd resolvent_of_matrix(const Eigen::MatrixXd& m, const SpectralParam& z);

// Sherman-Morrison step from G_H = (H - z)^{-1} to (H + f e e^* - z)^{-1},
// e = N^{-1/2} (1, ..., 1)^*. Throws near_singular_update when
// |1 + f e^* G_H e| < 1e-10, in which case callers fall back to a direct
// inverse (the spectral point sits at the shifted outlier).
struct near_singular_update : std::runtime_error {
    using std::runtime_error::runtime_error;
};
Eigen::MatrixXcd rank_one_update(const Eigen::MatrixXcd& g_h, double f);

// Diagonal of the minor resolvent G^{(x)} via
// G^{(x)}_yy = G_yy - G_yx G_xy / G_xx, with a direct inverse of the minor
// matrix when |G_xx| <= 1e-12. Returns N-1 values, y in [N] \ {x} in order.
Eigen::VectorXcd minor_diagonal(const SparseHermitianModel& model, const ResolventState& state,
                                std::uint32_t x);

// Typical vertices: both centered row sums in the definition stay below
// (log N)^{-1/3}. Recomputed per spectral point.
std::vector<std::uint32_t> classify_typical(const SparseHermitianModel& model,
                                            const ResolventState& state);

// Lambda(z) and s(z); requires state.G and state.m_beta. s is absent when the
// typical set is empty.
void attach_lambda_and_s(const SparseHermitianModel& model, ResolventState& state);

// 1 + z G_xx + s G_xx for one vertex; requires s.
Complex sce_residual(const ResolventState& state, std::uint32_t x);

// Full pipeline: resolvent, typical set, Lambda, s, and per-vertex residuals.
ResolventState build_resolvent_state(const SparseHermitianModel& model, const SpectralParam& z);

// Lambda(z) alone, skipping the typicality machinery (bootstrap inner loop).
double lambda_only(const SparseHermitianModel& model, const Eigen::MatrixXd& m_dense,
                   const SpectralParam& z);

// CSV dump of per-z summaries, one row per state. Header:
// re_z,im_z,lambda,t_size,s_re,s_im,resid_p50,resid_p90,resid_max
// (s columns empty when the typical set is empty).
std::string resolvent_summary_csv(const std::vector<ResolventState>& states);

}  // namespace speclab
