#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "speclab/matrix_model.hpp"
#include "speclab/resolvent.hpp"

namespace speclab {

// Spectral domains S_l and S_u from the conditional local law. The upper
// domain is unbounded in Re z; sweeps cap |Re z| at re_cap since the spectrum
// is confined.
struct SpectralDomain {
    enum class Tag { lower, upper };
    Tag tag = Tag::lower;
    double kappa = 0.1;
    std::uint32_t N = 0;
    double re_cap = 4.0;

    double im_min() const;  // N^{-1+kappa}
    bool contains(double re, double im) const;
    static SpectralDomain lower(std::uint32_t N, double kappa = 0.1);
    static SpectralDomain upper(std::uint32_t N, double kappa = 0.1, double re_cap = 4.0);
};

const char* to_string(SpectralDomain::Tag tag);

struct GridSpec {
    enum class Mode { geometric, paper };
    Mode mode = Mode::geometric;
    int points = 200;        // geometric mode point count (before ratio floor)
    double min_ratio = 0.5;  // geometric mode: consecutive-step ratio floor
};

// Im-z grid from 1 down to target_im. Geometric grids keep consecutive
// ratios >= min_ratio; paper mode uses the arithmetic step N^{-3} and is
// restricted to N <= 100.
std::vector<double> build_grid(const SpectralDomain& domain, double re, double target_im,
                               const GridSpec& spec);

// Largest index k with |m(z_k) - m_tilde(z_k)| > 2 (log N)^{-1/7}; -1 when no
// grid point clears the threshold. Checks the claimed monotonicity of the gap
// along the grid and falls back to a full scan if it fails numerically.
std::ptrdiff_t k_star_split(double re, const std::vector<double>& im_grid, std::uint32_t N);

struct ContinuationTrace {
    SpectralDomain::Tag domain = SpectralDomain::Tag::lower;
    std::uint32_t N = 0;
    double re = 0.0;
    std::vector<double> grid;  // Im z, strictly decreasing from 1
    std::ptrdiff_t k_star = -1;
    std::vector<double> lambda_path;
    std::vector<bool> phi7_path;
    std::vector<bool> phi8_path;
    bool gap_monotone = true;

    bool conditioned = false;  // psi_# for the requested domain
    PsiIndicators psi;

    bool pass = false;
    std::ptrdiff_t fail_index = -1;

    double threshold_phi7 = 0.0;  // (log N)^{-1/7}
    double threshold_phi8 = 0.0;  // (log N)^{-1/8}
};

// Bootstrap continuation mirroring the induction in the local-law proof:
// Lambda is computed at each z_k, phi_7 gates the indices up to K*, phi_8 the
// rest, and the verdict is the conjunction. A run with psi_# = 0 is carried
// out but flagged unconditioned.
ContinuationTrace bootstrap_run(const SparseHermitianModel& model, const SpectralDomain& domain,
                                double re, double target_im, const GridSpec& spec = {});

struct LocalLawRow {
    double re = 0.0;
    double im = 0.0;
    double lambda = 0.0;
    double trace_err = 0.0;  // |N^{-1} Tr G - m|
    bool phi7 = false;
    bool phi8 = false;
    bool pass_lambda = false;  // lambda <= C (log N)^{-1/7}
    bool pass_trace = false;
    std::size_t typical_size = 0;
    std::optional<Complex> s;
    double resid_p50 = 0.0;  // |1 + z G_xx + s G_xx| percentiles over vertices
    double resid_p90 = 0.0;
    double resid_max = 0.0;
};

struct LocalLawReport {
    SpectralDomain domain;
    PsiIndicators psi;
    bool conditioned = false;
    double pass_constant = 1.0;
    double threshold = 0.0;  // C (log N)^{-1/7}
    double outlier_center = 0.0;  // f + 1/f
    double outlier_window = 0.0;  // half-width of the excluded Re-z band
    std::vector<LocalLawRow> rows;

    bool all_pass() const;
};

// 2-D sweep of the domain: Lambda and the trace error at every (re, im) with
// pass flags against C (log N)^{-1/7}. Sweep points inside the excluded
// outlier band are skipped.
LocalLawReport local_law_report(const SparseHermitianModel& model, const SpectralDomain& domain,
                                const std::vector<double>& re_points,
                                const std::vector<double>& im_points, double pass_constant = 1.0,
                                double outlier_window = 0.5);

std::string trace_to_json(const ContinuationTrace& trace, const SparseHermitianModel& model);
std::string report_to_csv(const LocalLawReport& report);

// The resolvent module's per-z summary dump, assembled from sweep rows
// (same schema as resolvent_summary_csv).
std::string report_resolvent_csv(const LocalLawReport& report);

}  // namespace speclab
