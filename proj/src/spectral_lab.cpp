#include "speclab/spectral_lab.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "speclab/io.hpp"
#include "speclab/linalg.hpp"
#include "speclab/rng.hpp"
#include "speclab/stieltjes.hpp"
#include "speclab/threading.hpp"

namespace speclab {

namespace {

template <typename Vec>
double q_measure_impl(const Vec& u) {
    double norm2 = 0.0, peak = 0.0;
    for (Eigen::Index i = 0; i < u.size(); ++i) {
        const double a = std::norm(Complex(u[i]));
        norm2 += a;
        peak = std::max(peak, a);
    }
    if (norm2 == 0.0) throw std::invalid_argument("q_measure: zero vector");
    return peak / norm2;
}

// nearest-rank quantile of an already sorted vector
double quantile_sorted(const std::vector<double>& sorted, double p) {
    if (sorted.empty()) return 0.0;
    const auto rank = static_cast<std::size_t>(
        std::ceil(p * double(sorted.size())));
    return sorted[std::min(sorted.size() - 1, rank == 0 ? 0 : rank - 1)];
}

}  // namespace

double q_measure(const Eigen::Ref<const Eigen::VectorXd>& u) { return q_measure_impl(u); }
double q_measure(const Eigen::Ref<const Eigen::VectorXcd>& u) { return q_measure_impl(u); }

double EigenReport::rescaled_eigenvalue(Eigen::Index k) const {
    if (rescale == Rescale::by_sqrt_d || d <= 0.0) return eigenvalues[k];
    return eigenvalues[k] / std::sqrt(d);
}

EigenReport eigen_full(const SparseHermitianModel& model, Rescale rescale, double delta_out,
                       double kappa_window) {
    return eigen_full(model, rescale, delta_out, kappa_window, nullptr);
}

EigenReport eigen_full(const SparseHermitianModel& model, Rescale rescale, double delta_out,
                       double kappa_window, EigenDecomposition* decomposition) {
    const std::uint32_t n = model.N;
    EigenReport report;
    report.N = n;
    report.d = model.d;
    report.rescale = rescale;
    report.delta_out = delta_out;
    report.kappa_window = kappa_window;

    Eigen::MatrixXd m;
    if (rescale == Rescale::raw && model.kind == ModelKind::erdos_renyi) {
        m = Eigen::MatrixXd::Zero(n, n);  // the adjacency matrix itself
        for (auto [i, j] : model.edges) {
            m(i, j) = 1.0;
            m(j, i) = 1.0;
        }
    } else {
        m = model.dense_m();
    }

    Eigen::MatrixXd vectors = m;  // dsyevd overwrites with eigenvectors
    sym_eigen_inplace(vectors, report.eigenvalues);

    report.q_values.resize(n);
    for (Eigen::Index k = 0; k < n; ++k) report.q_values[k] = q_measure(vectors.col(k));

    // eigenpair residuals: all pairs for small N, a deterministic sample above
    const Eigen::Index check = n <= 512 ? n : 16;
    for (Eigen::Index c = 0; c < check; ++c) {
        const Eigen::Index k = check == n ? c : (c * (n - 1)) / (check - 1);
        const double r = (m * vectors.col(k) - report.eigenvalues[k] * vectors.col(k)).norm();
        report.max_pair_residual = std::max(report.max_pair_residual, r);
    }
    report.residual_pairs_checked = static_cast<std::size_t>(check);

    if (report.rescaled_eigenvalue(n - 1) > 2.0 + delta_out) report.outlier_index = n - 1;

    if (model.kind == ModelKind::erdos_renyi) {
        for (std::uint32_t x = 0; x < n; ++x)
            if (model.degrees[x] == 0) report.zero_mode_vertices.push_back(x);
    } else if (model.f == 0.0 && model.has_dense()) {
        for (Eigen::Index x = 0; x < n; ++x)
            if ((model.H.col(x).array() == 0.0).all())
                report.zero_mode_vertices.push_back(static_cast<std::uint32_t>(x));
    }

    for (Eigen::Index k = 0; k < n; ++k) {
        if (k == report.outlier_index) continue;
        const double lam = std::abs(report.rescaled_eigenvalue(k));
        const double q = report.q_values[k];
        if (lam < kappa_window)
            report.max_q_center = std::max(report.max_q_center, q);
        else if (lam <= 2.0 - kappa_window)
            report.max_q_bulk = std::max(report.max_q_bulk, q);
        else
            report.max_q_edge = std::max(report.max_q_edge, q);
    }
    if (!report.zero_mode_vertices.empty()) {
        report.max_q_center = std::max(report.max_q_center, 1.0);
    }

    if (decomposition) {
        decomposition->eigenvalues = report.eigenvalues;
        decomposition->vectors = std::move(vectors);
    }
    return report;
}

VerdictRecord delocalization_verdict(const EigenReport& report, VerdictRegime regime,
                                     double kappa_test) {
    VerdictRecord v;
    v.regime = regime;
    v.kappa_test = kappa_test;
    v.bound = std::pow(double(report.N), -1.0 + kappa_test);
    const double window = 2.0 - kappa_test;
    for (Eigen::Index k = 0; k < report.eigenvalues.size(); ++k) {
        if (k == report.outlier_index) continue;
        if (regime == VerdictRegime::bulk &&
            std::abs(report.rescaled_eigenvalue(k)) > window)
            continue;
        v.max_q = std::max(v.max_q, report.q_values[k]);
        ++v.vectors_considered;
    }
    // (0, e_x) is an exact eigenpair for every isolated vertex x; it lies in
    // every bulk window and has q = 1.
    if (!report.zero_mode_vertices.empty()) {
        v.zero_mode_in_window = true;
        v.max_q = std::max(v.max_q, 1.0);
    }
    v.pass = v.vectors_considered > 0 && v.max_q <= v.bound;
    return v;
}

std::vector<PhaseCell> phase_sweep(const std::vector<double>& b_grid,
                                   const std::vector<EnergyWindow>& windows, std::uint32_t N,
                                   std::uint32_t trials, double kappa_test,
                                   std::uint64_t base_seed, double kappa, double delta_out,
                                   std::size_t threads) {
    if (b_grid.empty() || windows.empty())
        throw std::invalid_argument("phase_sweep needs nonempty grids");
    if (trials == 0) throw std::invalid_argument("phase_sweep needs trials >= 1");

    const double bound = std::pow(double(N), -1.0 + kappa_test);
    const std::size_t W = windows.size();
    std::vector<PhaseCell> cells;
    cells.reserve(b_grid.size() * W);

    const std::size_t workers = resolve_thread_count(threads);
    // One BLAS thread per trial: results are then bit-identical for any
    // worker count (threaded GEMM reductions reorder sums, and degenerate
    // eigenspaces amplify those last-bit differences into different bases).
    set_blas_threads(1);

    for (std::size_t bi = 0; bi < b_grid.size(); ++bi) {
        const double b = b_grid[bi];
        // per-trial window maxima; NaN marks an empty window
        std::vector<std::vector<double>> window_max(W, std::vector<double>(trials));
        parallel_for_index(trials, workers, [&](std::size_t t) {
            ModelConfig cfg = ModelConfig::from_b(N, b, 0, kappa);
            cfg.seed = derive_seed(base_seed, bi * trials + t);
            const SparseHermitianModel model = sample_er_adjacency(cfg);
            const EigenReport report = eigen_full(model, Rescale::by_sqrt_d, delta_out);
            for (std::size_t w = 0; w < W; ++w) {
                double best = std::numeric_limits<double>::quiet_NaN();
                for (Eigen::Index k = 0; k < report.eigenvalues.size(); ++k) {
                    if (k == report.outlier_index) continue;
                    const double lam = std::abs(report.eigenvalues[k]);
                    if (lam < windows[w].lo || lam > windows[w].hi) continue;
                    if (std::isnan(best) || report.q_values[k] > best)
                        best = report.q_values[k];
                }
                if (!report.zero_mode_vertices.empty() && windows[w].lo <= 0.0)
                    best = std::isnan(best) ? 1.0 : std::max(best, 1.0);
                window_max[w][t] = best;
            }
        });

        for (std::size_t w = 0; w < W; ++w) {
            PhaseCell cell;
            cell.b = b;
            cell.window = windows[w];
            cell.N = N;
            cell.trials = trials;
            std::vector<double> values;
            std::uint32_t pass = 0;
            for (double v : window_max[w]) {
                if (std::isnan(v)) continue;
                values.push_back(v);
                if (v <= bound) ++pass;
            }
            cell.trials_with_vectors = static_cast<std::uint32_t>(values.size());
            std::sort(values.begin(), values.end());
            cell.q_p50 = quantile_sorted(values, 0.5);
            cell.q_p90 = quantile_sorted(values, 0.9);
            cell.q_max = values.empty() ? 0.0 : values.back();
            cell.verdict_fraction =
                values.empty() ? 0.0 : double(pass) / double(values.size());
            cells.push_back(cell);
        }
    }
    set_blas_threads(static_cast<int>(resolve_thread_count(0)));
    return cells;
}

std::string phase_cells_to_csv(const std::vector<PhaseCell>& cells) {
    std::ostringstream out;
    out << "b,window_lo,window_hi,N,trials,q_p50,q_p90,q_max,verdict_fraction\n";
    for (const auto& c : cells) {
        out << format_float(c.b) << ',' << format_float(c.window.lo) << ','
            << format_float(c.window.hi) << ',' << c.N << ',' << c.trials_with_vectors << ','
            << format_float(c.q_p50) << ',' << format_float(c.q_p90) << ','
            << format_float(c.q_max) << ',' << format_float(c.verdict_fraction) << '\n';
    }
    return out.str();
}

}  // namespace speclab
