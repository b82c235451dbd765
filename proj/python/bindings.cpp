#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "speclab/degree_tails.hpp"
#include "speclab/local_law.hpp"
#include "speclab/matrix_model.hpp"
#include "speclab/resolvent.hpp"
#include "speclab/spectral_lab.hpp"
#include "speclab/stieltjes.hpp"

namespace py = pybind11;
using namespace speclab;

namespace {

SpectralParam to_param(std::complex<double> z) { return {z.real(), z.imag()}; }

ModelConfig make_config(std::uint32_t N, std::optional<double> b, std::optional<double> d,
                        std::uint64_t seed, double kappa, double f, double entry_scale,
                        std::uint32_t dense_threshold) {
    ModelConfig cfg;
    cfg.N = N;
    if (d)
        cfg.d = *d;
    else if (b)
        cfg.d = *b * std::log(double(N));
    else
        throw std::invalid_argument("pass either b= or d=");
    cfg.seed = seed;
    cfg.kappa = kappa;
    cfg.f = f;
    cfg.entry_scale = entry_scale;
    cfg.dense_threshold = dense_threshold;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_speclab, m) {
    m.doc() = "spectral laboratory for critical Erdos-Renyi graphs (C++ core)";

    // ---- stieltjes ----------------------------------------------------------
    m.def("eval_m", [](std::complex<double> z) { return eval_m(to_param(z)); }, py::arg("z"),
          "Stieltjes transform of the semicircle law (root with Im m > 0)");
    m.def("eval_m_tilde", [](std::complex<double> z) { return eval_m_tilde(to_param(z)); },
          py::arg("z"));
    m.def("eval_m_alpha",
          [](double alpha, std::complex<double> z) { return eval_m_alpha(alpha, to_param(z)); },
          py::arg("alpha"), py::arg("z"));
    m.def("gap", [](std::complex<double> z) { return gap(to_param(z)); }, py::arg("z"),
          "|m - m_tilde| = |sqrt(z^2 - 4)|");
    m.def("m_alpha_identity_residual",
          [](double alpha, std::complex<double> z) {
              return m_alpha_identity_residual(alpha, to_param(z));
          },
          py::arg("alpha"), py::arg("z"));
    m.def("boundary_density", &boundary_density, py::arg("alpha"), py::arg("energy"),
          py::arg("eta_limit") = 1e-6);

    // ---- matrix model -------------------------------------------------------
    py::class_<PsiIndicators>(m, "PsiIndicators")
        .def_readonly("psi_l", &PsiIndicators::psi_l)
        .def_readonly("psi_u", &PsiIndicators::psi_u)
        .def_readonly("beta_min", &PsiIndicators::beta_min)
        .def_readonly("beta_max", &PsiIndicators::beta_max)
        .def("both", &PsiIndicators::both);

    py::class_<SparseHermitianModel>(m, "Model")
        .def_readonly("N", &SparseHermitianModel::N)
        .def_readonly("d", &SparseHermitianModel::d)
        .def_readonly("f", &SparseHermitianModel::f)
        .def_readonly("seed", &SparseHermitianModel::seed)
        .def_readonly("alpha", &SparseHermitianModel::alpha)
        .def_readonly("beta", &SparseHermitianModel::beta)
        .def_readonly("degrees", &SparseHermitianModel::degrees)
        .def_readonly("edges", &SparseHermitianModel::edges)
        .def_readonly("H", &SparseHermitianModel::H)
        .def_property_readonly("b", &SparseHermitianModel::b)
        .def("dense_m", &SparseHermitianModel::dense_m)
        .def("psi", [](const SparseHermitianModel& model, double kappa) {
            return psi_indicators(model, kappa);
        },
             py::arg("kappa") = 0.1);

    m.def("sample_er",
          [](std::uint32_t N, std::optional<double> b, std::optional<double> d,
             std::uint64_t seed, double kappa, std::uint32_t dense_threshold) {
              return sample_er_adjacency(
                  make_config(N, b, d, seed, kappa, 0.0, 0.0, dense_threshold));
          },
          py::arg("N"), py::arg("b") = std::nullopt, py::arg("d") = std::nullopt,
          py::arg("seed") = 1, py::arg("kappa") = 0.1, py::arg("dense_threshold") = 8192);

    m.def("sample_generic",
          [](std::uint32_t N, std::optional<double> b, std::optional<double> d,
             std::uint64_t seed, const std::string& law, double kappa, double f,
             double entry_scale, std::uint32_t dense_threshold) {
              return sample_generic_sparse(
                  make_config(N, b, d, seed, kappa, f, entry_scale, dense_threshold),
                  entry_law_from_string(law));
          },
          py::arg("N"), py::arg("b") = std::nullopt, py::arg("d") = std::nullopt,
          py::arg("seed") = 1, py::arg("law") = "centered-bernoulli", py::arg("kappa") = 0.1,
          py::arg("f") = 0.0, py::arg("entry_scale") = 0.0, py::arg("dense_threshold") = 8192);

    // ---- resolvent ----------------------------------------------------------
    py::class_<ResolventState>(m, "ResolventState")
        .def_readonly("G", &ResolventState::G)
        .def_readonly("m_beta", &ResolventState::m_beta)
        .def_readonly("lam", &ResolventState::lambda)
        .def_readonly("typical", &ResolventState::typical)
        .def_readonly("residuals", &ResolventState::residuals)
        .def_property_readonly("s",
                               [](const ResolventState& st) -> std::optional<Complex> {
                                   return st.s;
                               })
        .def_property_readonly("z", [](const ResolventState& st) { return st.z.z(); })
        .def_readonly("max_sampled_row_residual", &ResolventState::max_sampled_row_residual);

    m.def("resolvent",
          [](const SparseHermitianModel& model, std::complex<double> z) {
              return build_resolvent_state(model, to_param(z));
          },
          py::arg("model"), py::arg("z"),
          "G(z) with Lambda, the typical set, s(z) and per-vertex residuals");
    m.def("minor_diagonal",
          [](const SparseHermitianModel& model, const ResolventState& state, std::uint32_t x) {
              return minor_diagonal(model, state, x);
          },
          py::arg("model"), py::arg("state"), py::arg("x"));
    m.def("rank_one_update", &rank_one_update, py::arg("g_h"), py::arg("f"));
    m.def("sce_residual", &sce_residual, py::arg("state"), py::arg("x"));

    // ---- local law ----------------------------------------------------------
    py::class_<ContinuationTrace>(m, "ContinuationTrace")
        .def_readonly("re", &ContinuationTrace::re)
        .def_readonly("grid", &ContinuationTrace::grid)
        .def_readonly("k_star", &ContinuationTrace::k_star)
        .def_readonly("lambda_path", &ContinuationTrace::lambda_path)
        .def_readonly("phi7", &ContinuationTrace::phi7_path)
        .def_readonly("phi8", &ContinuationTrace::phi8_path)
        .def_readonly("conditioned", &ContinuationTrace::conditioned)
        .def_readonly("passed", &ContinuationTrace::pass)
        .def_readonly("fail_index", &ContinuationTrace::fail_index)
        .def_readonly("threshold_phi7", &ContinuationTrace::threshold_phi7)
        .def_readonly("threshold_phi8", &ContinuationTrace::threshold_phi8);

    m.def("bootstrap",
          [](const SparseHermitianModel& model, double re, double target_im,
             const std::string& domain, int points, bool paper, double kappa) {
              const SpectralDomain dom = domain == "upper"
                                             ? SpectralDomain::upper(model.N, kappa)
                                             : SpectralDomain::lower(model.N, kappa);
              GridSpec spec;
              spec.mode = paper ? GridSpec::Mode::paper : GridSpec::Mode::geometric;
              spec.points = points;
              return bootstrap_run(model, dom, re, target_im, spec);
          },
          py::arg("model"), py::arg("re"), py::arg("target_im"), py::arg("domain") = "lower",
          py::arg("points") = 200, py::arg("paper") = false, py::arg("kappa") = 0.1);

    m.def("k_star_split", &k_star_split, py::arg("re"), py::arg("im_grid"), py::arg("N"));

    // ---- spectral lab -------------------------------------------------------
    m.def("q_measure",
          [](const Eigen::VectorXd& u) { return q_measure(u); }, py::arg("u"));

    py::class_<EigenReport>(m, "EigenReport")
        .def_readonly("N", &EigenReport::N)
        .def_readonly("d", &EigenReport::d)
        .def_readonly("eigenvalues", &EigenReport::eigenvalues)
        .def_readonly("q_values", &EigenReport::q_values)
        .def_readonly("outlier_index", &EigenReport::outlier_index)
        .def_readonly("zero_mode_vertices", &EigenReport::zero_mode_vertices)
        .def_readonly("max_q_center", &EigenReport::max_q_center)
        .def_readonly("max_q_bulk", &EigenReport::max_q_bulk)
        .def_readonly("max_q_edge", &EigenReport::max_q_edge)
        .def_readonly("max_pair_residual", &EigenReport::max_pair_residual);

    py::class_<VerdictRecord>(m, "VerdictRecord")
        .def_readonly("max_q", &VerdictRecord::max_q)
        .def_readonly("bound", &VerdictRecord::bound)
        .def_readonly("passed", &VerdictRecord::pass)
        .def_readonly("vectors_considered", &VerdictRecord::vectors_considered)
        .def_readonly("zero_mode_in_window", &VerdictRecord::zero_mode_in_window);

    m.def("eigen_report",
          [](const SparseHermitianModel& model, const std::string& rescale, double delta_out,
             double kappa_window) {
              return eigen_full(model,
                                rescale == "raw" ? Rescale::raw : Rescale::by_sqrt_d,
                                delta_out, kappa_window);
          },
          py::arg("model"), py::arg("rescale") = "by-sqrt-d", py::arg("delta_out") = 0.3,
          py::arg("kappa_window") = 0.3);

    m.def("delocalization_verdict",
          [](const EigenReport& report, const std::string& regime, double kappa_test) {
              return delocalization_verdict(report,
                                            regime == "bulk" ? VerdictRegime::bulk
                                                             : VerdictRegime::everywhere,
                                            kappa_test);
          },
          py::arg("report"), py::arg("regime") = "everywhere", py::arg("kappa_test") = 0.3);

    py::class_<PhaseCell>(m, "PhaseCell")
        .def_readonly("b", &PhaseCell::b)
        .def_property_readonly("window_lo", [](const PhaseCell& c) { return c.window.lo; })
        .def_property_readonly("window_hi", [](const PhaseCell& c) { return c.window.hi; })
        .def_readonly("trials", &PhaseCell::trials)
        .def_readonly("q_p50", &PhaseCell::q_p50)
        .def_readonly("q_p90", &PhaseCell::q_p90)
        .def_readonly("q_max", &PhaseCell::q_max)
        .def_readonly("verdict_fraction", &PhaseCell::verdict_fraction);

    m.def("phase_sweep",
          [](const std::vector<double>& b_grid,
             const std::vector<std::pair<double, double>>& windows, std::uint32_t N,
             std::uint32_t trials, double kappa_test, std::uint64_t seed, double kappa,
             std::size_t threads) {
              std::vector<EnergyWindow> ws;
              for (auto [lo, hi] : windows) ws.push_back({lo, hi});
              return phase_sweep(b_grid, ws, N, trials, kappa_test, seed, kappa, 0.3, threads);
          },
          py::arg("b_grid"), py::arg("windows"), py::arg("N"), py::arg("trials"),
          py::arg("kappa_test") = 0.3, py::arg("seed") = 1, py::arg("kappa") = 0.1,
          py::arg("threads") = 0);

    // ---- degree tails -------------------------------------------------------
    m.def("b_star", &b_star);
    m.def("upper_tail_bound",
          [](std::uint32_t N, double b, double eps) {
              return upper_tail_bound({N, b, eps});
          },
          py::arg("N"), py::arg("b"), py::arg("eps"));
    m.def("lower_tail_bound",
          [](std::uint32_t N, double b, double eps) {
              return lower_tail_bound({N, b, eps});
          },
          py::arg("N"), py::arg("b"), py::arg("eps"));
    m.def("poisson_lower_tail_exact", &poisson_lower_tail_exact, py::arg("d"), py::arg("eps"));
    m.def("stirling_chain_bound",
          [](double d, double eps, double N, double eps_max) {
              const StirlingChain c = stirling_chain_bound(d, eps, N, eps_max);
              return std::make_tuple(c.partial_sum_bound, c.stirling_bound, c.rate_bound);
          },
          py::arg("d"), py::arg("eps"), py::arg("N"), py::arg("eps_max") = 0.2);
    m.def("wilson_interval",
          [](std::uint64_t successes, std::uint64_t trials, double z) {
              const WilsonInterval w = wilson_interval(successes, trials, z);
              return std::make_pair(w.lo, w.hi);
          },
          py::arg("successes"), py::arg("trials"), py::arg("z") = 1.959963984540054);
    m.def("empirical_extremes",
          [](std::uint32_t N, double b, std::uint64_t seed, std::uint32_t trials,
             std::size_t threads) {
              ModelConfig cfg = ModelConfig::from_b(N, b, seed);
              const ExtremesRaw raw = empirical_extremes(cfg, trials, threads);
              return std::make_pair(raw.min_alpha, raw.max_alpha);
          },
          py::arg("N"), py::arg("b"), py::arg("seed") = 1, py::arg("trials") = 100,
          py::arg("threads") = 0);

    m.attr("__version__") = "0.1.0";
}
