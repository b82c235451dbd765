#include "speclab/local_law.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "speclab/io.hpp"
#include "speclab/stieltjes.hpp"

namespace speclab {

double SpectralDomain::im_min() const { return std::pow(double(N), -1.0 + kappa); }

bool SpectralDomain::contains(double re, double im) const {
    if (!(im >= im_min() && im <= 1.0)) return false;
    if (tag == Tag::lower) return re >= -2.0 + kappa && re <= 2.0 - kappa;
    return std::abs(re) >= kappa;  // sweeps additionally cap |re| at re_cap
}

SpectralDomain SpectralDomain::lower(std::uint32_t N, double kappa) {
    return {Tag::lower, kappa, N, 4.0};
}

SpectralDomain SpectralDomain::upper(std::uint32_t N, double kappa, double re_cap) {
    return {Tag::upper, kappa, N, re_cap};
}

const char* to_string(SpectralDomain::Tag tag) {
    return tag == SpectralDomain::Tag::lower ? "lower" : "upper";
}

std::vector<double> build_grid(const SpectralDomain& domain, double re, double target_im,
                               const GridSpec& spec) {
    if (!domain.contains(re, target_im))
        throw std::invalid_argument("grid target outside the spectral domain");
    if (target_im >= 1.0) return {1.0};

    if (spec.mode == GridSpec::Mode::paper) {
        if (domain.N > 100)
            throw std::invalid_argument("paper grid (step N^{-3}) is restricted to N <= 100");
        const double step = std::pow(double(domain.N), -3.0);
        std::vector<double> grid;
        grid.reserve(static_cast<std::size_t>((1.0 - target_im) / step) + 2);
        double im = 1.0;
        std::size_t k = 0;
        while (true) {
            grid.push_back(im);
            if (im <= target_im) break;
            ++k;
            im = std::max(1.0 - step * double(k), target_im);
        }
        return grid;
    }

    int points = std::max(spec.points, 2);
    if (spec.min_ratio > 0.0 && spec.min_ratio < 1.0) {
        const int needed =
            static_cast<int>(std::ceil(std::log(target_im) / std::log(spec.min_ratio))) + 1;
        points = std::max(points, needed);
    }
    std::vector<double> grid(points);
    const double ratio = std::pow(target_im, 1.0 / double(points - 1));
    grid[0] = 1.0;
    for (int k = 1; k < points - 1; ++k) grid[k] = std::pow(ratio, k);
    grid[points - 1] = target_im;
    return grid;
}

namespace {

std::vector<double> gap_sequence(double re, const std::vector<double>& im_grid) {
    std::vector<double> gaps(im_grid.size());
    for (std::size_t k = 0; k < im_grid.size(); ++k)
        gaps[k] = gap(SpectralParam{re, im_grid[k]});
    return gaps;
}

bool non_increasing(const std::vector<double>& v) {
    for (std::size_t k = 1; k < v.size(); ++k)
        if (v[k] > v[k - 1] + 1e-12) return false;
    return true;
}

}  // namespace

std::ptrdiff_t k_star_split(double re, const std::vector<double>& im_grid, std::uint32_t N) {
    const double threshold = 2.0 * std::pow(std::log(double(N)), -1.0 / 7.0);
    const std::vector<double> gaps = gap_sequence(re, im_grid);
    if (non_increasing(gaps)) {
        // unique crossing: first index below threshold ends the phi_7 block
        std::ptrdiff_t split = -1;
        for (std::size_t k = 0; k < gaps.size(); ++k) {
            if (!(gaps[k] > threshold)) break;
            split = static_cast<std::ptrdiff_t>(k);
        }
        return split;
    }
    // fallback: largest index above threshold
    std::ptrdiff_t split = -1;
    for (std::size_t k = 0; k < gaps.size(); ++k)
        if (gaps[k] > threshold) split = static_cast<std::ptrdiff_t>(k);
    return split;
}

ContinuationTrace bootstrap_run(const SparseHermitianModel& model, const SpectralDomain& domain,
                                double re, double target_im, const GridSpec& spec) {
    ContinuationTrace trace;
    trace.domain = domain.tag;
    trace.N = model.N;
    trace.re = re;
    trace.grid = build_grid(domain, re, target_im, spec);
    trace.k_star = k_star_split(re, trace.grid, model.N);
    trace.gap_monotone = non_increasing(gap_sequence(re, trace.grid));

    const double logN = std::log(double(model.N));
    trace.threshold_phi7 = std::pow(logN, -1.0 / 7.0);
    trace.threshold_phi8 = std::pow(logN, -1.0 / 8.0);

    trace.psi = psi_indicators(model, domain.kappa);
    trace.conditioned =
        domain.tag == SpectralDomain::Tag::lower ? trace.psi.psi_l : trace.psi.psi_u;

    const Eigen::MatrixXd m_dense = model.dense_m();
    const std::size_t K = trace.grid.size();
    trace.lambda_path.resize(K);
    trace.phi7_path.resize(K);
    trace.phi8_path.resize(K);
    trace.pass = true;
    for (std::size_t k = 0; k < K; ++k) {
        const double lam = lambda_only(model, m_dense, SpectralParam{re, trace.grid[k]});
        trace.lambda_path[k] = lam;
        trace.phi7_path[k] = lam <= trace.threshold_phi7;
        trace.phi8_path[k] = lam <= trace.threshold_phi8;
        const bool ok = static_cast<std::ptrdiff_t>(k) <= trace.k_star
                            ? trace.phi7_path[k]
                            : trace.phi8_path[k];
        if (!ok && trace.pass) {
            trace.pass = false;
            trace.fail_index = static_cast<std::ptrdiff_t>(k);
        }
    }
    return trace;
}

bool LocalLawReport::all_pass() const {
    return std::all_of(rows.begin(), rows.end(),
                       [](const LocalLawRow& r) { return r.pass_lambda && r.pass_trace; });
}

LocalLawReport local_law_report(const SparseHermitianModel& model, const SpectralDomain& domain,
                                const std::vector<double>& re_points,
                                const std::vector<double>& im_points, double pass_constant,
                                double outlier_window) {
    LocalLawReport report;
    report.domain = domain;
    report.psi = psi_indicators(model, domain.kappa);
    report.conditioned =
        domain.tag == SpectralDomain::Tag::lower ? report.psi.psi_l : report.psi.psi_u;
    report.pass_constant = pass_constant;
    const double logN = std::log(double(model.N));
    report.threshold = pass_constant * std::pow(logN, -1.0 / 7.0);
    report.outlier_center = model.f > 0.0 ? model.f + 1.0 / model.f : 0.0;
    report.outlier_window = outlier_window;

    const double phi7 = std::pow(logN, -1.0 / 7.0);
    const double phi8 = std::pow(logN, -1.0 / 8.0);

    for (double re : re_points) {
        if (!domain.contains(re, std::min(1.0, std::max(domain.im_min(), im_points.front()))))
            continue;
        if (std::abs(re) > domain.re_cap) continue;
        if (model.f > 0.0 && std::abs(re - report.outlier_center) < outlier_window) continue;
        for (double im : im_points) {
            if (!domain.contains(re, im)) continue;
            ResolventState state = build_resolvent_state(model, SpectralParam{re, im});
            LocalLawRow row;
            row.re = re;
            row.im = im;
            row.lambda = state.lambda;
            const Complex m = eval_m(SpectralParam{re, im});
            row.trace_err = std::abs(state.G.diagonal().mean() - m);
            row.phi7 = state.lambda <= phi7;
            row.phi8 = state.lambda <= phi8;
            row.pass_lambda = state.lambda <= report.threshold;
            row.pass_trace = row.trace_err <= report.threshold;
            row.typical_size = state.typical.size();
            row.s = state.s;
            if (state.residuals.size() > 0) {
                std::vector<double> r(state.residuals.size());
                for (Eigen::Index i = 0; i < state.residuals.size(); ++i)
                    r[i] = std::abs(state.residuals[i]);
                std::sort(r.begin(), r.end());
                const auto at = [&](double p) {
                    const auto rank = std::size_t(std::ceil(p * double(r.size())));
                    return r[std::min(r.size() - 1, rank == 0 ? 0 : rank - 1)];
                };
                row.resid_p50 = at(0.5);
                row.resid_p90 = at(0.9);
                row.resid_max = r.back();
            }
            report.rows.push_back(row);
        }
    }
    return report;
}

std::string trace_to_json(const ContinuationTrace& trace, const SparseHermitianModel& model) {
    nlohmann::ordered_json j;
    j["config"] = {{"N", model.N},
                   {"d", model.d},
                   {"b", model.b()},
                   {"kappa", model.kappa},
                   {"f", model.f},
                   {"seed", model.seed}};
    j["domain"] = to_string(trace.domain);
    j["re"] = trace.re;
    j["grid"] = trace.grid;
    j["k_star"] = trace.k_star;
    j["gap_monotone"] = trace.gap_monotone;
    j["lambda_path"] = trace.lambda_path;
    j["phi7"] = trace.phi7_path;
    j["phi8"] = trace.phi8_path;
    j["thresholds"] = {{"phi7", trace.threshold_phi7}, {"phi8", trace.threshold_phi8}};
    j["psi"] = {{"psi_l", trace.psi.psi_l},
                {"psi_u", trace.psi.psi_u},
                {"beta_min", trace.psi.beta_min},
                {"beta_max", trace.psi.beta_max}};
    j["conditioned"] = trace.conditioned;
    j["verdict"] = trace.pass ? "pass" : "fail";
    j["fail_index"] = trace.fail_index;
    return j.dump(2);
}

std::string report_resolvent_csv(const LocalLawReport& report) {
    std::ostringstream out;
    out << "re_z,im_z,lambda,t_size,s_re,s_im,resid_p50,resid_p90,resid_max\n";
    for (const auto& r : report.rows) {
        out << format_float(r.re) << ',' << format_float(r.im) << ',' << format_float(r.lambda)
            << ',' << r.typical_size << ',';
        if (r.s)
            out << format_float(r.s->real()) << ',' << format_float(r.s->imag()) << ','
                << format_float(r.resid_p50) << ',' << format_float(r.resid_p90) << ','
                << format_float(r.resid_max);
        else
            out << ",,,,";
        out << '\n';
    }
    return out.str();
}

std::string report_to_csv(const LocalLawReport& report) {
    std::ostringstream out;
    out << "re_z,im_z,lambda,trace_err,phi7,phi8,pass_lambda,pass_trace,typical_size\n";
    for (const auto& r : report.rows) {
        out << format_float(r.re) << ',' << format_float(r.im) << ',' << format_float(r.lambda)
            << ',' << format_float(r.trace_err) << ',' << int(r.phi7) << ',' << int(r.phi8) << ','
            << int(r.pass_lambda) << ',' << int(r.pass_trace) << ',' << r.typical_size << '\n';
    }
    return out.str();
}

}  // namespace speclab
