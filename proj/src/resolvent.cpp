#include "speclab/resolvent.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "speclab/io.hpp"
#include "speclab/linalg.hpp"

namespace speclab {

namespace {

constexpr double kMinorGxxFloor = 1e-12;

Eigen::VectorXcd reference_diagonal(const SparseHermitianModel& model, const SpectralParam& z) {
    const Complex m = eval_m(z);
    const Complex zc = z.z();
    Eigen::VectorXcd ref(model.beta.size());
    for (Eigen::Index x = 0; x < model.beta.size(); ++x)
        ref[x] = -1.0 / (zc + model.beta[x] * m);
    return ref;
}

double lambda_from(const Eigen::MatrixXcd& g, const Eigen::VectorXcd& m_beta) {
    const Eigen::Index n = g.rows();
    double lam = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const Complex dev = i == j ? g(i, j) - m_beta[i] : g(i, j);
            const double a = std::abs(dev);
            if (a > lam) lam = a;
        }
    }
    return lam;
}

double sampled_row_residual(const Eigen::MatrixXd& m, const Eigen::MatrixXcd& g, Complex z) {
    const Eigen::Index n = m.rows();
    const Eigen::Index rows = std::min<Eigen::Index>(n, 8);
    double worst = 0.0;
    for (Eigen::Index k = 0; k < rows; ++k) {
        const Eigen::Index r = (k * n) / rows;
        // row r of (M - z) G - I
        Eigen::RowVectorXcd res = m.row(r).cast<Complex>() * g - z * g.row(r);
        res[r] -= 1.0;
        worst = std::max(worst, res.cwiseAbs().maxCoeff());
    }
    return worst;
}

}  // namespace

Eigen::MatrixXcd resolvent_of_matrix(const Eigen::MatrixXd& m, const SpectralParam& z) {
    if (!(z.im > 0.0)) throw std::domain_error("resolvent requires Im z > 0");
    Eigen::MatrixXcd a = m.cast<Complex>();
    a.diagonal().array() -= z.z();
    invert_complex_inplace(a);
    return a;
}

ResolventState resolvent_dense(const SparseHermitianModel& model, const SpectralParam& z) {
    if (!(z.im > 0.0)) throw std::domain_error("resolvent requires Im z > 0");
    ResolventState state;
    state.z = z;
    const Eigen::MatrixXd m = model.dense_m();
    state.G = resolvent_of_matrix(m, z);
    state.m_beta = reference_diagonal(model, z);
    state.max_sampled_row_residual = sampled_row_residual(m, state.G, z.z());
    return state;
}

Eigen::MatrixXcd rank_one_update(const Eigen::MatrixXcd& g_h, double f) {
    if (f == 0.0) return g_h;
    const Eigen::Index n = g_h.rows();
    const double inv_sqrt_n = 1.0 / std::sqrt(double(n));
    const Eigen::VectorXcd u = g_h.rowwise().sum() * inv_sqrt_n;  // G_H e
    const Complex denom = 1.0 + f * u.sum() * inv_sqrt_n;         // 1 + f e^* G_H e
    if (std::abs(denom) < 1e-10)
        throw near_singular_update("rank-one update near singular: z sits at the outlier");
    return g_h - (f / denom) * (u * u.transpose());
}

Eigen::VectorXcd minor_diagonal(const SparseHermitianModel& model, const ResolventState& state,
                                std::uint32_t x) {
    const Eigen::Index n = state.G.rows();
    Eigen::VectorXcd out(n - 1);
    const Complex gxx = state.G(x, x);
    if (std::abs(gxx) > kMinorGxxFloor) {
        Eigen::Index k = 0;
        for (Eigen::Index y = 0; y < n; ++y) {
            if (y == static_cast<Eigen::Index>(x)) continue;
            out[k++] = state.G(y, y) - state.G(y, x) * state.G(x, y) / gxx;
        }
        return out;
    }
    // direct inverse of the minor matrix
    const Eigen::MatrixXd m = model.dense_m();
    Eigen::MatrixXd minor(n - 1, n - 1);
    Eigen::Index r = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (i == static_cast<Eigen::Index>(x)) continue;
        Eigen::Index c = 0;
        for (Eigen::Index j = 0; j < n; ++j) {
            if (j == static_cast<Eigen::Index>(x)) continue;
            minor(r, c++) = m(i, j);
        }
        ++r;
    }
    return resolvent_of_matrix(minor, state.z).diagonal();
}

std::vector<std::uint32_t> classify_typical(const SparseHermitianModel& model,
                                            const ResolventState& state) {
    if (!model.has_dense())
        throw std::logic_error("typicality classification needs dense H");
    const Eigen::Index n = state.G.rows();
    const double threshold = std::pow(std::log(double(n)), -1.0 / 3.0);
    const double inv_n = 1.0 / double(n);
    std::vector<std::uint32_t> typical;
    typical.reserve(n);
    for (Eigen::Index x = 0; x < n; ++x) {
        const Complex gxx = state.G(x, x);
        const bool identity_ok = std::abs(gxx) > kMinorGxxFloor;
        double sum1 = 0.0;
        Complex sum2{0.0, 0.0};
        for (Eigen::Index y = 0; y < n; ++y) {
            if (y == x) continue;
            const double w = model.H(y, x) * model.H(y, x) - inv_n;
            sum1 += w;
            if (identity_ok) {
                const Complex minor_yy = state.G(y, y) - state.G(y, x) * state.G(x, y) / gxx;
                sum2 += w * minor_yy;
            }
        }
        if (!identity_ok) {
            const Eigen::VectorXcd minor = minor_diagonal(model, state, x);
            Eigen::Index k = 0;
            sum2 = Complex{0.0, 0.0};
            for (Eigen::Index y = 0; y < n; ++y) {
                if (y == x) continue;
                sum2 += (model.H(y, x) * model.H(y, x) - inv_n) * minor[k++];
            }
        }
        if (std::abs(sum1) <= threshold && std::abs(sum2) <= threshold)
            typical.push_back(static_cast<std::uint32_t>(x));
    }
    return typical;
}

void attach_lambda_and_s(const SparseHermitianModel& model, ResolventState& state) {
    state.lambda = lambda_from(state.G, state.m_beta);
    state.typical = classify_typical(model, state);
    if (state.typical.empty()) {
        state.s.reset();
        state.residuals.resize(0);
        return;
    }
    Complex acc{0.0, 0.0};
    for (auto x : state.typical) acc += state.G(x, x);
    state.s = acc / double(state.typical.size());
    const Eigen::Index n = state.G.rows();
    state.residuals.resize(n);
    for (Eigen::Index x = 0; x < n; ++x)
        state.residuals[x] = 1.0 + state.z.z() * state.G(x, x) + *state.s * state.G(x, x);
}

Complex sce_residual(const ResolventState& state, std::uint32_t x) {
    if (!state.s) throw std::logic_error("sce_residual: s(z) undefined (empty typical set)");
    return 1.0 + state.z.z() * state.G(x, x) + *state.s * state.G(x, x);
}

ResolventState build_resolvent_state(const SparseHermitianModel& model, const SpectralParam& z) {
    ResolventState state = resolvent_dense(model, z);
    attach_lambda_and_s(model, state);
    return state;
}

double lambda_only(const SparseHermitianModel& model, const Eigen::MatrixXd& m_dense,
                   const SpectralParam& z) {
    const Eigen::MatrixXcd g = resolvent_of_matrix(m_dense, z);
    return lambda_from(g, reference_diagonal(model, z));
}

std::string resolvent_summary_csv(const std::vector<ResolventState>& states) {
    std::ostringstream out;
    out << "re_z,im_z,lambda,t_size,s_re,s_im,resid_p50,resid_p90,resid_max\n";
    for (const auto& st : states) {
        out << format_float(st.z.re) << ',' << format_float(st.z.im) << ','
            << format_float(st.lambda) << ',' << st.typical.size() << ',';
        if (st.s)
            out << format_float(st.s->real()) << ',' << format_float(st.s->imag());
        else
            out << ',';
        if (st.residuals.size() > 0) {
            std::vector<double> r(st.residuals.size());
            for (Eigen::Index i = 0; i < st.residuals.size(); ++i) r[i] = std::abs(st.residuals[i]);
            std::sort(r.begin(), r.end());
            const auto at = [&](double p) {
                const auto rank = std::size_t(std::ceil(p * double(r.size())));
                return r[std::min(r.size() - 1, rank == 0 ? 0 : rank - 1)];
            };
            out << ',' << format_float(at(0.5)) << ',' << format_float(at(0.9)) << ','
                << format_float(r.back());
        } else {
            out << ",,,";
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace speclab
