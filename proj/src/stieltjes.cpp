#include "speclab/stieltjes.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace speclab {

namespace {

void require_upper_half_plane(const SpectralParam& z) {
    if (!(z.im > 0.0))
        throw std::domain_error("spectral parameter must satisfy Im z > 0");
}

// sqrt(z^2 - 4) as sqrt(z - 2) * sqrt(z + 2) with principal roots. The
// factored form stays on the correct sheet across Re z < 0, where the
// principal root of z^2 - 4 does not.
Complex sqrt_z2_minus_4(Complex z) {
    return std::sqrt(z - 2.0) * std::sqrt(z + 2.0);
}

// One Newton step on w^2 + z w + 1. Tightens the root to ~ulp so that the
// self-consistency and Lemma-identity residuals stay below 1e-12 even close
// to the branch points.
Complex polish_root(Complex w, Complex z) {
    Complex deriv = 2.0 * w + z;
    if (std::abs(deriv) < 1e-8) return w;
    return w - (w * w + z * w + 1.0) / deriv;
}

}  // namespace

Complex eval_m(const SpectralParam& zp) {
    require_upper_half_plane(zp);
    const Complex z = zp.z();
    const Complex s = sqrt_z2_minus_4(z);
    Complex m = (-z + s) / 2.0;
    if (m.imag() <= 0.0) m = (-z - s) / 2.0;
    return polish_root(m, z);
}

Complex eval_m_tilde(const SpectralParam& zp) {
    require_upper_half_plane(zp);
    const Complex z = zp.z();
    const Complex s = sqrt_z2_minus_4(z);
    Complex mt = (-z - s) / 2.0;
    if (mt.imag() >= 0.0) mt = (-z + s) / 2.0;
    return polish_root(mt, z);
}

TransformValue eval_transforms(const SpectralParam& zp) {
    TransformValue tv;
    tv.m = eval_m(zp);
    tv.m_tilde = eval_m_tilde(zp);
    tv.gap = std::abs(tv.m - tv.m_tilde);
    return tv;
}

Complex eval_m_alpha(double alpha, const SpectralParam& zp) {
    if (alpha < 0.0) throw std::domain_error("alpha must be nonnegative");
    const Complex z = zp.z();
    return -1.0 / (z + alpha * eval_m(zp));
}

double gap(const SpectralParam& zp) {
    require_upper_half_plane(zp);
    return std::abs(sqrt_z2_minus_4(zp.z()));
}

double m_alpha_identity_residual(double alpha, const SpectralParam& zp) {
    const Complex m = eval_m(zp);
    const Complex ma = -1.0 / (zp.z() + alpha * m);
    return std::abs(ma - m - m * m * ma * (alpha - 1.0));
}

double boundary_density(double alpha, double energy, double eta_limit) {
    if (!(eta_limit > 0.0) || eta_limit > 1e-3)
        throw std::domain_error("eta_limit must lie in (0, 1e-3]");
    const Complex ma = eval_m_alpha(alpha, SpectralParam{energy, eta_limit});
    return ma.imag() / std::numbers::pi;
}

}  // namespace speclab
