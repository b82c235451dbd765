#pragma once

#include <complex>

namespace speclab {

using Complex = std::complex<double>;

// Spectral point z = E + i eta in the open upper half-plane, in the units of
// the rescaled matrix M = A/sqrt(d) (bulk spectrum on [-2, 2]).
struct SpectralParam {
    double re = 0.0;  // energy E
    double im = 0.0;  // eta > 0

    Complex z() const { return {re, im}; }
};

// Both solutions of w^2 + z w + 1 = 0 together with their separation.
struct TransformValue {
    Complex m;        // Im m > 0 (Stieltjes transform of the semicircle law)
    Complex m_tilde;  // Im m_tilde < 0
    double gap;       // |m - m_tilde| = |sqrt(z^2 - 4)|
};

// Stieltjes transform of the semicircle law: the root of m = -1/(z + m) with
// Im m > 0. Rejects Im z <= 0.
Complex eval_m(const SpectralParam& z);

// The second root, with negative imaginary part. m * m_tilde = 1.
Complex eval_m_tilde(const SpectralParam& z);

TransformValue eval_transforms(const SpectralParam& z);

// m_alpha(z) = -1/(z + alpha * m(z)), alpha >= 0. Stieltjes transform of the
// spectral measure at a root of normalized degree alpha.
Complex eval_m_alpha(double alpha, const SpectralParam& z);

// |m - m_tilde| = |sqrt(z^2 - 4)|; monotonically increasing in Im z for
// fixed Re z.
double gap(const SpectralParam& z);

// |m_alpha - m - m^2 m_alpha (alpha - 1)|; zero in exact arithmetic for
// every alpha >= 0.
double m_alpha_identity_residual(double alpha, const SpectralParam& z);

// Boundary density pi^{-1} Im m_alpha(E + i eta_limit) of the alpha-measure,
// evaluated at a small positive eta_limit in (0, 1e-3].
double boundary_density(double alpha, double energy, double eta_limit);

}  // namespace speclab
