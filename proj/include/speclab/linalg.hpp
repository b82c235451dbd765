#pragma once

#include <Eigen/Dense>
#include <complex>

namespace speclab {

// In-place inverse of a general complex matrix (LAPACK zgetrf/zgetri).
// Throws std::runtime_error when the factorization reports singularity.
void invert_complex_inplace(Eigen::MatrixXcd& a);

// Full eigendecomposition of a real symmetric matrix (LAPACK dsyevd).
// `a` is overwritten with the eigenvectors (columns, ascending eigenvalues).
void sym_eigen_inplace(Eigen::MatrixXd& a, Eigen::VectorXd& eigenvalues);

}  // namespace speclab
