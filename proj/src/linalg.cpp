#include "speclab/linalg.hpp"

#include <lapacke.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace speclab {

namespace {

lapack_complex_double* lapack_ptr(Eigen::MatrixXcd& a) {
    return reinterpret_cast<lapack_complex_double*>(a.data());
}

}  // namespace

void invert_complex_inplace(Eigen::MatrixXcd& a) {
    const auto n = static_cast<lapack_int>(a.rows());
    if (n == 0 || a.rows() != a.cols())
        throw std::invalid_argument("invert_complex_inplace: matrix must be square and nonempty");
    std::vector<lapack_int> ipiv(static_cast<std::size_t>(n));
    lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, lapack_ptr(a), n, ipiv.data());
    if (info != 0)
        throw std::runtime_error("zgetrf failed, matrix singular to working precision (info=" +
                                 std::to_string(info) + ")");
    info = LAPACKE_zgetri(LAPACK_COL_MAJOR, n, lapack_ptr(a), n, ipiv.data());
    if (info != 0)
        throw std::runtime_error("zgetri failed (info=" + std::to_string(info) + ")");
}

void sym_eigen_inplace(Eigen::MatrixXd& a, Eigen::VectorXd& eigenvalues) {
    const auto n = static_cast<lapack_int>(a.rows());
    if (n == 0 || a.rows() != a.cols())
        throw std::invalid_argument("sym_eigen_inplace: matrix must be square and nonempty");
    eigenvalues.resize(n);
    const lapack_int info =
        LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', n, a.data(), n, eigenvalues.data());
    if (info != 0)
        throw std::runtime_error("dsyevd did not converge (info=" + std::to_string(info) + ")");
}

}  // namespace speclab
