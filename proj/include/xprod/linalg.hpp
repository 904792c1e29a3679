#pragma once

// Dense complex linear algebra helpers shared by the posdef, crossed and
// sigma modules.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace xprod {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Rng = std::mt19937_64;

/// (A + A*) / 2.
Matrix hermitian_part(const Matrix& a);

/// Ascending eigenvalues of the Hermitian part of `a`. Throws NumericalError
/// when the solver does not converge.
Eigen::VectorXd hermitian_eigenvalues(const Matrix& a);
double min_hermitian_eigenvalue(const Matrix& a);

/// Largest singular value, via the Hermitian eigensolve of a* a.
double operator_norm(const Matrix& a);

/// Square root of the Hermitian part of a PSD matrix; negative rounding
/// eigenvalues are clamped to zero.
Matrix psd_sqrt(const Matrix& a);

double max_abs(const Matrix& a);

/// Entries are independent standard complex Gaussians (real and imaginary
/// parts N(0, 1/2)).
Matrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng);
/// A* A with A complex Gaussian.
Matrix random_psd(std::size_t n, Rng& rng);

/// Blockwise product (a_ij b_ij) of two square matrices partitioned into
/// block_dim x block_dim blocks.
Matrix schur_block_product(const Matrix& a, const Matrix& b, std::size_t block_dim);

/// Kronecker product.
Matrix kron(const Matrix& a, const Matrix& b);

}  // namespace xprod
