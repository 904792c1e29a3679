#include "xprod/linalg.hpp"

#include <algorithm>

#include "xprod/errors.hpp"

namespace xprod {

Matrix hermitian_part(const Matrix& a) {
  return (a + a.adjoint()) * 0.5;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& a) {
  if (a.rows() != a.cols()) throw DomainError("eigenvalues need a square matrix");
  if (a.rows() == 0) return {};
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(a), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  return solver.eigenvalues();
}

double min_hermitian_eigenvalue(const Matrix& a) {
  const auto ev = hermitian_eigenvalues(a);
  return ev.size() ? ev(0) : 0.0;
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const Matrix gram = a.cols() <= a.rows() ? Matrix(a.adjoint() * a) : Matrix(a * a.adjoint());
  const auto ev = hermitian_eigenvalues(gram);
  return std::sqrt(std::max(0.0, ev(ev.size() - 1)));
}

Matrix psd_sqrt(const Matrix& a) {
  if (a.rows() == 0) return a;
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(a));
  if (solver.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  Eigen::VectorXd root = solver.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const auto& v = solver.eigenvectors();
  return v * root.cast<Complex>().asDiagonal() * v.adjoint();
}

double max_abs(const Matrix& a) {
  return a.size() ? a.cwiseAbs().maxCoeff() : 0.0;
}

Matrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix m(rows, cols);
  // Column-major fill order is part of the seed contract.
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

Matrix random_psd(std::size_t n, Rng& rng) {
  const Matrix a = random_gaussian(n, n, rng);
  return a.adjoint() * a;
}

Matrix schur_block_product(const Matrix& a, const Matrix& b, std::size_t block_dim) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw DomainError("Schur block product needs equal square shapes");
  }
  const auto d = static_cast<Eigen::Index>(block_dim);
  if (d == 0 || a.rows() % d != 0) throw DomainError("block size does not divide matrix size");
  const Eigen::Index n = a.rows() / d;
  Matrix c(a.rows(), a.cols());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      c.block(i * d, j * d, d, d).noalias() = a.block(i * d, j * d, d, d) * b.block(i * d, j * d, d, d);
    }
  }
  return c;
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

}  // namespace xprod
