#pragma once

// Truncated crossed-product matrix algebra.
//
// Operators on H (x) l2(G) are stored as dense block matrices over a finite
// window (a ball of G): block (g, h) is the d x d matrix x_(g,h). For finite
// groups the window is the whole group and every identity below is exact.
// For infinite groups operators are compressions to the window; L_g drops
// transitions that leave it.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "xprod/groups.hpp"
#include "xprod/kernels.hpp"
#include "xprod/linalg.hpp"
#include "xprod/posdef.hpp"

namespace xprod {

enum class AlgebraKind { Scalars, Diagonal, FullMatrix };

/// The coefficient algebra R inside B(C^d): C*I, the diagonal matrices, or
/// all of M_d.
struct CoeffAlgebra {
  AlgebraKind kind = AlgebraKind::Scalars;
  std::size_t dim = 1;

  static CoeffAlgebra scalars(std::size_t d = 1) { return {AlgebraKind::Scalars, d}; }
  static CoeffAlgebra diagonal(std::size_t d) { return {AlgebraKind::Diagonal, d}; }
  static CoeffAlgebra full(std::size_t d) { return {AlgebraKind::FullMatrix, d}; }

  bool contains(const Matrix& r, double tol = 1e-12) const;
  /// Random element of operator norm 1.
  Matrix random_element(Rng& rng) const;
  std::string name() const;
};

using Permutation = std::vector<std::size_t>;

enum class ActionKind { Trivial, CoordinatePermutation };

/// alpha_g(r) = P_g r P_g^*, with g -> P_g a permutation representation given
/// by the images of the generators (in generating-set order).
struct ActionSpec {
  ActionKind kind = ActionKind::Trivial;
  std::vector<Permutation> generator_images;
  std::string label = "trivial";

  static ActionSpec trivial();
  static ActionSpec permutation(std::vector<Permutation> generator_images, std::string label);
  /// Every generator acts by swapping coordinates 0 and 1 of C^2.
  static ActionSpec swap(const GroupSpec& group);
  /// C_n acting on C^n by cyclic shift (generator 1 sends e_j to e_(j+1)).
  static ActionSpec translation(const GroupSpec& cyclic);
};

enum class ExpectationKind { TraceState, DiagonalRestriction, Identity };

/// Conditional expectation pi of B(C^d) onto R.
struct ExpectationSpec {
  ExpectationKind kind = ExpectationKind::TraceState;

  static ExpectationSpec default_for(const CoeffAlgebra& algebra);
  Matrix apply(const Matrix& y) const;
  std::string name() const;
};

class CrossedContext {
 public:
  /// Window = ball of the given radius. For finite groups the ball must be
  /// the whole group.
  CrossedContext(GroupSpec group, std::size_t window_radius, CoeffAlgebra algebra,
                 ActionSpec action = ActionSpec::trivial(),
                 std::optional<ExpectationSpec> expectation = std::nullopt);
  /// Finite group; the window is the whole group.
  static CrossedContext finite(GroupSpec group, CoeffAlgebra algebra,
                               ActionSpec action = ActionSpec::trivial(),
                               std::optional<ExpectationSpec> expectation = std::nullopt);

  const GroupSpec& group() const { return window_->spec(); }
  const Ball& window() const { return *window_; }
  const std::shared_ptr<const Ball>& window_ptr() const { return window_; }
  const CoeffAlgebra& algebra() const { return algebra_; }
  const ActionSpec& action() const { return action_; }
  const ExpectationSpec& expectation() const { return expectation_; }
  std::size_t block_dim() const { return algebra_.dim; }
  std::size_t window_size() const { return window_->size(); }
  /// Finite group with the whole group as window.
  bool exact() const { return exact_; }

  const Permutation& perm(std::size_t window_index) const { return perms_[window_index]; }
  const Permutation& inverse_perm(std::size_t window_index) const { return inverse_perms_[window_index]; }
  /// alpha_g(r) for the window element with this index.
  Matrix alpha(std::size_t window_index, const Matrix& r) const;
  /// alpha_{g^-1}(r).
  Matrix alpha_inverse(std::size_t window_index, const Matrix& r) const;
  Matrix pi(const Matrix& y) const { return expectation_.apply(y); }

 private:
  std::shared_ptr<const Ball> window_;
  CoeffAlgebra algebra_;
  ActionSpec action_;
  ExpectationSpec expectation_;
  bool exact_ = false;
  std::vector<Permutation> perms_;
  std::vector<Permutation> inverse_perms_;
};

/// P r P^T with P e_i = e_{p(i)}.
Matrix permute(const Permutation& p, const Matrix& r);

class BlockMatrix {
 public:
  BlockMatrix(std::shared_ptr<const Ball> window, std::size_t block_dim, Matrix data);

  static BlockMatrix zero(const CrossedContext& ctx);
  static BlockMatrix identity(const CrossedContext& ctx);
  static BlockMatrix random_gaussian(const CrossedContext& ctx, Rng& rng);
  static BlockMatrix random_psd(const CrossedContext& ctx, Rng& rng);

  const Ball& window() const { return *window_; }
  const std::shared_ptr<const Ball>& window_ptr() const { return window_; }
  std::size_t block_dim() const { return d_; }
  std::size_t blocks() const { return window_->size(); }
  const Matrix& data() const { return data_; }

  Matrix block(std::size_t i, std::size_t j) const;

  BlockMatrix adjoint() const;
  /// Operator norm (largest singular value).
  double norm() const { return operator_norm(data_); }

  BlockMatrix operator+(const BlockMatrix& o) const;
  BlockMatrix operator-(const BlockMatrix& o) const;
  BlockMatrix operator*(const BlockMatrix& o) const;
  BlockMatrix operator*(Complex s) const;

 private:
  void require_compatible(const BlockMatrix& o) const;

  std::shared_ptr<const Ball> window_;
  std::size_t d_;
  Matrix data_;
};

/// Largest entrywise |a - b|.
double max_abs_diff(const BlockMatrix& a, const BlockMatrix& b);

/// Coefficients indexed by window position (r_g for g = window[i]).
using CoefficientList = std::vector<Matrix>;

/// L_g: block (a, b) = I when a = g b with both in the window.
BlockMatrix left_translation(const CrossedContext& ctx, const GroupElement& g);
/// Psi(r): block (g, g) = alpha_{g^-1}(r). Throws DomainError if r is not in R.
BlockMatrix psi(const CrossedContext& ctx, const Matrix& r);
/// Diag(x): off-diagonal blocks zeroed.
BlockMatrix diag(const BlockMatrix& x);
/// x_g = Diag(L_g^* x).
BlockMatrix fourier_coefficient(const CrossedContext& ctx, const BlockMatrix& x, const GroupElement& g);

enum class WindowMode { Exact, Approximate };

/// sum over window g of L_g x_g. Exact mode needs a finite group; on windows
/// pass WindowMode::Approximate (entries whose translation lies outside the
/// window are dropped).
BlockMatrix reconstruct(const CrossedContext& ctx, const BlockMatrix& x,
                        WindowMode mode = WindowMode::Exact);

/// Schur block product: block (g, h) = a_(g,h) b_(g,h).
BlockMatrix schur_product(const BlockMatrix& a, const BlockMatrix& b);
/// Block (g, h) scaled by chi(g h^-1).
BlockMatrix hadamard_multiplier(const CrossedContext& ctx, const PdFunction& chi, const BlockMatrix& x,
                                ExecPolicy policy = ExecPolicy::Parallel);
/// || Diag(x^* x)^(1/2) xi ||.
double p_seminorm(const BlockMatrix& x, const Vector& xi);

/// phi(x)_g = Psi^-1(Diag(L_{g^-1} x)) for every window g. Throws
/// NotInCrossedProduct when a diagonal is not of the form Psi(r). On windows
/// only rows b with g b inside the window and length(b) <= check_radius are
/// compared.
CoefficientList phi_hom(const CrossedContext& ctx, const BlockMatrix& x,
                        std::optional<std::size_t> check_radius = std::nullopt, double tol = 1e-9);
/// Coefficientwise product: Theta(phi(x) phi(y)).
BlockMatrix hadamard_product(const CrossedContext& ctx, const BlockMatrix& x, const BlockMatrix& y);
/// Theta(R) = sum_g L_g Psi(r_g); entry (i, j) = alpha_{j^-1}(r_{i j^-1}).
BlockMatrix theta_embed(const CrossedContext& ctx, const CoefficientList& coefficients,
                        ExecPolicy policy = ExecPolicy::Parallel);
/// Theta for an arbitrary finite list of translations (which may leave the
/// window).
BlockMatrix theta_embed(const CrossedContext& ctx, std::span<const TranslationTerm> terms,
                        ExecPolicy policy = ExecPolicy::Parallel);

/// Sup norm of a coefficient list.
double sup_norm(const CoefficientList& coefficients);

}  // namespace xprod
