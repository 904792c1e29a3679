#include "xprod/crossed.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "xprod/errors.hpp"

namespace xprod {

namespace {

using Idx = Eigen::Index;

Idx ix(std::size_t v) { return static_cast<Idx>(v); }

Permutation identity_perm(std::size_t d) {
  Permutation p(d);
  std::iota(p.begin(), p.end(), std::size_t{0});
  return p;
}

// (p o q)(i) = p(q(i))
Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) out[i] = p[q[i]];
  return out;
}

Permutation invert(const Permutation& p) {
  Permutation out(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out[p[i]] = i;
  return out;
}

void check_permutation(const Permutation& p, std::size_t d) {
  if (p.size() != d) throw DomainError("permutation has wrong size for the coefficient algebra");
  std::vector<bool> seen(d, false);
  for (auto v : p) {
    if (v >= d || seen[v]) throw DomainError("generator image is not a permutation");
    seen[v] = true;
  }
}

std::size_t diameter_radius(const GroupSpec& group) {
  const auto order = group.order();
  if (!order) throw DomainError("group " + group.name() + " is infinite; give a window radius");
  for (std::size_t r = 0;; ++r) {
    if (ball(group, r).size() == *order) return r;
  }
}

Matrix block_of(const Matrix& m, std::size_t d, std::size_t i, std::size_t j) {
  const auto dd = ix(d);
  return m.block(ix(i) * dd, ix(j) * dd, dd, dd);
}

double scale_of(const Matrix& m) { return std::max(1.0, max_abs(m)); }

}  // namespace

// --- coefficient algebra ---------------------------------------------------

bool CoeffAlgebra::contains(const Matrix& r, double tol) const {
  const auto d = ix(dim);
  if (r.rows() != d || r.cols() != d) return false;
  const double t = tol * scale_of(r);
  switch (kind) {
    case AlgebraKind::FullMatrix:
      return true;
    case AlgebraKind::Diagonal:
      for (Idx i = 0; i < d; ++i)
        for (Idx j = 0; j < d; ++j)
          if (i != j && std::abs(r(i, j)) > t) return false;
      return true;
    case AlgebraKind::Scalars: {
      const Complex c = r.trace() / static_cast<double>(dim);
      return max_abs(r - c * Matrix::Identity(d, d)) <= t;
    }
  }
  return false;
}

Matrix CoeffAlgebra::random_element(Rng& rng) const {
  const auto d = ix(dim);
  Matrix r;
  switch (kind) {
    case AlgebraKind::FullMatrix:
      r = random_gaussian(dim, dim, rng);
      break;
    case AlgebraKind::Diagonal:
      r = Matrix::Zero(d, d);
      r.diagonal() = random_gaussian(dim, 1, rng).col(0);
      break;
    case AlgebraKind::Scalars:
      r = random_gaussian(1, 1, rng)(0, 0) * Matrix::Identity(d, d);
      break;
  }
  return r / operator_norm(r);
}

std::string CoeffAlgebra::name() const {
  switch (kind) {
    case AlgebraKind::Scalars:
      return dim == 1 ? "scalars" : "scalars" + std::to_string(dim);
    case AlgebraKind::Diagonal:
      return "diag" + std::to_string(dim);
    case AlgebraKind::FullMatrix:
      return "full" + std::to_string(dim);
  }
  return "?";
}

// --- actions ----------------------------------------------------------------

ActionSpec ActionSpec::trivial() { return {}; }

ActionSpec ActionSpec::permutation(std::vector<Permutation> generator_images, std::string label) {
  ActionSpec a;
  a.kind = ActionKind::CoordinatePermutation;
  a.generator_images = std::move(generator_images);
  a.label = std::move(label);
  return a;
}

ActionSpec ActionSpec::swap(const GroupSpec& group) {
  return permutation(std::vector<Permutation>(group.generators().size(), Permutation{1, 0}), "swap");
}

ActionSpec ActionSpec::translation(const GroupSpec& cyclic) {
  if (cyclic.kind() != GroupKind::Cyclic) throw DomainError("translation action needs a cyclic group");
  const auto n = static_cast<std::size_t>(cyclic.parameter());
  std::vector<Permutation> images;
  for (const auto& s : cyclic.generators()) {
    const auto v = static_cast<std::size_t>(s.integer());
    Permutation p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = (i + v) % n;
    images.push_back(std::move(p));
  }
  return permutation(std::move(images), "translation");
}

// --- expectations -----------------------------------------------------------

ExpectationSpec ExpectationSpec::default_for(const CoeffAlgebra& algebra) {
  switch (algebra.kind) {
    case AlgebraKind::Scalars:
      return {ExpectationKind::TraceState};
    case AlgebraKind::Diagonal:
      return {ExpectationKind::DiagonalRestriction};
    case AlgebraKind::FullMatrix:
      return {ExpectationKind::Identity};
  }
  return {};
}

Matrix ExpectationSpec::apply(const Matrix& y) const {
  switch (kind) {
    case ExpectationKind::TraceState: {
      const Complex c = y.trace() / static_cast<double>(y.rows());
      return c * Matrix::Identity(y.rows(), y.cols());
    }
    case ExpectationKind::DiagonalRestriction: {
      Matrix out = Matrix::Zero(y.rows(), y.cols());
      out.diagonal() = y.diagonal();
      return out;
    }
    case ExpectationKind::Identity:
      return y;
  }
  return y;
}

std::string ExpectationSpec::name() const {
  switch (kind) {
    case ExpectationKind::TraceState:
      return "trace";
    case ExpectationKind::DiagonalRestriction:
      return "diagonal";
    case ExpectationKind::Identity:
      return "identity";
  }
  return "?";
}

// --- context ----------------------------------------------------------------

CrossedContext::CrossedContext(GroupSpec group, std::size_t window_radius, CoeffAlgebra algebra,
                               ActionSpec action, std::optional<ExpectationSpec> expectation)
    : algebra_(algebra), action_(std::move(action)) {
  if (algebra_.dim == 0) throw DomainError("coefficient dimension must be positive");
  window_ = std::make_shared<const Ball>(ball(group, window_radius));
  if (const auto order = group.order()) {
    if (window_->size() != *order)
      throw DomainError("window of a finite group must be the whole group (radius " +
                        std::to_string(diameter_radius(group)) + ")");
    exact_ = true;
  }

  const auto want = ExpectationSpec::default_for(algebra_);
  expectation_ = expectation.value_or(want);
  if (expectation_.kind != want.kind)
    throw DomainError("expectation '" + expectation_.name() + "' does not project onto " + algebra_.name());

  const auto d = algebra_.dim;
  const auto& gens = group.generators();
  const auto n = window_->size();
  perms_.assign(n, identity_perm(d));
  if (action_.kind == ActionKind::CoordinatePermutation) {
    if (action_.generator_images.size() != gens.size())
      throw DomainError("action needs one permutation per generator");
    for (const auto& p : action_.generator_images) check_permutation(p, d);
    // Ball order is by length, so some g s^-1 of smaller length is already set.
    for (std::size_t i = 1; i < n; ++i) {
      const auto len = window_->length_at(i);
      bool set = false;
      for (std::size_t s = 0; s < gens.size() && !set; ++s) {
        const auto h = window_->find(multiply(group, (*window_)[i], inverse(group, gens[s])));
        if (h && window_->length_at(*h) < len) {
          perms_[i] = compose(perms_[*h], action_.generator_images[s]);
          set = true;
        }
      }
      if (!set) throw DomainError("window element without a shorter neighbour");
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t s = 0; s < gens.size(); ++s) {
        const auto j = window_->find(multiply(group, (*window_)[i], gens[s]));
        if (!j) continue;
        if (perms_[*j] != compose(perms_[i], action_.generator_images[s]))
          throw DomainError("action '" + action_.label + "' is not a homomorphism on " + group.name() +
                            " (fails at " + to_string(group, (*window_)[i]) + ")");
      }
    }
  }
  inverse_perms_.reserve(n);
  for (const auto& p : perms_) inverse_perms_.push_back(invert(p));
}

CrossedContext CrossedContext::finite(GroupSpec group, CoeffAlgebra algebra, ActionSpec action,
                                      std::optional<ExpectationSpec> expectation) {
  const auto r = diameter_radius(group);
  return CrossedContext(std::move(group), r, algebra, std::move(action), expectation);
}

Matrix permute(const Permutation& p, const Matrix& r) {
  const auto d = r.rows();
  Matrix out(d, d);
  for (Idx i = 0; i < d; ++i)
    for (Idx j = 0; j < d; ++j) out(ix(p[i]), ix(p[j])) = r(i, j);
  return out;
}

Matrix CrossedContext::alpha(std::size_t window_index, const Matrix& r) const {
  if (action_.kind == ActionKind::Trivial) return r;
  return permute(perms_[window_index], r);
}

Matrix CrossedContext::alpha_inverse(std::size_t window_index, const Matrix& r) const {
  if (action_.kind == ActionKind::Trivial) return r;
  return permute(inverse_perms_[window_index], r);
}

// --- block matrices ---------------------------------------------------------

BlockMatrix::BlockMatrix(std::shared_ptr<const Ball> window, std::size_t block_dim, Matrix data)
    : window_(std::move(window)), d_(block_dim), data_(std::move(data)) {
  if (!window_) throw DomainError("block matrix without a window");
  const auto n = ix(window_->size() * d_);
  if (data_.rows() != n || data_.cols() != n)
    throw DomainError("block matrix data is " + std::to_string(data_.rows()) + "x" +
                      std::to_string(data_.cols()) + ", expected " + std::to_string(n) + "x" +
                      std::to_string(n));
}

BlockMatrix BlockMatrix::zero(const CrossedContext& ctx) {
  const auto n = ix(ctx.window_size() * ctx.block_dim());
  return {ctx.window_ptr(), ctx.block_dim(), Matrix::Zero(n, n)};
}

BlockMatrix BlockMatrix::identity(const CrossedContext& ctx) {
  const auto n = ix(ctx.window_size() * ctx.block_dim());
  return {ctx.window_ptr(), ctx.block_dim(), Matrix::Identity(n, n)};
}

BlockMatrix BlockMatrix::random_gaussian(const CrossedContext& ctx, Rng& rng) {
  const auto n = ctx.window_size() * ctx.block_dim();
  return {ctx.window_ptr(), ctx.block_dim(), xprod::random_gaussian(n, n, rng)};
}

BlockMatrix BlockMatrix::random_psd(const CrossedContext& ctx, Rng& rng) {
  const auto n = ctx.window_size() * ctx.block_dim();
  return {ctx.window_ptr(), ctx.block_dim(), xprod::random_psd(n, rng)};
}

Matrix BlockMatrix::block(std::size_t i, std::size_t j) const { return block_of(data_, d_, i, j); }

BlockMatrix BlockMatrix::adjoint() const { return {window_, d_, data_.adjoint()}; }

void BlockMatrix::require_compatible(const BlockMatrix& o) const {
  if (d_ != o.d_ || (window_ != o.window_ && !same_window(*window_, *o.window_)))
    throw DomainError("block matrices live on different windows");
}

BlockMatrix BlockMatrix::operator+(const BlockMatrix& o) const {
  require_compatible(o);
  return {window_, d_, data_ + o.data_};
}

BlockMatrix BlockMatrix::operator-(const BlockMatrix& o) const {
  require_compatible(o);
  return {window_, d_, data_ - o.data_};
}

BlockMatrix BlockMatrix::operator*(const BlockMatrix& o) const {
  require_compatible(o);
  return {window_, d_, data_ * o.data_};
}

BlockMatrix BlockMatrix::operator*(Complex s) const { return {window_, d_, data_ * s}; }

double max_abs_diff(const BlockMatrix& a, const BlockMatrix& b) { return max_abs((a - b).data()); }

// --- crossed-product operations ---------------------------------------------

BlockMatrix left_translation(const CrossedContext& ctx, const GroupElement& g) {
  validate(ctx.group(), g);
  auto out = BlockMatrix::zero(ctx);
  Matrix data = out.data();
  const auto& w = ctx.window();
  const auto d = ix(ctx.block_dim());
  for (std::size_t b = 0; b < w.size(); ++b) {
    if (const auto a = w.find(multiply(ctx.group(), g, w[b])))
      data.block(ix(*a) * d, ix(b) * d, d, d).setIdentity();
  }
  return {ctx.window_ptr(), ctx.block_dim(), std::move(data)};
}

BlockMatrix psi(const CrossedContext& ctx, const Matrix& r) {
  if (!ctx.algebra().contains(r)) throw DomainError("coefficient is not in " + ctx.algebra().name());
  const auto d = ix(ctx.block_dim());
  const auto n = ctx.window_size();
  Matrix data = Matrix::Zero(ix(n) * d, ix(n) * d);
  for (std::size_t g = 0; g < n; ++g) data.block(ix(g) * d, ix(g) * d, d, d) = ctx.alpha_inverse(g, r);
  return {ctx.window_ptr(), ctx.block_dim(), std::move(data)};
}

BlockMatrix diag(const BlockMatrix& x) {
  const auto d = ix(x.block_dim());
  Matrix data = Matrix::Zero(x.data().rows(), x.data().cols());
  for (std::size_t g = 0; g < x.blocks(); ++g)
    data.block(ix(g) * d, ix(g) * d, d, d) = x.data().block(ix(g) * d, ix(g) * d, d, d);
  return {x.window_ptr(), x.block_dim(), std::move(data)};
}

BlockMatrix fourier_coefficient(const CrossedContext& ctx, const BlockMatrix& x, const GroupElement& g) {
  validate(ctx.group(), g);
  const auto& w = ctx.window();
  const auto d = ix(ctx.block_dim());
  Matrix data = Matrix::Zero(x.data().rows(), x.data().cols());
  // (L_g^* x)_(b,b) = x_(gb, b)
  for (std::size_t b = 0; b < w.size(); ++b) {
    if (const auto a = w.find(multiply(ctx.group(), g, w[b])))
      data.block(ix(b) * d, ix(b) * d, d, d) = x.data().block(ix(*a) * d, ix(b) * d, d, d);
  }
  return {ctx.window_ptr(), ctx.block_dim(), std::move(data)};
}

BlockMatrix reconstruct(const CrossedContext& ctx, const BlockMatrix& x, WindowMode mode) {
  if (mode == WindowMode::Exact && !ctx.exact())
    throw DomainError("reconstruction on a window of " + ctx.group().name() +
                      " is approximate; request WindowMode::Approximate");
  const auto& w = ctx.window();
  const auto d = ix(ctx.block_dim());
  Matrix data = Matrix::Zero(x.data().rows(), x.data().cols());
  for (std::size_t g = 0; g < w.size(); ++g) {
    for (std::size_t b = 0; b < w.size(); ++b) {
      if (const auto a = w.find(multiply(ctx.group(), w[g], w[b])))
        data.block(ix(*a) * d, ix(b) * d, d, d) += x.data().block(ix(*a) * d, ix(b) * d, d, d);
    }
  }
  return {ctx.window_ptr(), ctx.block_dim(), std::move(data)};
}

BlockMatrix schur_product(const BlockMatrix& a, const BlockMatrix& b) {
  if (a.block_dim() != b.block_dim() || !same_window(a.window(), b.window()))
    throw DomainError("block matrices live on different windows");
  return {a.window_ptr(), a.block_dim(), schur_block_product(a.data(), b.data(), a.block_dim())};
}

BlockMatrix hadamard_multiplier(const CrossedContext& ctx, const PdFunction& chi, const BlockMatrix& x,
                                ExecPolicy policy) {
  if (!(chi.spec() == ctx.group())) throw DomainError("function and context use different groups");
  const Matrix gram = gram_matrix(chi, ctx.window(), policy);
  const auto d = ix(ctx.block_dim());
  Matrix data = x.data();
  for (Idx i = 0; i < gram.rows(); ++i)
    for (Idx j = 0; j < gram.cols(); ++j) data.block(i * d, j * d, d, d) *= gram(i, j);
  return {ctx.window_ptr(), ctx.block_dim(), std::move(data)};
}

double p_seminorm(const BlockMatrix& x, const Vector& xi) {
  if (xi.size() != x.data().cols()) throw DomainError("vector length does not match the operator");
  const auto d = ix(x.block_dim());
  const Matrix xx = x.data().adjoint() * x.data();
  double sq = 0.0;
  for (std::size_t g = 0; g < x.blocks(); ++g) {
    const Matrix root = psd_sqrt(xx.block(ix(g) * d, ix(g) * d, d, d));
    sq += (root * xi.segment(ix(g) * d, d)).squaredNorm();
  }
  return std::sqrt(sq);
}

CoefficientList phi_hom(const CrossedContext& ctx, const BlockMatrix& x, std::optional<std::size_t> check_radius,
                        double tol) {
  const auto& w = ctx.window();
  const auto& group = ctx.group();
  const auto d = ctx.block_dim();
  const double t = tol * scale_of(x.data());
  CoefficientList out;
  out.reserve(w.size());
  for (std::size_t g = 0; g < w.size(); ++g) {
    Matrix r = block_of(x.data(), d, g, 0);
    if (!ctx.algebra().contains(r, tol)) {
      throw NotInCrossedProduct("coefficient at translation " + to_string(group, w[g]) + " is not in " +
                                ctx.algebra().name());
    }
    for (std::size_t b = 1; b < w.size(); ++b) {
      if (check_radius && w.length_at(b) > *check_radius) break;
      const auto a = w.find(multiply(group, w[g], w[b]));
      if (!a) continue;
      const double defect = max_abs(block_of(x.data(), d, *a, b) - ctx.alpha_inverse(b, r));
      if (defect > t) {
        std::ostringstream msg;
        msg << "diagonal of translation " << to_string(group, w[g]) << " is not of the form Psi(r): block ("
            << to_string(group, w[*a]) << ", " << to_string(group, w[b]) << ") is off by " << defect;
        throw NotInCrossedProduct(msg.str());
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

BlockMatrix theta_embed(const CrossedContext& ctx, std::span<const TranslationTerm> terms, ExecPolicy policy) {
  for (const auto& term : terms) {
    if (!ctx.algebra().contains(term.r))
      throw DomainError("coefficient at " + to_string(ctx.group(), term.t) + " is not in " + ctx.algebra().name());
  }
  auto alpha_inv = [&ctx](std::size_t v, const Matrix& r) { return ctx.alpha_inverse(v, r); };
  return {ctx.window_ptr(), ctx.block_dim(),
          kernels::translate_assemble(ctx.window(), ctx.block_dim(), terms, alpha_inv, policy)};
}

BlockMatrix theta_embed(const CrossedContext& ctx, const CoefficientList& coefficients, ExecPolicy policy) {
  const auto& w = ctx.window();
  if (coefficients.size() != w.size()) throw DomainError("coefficient list does not match the window");
  std::vector<TranslationTerm> terms;
  for (std::size_t g = 0; g < w.size(); ++g) {
    if (coefficients[g].size() > 0 && max_abs(coefficients[g]) > 0.0) terms.push_back({w[g], coefficients[g]});
  }
  return theta_embed(ctx, std::span<const TranslationTerm>(terms), policy);
}

BlockMatrix hadamard_product(const CrossedContext& ctx, const BlockMatrix& x, const BlockMatrix& y) {
  const auto a = phi_hom(ctx, x);
  const auto b = phi_hom(ctx, y);
  CoefficientList prod(a.size());
  for (std::size_t g = 0; g < a.size(); ++g) prod[g] = a[g] * b[g];
  return theta_embed(ctx, prod);
}

double sup_norm(const CoefficientList& coefficients) {
  double best = 0.0;
  for (const auto& r : coefficients) best = std::max(best, operator_norm(r));
  return best;
}

}  // namespace xprod
