#pragma once

// Positive definite functions on discrete groups: chi_S, chi_xi, Haagerup
// multipliers, pointwise products, convex combinations, Gram matrices and
// Folner eigenvalue sequences.

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "xprod/groups.hpp"
#include "xprod/kernels.hpp"
#include "xprod/linalg.hpp"
#include "xprod/rational.hpp"

namespace xprod {

enum class SupportKind { Finite, Full };

/// A function G -> C with f(e) = 1, candidate positive definite.
class PdFunction {
 public:
  using Evaluator = std::function<Complex(const GroupElement&)>;

  /// Throws DomainError unless |f(e) - 1| <= 1e-12.
  PdFunction(GroupSpec spec, Evaluator f, std::string label,
             SupportKind support_kind = SupportKind::Full,
             std::vector<GroupElement> support = {});

  Complex operator()(const GroupElement& g) const { return f_(g); }

  const GroupSpec& spec() const { return spec_; }
  const std::string& label() const { return label_; }
  SupportKind support_kind() const { return support_kind_; }
  /// For finite support: a superset of the support.
  const std::vector<GroupElement>& support() const { return support_; }
  const Evaluator& evaluator() const { return f_; }

 private:
  GroupSpec spec_;
  Evaluator f_;
  std::string label_;
  SupportKind support_kind_;
  std::vector<GroupElement> support_;
};

/// max_g |f(g^-1) - conj(f(g))| over the ball.
double hermitian_defect(const PdFunction& f, const Ball& ball);

/// Finitely supported unit vector in l2(G).
class L2Vector {
 public:
  /// Throws DomainError unless the squared norm is 1 within 1e-12.
  static L2Vector from_entries(GroupSpec spec, std::vector<std::pair<GroupElement, Complex>> entries);
  /// Rescales the entries to unit norm.
  static L2Vector normalized(GroupSpec spec, std::vector<std::pair<GroupElement, Complex>> entries);
  static L2Vector normalized_indicator(GroupSpec spec, std::span<const GroupElement> set);
  static L2Vector delta(GroupSpec spec, const GroupElement& g);

  const GroupSpec& spec() const { return spec_; }
  /// Non-zero entries in construction order.
  const std::vector<std::pair<GroupElement, Complex>>& entries() const { return entries_; }
  Complex at(const GroupElement& g) const;
  /// Every stored entry is real and > 0.
  bool strictly_positive() const;
  std::vector<GroupElement> support() const;

 private:
  L2Vector(GroupSpec spec, std::vector<std::pair<GroupElement, Complex>> entries);

  GroupSpec spec_;
  std::vector<std::pair<GroupElement, Complex>> entries_;
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> index_;
};

/// |S cap gS| by exact membership counting.
std::size_t intersection_count(const GroupSpec& spec, std::span<const GroupElement> set,
                               const GroupElement& g, ExecPolicy policy = ExecPolicy::Parallel);
/// |S cap gS| / |S| as an exact rational.
Rational chi_set_exact(const GroupSpec& spec, std::span<const GroupElement> set,
                       const GroupElement& g, ExecPolicy policy = ExecPolicy::Parallel);

/// chi_S(g) = |S cap gS| / |S|. Throws DomainError for an empty set.
PdFunction chi_from_set(const GroupSpec& spec, std::vector<GroupElement> set);
/// chi_xi(t) = <lambda_t xi, xi> = sum_h conj(k_{th}) k_h.
PdFunction chi_from_vector(const L2Vector& xi);
/// exp(-eps * length(t)). Throws DomainError for eps <= 0.
PdFunction haagerup(const GroupSpec& spec, double eps);
PdFunction identity_indicator(const GroupSpec& spec);
PdFunction constant_one(const GroupSpec& spec);

PdFunction pointwise_product(const PdFunction& f, const PdFunction& g);
/// Weights must be nonnegative and sum to 1 (within 1e-12).
PdFunction convex_combination(const std::vector<std::pair<double, PdFunction>>& terms);

/// Entry (i, j) = f(g_i g_j^-1) over the ball ordering.
Matrix gram_matrix(const PdFunction& f, const Ball& ball, ExecPolicy policy = ExecPolicy::Parallel);

enum class Verdict { Pass, Fail };
std::string to_string(Verdict v);

struct PsdReport {
  std::size_t ball_radius = 0;
  std::size_t gram_dimension = 0;
  double min_eigenvalue = 0.0;
  double tolerance = 0.0;
  Verdict verdict = Verdict::Fail;
};

/// Default tolerance: 1e-8 * max(1, spectral norm of the Gram matrix).
PsdReport check_positive_definite(const PdFunction& f, const Ball& ball,
                                  std::optional<double> tolerance = std::nullopt);
nlohmann::ordered_json to_json(const PsdReport& r);

/// The Folner set used for amenable groups: {0..n} for Z, {0..n}^d for Z^d,
/// the whole group for C_m, and Cartesian products for products. Throws
/// DomainError for free groups.
std::vector<GroupElement> folner_set(const GroupSpec& spec, std::size_t n);
/// chi_{F_n}(t) = |F_n cap t F_n| / |F_n| as an exact rational.
Rational folner_chi_exact(const GroupSpec& spec, std::size_t n, const GroupElement& t);
std::vector<double> folner_eigenvalues(const GroupSpec& spec, std::span<const std::size_t> radii,
                                       const GroupElement& t);

}  // namespace xprod
