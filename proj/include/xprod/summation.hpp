#pragma once

// Cesaro means of trigonometric polynomials and Folner studies on amenable
// groups.

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "xprod/groups.hpp"
#include "xprod/linalg.hpp"
#include "xprod/rational.hpp"

namespace xprod {

/// f(theta) = sum_k c_k e^{i k theta} with finitely many nonzero c_k.
class TrigPolynomial {
 public:
  TrigPolynomial() = default;
  explicit TrigPolynomial(std::map<std::int64_t, Complex> coefficients);
  static TrigPolynomial monomial(std::int64_t k, Complex c = 1.0);

  const std::map<std::int64_t, Complex>& coefficients() const { return coeffs_; }
  Complex coefficient(std::int64_t k) const;
  /// max |k| over nonzero coefficients (0 for the zero polynomial).
  std::int64_t degree() const;
  Complex operator()(double theta) const;

 private:
  std::map<std::int64_t, Complex> coeffs_;
};

/// (n + 1 - |j|) / (n + 1) for |j| <= n, else 0.
Rational cesaro_weight(std::int64_t n, std::int64_t j);
/// Coefficientwise weighting by cesaro_weight(n, .).
TrigPolynomial cesaro_mean(const TrigPolynomial& f, std::int64_t n);
/// max |f - g| over `points` equally spaced angles starting at 0. Throws
/// DomainError when points < 4 * degree + 1.
double sup_norm_grid(const TrigPolynomial& f, const TrigPolynomial& g, std::size_t points);

struct FolnerRow {
  std::size_t n = 0;
  BigInt set_size;
  BigInt symmetric_difference;
  /// |t F_n delta F_n| / |F_n|
  Rational defect;
  /// |F_n cap t F_n| / |F_n|
  Rational chi;
  /// chi == 1 - defect / 2, compared exactly.
  bool identity_holds = false;
};

/// One row per radius over the Folner sets F_n. Throws DomainError for
/// non-amenable groups.
std::vector<FolnerRow> folner_study(const GroupSpec& spec, const GroupElement& t, std::span<const std::size_t> radii);

nlohmann::ordered_json to_json(const FolnerRow& r);

}  // namespace xprod
