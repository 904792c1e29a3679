#include "xprod/summation.hpp"

#include <cmath>
#include <numbers>
#include <unordered_set>

#include "xprod/errors.hpp"
#include "xprod/posdef.hpp"

namespace xprod {

TrigPolynomial::TrigPolynomial(std::map<std::int64_t, Complex> coefficients) {
  for (const auto& [k, c] : coefficients)
    if (c != Complex(0.0)) coeffs_.emplace(k, c);
}

TrigPolynomial TrigPolynomial::monomial(std::int64_t k, Complex c) { return TrigPolynomial({{k, c}}); }

Complex TrigPolynomial::coefficient(std::int64_t k) const {
  const auto it = coeffs_.find(k);
  return it == coeffs_.end() ? Complex(0.0) : it->second;
}

std::int64_t TrigPolynomial::degree() const {
  std::int64_t d = 0;
  for (const auto& [k, c] : coeffs_) d = std::max(d, k < 0 ? -k : k);
  return d;
}

Complex TrigPolynomial::operator()(double theta) const {
  Complex sum = 0.0;
  for (const auto& [k, c] : coeffs_) sum += c * std::polar(1.0, static_cast<double>(k) * theta);
  return sum;
}

Rational cesaro_weight(std::int64_t n, std::int64_t j) {
  if (n < 0) throw DomainError("Cesaro index must be nonnegative");
  const std::int64_t a = j < 0 ? -j : j;
  if (a > n) return Rational(0);
  return Rational(BigInt(n + 1 - a), BigInt(n + 1));
}

TrigPolynomial cesaro_mean(const TrigPolynomial& f, std::int64_t n) {
  std::map<std::int64_t, Complex> out;
  for (const auto& [k, c] : f.coefficients()) {
    const double w = to_double(cesaro_weight(n, k));
    if (w != 0.0) out.emplace(k, w * c);
  }
  return TrigPolynomial(std::move(out));
}

double sup_norm_grid(const TrigPolynomial& f, const TrigPolynomial& g, std::size_t points) {
  const auto deg = static_cast<std::size_t>(std::max(f.degree(), g.degree()));
  if (points < 4 * deg + 1 || points == 0)
    throw DomainError("grid of " + std::to_string(points) + " points undersamples degree " + std::to_string(deg));
  double best = 0.0;
  for (std::size_t i = 0; i < points; ++i) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(points);
    best = std::max(best, std::abs(f(theta) - g(theta)));
  }
  return best;
}

std::vector<FolnerRow> folner_study(const GroupSpec& spec, const GroupElement& t, std::span<const std::size_t> radii) {
  if (!spec.is_amenable()) throw DomainError(spec.name() + " is not amenable");
  validate(spec, t);
  const auto t_inv = inverse(spec, t);
  std::vector<FolnerRow> rows;
  for (const auto n : radii) {
    const auto set = folner_set(spec, n);
    const std::unordered_set<GroupElement, GroupElementHash> member(set.begin(), set.end());
    std::size_t outside_forward = 0;   // |tF \ F|
    std::size_t outside_backward = 0;  // |F \ tF|
    std::size_t inside = 0;            // |F cap tF|
    for (const auto& h : set) {
      if (!member.contains(multiply(spec, t, h))) ++outside_forward;
      if (member.contains(multiply(spec, t_inv, h))) {
        ++inside;
      } else {
        ++outside_backward;
      }
    }
    FolnerRow row;
    row.n = n;
    row.set_size = set.size();
    row.symmetric_difference = outside_forward + outside_backward;
    row.defect = Rational(row.symmetric_difference, row.set_size);
    row.chi = Rational(BigInt(inside), row.set_size);
    row.identity_holds = row.chi == Rational(1) - row.defect / 2;
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json to_json(const FolnerRow& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["set_size"] = to_string(r.set_size);
  j["symmetric_difference"] = to_string(r.symmetric_difference);
  j["defect"] = to_string(r.defect);
  j["chi"] = to_string(r.chi);
  j["identity_holds"] = r.identity_holds;
  return j;
}

}  // namespace xprod
