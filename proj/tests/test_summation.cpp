#include <doctest.h>

#include <cmath>
#include <numbers>

#include "xprod/errors.hpp"
#include "xprod/summation.hpp"

using namespace xprod;

TEST_CASE("Cesaro weights") {
  CHECK(cesaro_weight(2, 1) == Rational(2, 3));
  CHECK(cesaro_weight(2, -1) == Rational(2, 3));
  CHECK(cesaro_weight(2, 0) == Rational(1));
  CHECK(cesaro_weight(2, 3) == Rational(0));
  CHECK(cesaro_weight(9, 4) == Rational(6, 10));
}

TEST_CASE("Cesaro means weight coefficients") {
  const TrigPolynomial f({{-2, 1.0}, {0, 3.0}, {3, Complex(0.0, 1.0)}});
  CHECK(f.degree() == 3);
  const auto m = cesaro_mean(f, 2);
  CHECK(m.coefficient(-2) == Complex(1.0 / 3.0));
  CHECK(m.coefficient(0) == Complex(3.0));
  CHECK(m.coefficient(3) == Complex(0.0));
  CHECK(std::abs(f(0.0) - Complex(4.0, 1.0)) <= 1e-15);
  CHECK(std::abs(TrigPolynomial::monomial(1)(std::numbers::pi / 2) - Complex(0.0, 1.0)) <= 1e-15);
}

TEST_CASE("Fejer error of a nonnegative-coefficient polynomial") {
  // With c_k >= 0 the error f - sigma_n f is maximal at theta = 0, where it
  // equals sum |k| c_k / (n + 1).
  const TrigPolynomial f({{-5, 0.5}, {-1, 1.0}, {0, 2.0}, {2, 0.25}, {5, 1.5}});
  double moment = 0.0;
  for (const auto& [k, c] : f.coefficients()) moment += std::abs(static_cast<double>(k)) * c.real();
  for (std::int64_t n = 5; n <= 50; ++n) {
    const double err = sup_norm_grid(f, cesaro_mean(f, n), 64);
    CHECK(std::abs(err - moment / static_cast<double>(n + 1)) <= 1e-10);
  }
  CHECK_THROWS_AS(sup_norm_grid(f, f, 20), DomainError);
}

TEST_CASE("Folner rows on Z and Z^2") {
  const std::vector<std::size_t> radii{1, 2, 5, 10};
  const auto z = folner_study(GroupSpec::integers(), GroupElement(std::int64_t{1}), radii);
  REQUIRE(z.size() == radii.size());
  for (const auto& row : z) {
    const auto n = static_cast<long>(row.n);
    CHECK(row.chi == Rational(n, n + 1));
    CHECK(row.symmetric_difference == 2);
    CHECK(row.identity_holds);
  }
  const auto z2 = folner_study(GroupSpec::lattice(2), GroupElement(IntTuple{1, 0}), radii);
  for (const auto& row : z2) {
    const auto n = static_cast<long>(row.n);
    CHECK(row.chi == Rational(1) - Rational(1, n + 1));
    CHECK(row.set_size == (n + 1) * (n + 1));
    CHECK(row.identity_holds);
  }
  CHECK(to_json(z.front())["chi"] == "1/2");
  CHECK_THROWS_AS(folner_study(GroupSpec::free(2), GroupElement(Word{1}), radii), DomainError);
}
