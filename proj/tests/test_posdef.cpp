#include <doctest.h>

#include <cmath>
#include <set>

#include "oracles.hpp"
#include "xprod/errors.hpp"
#include "xprod/freecomb.hpp"
#include "xprod/posdef.hpp"

using namespace xprod;

namespace {

std::vector<GroupElement> ints(std::int64_t lo, std::int64_t hi) {
  std::vector<GroupElement> out;
  for (auto v = lo; v <= hi; ++v) out.emplace_back(v);
  return out;
}

}  // namespace

TEST_CASE("chi_S on Z matches the Cesaro weights") {
  const auto z = GroupSpec::integers();
  const auto s = ints(0, 2);
  CHECK(chi_set_exact(z, s, GroupElement(1)) == Rational(2, 3));
  CHECK(chi_set_exact(z, s, GroupElement(-2)) == Rational(1, 3));
  CHECK(chi_set_exact(z, s, GroupElement(3)) == 0);
  CHECK(chi_set_exact(z, s, GroupElement(0)) == 1);
  const auto f = chi_from_set(z, s);
  CHECK(f(GroupElement(1)).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(chi_from_set(z, {}), DomainError);
}

TEST_CASE("chi_S on F_2 balls against raw word counting") {
  const auto f2 = GroupSpec::free(2);
  const auto b2 = ball(f2, 2);
  const std::vector<GroupElement> set(b2.elements().begin(), b2.elements().end());
  const auto words = oracle::free_ball(2, 2);
  for (const auto window = ball(f2, 3); const auto& g : window.elements()) {
    const auto want = Rational(static_cast<long long>(oracle::free_translate_count(words, g.word())),
                               static_cast<long long>(words.size()));
    CHECK(chi_set_exact(f2, set, g) == want);
  }
  CHECK(chi_set_exact(f2, set, GroupElement(Word{1})) == Rational(8, 17));
}

TEST_CASE("chi_xi of a normalized indicator equals chi_S") {
  const auto f2 = GroupSpec::free(2);
  const auto b = ball(f2, 2);
  const auto xi = L2Vector::normalized_indicator(f2, b.elements());
  const auto a = chi_from_vector(xi);
  const auto s = chi_from_set(f2, {b.elements().begin(), b.elements().end()});
  for (const auto window = ball(f2, 4); const auto& g : window.elements()) CHECK(std::abs(a(g) - s(g)) <= 1e-14);
}

TEST_CASE("chi_xi for complex xi is hermitian and positive definite") {
  const auto z = GroupSpec::integers();
  const auto xi = L2Vector::normalized(z, {{GroupElement(0), {1.0, 2.0}}, {GroupElement(1), {-0.5, 0.3}},
                                           {GroupElement(3), {0.2, -1.0}}});
  const auto f = chi_from_vector(xi);
  const auto b = ball(z, 4);
  CHECK(hermitian_defect(f, b) <= 1e-15);
  CHECK(check_positive_definite(f, b).verdict == Verdict::Pass);
  // <lambda_3 xi, xi> = conj(k_3) k_0
  const Complex want = std::conj(xi.at(GroupElement(3))) * xi.at(GroupElement(0));
  CHECK(std::abs(f(GroupElement(3)) - want) <= 1e-15);
}

TEST_CASE("L2 vectors") {
  const auto z = GroupSpec::integers();
  CHECK_THROWS_AS(L2Vector::from_entries(z, {{GroupElement(0), 0.5}}), DomainError);
  const auto d = L2Vector::delta(z, GroupElement(2));
  CHECK(d.at(GroupElement(2)) == Complex(1.0));
  CHECK(d.at(GroupElement(0)) == Complex(0.0));
  CHECK(d.strictly_positive());
  const auto c = L2Vector::normalized(z, {{GroupElement(0), {0.0, 1.0}}});
  CHECK_FALSE(c.strictly_positive());
}

TEST_CASE("Haagerup functions") {
  const auto f2 = GroupSpec::free(2);
  const auto h = haagerup(f2, 0.5);
  CHECK(h(GroupElement(Word{1, 2, -1})).real() == doctest::Approx(std::exp(-1.5)).epsilon(1e-15));
  CHECK_THROWS_AS(haagerup(f2, 0.0), DomainError);
  CHECK_THROWS_AS(haagerup(f2, -1.0), DomainError);
}

TEST_CASE("a non positive definite function fails with the expected eigenvalue") {
  const auto z = GroupSpec::integers();
  PdFunction f(z, [](const GroupElement& g) -> Complex {
    const auto v = g.integer();
    if (v == 0) return 1.0;
    if (v == 1 || v == -1) return -1.0;
    return 0.0;
  }, "bad");
  const auto rep = check_positive_definite(f, ball(z, 1));
  CHECK(rep.verdict == Verdict::Fail);
  CHECK(rep.gram_dimension == 3);
  CHECK(rep.min_eigenvalue == doctest::Approx(1.0 - std::sqrt(2.0)).epsilon(1e-12));
  const auto j = to_json(rep);
  CHECK(j["verdict"] == "Fail");
  CHECK(j.contains("min_eigenvalue"));
}

TEST_CASE("f(e) must be 1") {
  CHECK_THROWS_AS(PdFunction(GroupSpec::integers(), [](const GroupElement&) { return Complex(2.0); }, "two"),
                  DomainError);
}

TEST_CASE("Gram matrix entries and closure under products and mixtures") {
  const auto z2 = GroupSpec::lattice(2);
  const auto b = ball(z2, 2);
  const auto s = chi_from_set(z2, folner_set(z2, 2));
  const auto h = haagerup(z2, 0.4);
  const Matrix g = gram_matrix(s, b);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      CHECK(g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) ==
            s(multiply(z2, b[i], inverse(z2, b[j]))));
  CHECK(check_positive_definite(pointwise_product(s, h), b).verdict == Verdict::Pass);
  const auto mix = convex_combination({{0.25, s}, {0.75, h}});
  CHECK(check_positive_definite(mix, b).verdict == Verdict::Pass);
  CHECK_THROWS_AS(convex_combination({{0.5, s}, {0.6, h}}), DomainError);
  CHECK_THROWS_AS(convex_combination({{-0.5, s}, {1.5, h}}), DomainError);
}

TEST_CASE("Folner sets and exact chi") {
  const auto z = GroupSpec::integers();
  for (std::size_t n = 0; n <= 20; ++n)
    CHECK(folner_chi_exact(z, n, GroupElement(1)) == Rational(static_cast<long long>(n), static_cast<long long>(n + 1)));
  const auto z2 = GroupSpec::lattice(2);
  CHECK(folner_set(z2, 3).size() == 16);
  CHECK(folner_chi_exact(z2, 3, GroupElement(IntTuple{1, 0})) == Rational(3, 4));
  CHECK(folner_set(GroupSpec::cyclic(5), 1).size() == 5);
  CHECK_THROWS_AS(folner_set(GroupSpec::free(2), 2), DomainError);
  const std::vector<std::size_t> radii{1, 2, 4, 8};
  const auto ev = folner_eigenvalues(z, radii, GroupElement(1));
  for (std::size_t i = 1; i < ev.size(); ++i) CHECK(ev[i] > ev[i - 1]);
}

TEST_CASE("identity indicator and constant one") {
  const auto f2 = GroupSpec::free(2);
  const auto b = ball(f2, 2);
  CHECK(check_positive_definite(identity_indicator(f2), b).verdict == Verdict::Pass);
  CHECK(check_positive_definite(constant_one(f2), b).verdict == Verdict::Pass);
  CHECK(identity_indicator(f2)(GroupElement(Word{1})) == Complex(0.0));
}
