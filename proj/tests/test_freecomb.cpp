#include <doctest.h>

#include "oracles.hpp"
#include "xprod/errors.hpp"
#include "xprod/freecomb.hpp"

using namespace xprod;

TEST_CASE("sphere and ball sizes") {
  CHECK(sphere_size(2, 0) == 1);
  CHECK(sphere_size(2, 1) == 4);
  CHECK(sphere_size(2, 3) == 36);
  CHECK(ball_size(2, 2) == 17);
  CHECK(ball_size(3, 3) == 187);
  CHECK(ball_size(2, 7) == 4373);
  for (int k : {2, 3}) {
    for (std::size_t n = 0; n <= 5; ++n) {
      CHECK(ball_size(k, n) == oracle::free_ball(k, static_cast<int>(n)).size());
    }
  }
}

TEST_CASE("closed form, parts form and brute force agree") {
  // t = a^2, n = 4: (3^4 + 3^3 - 2) / 2 with m = 1; 161 would be all of B_4.
  CHECK(t_count_closed(2, 2, 4) == 53);
  CHECK(oracle::free_translate_count(oracle::free_ball(2, 4), oracle::Word{1, 1}) == 53);
  CHECK(t_count_closed(2, 1, 2) == 8);
  for (int k : {2, 3}) {
    for (std::size_t ell = 0; ell <= 3; ++ell) {
      for (std::size_t n = 2 * ell; n <= std::min<std::size_t>(2 * ell + 2, 6); ++n) {
        CHECK(t_count_closed(k, ell, n) == t_count_parts(k, ell, n));
        CHECK(t_count_closed(k, ell, n) == t_count_bruteforce(k, power_of_first_generator(ell), n));
      }
    }
  }
  CHECK_THROWS_AS(t_count_closed(2, 3, 5), DomainError);
}

TEST_CASE("brute force on raw words for every t of a sphere") {
  const auto f2 = GroupSpec::free(2);
  const auto words = oracle::free_ball(2, 5);
  for (std::size_t ell = 1; ell <= 2; ++ell) {
    for (const auto& t : sphere(f2, ell)) {
      const auto want = oracle::free_translate_count(words, t.word());
      CHECK(t_count_bruteforce(2, t, 5) == want);
      CHECK(t_count_closed(2, ell, 5) == want);
    }
  }
}

TEST_CASE("limits and lower bounds") {
  CHECK(chi_limit_free(2, 0) == 1);
  CHECK(chi_limit_free(2, 1) == Rational(1, 2));
  CHECK(chi_limit_free(2, 2) == Rational(1, 3));
  CHECK(chi_limit_free(2, 3) == Rational(1, 6));
  CHECK(chi_limit_free(3, 2) == Rational(1, 5));
  CHECK(fin_gen_lower_bound(4, 1) == Rational(1, 4));
  CHECK(fin_gen_lower_bound(2, 3) == Rational(1, 4));
  for (int k = 3; k <= 6; ++k)
    for (std::size_t ell = 0; ell <= 5; ++ell) CHECK(fin_gen_lower_bound(k, ell) == fin_gen_lower_bound_closed(k, ell));
  const auto f = free_chi_limit(GroupSpec::free(2));
  CHECK(f(GroupElement(Word{1, 2})).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("count table rows") {
  const auto rows = free_count_table(2, 3);
  bool found = false;
  for (const auto& r : rows) {
    CHECK(r.closed == r.brute);
    if (r.ell == 1 && r.n == 2) {
      found = true;
      CHECK(r.closed == 8);
    }
  }
  CHECK(found);
  // chi_7(a) = 2186 / 4373
  const auto big = free_count_table(2, 1, 7);
  CHECK(big.back().n == 4);
  CHECK(Rational(t_count_bruteforce(2, power_of_first_generator(1), 7), ball_size(2, 7)) == Rational(2186, 4373));
}
