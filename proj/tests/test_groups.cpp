#include <doctest.h>

#include <algorithm>
#include <set>

#include "oracles.hpp"
#include "xprod/errors.hpp"
#include "xprod/groups.hpp"

using namespace xprod;

namespace {

GroupElement word(std::initializer_list<std::int32_t> letters) { return GroupElement(Word(letters)); }

}  // namespace

TEST_CASE("integers: arithmetic and length") {
  const auto z = GroupSpec::integers();
  CHECK(multiply(z, GroupElement(3), GroupElement(-5)) == GroupElement(-2));
  CHECK(inverse(z, GroupElement(7)) == GroupElement(-7));
  CHECK(word_length(z, GroupElement(-4)) == 4);
  CHECK(z.identity() == GroupElement(0));
  CHECK(z.name() == "Z");
  CHECK_FALSE(z.is_finite());
}

TEST_CASE("integers: ball is shortlex by generator order") {
  const auto b = ball(GroupSpec::integers(), 3);
  std::vector<std::int64_t> got;
  for (const auto& g : b.elements()) got.push_back(g.integer());
  CHECK(got == std::vector<std::int64_t>{0, 1, -1, 2, -2, 3, -3});
  CHECK(b.sphere(2).size() == 2);
  CHECK(b.length_at(5) == 3);
}

TEST_CASE("cyclic groups: lengths and full balls") {
  for (int n = 1; n <= 8; ++n) {
    const auto c = GroupSpec::cyclic(n);
    CHECK(c.order() == static_cast<std::uint64_t>(n));
    for (int x = 0; x < n; ++x) CHECK(word_length(c, GroupElement(x)) == static_cast<std::size_t>(std::min(x, n - x)));
    CHECK(ball(c, static_cast<std::size_t>(n / 2)).size() == static_cast<std::size_t>(n));
  }
  CHECK(GroupSpec::cyclic(2).generators().size() == 1);
  CHECK(GroupSpec::cyclic(1).generators().empty());
  CHECK(multiply(GroupSpec::cyclic(5), GroupElement(3), GroupElement(4)) == GroupElement(2));
  CHECK_THROWS_AS(validate(GroupSpec::cyclic(5), GroupElement(5)), DomainError);
}

TEST_CASE("lattice balls match the l1 oracle") {
  for (int d = 1; d <= 3; ++d) {
    const auto spec = GroupSpec::lattice(d);
    for (std::int64_t n = 0; n <= 4; ++n) {
      const auto b = ball(spec, static_cast<std::size_t>(n));
      const auto want = oracle::lattice_ball(d, n);
      std::set<std::vector<std::int64_t>> got;
      for (const auto& g : b.elements()) got.insert(g.tuple());
      CHECK(got == want);
      CHECK(b.size() == want.size());
    }
  }
  CHECK(ball(GroupSpec::lattice(2), 3).size() == 25);
}

TEST_CASE("free group balls match raw word enumeration") {
  for (int k : {1, 2, 3}) {
    const auto spec = GroupSpec::free(k);
    for (int n = 0; n <= (k == 3 ? 4 : 5); ++n) {
      const auto b = ball(spec, static_cast<std::size_t>(n));
      const auto want = oracle::free_ball(k, n);
      std::set<Word> got;
      for (const auto& g : b.elements()) got.insert(g.word());
      CHECK(got == want);
      for (std::size_t i = 0; i < b.size(); ++i) CHECK(b.length_at(i) == b[i].word().size());
    }
  }
}

TEST_CASE("free group: first sphere order and reduction") {
  const auto f2 = GroupSpec::free(2);
  const auto b = ball(f2, 1);
  REQUIRE(b.size() == 5);
  CHECK(b[0] == word({}));
  CHECK(b[1] == word({1}));
  CHECK(b[2] == word({-1}));
  CHECK(b[3] == word({2}));
  CHECK(b[4] == word({-2}));
  const auto ab = word({1, 2});
  CHECK(multiply(f2, ab, inverse(f2, ab)) == f2.identity());
  CHECK(multiply(f2, word({1, 2}), word({-2, 1})) == word({1, 1}));
  CHECK(word_length(f2, word({1, -2, 1})) == 3);
  CHECK_THROWS_AS(validate(f2, word({1, -1})), DomainError);
  CHECK_THROWS_AS(validate(f2, word({3})), DomainError);
}

TEST_CASE("free group: string round trip") {
  const auto f3 = GroupSpec::free(3);
  for (const auto window = ball(f3, 3); const auto& g : window.elements()) CHECK(parse_element(f3, to_string(f3, g)) == g);
  CHECK(to_string(f3, word({})) == "e");
  CHECK(to_string(f3, word({1, -2, 3})) == "aBc");
  CHECK(parse_element(f3, "aA") == word({}));
  CHECK_THROWS_AS(parse_element(f3, "ax"), DomainError);
}

TEST_CASE("products of abelian groups") {
  const auto spec = parse_group("Z^2xC3");
  CHECK(spec.kind() == GroupKind::Product);
  CHECK(spec.name() == "Z^2xC3");
  CHECK(spec.tuple_width() == 3);
  const auto g = parse_element(spec, "(1,-2,2)");
  const auto h = parse_element(spec, "(0,1,2)");
  CHECK(multiply(spec, g, h) == GroupElement(IntTuple{1, -1, 1}));
  CHECK(word_length(spec, g) == 1 + 2 + 1);
  CHECK(inverse(spec, g) == GroupElement(IntTuple{-1, 2, 1}));
  for (const auto window = ball(spec, 2); const auto& x : window.elements()) CHECK(parse_element(spec, to_string(spec, x)) == x);
  const auto zc = GroupSpec::product({GroupSpec::integers(), GroupSpec::cyclic(2)});
  CHECK(ball(zc, 1).size() == 4);
}

TEST_CASE("custom generating sets use breadth-first length") {
  const auto z = GroupSpec::integers().with_generators(
      {GroupElement(1), GroupElement(-1), GroupElement(2), GroupElement(-2)});
  CHECK_FALSE(z.has_standard_generators());
  CHECK(word_length(z, GroupElement(5)) == 3);
  CHECK(word_length(z, GroupElement(-4)) == 2);
  CHECK(ball(z, 1).size() == 5);
  CHECK_THROWS_AS(GroupSpec::integers().with_generators({GroupElement(1)}), DomainError);
  CHECK_THROWS_AS(GroupSpec::integers().with_generators({GroupElement(0)}), DomainError);
}

TEST_CASE("enumeration cap") {
  CHECK_THROWS_AS(ball(GroupSpec::free(2), 7, 100), ResourceCapError);
  CHECK(ball(GroupSpec::free(2), 7).size() == 4373);
  CHECK(sphere(GroupSpec::free(2), 3).size() == 36);
}

TEST_CASE("group names parse") {
  CHECK(parse_group("F2") == GroupSpec::free(2));
  CHECK(parse_group("C4") == GroupSpec::cyclic(4));
  CHECK(parse_group("Z^3") == GroupSpec::lattice(3));
  CHECK_THROWS_AS(parse_group("Q8"), DomainError);
  CHECK_THROWS_AS(parse_group("F2xZ"), DomainError);
}
