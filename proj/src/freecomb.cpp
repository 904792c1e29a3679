#include "xprod/freecomb.hpp"

#include <algorithm>

#include "xprod/errors.hpp"

namespace xprod {

namespace {

void require_rank(int k) {
  if (k < 2) throw DomainError("free-group counts need rank k >= 2");
}

BigInt q_of(int k) { return BigInt(2 * k - 1); }

unsigned as_exp(std::size_t e) { return static_cast<unsigned>(e); }

}  // namespace

BigInt sphere_size(int k, std::size_t n) {
  require_rank(k);
  if (n == 0) return 1;
  return BigInt(2 * k) * ipow(q_of(k), as_exp(n - 1));
}

BigInt ball_size(int k, std::size_t n) {
  require_rank(k);
  const BigInt num = BigInt(k) * ipow(q_of(k), as_exp(n)) - 1;
  const BigInt den = k - 1;
  if (num % den != 0) throw Error("ball size numerator not divisible by k-1");
  return num / den;
}

BigInt t_count_closed(int k, std::size_t ell, std::size_t n) {
  require_rank(k);
  if (n < 2 * ell) throw DomainError("closed form for |T_n(t)| needs n >= 2 * length(t)");
  const BigInt q = q_of(k);
  const std::size_t m = ell / 2;
  BigInt num;
  if (ell % 2 == 0) {
    num = ipow(q, as_exp(n - m + 1)) + ipow(q, as_exp(n - m)) - 2;
  } else {
    num = 2 * ipow(q, as_exp(n - m)) - 2;
  }
  if (num % (q - 1) != 0) throw Error("|T_n(t)| numerator not divisible by q-1");
  return num / (q - 1);
}

BigInt t_count_parts(int k, std::size_t ell, std::size_t n) {
  require_rank(k);
  if (n < 2 * ell) throw DomainError("closed form for |T_n(t)| needs n >= 2 * length(t)");
  const BigInt q = q_of(k);
  BigInt total = ball_size(k, n - ell);
  for (std::size_t i = 0; i < ell; ++i) {
    total += ipow(q, as_exp(n - ell + (ell - i) / 2));
  }
  return total;
}

BigInt t_count_bruteforce(int k, const GroupElement& t, std::size_t n, std::size_t cap,
                          ExecPolicy policy) {
  const auto spec = GroupSpec::free(k);
  validate(spec, t);
  const auto b = ball(spec, n, cap);
  const auto count = kernels::count_translates(
      spec, b.elements(), t, [&b](const GroupElement& x) { return b.contains(x); }, policy);
  return BigInt(count);
}

Rational chi_limit_free(int k, std::size_t ell) {
  require_rank(k);
  const BigInt qm = ipow(q_of(k), as_exp(ell / 2));
  if (ell % 2 == 0) return Rational(BigInt(1), qm);
  return Rational(BigInt(1), BigInt(k) * qm);
}

PdFunction free_chi_limit(const GroupSpec& free_group) {
  if (free_group.kind() != GroupKind::Free) throw DomainError("free_chi_limit needs a free group");
  const int k = free_group.parameter();
  require_rank(k);
  auto eval = [free_group, k](const GroupElement& t) {
    return Complex(to_double(chi_limit_free(k, word_length(free_group, t))), 0.0);
  };
  return PdFunction(free_group, eval, "chi_limit(F" + std::to_string(k) + ")");
}

Rational fin_gen_lower_bound(int k, std::size_t ell) {
  if (k < 2) throw DomainError("lower bound needs a symmetric generating set of size >= 2");
  BigInt sum = 0;
  BigInt term = 1;
  for (std::size_t j = 0; j <= ell; ++j) {
    sum += term;
    term *= (k - 1);
  }
  return Rational(BigInt(1), sum);
}

Rational fin_gen_lower_bound_closed(int k, std::size_t ell) {
  if (k < 3) throw DomainError("closed-form lower bound is 0/0 for k = 2");
  return Rational(BigInt(k - 2), ipow(BigInt(k - 1), as_exp(ell + 1)) - 1);
}

GroupElement power_of_first_generator(std::size_t ell) {
  return GroupElement(Word(ell, 1));
}

std::vector<FreeCountRow> free_count_table(int k, std::size_t lmax, std::size_t nmax,
                                           std::size_t cap) {
  require_rank(k);
  std::vector<FreeCountRow> rows;
  for (std::size_t ell = 0; ell <= lmax; ++ell) {
    const std::size_t last = std::min(2 * ell + 2, nmax);
    for (std::size_t n = 2 * ell; n <= last; ++n) {
      FreeCountRow r;
      r.k = k;
      r.ell = ell;
      r.n = n;
      r.closed = t_count_closed(k, ell, n);
      r.brute = t_count_bruteforce(k, power_of_first_generator(ell), n, cap);
      r.ratio = Rational(r.brute, ball_size(k, n));
      r.limit = chi_limit_free(k, ell);
      rows.push_back(std::move(r));
    }
  }
  return rows;
}

}  // namespace xprod
