#pragma once

// Exact combinatorics of balls in free groups F_k and the general lower bound
// for finitely generated groups. Counts are arbitrary-precision integers and
// ratios exact rationals.

#include <cstddef>
#include <optional>
#include <vector>

#include "xprod/groups.hpp"
#include "xprod/kernels.hpp"
#include "xprod/posdef.hpp"
#include "xprod/rational.hpp"

namespace xprod {

/// |S_n| = 2k (2k-1)^(n-1), and 1 for n = 0. Requires k >= 2.
BigInt sphere_size(int k, std::size_t n);
/// |B_n| = (k (2k-1)^n - 1) / (k - 1). Requires k >= 2.
BigInt ball_size(int k, std::size_t n);

/// |T_n(t)| for any t of length ell, T_n(t) = {h in B_n : t h in B_n}, from
/// the summed closed forms. Requires n >= 2 ell.
BigInt t_count_closed(int k, std::size_t ell, std::size_t n);
/// Same count assembled from its pieces: |B_(n-ell)| plus the sphere slices
/// (2k-1)^(n - ell + floor((ell - i)/2)) for i = 0..ell-1.
BigInt t_count_parts(int k, std::size_t ell, std::size_t n);
/// Exact count by enumerating B_n and testing membership of t h.
BigInt t_count_bruteforce(int k, const GroupElement& t, std::size_t n,
                          std::size_t cap = kDefaultEnumerationCap,
                          ExecPolicy policy = ExecPolicy::Parallel);

/// Limit of |T_n(t)| / |B_n|: (2k-1)^-m for ell = 2m, 1 / (k (2k-1)^m) for
/// ell = 2m + 1.
Rational chi_limit_free(int k, std::size_t ell);
/// PdFunction t -> chi_limit_free(k, length(t)) on F_k.
PdFunction free_chi_limit(const GroupSpec& free_group);

/// Lower bound 1 / (1 + (k-1) + ... + (k-1)^ell) for a group with a symmetric
/// generating set of size k >= 2. Equals (k-2)/((k-1)^(ell+1) - 1) for k >= 3.
Rational fin_gen_lower_bound(int k, std::size_t ell);
/// The closed form (k-2)/((k-1)^(ell+1) - 1); requires k >= 3.
Rational fin_gen_lower_bound_closed(int k, std::size_t ell);

/// The word a^ell in F_k.
GroupElement power_of_first_generator(std::size_t ell);

struct FreeCountRow {
  int k = 0;
  std::size_t ell = 0;
  std::size_t n = 0;
  BigInt closed;
  BigInt brute;
  Rational ratio;  // brute / |B_n|
  Rational limit;  // chi_limit_free(k, ell)
};

/// Rows for ell in 0..lmax and n in 2ell..min(2ell+2, nmax).
std::vector<FreeCountRow> free_count_table(int k, std::size_t lmax, std::size_t nmax = 7,
                                           std::size_t cap = kDefaultEnumerationCap);

}  // namespace xprod
