#pragma once

// Independent reference implementations used only by the tests. None of them
// calls the library code they are compared against: balls come from raw word
// enumeration, sigma and tau from explicit permutation matrices on C_n.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <set>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Word = std::vector<std::int32_t>;

// Free reduction by a stack.
inline Word reduce(const Word& w) {
  Word out;
  for (auto x : w) {
    if (!out.empty() && out.back() == -x) {
      out.pop_back();
    } else {
      out.push_back(x);
    }
  }
  return out;
}

// Every reduced word reachable by a product of at most n letters of F_k.
inline std::set<Word> free_ball(int k, int n) {
  std::set<Word> out;
  std::vector<Word> frontier{Word{}};
  out.insert(Word{});
  for (int step = 0; step < n; ++step) {
    std::vector<Word> next;
    for (const auto& w : frontier) {
      for (int i = 1; i <= k; ++i) {
        for (int s : {i, -i}) {
          auto v = w;
          v.push_back(s);
          v = reduce(v);
          if (out.insert(v).second) next.push_back(v);
        }
      }
    }
    frontier = std::move(next);
  }
  return out;
}

inline Word concat_reduce(const Word& a, const Word& b) {
  Word w = a;
  w.insert(w.end(), b.begin(), b.end());
  return reduce(w);
}

// #{h in S : t h in S} for a set of reduced words.
inline std::size_t free_translate_count(const std::set<Word>& s, const Word& t) {
  std::size_t c = 0;
  for (const auto& h : s)
    if (s.count(concat_reduce(t, h))) ++c;
  return c;
}

// Lattice points with l1 norm <= n.
inline std::set<std::vector<std::int64_t>> lattice_ball(int d, std::int64_t n) {
  std::set<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> x(static_cast<std::size_t>(d), -n);
  while (true) {
    std::int64_t norm = 0;
    for (auto v : x) norm += v < 0 ? -v : v;
    if (norm <= n) out.insert(x);
    std::size_t i = 0;
    while (i < x.size() && x[i] == n) x[i++] = -n;
    if (i == x.size()) break;
    ++x[i];
  }
  return out;
}

// --- C_n with explicit matrices ------------------------------------------------

enum class Expectation { Trace, Diagonal, Identity };

inline Matrix expect(Expectation e, const Matrix& y) {
  const auto d = y.rows();
  switch (e) {
    case Expectation::Trace:
      return (y.trace() / static_cast<double>(d)) * Matrix::Identity(d, d);
    case Expectation::Diagonal: {
      Matrix out = Matrix::Zero(d, d);
      for (Eigen::Index i = 0; i < d; ++i) out(i, i) = y(i, i);
      return out;
    }
    case Expectation::Identity:
      return y;
  }
  return y;
}

// Permutation matrix with P e_i = e_{perm[i]}.
inline Matrix perm_matrix(const std::vector<int>& perm) {
  const auto d = static_cast<Eigen::Index>(perm.size());
  Matrix p = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < d; ++i) p(perm[static_cast<std::size_t>(i)], i) = 1.0;
  return p;
}

// The action of the generator 1 of C_n on C^d is the matrix `gen`; alpha_g is
// conjugation by gen^g.
struct CyclicSetting {
  int n = 1;
  int d = 1;
  Matrix gen;  // unitary generating the action
  Expectation e = Expectation::Trace;

  Matrix power(int g) const {
    Matrix p = Matrix::Identity(d, d);
    for (int i = 0; i < ((g % n) + n) % n; ++i) p = gen * p;
    return p;
  }
  Matrix alpha(int g, const Matrix& r) const {
    const Matrix p = power(g);
    return p * r * p.adjoint();
  }
  int mod(int a) const { return ((a % n) + n) % n; }

  // L_t: block (a, b) = I iff a = t + b.
  Matrix L(int t) const {
    Matrix out = Matrix::Zero(n * d, n * d);
    for (int b = 0; b < n; ++b) out.block(mod(t + b) * d, b * d, d, d) = Matrix::Identity(d, d);
    return out;
  }
  // Psi(r): block (g, g) = alpha_{-g}(r).
  Matrix Psi(const Matrix& r) const {
    Matrix out = Matrix::Zero(n * d, n * d);
    for (int g = 0; g < n; ++g) out.block(g * d, g * d, d, d) = alpha(-g, r);
    return out;
  }
  Matrix block(const Matrix& x, int g, int h) const { return x.block(g * d, h * d, d, d); }
};

// sum_{g,h} L_{g-h} Psi(alpha_h(pi(x_(g,h)))) conj(k_g) k_h as a double loop of
// explicit matrix products.
inline Matrix naive_sigma(const CyclicSetting& s, const std::vector<Complex>& k, const Matrix& x) {
  Matrix out = Matrix::Zero(s.n * s.d, s.n * s.d);
  for (int g = 0; g < s.n; ++g) {
    for (int h = 0; h < s.n; ++h) {
      const Complex c = std::conj(k[static_cast<std::size_t>(g)]) * k[static_cast<std::size_t>(h)];
      if (c == Complex(0.0)) continue;
      out += c * s.L(g - h) * s.Psi(s.alpha(h, expect(s.e, s.block(x, g, h))));
    }
  }
  return out;
}

// (I (x) rho_u)(I (x) M_xi^*)((alpha_u o pi) (x) id)(x)(I (x) M_xi)(I (x) rho_u^*)
// with rho_u delta_g = delta_{g-u}.
inline Matrix sandwich_tau(const CyclicSetting& s, const std::vector<Complex>& k, int u, const Matrix& x) {
  const int n = s.n;
  const int d = s.d;
  Matrix y(n * d, n * d);
  for (int g = 0; g < n; ++g)
    for (int h = 0; h < n; ++h) y.block(g * d, h * d, d, d) = s.alpha(u, expect(s.e, s.block(x, g, h)));
  Matrix m = Matrix::Zero(n * d, n * d);
  Matrix rho = Matrix::Zero(n * d, n * d);
  for (int g = 0; g < n; ++g) {
    m.block(g * d, g * d, d, d) = k[static_cast<std::size_t>(g)] * Matrix::Identity(d, d);
    rho.block(s.mod(g - u) * d, g * d, d, d) = Matrix::Identity(d, d);
  }
  return rho * m.adjoint() * y * m * rho.adjoint();
}

}  // namespace oracle
