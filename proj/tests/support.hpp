#pragma once

// Helpers shared by the unit tests and the acceptance runner.

#include <cstdint>
#include <vector>

#include "oracles.hpp"
#include "xprod/crossed.hpp"

namespace testing_support {

// Window order -> natural order 0..n-1 for a cyclic context.
inline std::vector<std::size_t> cyclic_positions(const xprod::CrossedContext& ctx) {
  std::vector<std::size_t> pos(ctx.window_size());
  for (std::size_t g = 0; g < pos.size(); ++g)
    pos[g] = ctx.window().index_of(xprod::GroupElement(static_cast<std::int64_t>(g)));
  return pos;
}

inline oracle::Matrix to_natural(const xprod::CrossedContext& ctx, const xprod::BlockMatrix& x) {
  const auto pos = cyclic_positions(ctx);
  const auto d = static_cast<Eigen::Index>(ctx.block_dim());
  oracle::Matrix out(x.data().rows(), x.data().cols());
  for (std::size_t a = 0; a < pos.size(); ++a)
    for (std::size_t b = 0; b < pos.size(); ++b)
      out.block(static_cast<Eigen::Index>(a) * d, static_cast<Eigen::Index>(b) * d, d, d) = x.block(pos[a], pos[b]);
  return out;
}

inline xprod::BlockMatrix from_natural(const xprod::CrossedContext& ctx, const oracle::Matrix& m) {
  const auto pos = cyclic_positions(ctx);
  const auto d = static_cast<Eigen::Index>(ctx.block_dim());
  xprod::Matrix out(m.rows(), m.cols());
  for (std::size_t a = 0; a < pos.size(); ++a)
    for (std::size_t b = 0; b < pos.size(); ++b)
      out.block(static_cast<Eigen::Index>(pos[a]) * d, static_cast<Eigen::Index>(pos[b]) * d, d, d) =
          m.block(static_cast<Eigen::Index>(a) * d, static_cast<Eigen::Index>(b) * d, d, d);
  return {ctx.window_ptr(), ctx.block_dim(), std::move(out)};
}

// Oracle setting matching a cyclic context built with a coordinate permutation
// or trivial action.
inline oracle::CyclicSetting setting_for(const xprod::CrossedContext& ctx) {
  oracle::CyclicSetting s;
  s.n = static_cast<int>(ctx.window_size());
  s.d = static_cast<int>(ctx.block_dim());
  const auto one = ctx.window().index_of(xprod::GroupElement(std::int64_t{1 % s.n}));
  std::vector<int> perm(ctx.perm(one).begin(), ctx.perm(one).end());
  s.gen = oracle::perm_matrix(perm);
  switch (ctx.expectation().kind) {
    case xprod::ExpectationKind::TraceState:
      s.e = oracle::Expectation::Trace;
      break;
    case xprod::ExpectationKind::DiagonalRestriction:
      s.e = oracle::Expectation::Diagonal;
      break;
    case xprod::ExpectationKind::Identity:
      s.e = oracle::Expectation::Identity;
      break;
  }
  return s;
}

// Coefficients of xi in natural order.
inline std::vector<oracle::Complex> natural_weights(const xprod::L2Vector& xi, int n) {
  std::vector<oracle::Complex> k(static_cast<std::size_t>(n));
  for (int g = 0; g < n; ++g) k[static_cast<std::size_t>(g)] = xi.at(xprod::GroupElement(std::int64_t{g}));
  return k;
}

}  // namespace testing_support
