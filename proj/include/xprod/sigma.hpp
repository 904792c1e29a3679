#pragma once

// The completely positive maps sigma_xi built from a finitely supported unit
// vector xi in l2(G), their tau_u decomposition, the contractions Phi_t,
// expectation pairs (chi, sigma), and numerical checks of complete
// positivity, bimodularity and the diagonal bound.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "xprod/crossed.hpp"
#include "xprod/posdef.hpp"

namespace xprod {

/// r_t = sum_h conj(k_{th}) k_h alpha_h(pi(x_(th,h))), one term per t in
/// supp(xi) supp(xi)^-1, in first-seen order. Exact mode requires a finite
/// group or supp(xi) inside the window; Approximate mode drops pairs that
/// leave the window.
std::vector<TranslationTerm> sigma_terms(const CrossedContext& ctx, const L2Vector& xi, const BlockMatrix& x,
                                         WindowMode mode = WindowMode::Exact);

/// sigma_xi(x) = sum_t L_t Psi(r_t), compressed to the window.
BlockMatrix sigma_xi(const CrossedContext& ctx, const L2Vector& xi, const BlockMatrix& x,
                     WindowMode mode = WindowMode::Exact, ExecPolicy policy = ExecPolicy::Parallel);

/// tau_u(x): block (g u^-1, h u^-1) = conj(k_g) k_h alpha_u(pi(x_(g,h))).
/// Finite groups only.
BlockMatrix tau_u(const CrossedContext& ctx, const L2Vector& xi, const GroupElement& u, const BlockMatrix& x);

/// Phi_t(x) = chi_xi(t)^-1 r_t, an element of the coefficient algebra.
/// Throws DomainError when chi_xi(t) = 0.
Matrix phi_t(const CrossedContext& ctx, const L2Vector& xi, const GroupElement& t, const BlockMatrix& x);

using BlockMap = std::function<BlockMatrix(const BlockMatrix&)>;

struct ExpectationPair {
  std::shared_ptr<const CrossedContext> ctx;
  PdFunction chi;
  BlockMap sigma;
};

/// Requires xi with strictly positive entries and chi_xi > 0 on the window.
ExpectationPair make_pair(std::shared_ptr<const CrossedContext> ctx, const L2Vector& xi);
/// Convex combination of pairs over the same context.
ExpectationPair combine_pairs(const std::vector<std::pair<double, ExpectationPair>>& terms);

struct CpReport {
  std::size_t amplification_level = 1;
  std::size_t trials = 0;
  std::optional<double> min_eigenvalue_seen;
  std::optional<double> max_bimodular_defect;
  std::optional<double> max_eigenrelation_defect;
  std::optional<double> condition_ii_margin;
  double tolerance = 1e-10;
  double defect_tolerance = 1e-12;
  Verdict verdict = Verdict::Pass;
  std::string witness;
};

nlohmann::ordered_json to_json(const CpReport& r);

/// ||Diag(L_{g^-1} y)||: the largest block norm along translation g.
double translation_block_norm(const CrossedContext& ctx, const BlockMatrix& y, std::size_t g_index);

/// For every sample x and window g: ||Diag(L_{g^-1} sigma(x))|| <= chi(g) ||x|| + tol.
CpReport check_condition_ii(const ExpectationPair& pair, std::span<const BlockMatrix> samples, double tol = 1e-10);

struct PiResult {
  BlockMatrix value;
  /// max_g chi(g)^-1 ||sigma(x)_g|| over the window.
  double amplification = 0.0;
};

/// Pi(x) = M^{chi^-1} * sigma(x). Throws DomainError when a nonzero block
/// sits at a translation with chi below `floor`.
PiResult pi_projection(const ExpectationPair& pair, const BlockMatrix& x, double floor = 1e-14);

struct CpOptions {
  std::size_t m = 1;
  std::size_t trials = 100;
  double tol = 1e-10;
  double defect_tol = 1e-12;
  std::uint64_t seed = 1;
};

/// (id_m (x) map) on random PSD inputs of unit norm, bimodularity with
/// random r, s in R, and (when chi is given) the eigenrelation
/// map(L_g Psi(r)) = chi(g) L_g Psi(r).
CpReport cp_check(const CrossedContext& ctx, const BlockMap& map, const std::optional<PdFunction>& chi,
                  const CpOptions& options = {});
/// cp_check plus condition (ii) on `options.trials` Gaussian samples.
CpReport cp_check(const ExpectationPair& pair, const CpOptions& options = {});

/// One target operator: a finite sum of L_t with scalar coefficients.
struct LimitTarget {
  std::string label;
  std::vector<std::pair<GroupElement, Complex>> terms;
};

enum class XiRecipe { Ball, Folner };

struct ConvergenceRow {
  std::size_t radius = 0;
  std::string label;
  /// ||sigma_n(x) - M^{chi_limit} x|| on the window.
  double value = 0.0;
  /// sum_t |chi_limit(t) - chi_n(t)| |c_t|.
  double bound = 0.0;
  double margin = 0.0;
};

struct ConvergenceTable {
  std::vector<ConvergenceRow> rows;
  /// Every target's value is nonincreasing in the radius (within 1e-12).
  bool monotone = true;
};

/// xi_n is the normalized indicator of B_n (or of the Folner set F_n); the
/// window is the smallest ball containing supp(xi_n) and the targets, so no
/// term of sigma_n is truncated.
ConvergenceTable sequence_limit_study(const GroupSpec& spec, std::span<const std::size_t> radii,
                                      const std::vector<LimitTarget>& targets, const PdFunction& chi_limit,
                                      XiRecipe recipe = XiRecipe::Ball);

nlohmann::ordered_json to_json(const ConvergenceTable& t);
std::vector<std::vector<std::string>> to_csv_rows(const ConvergenceTable& t);

}  // namespace xprod
