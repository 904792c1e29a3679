#include "xprod/sigma.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <unordered_map>

#include "xprod/errors.hpp"
#include "xprod/report.hpp"

namespace xprod {

namespace {

using Idx = Eigen::Index;

struct SupportEntry {
  GroupElement g;
  Complex k;
  std::optional<std::size_t> index;  // position in the window
};

std::vector<SupportEntry> locate_support(const CrossedContext& ctx, const L2Vector& xi, WindowMode mode) {
  if (!(xi.spec() == ctx.group())) throw DomainError("vector and context use different groups");
  std::vector<SupportEntry> out;
  for (const auto& [g, k] : xi.entries()) {
    auto index = ctx.window().find(g);
    if (!index && mode == WindowMode::Exact) {
      throw DomainError("support of xi leaves the window at " + to_string(ctx.group(), g) +
                        "; enlarge the window or request WindowMode::Approximate");
    }
    out.push_back({g, k, index});
  }
  return out;
}

void require_window(const CrossedContext& ctx, const BlockMatrix& x) {
  if (x.block_dim() != ctx.block_dim() || !same_window(x.window(), ctx.window()))
    throw DomainError("operator does not live on the context window");
}

std::optional<double> worst(std::optional<double> a, double b, bool take_min) {
  if (!a) return b;
  return take_min ? std::min(*a, b) : std::max(*a, b);
}

nlohmann::ordered_json opt_json(const std::optional<double>& v) {
  if (!v) return nullptr;
  return *v;
}

}  // namespace

std::vector<TranslationTerm> sigma_terms(const CrossedContext& ctx, const L2Vector& xi, const BlockMatrix& x,
                                         WindowMode mode) {
  require_window(ctx, x);
  const auto support = locate_support(ctx, xi, mode);
  const auto& group = ctx.group();
  std::vector<TranslationTerm> terms;
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> slot;
  for (const auto& h : support) {
    if (!h.index) continue;
    const auto h_inv = inverse(group, h.g);
    for (const auto& g : support) {
      if (!g.index) continue;
      const Complex c = std::conj(g.k) * h.k;
      Matrix r = c * ctx.alpha(*h.index, ctx.pi(x.block(*g.index, *h.index)));
      auto t = multiply(group, g.g, h_inv);
      const auto [it, fresh] = slot.try_emplace(t, terms.size());
      if (fresh) {
        terms.push_back({std::move(t), std::move(r)});
      } else {
        terms[it->second].r += r;
      }
    }
  }
  return terms;
}

BlockMatrix sigma_xi(const CrossedContext& ctx, const L2Vector& xi, const BlockMatrix& x, WindowMode mode,
                     ExecPolicy policy) {
  const auto terms = sigma_terms(ctx, xi, x, mode);
  return theta_embed(ctx, std::span<const TranslationTerm>(terms), policy);
}

BlockMatrix tau_u(const CrossedContext& ctx, const L2Vector& xi, const GroupElement& u, const BlockMatrix& x) {
  if (!ctx.exact()) throw DomainError("tau_u needs a finite group");
  require_window(ctx, x);
  const auto support = locate_support(ctx, xi, WindowMode::Exact);
  const auto& group = ctx.group();
  const auto& w = ctx.window();
  const auto iu = w.index_of(u);
  const auto u_inv = inverse(group, u);
  const auto d = static_cast<Idx>(ctx.block_dim());
  Matrix out = Matrix::Zero(x.data().rows(), x.data().cols());
  for (const auto& g : support) {
    const auto a = w.index_of(multiply(group, g.g, u_inv));
    for (const auto& h : support) {
      const auto b = w.index_of(multiply(group, h.g, u_inv));
      out.block(static_cast<Idx>(a) * d, static_cast<Idx>(b) * d, d, d) +=
          std::conj(g.k) * h.k * ctx.alpha(iu, ctx.pi(x.block(*g.index, *h.index)));
    }
  }
  return {ctx.window_ptr(), ctx.block_dim(), std::move(out)};
}

Matrix phi_t(const CrossedContext& ctx, const L2Vector& xi, const GroupElement& t, const BlockMatrix& x) {
  require_window(ctx, x);
  const auto support = locate_support(ctx, xi, WindowMode::Exact);
  const auto& group = ctx.group();
  const auto d = static_cast<Idx>(ctx.block_dim());
  Complex chi = 0.0;
  Matrix r = Matrix::Zero(d, d);
  for (const auto& h : support) {
    const auto th = multiply(group, t, h.g);
    const Complex k_th = xi.at(th);
    if (k_th == Complex(0.0)) continue;
    const auto ith = ctx.window().find(th);
    if (!ith) throw DomainError("support of xi leaves the window");
    const Complex c = std::conj(k_th) * h.k;
    chi += c;
    r += c * ctx.alpha(*h.index, ctx.pi(x.block(*ith, *h.index)));
  }
  if (std::abs(chi) <= 1e-14)
    throw DomainError("chi_xi vanishes at " + to_string(group, t) + "; Phi_t is undefined");
  return r / chi;
}

ExpectationPair make_pair(std::shared_ptr<const CrossedContext> ctx, const L2Vector& xi) {
  if (!ctx) throw DomainError("missing context");
  if (!xi.strictly_positive()) throw DomainError("xi must have strictly positive entries");
  locate_support(*ctx, xi, WindowMode::Exact);
  auto chi = chi_from_vector(xi);
  for (const auto& g : ctx->window().elements()) {
    if (chi(g).real() <= 0.0)
      throw DomainError("chi_xi is not strictly positive on the window (vanishes at " +
                        to_string(ctx->group(), g) + ")");
  }
  auto sigma = [ctx, xi](const BlockMatrix& x) { return sigma_xi(*ctx, xi, x); };
  return {ctx, std::move(chi), std::move(sigma)};
}

ExpectationPair combine_pairs(const std::vector<std::pair<double, ExpectationPair>>& terms) {
  if (terms.empty()) throw DomainError("empty convex combination");
  const auto ctx = terms.front().second.ctx;
  std::vector<std::pair<double, PdFunction>> chis;
  std::vector<std::pair<double, BlockMap>> maps;
  for (const auto& [w, pair] : terms) {
    if (!same_window(pair.ctx->window(), ctx->window()) || pair.ctx->block_dim() != ctx->block_dim())
      throw DomainError("pairs live on different contexts");
    chis.emplace_back(w, pair.chi);
    maps.emplace_back(w, pair.sigma);
  }
  auto chi = convex_combination(chis);
  auto sigma = [ctx, maps](const BlockMatrix& x) {
    auto out = BlockMatrix::zero(*ctx);
    for (const auto& [w, f] : maps) out = out + f(x) * Complex(w);
    return out;
  };
  return {ctx, std::move(chi), std::move(sigma)};
}

nlohmann::ordered_json to_json(const CpReport& r) {
  nlohmann::ordered_json j;
  j["amplification_level"] = r.amplification_level;
  j["trials"] = r.trials;
  j["min_eigenvalue_seen"] = opt_json(r.min_eigenvalue_seen);
  j["max_bimodular_defect"] = opt_json(r.max_bimodular_defect);
  j["max_eigenrelation_defect"] = opt_json(r.max_eigenrelation_defect);
  j["condition_ii_margin"] = opt_json(r.condition_ii_margin);
  j["tolerance"] = r.tolerance;
  j["defect_tolerance"] = r.defect_tolerance;
  j["verdict"] = to_string(r.verdict);
  j["witness"] = r.witness;
  return j;
}

double translation_block_norm(const CrossedContext& ctx, const BlockMatrix& y, std::size_t g_index) {
  const auto& w = ctx.window();
  const auto& g = w[g_index];
  double best = 0.0;
  for (std::size_t b = 0; b < w.size(); ++b) {
    if (const auto a = w.find(multiply(ctx.group(), g, w[b])))
      best = std::max(best, operator_norm(y.block(*a, b)));
  }
  return best;
}

CpReport check_condition_ii(const ExpectationPair& pair, std::span<const BlockMatrix> samples, double tol) {
  const auto& ctx = *pair.ctx;
  const auto& w = ctx.window();
  std::vector<double> chi(w.size());
  for (std::size_t g = 0; g < w.size(); ++g) chi[g] = pair.chi(w[g]).real();

  CpReport report;
  report.trials = samples.size();
  report.tolerance = tol;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const double nx = samples[s].norm();
    const auto y = pair.sigma(samples[s]);
    for (std::size_t g = 0; g < w.size(); ++g) {
      const double margin = chi[g] * nx - translation_block_norm(ctx, y, g);
      report.condition_ii_margin = worst(report.condition_ii_margin, margin, true);
      if (margin < -tol && report.verdict == Verdict::Pass) {
        report.verdict = Verdict::Fail;
        std::ostringstream msg;
        msg << "sample " << s << ", g = " << to_string(ctx.group(), w[g]) << ", margin " << margin;
        report.witness = msg.str();
      }
    }
  }
  return report;
}

PiResult pi_projection(const ExpectationPair& pair, const BlockMatrix& x, double floor) {
  const auto& ctx = *pair.ctx;
  const auto& w = ctx.window();
  const auto y = pair.sigma(x);
  const Matrix gram = gram_matrix(pair.chi, w);
  const auto d = static_cast<Idx>(ctx.block_dim());
  Matrix data = y.data();
  for (Idx i = 0; i < gram.rows(); ++i) {
    for (Idx j = 0; j < gram.cols(); ++j) {
      auto blk = data.block(i * d, j * d, d, d);
      if (std::abs(gram(i, j)) < floor) {
        if (max_abs(blk) > 0.0) {
          const auto t = multiply(ctx.group(), w[static_cast<std::size_t>(i)],
                                  inverse(ctx.group(), w[static_cast<std::size_t>(j)]));
          throw DomainError("chi is below the floor at translation " + to_string(ctx.group(), t) +
                            " where sigma(x) is nonzero; x is outside the domain of Pi");
        }
        continue;
      }
      blk /= gram(i, j);
    }
  }
  PiResult out{BlockMatrix(ctx.window_ptr(), ctx.block_dim(), std::move(data)), 0.0};
  for (std::size_t g = 0; g < w.size(); ++g)
    out.amplification = std::max(out.amplification, translation_block_norm(ctx, out.value, g));
  return out;
}

CpReport cp_check(const CrossedContext& ctx, const BlockMap& map, const std::optional<PdFunction>& chi,
                  const CpOptions& options) {
  if (options.m == 0) throw DomainError("amplification level must be at least 1");
  Rng rng(options.seed);
  CpReport report;
  report.amplification_level = options.m;
  report.trials = options.trials;
  report.tolerance = options.tol;
  report.defect_tolerance = options.defect_tol;
  auto fail = [&report](const std::string& why) {
    if (report.verdict == Verdict::Pass) {
      report.verdict = Verdict::Fail;
      report.witness = why;
    }
  };

  const auto n = static_cast<Idx>(ctx.window_size() * ctx.block_dim());
  const auto m = static_cast<Idx>(options.m);
  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    Matrix big = random_psd(static_cast<std::size_t>(m * n), rng);
    big /= operator_norm(big);
    Matrix image(m * n, m * n);
    for (Idx p = 0; p < m; ++p) {
      for (Idx q = 0; q < m; ++q) {
        BlockMatrix piece(ctx.window_ptr(), ctx.block_dim(), big.block(p * n, q * n, n, n));
        image.block(p * n, q * n, n, n) = map(piece).data();
      }
    }
    const double lo = min_hermitian_eigenvalue(image);
    report.min_eigenvalue_seen = worst(report.min_eigenvalue_seen, lo, true);
    if (lo < -options.tol) fail("positivity trial " + std::to_string(trial) + ": eigenvalue " + format_double(lo));
  }

  for (std::size_t trial = 0; trial < options.trials; ++trial) {
    auto x = BlockMatrix::random_gaussian(ctx, rng);
    x = x * Complex(1.0 / x.norm());
    const auto pr = psi(ctx, ctx.algebra().random_element(rng));
    const auto ps = psi(ctx, ctx.algebra().random_element(rng));
    const double defect = (map(pr * x * ps) - pr * map(x) * ps).norm();
    report.max_bimodular_defect = worst(report.max_bimodular_defect, defect, false);
    if (defect > options.defect_tol)
      fail("bimodularity trial " + std::to_string(trial) + ": defect " + format_double(defect));
  }

  if (chi) {
    const auto& w = ctx.window();
    for (std::size_t trial = 0; trial < options.trials; ++trial) {
      const auto& g = w[trial % w.size()];
      const auto y = left_translation(ctx, g) * psi(ctx, ctx.algebra().random_element(rng));
      const double defect = (map(y) - y * (*chi)(g)).norm();
      report.max_eigenrelation_defect = worst(report.max_eigenrelation_defect, defect, false);
      if (defect > options.defect_tol)
        fail("eigenrelation at " + to_string(ctx.group(), g) + ": defect " + format_double(defect));
    }
  }
  return report;
}

CpReport cp_check(const ExpectationPair& pair, const CpOptions& options) {
  auto report = cp_check(*pair.ctx, pair.sigma, pair.chi, options);
  Rng rng(options.seed + 1);
  std::vector<BlockMatrix> samples;
  samples.reserve(options.trials);
  for (std::size_t i = 0; i < options.trials; ++i) samples.push_back(BlockMatrix::random_gaussian(*pair.ctx, rng));
  const auto ii = check_condition_ii(pair, samples, options.tol);
  report.condition_ii_margin = ii.condition_ii_margin;
  if (ii.verdict == Verdict::Fail && report.verdict == Verdict::Pass) {
    report.verdict = Verdict::Fail;
    report.witness = "condition (ii): " + ii.witness;
  }
  return report;
}

ConvergenceTable sequence_limit_study(const GroupSpec& spec, std::span<const std::size_t> radii,
                                      const std::vector<LimitTarget>& targets, const PdFunction& chi_limit,
                                      XiRecipe recipe) {
  ConvergenceTable table;
  std::map<std::string, double> previous;
  for (const auto n : radii) {
    std::vector<GroupElement> set;
    if (recipe == XiRecipe::Ball) {
      const auto b = ball(spec, n);
      set.assign(b.elements().begin(), b.elements().end());
    } else {
      set = folner_set(spec, n);
    }
    std::size_t reach = 0;
    for (const auto& g : set) reach = std::max(reach, word_length(spec, g));
    for (const auto& target : targets)
      for (const auto& [t, c] : target.terms) reach = std::max(reach, word_length(spec, t));

    const auto ctx = spec.is_finite() ? CrossedContext::finite(spec, CoeffAlgebra::scalars())
                                      : CrossedContext(spec, reach, CoeffAlgebra::scalars());
    const auto xi = L2Vector::normalized_indicator(spec, set);
    const auto chi_n = chi_from_vector(xi);

    for (const auto& target : targets) {
      std::vector<TranslationTerm> x_terms;
      std::vector<TranslationTerm> limit_terms;
      double bound = 0.0;
      for (const auto& [t, c] : target.terms) {
        x_terms.push_back({t, Matrix::Constant(1, 1, c)});
        limit_terms.push_back({t, Matrix::Constant(1, 1, chi_limit(t) * c)});
        bound += std::abs(chi_limit(t) - chi_n(t)) * std::abs(c);
      }
      const auto x = theta_embed(ctx, std::span<const TranslationTerm>(x_terms));
      const auto limit = theta_embed(ctx, std::span<const TranslationTerm>(limit_terms));
      const double value = (sigma_xi(ctx, xi, x) - limit).norm();
      table.rows.push_back({n, target.label, value, bound, bound - value});
      const auto prev = previous.find(target.label);
      if (prev != previous.end() && value > prev->second + 1e-12) table.monotone = false;
      previous[target.label] = value;
    }
  }
  return table;
}

nlohmann::ordered_json to_json(const ConvergenceTable& t) {
  nlohmann::ordered_json j;
  j["monotone"] = t.monotone;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"radius", r.radius}, {"label", r.label}, {"value", r.value}, {"bound", r.bound},
                    {"margin", r.margin}});
  }
  j["rows"] = std::move(rows);
  return j;
}

std::vector<std::vector<std::string>> to_csv_rows(const ConvergenceTable& t) {
  std::vector<std::vector<std::string>> out;
  for (const auto& r : t.rows) {
    out.push_back({std::to_string(r.radius), r.label, format_double(r.value), format_double(r.bound),
                   format_double(r.margin)});
  }
  return out;
}

}  // namespace xprod
