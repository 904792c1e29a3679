#include "xprod/cli.hpp"

#include <cmath>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "xprod/crossed.hpp"
#include "xprod/errors.hpp"
#include "xprod/freecomb.hpp"
#include "xprod/posdef.hpp"
#include "xprod/report.hpp"
#include "xprod/sigma.hpp"
#include "xprod/summation.hpp"

namespace xprod::cli {

using Json = nlohmann::ordered_json;

std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

namespace {

std::int64_t parse_int(std::string_view s) {
  try {
    std::size_t used = 0;
    const std::string str(s);
    const auto v = std::stoll(str, &used);
    if (used != str.size()) throw std::invalid_argument(str);
    return v;
  } catch (const std::exception&) {
    throw DomainError("not an integer: '" + std::string(s) + "'");
  }
}

double parse_double(std::string_view s) {
  try {
    std::size_t used = 0;
    const std::string str(s);
    const double v = std::stod(str, &used);
    if (used != str.size()) throw std::invalid_argument(str);
    return v;
  } catch (const std::exception&) {
    throw DomainError("not a number: '" + std::string(s) + "'");
  }
}

std::optional<std::pair<std::int64_t, std::int64_t>> parse_range(std::string_view text) {
  const auto dots = text.find("..");
  if (dots == std::string_view::npos) return std::nullopt;
  const auto lo = parse_int(text.substr(0, dots));
  const auto hi = parse_int(text.substr(dots + 2));
  if (lo > hi) throw DomainError("empty range '" + std::string(text) + "'");
  return std::pair{lo, hi};
}

bool starts_with(std::string_view s, std::string_view p) { return s.substr(0, p.size()) == p; }

}  // namespace

std::vector<GroupElement> parse_set(const GroupSpec& spec, std::string_view text) {
  if (starts_with(text, "ball:")) {
    const auto b = ball(spec, static_cast<std::size_t>(parse_int(text.substr(5))));
    return {b.elements().begin(), b.elements().end()};
  }
  if (starts_with(text, "folner:")) return folner_set(spec, static_cast<std::size_t>(parse_int(text.substr(7))));
  if (const auto range = parse_range(text)) {
    if (spec.kind() != GroupKind::Integers && spec.kind() != GroupKind::Cyclic)
      throw DomainError("integer ranges need Z or a cyclic group");
    std::vector<GroupElement> out;
    for (auto v = range->first; v <= range->second; ++v) {
      GroupElement g(v);
      validate(spec, g);
      out.push_back(g);
    }
    return out;
  }
  std::vector<GroupElement> out;
  for (const auto& item : split_top_level(text)) out.push_back(parse_element(spec, item));
  return out;
}

std::vector<std::size_t> parse_radii(std::string_view text) {
  std::vector<std::size_t> out;
  auto push = [&out](std::int64_t v) {
    if (v < 0) throw DomainError("radii must be nonnegative");
    out.push_back(static_cast<std::size_t>(v));
  };
  if (const auto range = parse_range(text)) {
    for (auto v = range->first; v <= range->second; ++v) push(v);
  } else {
    for (const auto& item : split_top_level(text)) push(parse_int(item));
  }
  if (out.empty()) throw DomainError("empty radius list");
  return out;
}

namespace {

struct Common {
  std::string out = ".";
  std::uint64_t seed = 1;
  std::size_t cap = kDefaultEnumerationCap;
  std::string group = "Z";
};

struct FunctionOptions {
  std::string set;
  std::string xi;
  std::vector<double> haagerup;
  bool indicator = false;
};

struct ContextOptions {
  std::string algebra = "scalars";
  std::size_t dim = 1;
  std::string action = "trivial";
  std::optional<std::size_t> window;
  std::string xi = "uniform";
};

struct Result {
  Json summary;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool pass = true;
};

GroupSpec group_of(const Common& c) { return parse_group(c.group); }

L2Vector parse_xi(const GroupSpec& spec, std::string_view text) {
  if (text == "uniform") {
    if (!spec.is_finite()) throw DomainError("xi 'uniform' needs a finite group");
    const auto all = ball(spec, spec.order().value());
    return L2Vector::normalized_indicator(spec, all.elements());
  }
  if (text == "delta") return L2Vector::delta(spec, spec.identity());
  if (starts_with(text, "set:")) {
    const auto set = parse_set(spec, text.substr(4));
    return L2Vector::normalized_indicator(spec, set);
  }
  if (starts_with(text, "weights:")) {
    std::vector<std::pair<GroupElement, Complex>> entries;
    for (const auto& item : split_top_level(text.substr(8))) {
      const auto eq = item.rfind('=');
      if (eq == std::string::npos) throw DomainError("weights need the form element=weight");
      entries.emplace_back(parse_element(spec, item.substr(0, eq)), parse_double(item.substr(eq + 1)));
    }
    return L2Vector::normalized(spec, std::move(entries));
  }
  const auto set = parse_set(spec, text);
  return L2Vector::normalized_indicator(spec, set);
}

std::vector<PdFunction> collect_functions(const GroupSpec& spec, const FunctionOptions& f) {
  std::vector<PdFunction> out;
  if (!f.set.empty()) out.push_back(chi_from_set(spec, parse_set(spec, f.set)));
  if (!f.xi.empty()) out.push_back(chi_from_vector(parse_xi(spec, f.xi)));
  for (double eps : f.haagerup) out.push_back(haagerup(spec, eps));
  if (f.indicator) out.push_back(identity_indicator(spec));
  if (out.empty()) throw DomainError("choose a function: --set, --xi, --haagerup or --indicator");
  return out;
}

PdFunction product_of(const std::vector<PdFunction>& fs) {
  auto f = fs.front();
  for (std::size_t i = 1; i < fs.size(); ++i) f = pointwise_product(f, fs[i]);
  return f;
}

std::shared_ptr<const CrossedContext> make_context(const GroupSpec& spec, const ContextOptions& o) {
  CoeffAlgebra algebra;
  if (o.algebra == "scalars") {
    algebra = CoeffAlgebra::scalars(o.dim);
  } else if (o.algebra == "diag") {
    algebra = CoeffAlgebra::diagonal(o.dim);
  } else if (o.algebra == "full") {
    algebra = CoeffAlgebra::full(o.dim);
  } else {
    throw DomainError("unknown algebra '" + o.algebra + "' (scalars, diag, full)");
  }
  ActionSpec action;
  if (o.action == "trivial") {
    action = ActionSpec::trivial();
  } else if (o.action == "swap") {
    action = ActionSpec::swap(spec);
  } else if (o.action == "translation") {
    action = ActionSpec::translation(spec);
  } else {
    throw DomainError("unknown action '" + o.action + "' (trivial, swap, translation)");
  }
  if (spec.is_finite()) {
    if (o.window) throw DomainError("finite groups use the whole group as window; drop --window");
    return std::make_shared<const CrossedContext>(CrossedContext::finite(spec, algebra, action));
  }
  if (!o.window) throw DomainError("infinite group " + spec.name() + " needs --window");
  return std::make_shared<const CrossedContext>(spec, *o.window, algebra, action);
}

Json context_json(const CrossedContext& ctx) {
  return {{"group", ctx.group().name()},
          {"window_radius", ctx.window().radius()},
          {"window_size", ctx.window_size()},
          {"algebra", ctx.algebra().name()},
          {"action", ctx.action().label},
          {"expectation", ctx.expectation().name()}};
}

std::string fmt(double v) { return format_double(v); }

// --- subcommands -------------------------------------------------------------

Result run_balls(const Common& c, std::size_t radius) {
  const auto spec = group_of(c);
  const auto b = ball(spec, radius, c.cap);
  const bool free_std = spec.kind() == GroupKind::Free && spec.parameter() >= 2 && spec.has_standard_generators();
  Result r;
  r.header = {"n", "sphere_size", "ball_size", "closed_ball_size"};
  for (std::size_t n = 0; n <= radius; ++n) {
    const auto sphere_n = b.sphere(n).size();
    std::size_t ball_n = 0;
    for (std::size_t m = 0; m <= n; ++m) ball_n += b.sphere(m).size();
    std::string closed;
    if (free_std) {
      const auto formula = ball_size(spec.parameter(), n);
      closed = to_string(formula);
      if (formula != ball_n || sphere_size(spec.parameter(), n) != sphere_n) r.pass = false;
    }
    r.rows.push_back({std::to_string(n), std::to_string(sphere_n), std::to_string(ball_n), closed});
  }
  r.summary["group"] = spec.name();
  r.summary["radius"] = radius;
  r.summary["ball_size"] = b.size();
  r.summary["closed_forms_checked"] = free_std;
  return r;
}

Result run_chi(const Common& c, const FunctionOptions& fo, const std::string& at, std::optional<std::size_t> radius) {
  const auto spec = group_of(c);
  std::vector<GroupElement> points;
  if (!at.empty()) {
    points = parse_set(spec, at);
  } else {
    const auto b = ball(spec, radius.value_or(2), c.cap);
    points.assign(b.elements().begin(), b.elements().end());
  }
  const auto fs = collect_functions(spec, fo);
  const auto f = product_of(fs);
  const bool exact = fs.size() == 1 && !fo.set.empty();
  std::vector<GroupElement> set;
  if (exact) set = parse_set(spec, fo.set);

  Result r;
  r.header = {"element", "value", "value_real", "value_imag"};
  for (const auto& g : points) {
    const Complex v = f(g);
    std::string shown = exact ? to_string(chi_set_exact(spec, set, g)) : fmt(v.real());
    if (!exact && v.imag() != 0.0) shown += (v.imag() < 0 ? "-" : "+") + fmt(std::abs(v.imag())) + "i";
    std::cout << "chi(" << to_string(spec, g) << ") = " << shown << "\n";
    r.rows.push_back({to_string(spec, g), shown, fmt(v.real()), fmt(v.imag())});
  }
  r.summary["group"] = spec.name();
  r.summary["function"] = f.label();
  r.summary["exact"] = exact;
  r.summary["points"] = points.size();
  return r;
}

Result run_psd(const Common& c, const FunctionOptions& fo, std::size_t radius, std::optional<double> tol) {
  const auto spec = group_of(c);
  const auto b = ball(spec, radius, c.cap);
  const auto fs = collect_functions(spec, fo);
  Result r;
  r.header = {"function", "ball_radius", "gram_dimension", "min_eigenvalue", "tolerance", "verdict"};
  auto report_row = [&](const PdFunction& f) {
    const auto rep = check_positive_definite(f, b, tol);
    r.rows.push_back({f.label(), std::to_string(rep.ball_radius), std::to_string(rep.gram_dimension),
                      fmt(rep.min_eigenvalue), fmt(rep.tolerance), to_string(rep.verdict)});
    if (rep.verdict == Verdict::Fail) r.pass = false;
    return rep;
  };
  for (const auto& f : fs) report_row(f);
  Json reports = Json::array();
  if (fs.size() > 1) reports.push_back(to_json(report_row(product_of(fs))));
  r.summary["group"] = spec.name();
  r.summary["hermitian_defect"] = hermitian_defect(product_of(fs), b);
  r.summary["product_report"] = reports.empty() ? Json(nullptr) : reports[0];
  return r;
}

Result run_sigma(const Common& c, const ContextOptions& co, std::size_t mmax, std::size_t trials, double tol) {
  const auto spec = group_of(c);
  const auto ctx = make_context(spec, co);
  const auto xi = parse_xi(spec, co.xi);
  const auto pair = xprod::make_pair(ctx, xi);

  Result r;
  r.header = {"m", "trials", "min_eigenvalue_seen", "max_bimodular_defect", "max_eigenrelation_defect",
              "condition_ii_margin", "verdict", "witness"};
  auto opt = [](const std::optional<double>& v) { return v ? fmt(*v) : std::string(); };
  Json reports = Json::array();
  for (std::size_t m = 1; m <= mmax; ++m) {
    const auto rep = cp_check(pair, {m, trials, tol, 1e-12, c.seed});
    if (rep.verdict == Verdict::Fail) r.pass = false;
    r.rows.push_back({std::to_string(m), std::to_string(rep.trials), opt(rep.min_eigenvalue_seen),
                      opt(rep.max_bimodular_defect), opt(rep.max_eigenrelation_defect), opt(rep.condition_ii_margin),
                      to_string(rep.verdict), rep.witness});
    reports.push_back(to_json(rep));
  }

  const auto id = BlockMatrix::identity(*ctx);
  const double unital = (pair.sigma(id) - id).norm();
  if (unital > 1e-12) r.pass = false;

  double chi_one_defect = 0.0;
  Json chi_values = Json::object();
  for (const auto& g : ctx->window().elements()) {
    const double v = pair.chi(g).real();
    chi_values[to_string(spec, g)] = v;
    chi_one_defect = std::max(chi_one_defect, std::abs(v - 1.0));
  }

  r.summary["context"] = context_json(*ctx);
  r.summary["unital_defect"] = unital;
  r.summary["chi"] = chi_values;
  r.summary["chi_identically_one"] = chi_one_defect <= 1e-12;
  r.summary["reports"] = reports;
  return r;
}

Result run_pi(const Common& c, const ContextOptions& co, std::size_t trials) {
  const auto spec = group_of(c);
  const auto ctx = make_context(spec, co);
  const auto pair = xprod::make_pair(ctx, parse_xi(spec, co.xi));
  Rng rng(c.seed);
  Result r;
  r.header = {"sample", "idempotency_defect", "span_defect", "amplification"};
  double worst_idem = 0.0;
  double worst_span = 0.0;
  double worst_amp = 0.0;
  const auto& w = ctx->window();
  for (std::size_t s = 0; s < trials; ++s) {
    auto x = BlockMatrix::random_gaussian(*ctx, rng);
    x = x * Complex(1.0 / x.norm());
    const auto p1 = pi_projection(pair, x);
    const auto p2 = pi_projection(pair, p1.value);
    const double idem = (p2.value - p1.value).norm();

    CoefficientList coeffs(w.size());
    for (auto& co_g : coeffs) co_g = ctx->algebra().random_element(rng);
    auto y = theta_embed(*ctx, coeffs);
    y = y * Complex(1.0 / y.norm());
    const double span = (pi_projection(pair, y).value - y).norm();

    worst_idem = std::max(worst_idem, idem);
    worst_span = std::max(worst_span, span);
    worst_amp = std::max(worst_amp, p1.amplification);
    r.rows.push_back({std::to_string(s), fmt(idem), fmt(span), fmt(p1.amplification)});
  }
  r.pass = worst_idem <= 1e-10 && worst_span <= 1e-12;
  r.summary["context"] = context_json(*ctx);
  r.summary["trials"] = trials;
  r.summary["max_idempotency_defect"] = worst_idem;
  r.summary["max_span_defect"] = worst_span;
  r.summary["max_amplification"] = worst_amp;
  return r;
}

Result run_freecount(const Common& c, int k, std::size_t lmax, std::size_t nmax) {
  const auto rows = free_count_table(k, lmax, nmax, c.cap);
  Result r;
  r.header = {"k", "ell", "n", "closed", "brute", "ratio_num", "ratio_den", "limit_num", "limit_den"};
  for (const auto& row : rows) {
    if (row.closed != row.brute) r.pass = false;
    r.rows.push_back({std::to_string(row.k), std::to_string(row.ell), std::to_string(row.n), to_string(row.closed),
                      to_string(row.brute), to_string(numerator_of(row.ratio)), to_string(denominator_of(row.ratio)),
                      to_string(numerator_of(row.limit)), to_string(denominator_of(row.limit))});
  }
  r.summary["k"] = k;
  r.summary["lmax"] = lmax;
  r.summary["nmax"] = nmax;
  r.summary["rows"] = rows.size();
  return r;
}

TrigPolynomial parse_trig(std::string_view text) {
  std::map<std::int64_t, Complex> coeffs;
  for (const auto& item : split_top_level(text)) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw DomainError("coefficients need the form k:c");
    coeffs[parse_int(item.substr(0, colon))] += parse_double(item.substr(colon + 1));
  }
  return TrigPolynomial(std::move(coeffs));
}

Result run_cesaro(const std::string& coeffs, std::int64_t nmin, std::int64_t nmax, std::optional<std::size_t> points,
                  double tol) {
  const auto f = parse_trig(coeffs);
  bool nonnegative = true;
  double moment = 0.0;  // sum |k| |c_k|
  for (const auto& [k, ck] : f.coefficients()) {
    if (ck.imag() != 0.0 || ck.real() < 0.0) nonnegative = false;
    moment += static_cast<double>(k < 0 ? -k : k) * std::abs(ck);
  }
  const auto grid = points.value_or(static_cast<std::size_t>(64 * f.degree() + 1));
  Result r;
  r.header = {"n", "grid_error", "predicted", "difference"};
  for (auto n = nmin; n <= nmax; ++n) {
    const double err = sup_norm_grid(cesaro_mean(f, n), f, grid);
    const double predicted = moment / static_cast<double>(n + 1);
    const double diff = err - predicted;
    // Equality for nonnegative coefficients with n >= degree; an upper bound otherwise.
    if (nonnegative && n >= f.degree() ? std::abs(diff) > tol : diff > tol) r.pass = false;
    r.rows.push_back({std::to_string(n), fmt(err), fmt(predicted), fmt(diff)});
  }
  r.summary["degree"] = f.degree();
  r.summary["grid_points"] = grid;
  r.summary["nonnegative_coefficients"] = nonnegative;
  r.summary["first_moment"] = moment;
  r.summary["weight_2_1"] = to_string(cesaro_weight(2, 1));
  return r;
}

Result run_folner(const Common& c, const std::string& t_text, const std::string& radii) {
  const auto spec = group_of(c);
  const auto t = parse_element(spec, t_text);
  const auto rs = parse_radii(radii);
  const auto rows = folner_study(spec, t, rs);
  Result r;
  r.header = {"n", "set_size", "symmetric_difference", "defect", "chi", "identity_holds"};
  Json out = Json::array();
  for (const auto& row : rows) {
    if (!row.identity_holds) r.pass = false;
    r.rows.push_back({std::to_string(row.n), to_string(row.set_size), to_string(row.symmetric_difference),
                      to_string(row.defect), to_string(row.chi), row.identity_holds ? "true" : "false"});
    out.push_back(to_json(row));
  }
  r.summary["group"] = spec.name();
  r.summary["t"] = to_string(spec, t);
  r.summary["rows"] = out;
  return r;
}

Result run_limit(const Common& c, const std::string& radii, const std::string& targets, const std::string& recipe,
                 const std::string& limit) {
  const auto spec = group_of(c);
  std::vector<LimitTarget> ts;
  for (const auto& g : parse_set(spec, targets)) ts.push_back({to_string(spec, g), {{g, 1.0}}});
  std::optional<PdFunction> chi;
  if (limit == "one") {
    chi = constant_one(spec);
  } else if (limit == "free") {
    chi = free_chi_limit(spec);
  } else {
    throw DomainError("unknown limit '" + limit + "' (one, free)");
  }
  XiRecipe how;
  if (recipe == "ball") {
    how = XiRecipe::Ball;
  } else if (recipe == "folner") {
    how = XiRecipe::Folner;
  } else {
    throw DomainError("unknown recipe '" + recipe + "' (ball, folner)");
  }
  const auto rs = parse_radii(radii);
  const auto table = sequence_limit_study(spec, rs, ts, *chi, how);
  Result r;
  r.header = {"radius", "g-label", "value", "bound", "margin"};
  r.rows = to_csv_rows(table);
  for (const auto& row : table.rows)
    if (row.margin < -1e-10) r.pass = false;
  r.summary["group"] = spec.name();
  r.summary["table"] = to_json(table);
  return r;
}

void emit(const Common& c, const std::string& command, Result& r) {
  const std::filesystem::path dir(c.out);
  std::filesystem::create_directories(dir);
  Json doc;
  doc["command"] = command;
  doc["version"] = kVersion;
  doc["ordering_version"] = kBallOrderingVersion;
  doc["seed"] = c.seed;
  doc["verdict"] = r.pass ? "Pass" : "Fail";
  for (auto& [key, value] : r.summary.items()) doc[key] = value;
  write_atomic(dir / (command + ".csv"), to_csv(r.header, r.rows));
  write_atomic(dir / (command + ".json"), doc.dump(2) + "\n");
  std::cout << command << ": " << (r.pass ? "Pass" : "Fail") << " (" << (dir / (command + ".json")).string()
            << ")\n";
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Crossed-product and positive-definite-function experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string("xprod ") + kVersion + " (ball ordering v" +
                                        std::to_string(kBallOrderingVersion) + ")");
  app.set_config("--config", "", "Read options from a key=value file ([section] keys apply to that subcommand)");

  Common common;
  app.add_option("--out", common.out, "Output directory")->capture_default_str();
  app.add_option("--seed", common.seed, "Random seed")->capture_default_str();
  app.add_option("--cap", common.cap, "Enumeration cap")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--group", common.group, "Group: Z, Z^d, C<n>, F<k>, or products like Z^2xC3")
      ->capture_default_str();

  std::string command;
  auto* balls = app.add_subcommand("balls", "Ball and sphere sizes");
  std::size_t balls_radius = 3;
  balls->add_option("--radius", balls_radius)->capture_default_str();

  auto add_function = [](CLI::App* sub, FunctionOptions& f) {
    sub->add_option("--set", f.set, "chi_S for a set: a..b, ball:N, folner:N, or a list");
    sub->add_option("--xi", f.xi, "chi_xi for uniform, delta, set:..., weights:g=w,...");
    sub->add_option("--haagerup", f.haagerup, "exp(-eps length)");
    sub->add_flag("--indicator", f.indicator, "Indicator of the identity");
  };

  FunctionOptions chi_f;
  std::string chi_at;
  std::optional<std::size_t> chi_radius;
  auto* chi = app.add_subcommand("chi", "Evaluate a positive definite function");
  add_function(chi, chi_f);
  chi->add_option("--at", chi_at, "Elements to evaluate at (default: a ball)");
  chi->add_option("--radius", chi_radius, "Evaluate on this ball when --at is absent");

  FunctionOptions psd_f;
  std::size_t psd_radius = 3;
  std::optional<double> psd_tol;
  auto* psd = app.add_subcommand("psd", "Gram-matrix positivity report");
  add_function(psd, psd_f);
  psd->add_option("--radius", psd_radius)->capture_default_str();
  psd->add_option("--tol", psd_tol, "Eigenvalue tolerance (default scales with the spectral norm)")
      ->check(CLI::PositiveNumber);

  auto add_context = [](CLI::App* sub, ContextOptions& o) {
    sub->add_option("--algebra", o.algebra, "scalars, diag, full")->capture_default_str();
    sub->add_option("--dim", o.dim, "Coefficient dimension")->capture_default_str()->check(CLI::PositiveNumber);
    sub->add_option("--action", o.action, "trivial, swap, translation")->capture_default_str();
    sub->add_option("--window", o.window, "Window radius (infinite groups)");
    sub->add_option("--xi", o.xi, "uniform, delta, ball:N, set:..., weights:g=w,...")->capture_default_str();
  };

  ContextOptions sigma_c;
  std::size_t sigma_m = 3;
  std::size_t sigma_trials = 100;
  double sigma_tol = 1e-10;
  auto* sigma = app.add_subcommand("sigma", "CP, bimodularity, eigenrelation and condition (ii) sweeps");
  add_context(sigma, sigma_c);
  sigma->add_option("--m", sigma_m, "Largest amplification level")->capture_default_str()->check(CLI::Range(1, 3));
  sigma->add_option("--trials", sigma_trials)->capture_default_str();
  sigma->add_option("--tol", sigma_tol)->capture_default_str()->check(CLI::PositiveNumber);

  ContextOptions pi_c;
  std::size_t pi_trials = 100;
  auto* pi = app.add_subcommand("pi", "Idempotency and amplification of Pi");
  add_context(pi, pi_c);
  pi->add_option("--trials", pi_trials)->capture_default_str();

  int fc_k = 2;
  std::size_t fc_lmax = 3;
  std::size_t fc_nmax = 7;
  auto* freecount = app.add_subcommand("freecount", "Closed-form vs brute-force translate counts in F_k");
  freecount->add_option("--k", fc_k)->capture_default_str()->check(CLI::Range(2, 25));
  freecount->add_option("--lmax", fc_lmax)->capture_default_str();
  freecount->add_option("--nmax", fc_nmax)->capture_default_str();

  std::string ces_coeffs = "0:1,1:1,-1:1,2:0.5,-2:0.5,3:0.25,-3:0.25,4:0.125,-4:0.125,5:0.0625,-5:0.0625";
  std::int64_t ces_nmin = 5;
  std::int64_t ces_nmax = 50;
  std::optional<std::size_t> ces_points;
  double ces_tol = 1e-10;
  auto* cesaro = app.add_subcommand("cesaro", "Fejer means of a trigonometric polynomial");
  cesaro->add_option("--coeffs", ces_coeffs, "k:c,k:c,...")->capture_default_str();
  cesaro->add_option("--nmin", ces_nmin)->capture_default_str()->check(CLI::NonNegativeNumber);
  cesaro->add_option("--nmax", ces_nmax)->capture_default_str()->check(CLI::NonNegativeNumber);
  cesaro->add_option("--points", ces_points, "Grid size (default 64 * degree + 1)");
  cesaro->add_option("--tol", ces_tol)->capture_default_str()->check(CLI::PositiveNumber);

  std::string fol_t = "1";
  std::string fol_radii = "1..10";
  auto* folner = app.add_subcommand("folner", "Folner defect and chi on amenable groups");
  folner->add_option("--t", fol_t)->capture_default_str();
  folner->add_option("--radii", fol_radii)->capture_default_str();

  std::string lim_radii = "1..4";
  std::string lim_targets = "1";
  std::string lim_recipe = "ball";
  std::string lim_limit = "one";
  auto* limit = app.add_subcommand("limit", "Distance of sigma_n(x) to the limiting multiplier");
  limit->add_option("--radii", lim_radii)->capture_default_str();
  limit->add_option("--targets", lim_targets)->capture_default_str();
  limit->add_option("--recipe", lim_recipe, "ball, folner")->capture_default_str();
  limit->add_option("--limit", lim_limit, "one, free")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  const auto* sub = app.get_subcommands().front();
  command = sub->get_name();
  try {
    Result r;
    if (sub == balls) r = run_balls(common, balls_radius);
    else if (sub == chi) r = run_chi(common, chi_f, chi_at, chi_radius);
    else if (sub == psd) r = run_psd(common, psd_f, psd_radius, psd_tol);
    else if (sub == sigma) r = run_sigma(common, sigma_c, sigma_m, sigma_trials, sigma_tol);
    else if (sub == pi) r = run_pi(common, pi_c, pi_trials);
    else if (sub == freecount) r = run_freecount(common, fc_k, fc_lmax, fc_nmax);
    else if (sub == cesaro) r = run_cesaro(ces_coeffs, ces_nmin, ces_nmax, ces_points, ces_tol);
    else if (sub == folner) r = run_folner(common, fol_t, fol_radii);
    else r = run_limit(common, lim_radii, lim_targets, lim_recipe, lim_limit);
    emit(common, command, r);
    return r.pass ? kPass : kCheckFailed;
  } catch (const ResourceCapError& e) {
    std::cerr << command << ": resource cap: " << e.what() << "\n";
    return kResourceCap;
  } catch (const DomainError& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << command << ": numerical failure: " << e.what() << "\n";
    return kCheckFailed;
  } catch (const std::exception& e) {
    std::cerr << command << ": " << e.what() << "\n";
    return kInternalError;
  }
}

int run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace xprod::cli
