#include "xprod/posdef.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "xprod/errors.hpp"

namespace xprod {

namespace {

using ElementSet = std::unordered_set<GroupElement, GroupElementHash>;

std::vector<GroupElement> difference_set(const GroupSpec& spec, std::span<const GroupElement> a) {
  std::vector<GroupElement> inv;
  inv.reserve(a.size());
  for (const auto& h : a) inv.push_back(inverse(spec, h));
  ElementSet seen;
  std::vector<GroupElement> out;
  for (const auto& g : a) {
    for (const auto& hi : inv) {
      auto t = multiply(spec, g, hi);
      if (seen.insert(t).second) out.push_back(std::move(t));
    }
    if (out.size() > kDefaultEnumerationCap) {
      throw ResourceCapError("difference set exceeds the enumeration cap");
    }
  }
  return out;
}

std::vector<GroupElement> dedupe(std::vector<GroupElement> set) {
  ElementSet seen;
  std::vector<GroupElement> out;
  out.reserve(set.size());
  for (auto& g : set) {
    if (seen.insert(g).second) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// PdFunction

PdFunction::PdFunction(GroupSpec spec, Evaluator f, std::string label, SupportKind support_kind,
                       std::vector<GroupElement> support)
    : spec_(std::move(spec)),
      f_(std::move(f)),
      label_(std::move(label)),
      support_kind_(support_kind),
      support_(std::move(support)) {
  const Complex at_e = f_(spec_.identity());
  if (std::abs(at_e - Complex(1.0, 0.0)) > 1e-12) {
    throw DomainError("positive definite function '" + label_ + "' must equal 1 at the identity");
  }
}

double hermitian_defect(const PdFunction& f, const Ball& ball) {
  double worst = 0.0;
  for (const auto& g : ball.elements()) {
    const auto gi = inverse(ball.spec(), g);
    worst = std::max(worst, std::abs(f(gi) - std::conj(f(g))));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// L2Vector

L2Vector::L2Vector(GroupSpec spec, std::vector<std::pair<GroupElement, Complex>> entries)
    : spec_(std::move(spec)) {
  for (auto& [g, k] : entries) {
    validate(spec_, g);
    if (k == Complex(0.0, 0.0)) continue;
    if (index_.contains(g)) throw DomainError("duplicate entry in l2 vector");
    index_.emplace(g, entries_.size());
    entries_.emplace_back(std::move(g), k);
  }
}

L2Vector L2Vector::from_entries(GroupSpec spec,
                                std::vector<std::pair<GroupElement, Complex>> entries) {
  L2Vector v(std::move(spec), std::move(entries));
  double norm2 = 0.0;
  for (const auto& e : v.entries_) norm2 += std::norm(e.second);
  if (std::abs(norm2 - 1.0) > 1e-12) throw DomainError("xi must be a unit vector");
  return v;
}

L2Vector L2Vector::normalized(GroupSpec spec, std::vector<std::pair<GroupElement, Complex>> entries) {
  double norm2 = 0.0;
  for (const auto& e : entries) norm2 += std::norm(e.second);
  if (norm2 == 0.0) throw DomainError("cannot normalize the zero vector");
  const double scale = 1.0 / std::sqrt(norm2);
  for (auto& e : entries) e.second *= scale;
  return from_entries(std::move(spec), std::move(entries));
}

L2Vector L2Vector::normalized_indicator(GroupSpec spec, std::span<const GroupElement> set) {
  if (set.empty()) throw DomainError("indicator of an empty set");
  auto unique = dedupe({set.begin(), set.end()});
  const double k = 1.0 / std::sqrt(static_cast<double>(unique.size()));
  std::vector<std::pair<GroupElement, Complex>> entries;
  entries.reserve(unique.size());
  for (auto& g : unique) entries.emplace_back(std::move(g), Complex(k, 0.0));
  return from_entries(std::move(spec), std::move(entries));
}

L2Vector L2Vector::delta(GroupSpec spec, const GroupElement& g) {
  return from_entries(std::move(spec), {{g, Complex(1.0, 0.0)}});
}

Complex L2Vector::at(const GroupElement& g) const {
  auto it = index_.find(g);
  return it == index_.end() ? Complex(0.0, 0.0) : entries_[it->second].second;
}

bool L2Vector::strictly_positive() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const auto& e) { return e.second.imag() == 0.0 && e.second.real() > 0.0; });
}

std::vector<GroupElement> L2Vector::support() const {
  std::vector<GroupElement> s;
  s.reserve(entries_.size());
  for (const auto& e : entries_) s.push_back(e.first);
  return s;
}

// ---------------------------------------------------------------------------
// chi_S and friends

std::size_t intersection_count(const GroupSpec& spec, std::span<const GroupElement> set,
                               const GroupElement& g, ExecPolicy policy) {
  ElementSet members(set.begin(), set.end());
  // |S cap gS| = #{h in S : g h in S}
  return kernels::count_translates(
      spec, set, g, [&members](const GroupElement& x) { return members.contains(x); }, policy);
}

Rational chi_set_exact(const GroupSpec& spec, std::span<const GroupElement> set,
                       const GroupElement& g, ExecPolicy policy) {
  if (set.empty()) throw DomainError("chi_S needs a nonempty set");
  validate(spec, g);
  auto unique = dedupe({set.begin(), set.end()});
  const auto count = intersection_count(spec, unique, g, policy);
  return Rational(BigInt(count), BigInt(unique.size()));
}

PdFunction chi_from_set(const GroupSpec& spec, std::vector<GroupElement> set) {
  if (set.empty()) throw DomainError("chi_S needs a nonempty set");
  for (const auto& g : set) validate(spec, g);
  auto unique = std::make_shared<const std::vector<GroupElement>>(dedupe(std::move(set)));
  auto members = std::make_shared<const ElementSet>(unique->begin(), unique->end());
  auto support = difference_set(spec, *unique);
  const auto size = static_cast<double>(unique->size());
  auto eval = [spec, unique, members, size](const GroupElement& g) {
    std::size_t count = 0;
    for (const auto& h : *unique) {
      if (members->contains(multiply(spec, g, h))) ++count;
    }
    return Complex(static_cast<double>(count) / size, 0.0);
  };
  return PdFunction(spec, eval, "chi_S(|S|=" + std::to_string(unique->size()) + ")",
                    SupportKind::Finite, std::move(support));
}

PdFunction chi_from_vector(const L2Vector& xi) {
  auto vec = std::make_shared<const L2Vector>(xi);
  const auto& spec = xi.spec();
  auto eval = [spec, vec](const GroupElement& t) {
    Complex sum(0.0, 0.0);
    for (const auto& [h, k] : vec->entries()) {
      sum += std::conj(vec->at(multiply(spec, t, h))) * k;
    }
    return sum;
  };
  return PdFunction(spec, eval, "chi_xi", SupportKind::Finite, difference_set(spec, xi.support()));
}

PdFunction haagerup(const GroupSpec& spec, double eps) {
  if (!(eps > 0.0)) throw DomainError("Haagerup multiplier needs eps > 0");
  auto eval = [spec, eps](const GroupElement& t) {
    return Complex(std::exp(-eps * static_cast<double>(word_length(spec, t))), 0.0);
  };
  return PdFunction(spec, eval, "haagerup(eps=" + std::to_string(eps) + ")");
}

PdFunction identity_indicator(const GroupSpec& spec) {
  const auto e = spec.identity();
  return PdFunction(
      spec, [e](const GroupElement& g) { return g == e ? Complex(1.0, 0.0) : Complex(0.0, 0.0); },
      "delta_e", SupportKind::Finite, {e});
}

PdFunction constant_one(const GroupSpec& spec) {
  return PdFunction(spec, [](const GroupElement&) { return Complex(1.0, 0.0); }, "one");
}

PdFunction pointwise_product(const PdFunction& f, const PdFunction& g) {
  if (!(f.spec() == g.spec())) throw DomainError("pointwise product of functions on different groups");
  auto eval = [ff = f.evaluator(), gg = g.evaluator()](const GroupElement& x) {
    return ff(x) * gg(x);
  };
  SupportKind kind = SupportKind::Full;
  std::vector<GroupElement> support;
  if (f.support_kind() == SupportKind::Finite) {
    kind = SupportKind::Finite;
    support = f.support();
  } else if (g.support_kind() == SupportKind::Finite) {
    kind = SupportKind::Finite;
    support = g.support();
  }
  return PdFunction(f.spec(), eval, "(" + f.label() + ")*(" + g.label() + ")", kind,
                    std::move(support));
}

PdFunction convex_combination(const std::vector<std::pair<double, PdFunction>>& terms) {
  if (terms.empty()) throw DomainError("convex combination of no functions");
  double total = 0.0;
  for (const auto& [w, f] : terms) {
    if (w < 0.0) throw DomainError("convex weights must be nonnegative");
    if (!(f.spec() == terms.front().second.spec())) {
      throw DomainError("convex combination of functions on different groups");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12) throw DomainError("convex weights must sum to 1");

  std::vector<std::pair<double, PdFunction::Evaluator>> parts;
  std::string label;
  bool finite = true;
  std::vector<GroupElement> support;
  ElementSet seen;
  for (const auto& [w, f] : terms) {
    parts.emplace_back(w, f.evaluator());
    if (!label.empty()) label += " + ";
    label += std::to_string(w) + "*" + f.label();
    if (f.support_kind() == SupportKind::Full) finite = false;
    for (const auto& s : f.support()) {
      if (seen.insert(s).second) support.push_back(s);
    }
  }
  auto eval = [parts](const GroupElement& x) {
    Complex sum(0.0, 0.0);
    for (const auto& [w, f] : parts) sum += w * f(x);
    return sum;
  };
  if (!finite) support.clear();
  return PdFunction(terms.front().second.spec(), eval, label,
                    finite ? SupportKind::Finite : SupportKind::Full, std::move(support));
}

// ---------------------------------------------------------------------------
// Gram matrices

Matrix gram_matrix(const PdFunction& f, const Ball& ball, ExecPolicy policy) {
  if (ball.size() == 0) throw DomainError("Gram matrix over an empty ball");
  if (!(ball.spec() == f.spec())) throw DomainError("function and ball live on different groups");
  return kernels::gram_assemble(ball.spec(), ball.elements(), f.evaluator(), policy);
}

std::string to_string(Verdict v) {
  return v == Verdict::Pass ? "Pass" : "Fail";
}

PsdReport check_positive_definite(const PdFunction& f, const Ball& ball,
                                  std::optional<double> tolerance) {
  const Matrix gram = gram_matrix(f, ball);
  const auto ev = hermitian_eigenvalues(gram);
  PsdReport r;
  r.ball_radius = ball.radius();
  r.gram_dimension = static_cast<std::size_t>(gram.rows());
  r.min_eigenvalue = ev(0);
  const double spectral = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  r.tolerance = tolerance.value_or(1e-8 * std::max(1.0, spectral));
  r.verdict = r.min_eigenvalue >= -r.tolerance ? Verdict::Pass : Verdict::Fail;
  return r;
}

nlohmann::ordered_json to_json(const PsdReport& r) {
  nlohmann::ordered_json j;
  j["ball_radius"] = r.ball_radius;
  j["gram_dimension"] = r.gram_dimension;
  j["min_eigenvalue"] = r.min_eigenvalue;
  j["tolerance"] = r.tolerance;
  j["verdict"] = to_string(r.verdict);
  return j;
}

// ---------------------------------------------------------------------------
// Folner sequences

namespace {

// Coordinate ranges of the Folner box, one per tuple slot.
void append_ranges(const GroupSpec& spec, std::size_t n, std::vector<std::int64_t>& upper) {
  switch (spec.kind()) {
    case GroupKind::Integers:
      upper.push_back(static_cast<std::int64_t>(n));
      break;
    case GroupKind::IntegerLattice:
      for (int i = 0; i < spec.parameter(); ++i) upper.push_back(static_cast<std::int64_t>(n));
      break;
    case GroupKind::Cyclic:
      upper.push_back(spec.parameter() - 1);
      break;
    case GroupKind::Product:
      for (const auto& f : spec.factors()) append_ranges(f, n, upper);
      break;
    case GroupKind::Free:
      throw DomainError("free groups have no Folner sequence");
  }
}

}  // namespace

std::vector<GroupElement> folner_set(const GroupSpec& spec, std::size_t n) {
  std::vector<std::int64_t> upper;
  append_ranges(spec, n, upper);
  std::size_t total = 1;
  for (auto u : upper) {
    total *= static_cast<std::size_t>(u + 1);
    if (total > kDefaultEnumerationCap) throw ResourceCapError("Folner set exceeds the enumeration cap");
  }
  std::vector<GroupElement> out;
  out.reserve(total);
  const bool scalar = spec.kind() == GroupKind::Integers || spec.kind() == GroupKind::Cyclic;
  IntTuple cur(upper.size(), 0);
  for (std::size_t i = 0; i < total; ++i) {
    if (scalar) {
      out.emplace_back(cur[0]);
    } else {
      out.emplace_back(cur);
    }
    for (std::size_t k = cur.size(); k-- > 0;) {
      if (++cur[k] <= upper[k]) break;
      cur[k] = 0;
    }
  }
  return out;
}

Rational folner_chi_exact(const GroupSpec& spec, std::size_t n, const GroupElement& t) {
  validate(spec, t);
  const auto set = folner_set(spec, n);
  return chi_set_exact(spec, set, t);
}

std::vector<double> folner_eigenvalues(const GroupSpec& spec, std::span<const std::size_t> radii,
                                       const GroupElement& t) {
  std::vector<double> out;
  out.reserve(radii.size());
  for (auto n : radii) out.push_back(to_double(folner_chi_exact(spec, n, t)));
  return out;
}

}  // namespace xprod
