#include "xprod/groups.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <sstream>

#include "xprod/errors.hpp"

namespace xprod {

namespace {

constexpr std::string_view kLetters = "abcdfghijklmnopqrstuvwxyz";

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  v += 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  v ^= v >> 30;
  v *= 0xbf58476d1ce4e5b9ULL;
  v ^= v >> 27;
  v *= 0x94d049bb133111ebULL;
  v ^= v >> 31;
  return h ^ v;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t n) {
  const std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

// One abelian coordinate slot of a tuple payload.
struct Slot {
  std::int64_t modulus;  // 0 for a free Z coordinate
};

void append_slots(const GroupSpec& spec, std::vector<Slot>& out) {
  switch (spec.kind()) {
    case GroupKind::Integers:
      out.push_back({0});
      break;
    case GroupKind::IntegerLattice:
      for (int i = 0; i < spec.parameter(); ++i) out.push_back({0});
      break;
    case GroupKind::Cyclic:
      out.push_back({spec.parameter()});
      break;
    case GroupKind::Product:
      for (const auto& f : spec.factors()) append_slots(f, out);
      break;
    case GroupKind::Free:
      throw DomainError("free groups cannot be factors of a product");
  }
}

std::vector<Slot> slots_of(const GroupSpec& spec) {
  std::vector<Slot> s;
  append_slots(spec, s);
  return s;
}

std::size_t slot_length(const Slot& s, std::int64_t v) {
  if (s.modulus == 0) return static_cast<std::size_t>(v < 0 ? -v : v);
  return static_cast<std::size_t>(std::min(v, s.modulus - v));
}

Word reduce_concat(const Word& a, const Word& b) {
  Word out;
  out.reserve(a.size() + b.size());
  out = a;
  for (auto letter : b) {
    if (!out.empty() && out.back() == -letter) {
      out.pop_back();
    } else {
      out.push_back(letter);
    }
  }
  return out;
}

void require(bool cond, const std::string& msg) {
  if (!cond) throw DomainError(msg);
}

std::size_t bfs_length(const GroupSpec& spec, const GroupElement& g) {
  if (g == spec.identity()) return 0;
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> seen;
  std::vector<GroupElement> frontier{spec.identity()};
  seen.emplace(spec.identity(), 0);
  for (std::size_t len = 1; !frontier.empty(); ++len) {
    std::vector<GroupElement> next;
    for (const auto& h : frontier) {
      for (const auto& s : spec.generators()) {
        auto hs = multiply(spec, h, s);
        if (hs == g) return len;
        if (seen.emplace(hs, len).second) next.push_back(std::move(hs));
      }
    }
    if (seen.size() > kDefaultEnumerationCap) {
      throw ResourceCapError("word length search exceeded enumeration cap");
    }
    frontier = std::move(next);
  }
  throw DomainError("element is not reachable from the generating set");
}

}  // namespace

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  std::uint64_t h = g.payload().index();
  std::visit(
      [&h](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, std::int64_t>) {
          h = mix(h, static_cast<std::uint64_t>(p));
        } else {
          h = mix(h, p.size());
          for (auto v : p) h = mix(h, static_cast<std::uint64_t>(v));
        }
      },
      g.payload());
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// GroupSpec

GroupSpec GroupSpec::integers() {
  GroupSpec s;
  s.kind_ = GroupKind::Integers;
  s.build_standard_generators();
  return s;
}

GroupSpec GroupSpec::lattice(int dim) {
  require(dim >= 1, "lattice dimension must be >= 1");
  GroupSpec s;
  s.kind_ = GroupKind::IntegerLattice;
  s.param_ = dim;
  s.build_standard_generators();
  return s;
}

GroupSpec GroupSpec::cyclic(int order) {
  require(order >= 1, "cyclic group order must be >= 1");
  GroupSpec s;
  s.kind_ = GroupKind::Cyclic;
  s.param_ = order;
  s.build_standard_generators();
  return s;
}

GroupSpec GroupSpec::free(int rank) {
  require(rank >= 1 && rank <= static_cast<int>(kLetters.size()),
          "free group rank must be in 1..25");
  GroupSpec s;
  s.kind_ = GroupKind::Free;
  s.param_ = rank;
  s.build_standard_generators();
  return s;
}

GroupSpec GroupSpec::product(std::vector<GroupSpec> factors) {
  require(!factors.empty(), "product needs at least one factor");
  GroupSpec s;
  s.kind_ = GroupKind::Product;
  for (auto& f : factors) {
    require(f.has_standard_generators(), "product factors must use standard generators");
    if (f.kind() == GroupKind::Product) {
      for (auto& ff : f.factors_) s.factors_.push_back(ff);
    } else {
      require(f.kind() != GroupKind::Free, "free groups cannot be factors of a product");
      s.factors_.push_back(std::move(f));
    }
  }
  s.build_standard_generators();
  return s;
}

void GroupSpec::build_standard_generators() {
  generators_.clear();
  standard_ = true;
  switch (kind_) {
    case GroupKind::Integers:
      generators_ = {GroupElement(std::int64_t{1}), GroupElement(std::int64_t{-1})};
      break;
    case GroupKind::IntegerLattice:
      for (int i = 0; i < param_; ++i) {
        IntTuple plus(param_, 0), minus(param_, 0);
        plus[i] = 1;
        minus[i] = -1;
        generators_.emplace_back(std::move(plus));
        generators_.emplace_back(std::move(minus));
      }
      break;
    case GroupKind::Cyclic:
      if (param_ >= 2) generators_.emplace_back(std::int64_t{1});
      if (param_ >= 3) generators_.emplace_back(std::int64_t{param_ - 1});
      break;
    case GroupKind::Free:
      for (int i = 1; i <= param_; ++i) {
        generators_.emplace_back(Word{i});
        generators_.emplace_back(Word{-i});
      }
      break;
    case GroupKind::Product: {
      const std::size_t width = tuple_width();
      std::size_t offset = 0;
      for (const auto& f : factors_) {
        const std::size_t w = f.tuple_width();
        for (const auto& g : f.generators()) {
          IntTuple t(width, 0);
          if (g.is_integer()) {
            t[offset] = g.integer();
          } else {
            std::copy(g.tuple().begin(), g.tuple().end(), t.begin() + offset);
          }
          generators_.emplace_back(std::move(t));
        }
        offset += w;
      }
      break;
    }
  }
}

GroupSpec GroupSpec::with_generators(std::vector<GroupElement> generators) const {
  GroupSpec s = *this;
  for (const auto& g : generators) {
    validate(s, g);
    require(g != s.identity(), "generating set must not contain the identity");
    const auto inv = inverse(s, g);
    require(std::find(generators.begin(), generators.end(), inv) != generators.end(),
            "generating set must be symmetric");
  }
  auto sorted = generators;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          "generating set has duplicates");
  s.generators_ = std::move(generators);
  s.standard_ = (s.generators_ == GroupSpec(*this).generators_) && standard_;
  return s;
}

std::optional<std::uint64_t> GroupSpec::order() const {
  switch (kind_) {
    case GroupKind::Cyclic:
      return static_cast<std::uint64_t>(param_);
    case GroupKind::Free:
      if (param_ == 0) return 1;
      return std::nullopt;
    case GroupKind::Product: {
      std::uint64_t n = 1;
      for (const auto& f : factors_) {
        auto o = f.order();
        if (!o) return std::nullopt;
        n *= *o;
      }
      return n;
    }
    default:
      return std::nullopt;
  }
}

std::size_t GroupSpec::tuple_width() const {
  switch (kind_) {
    case GroupKind::IntegerLattice:
      return static_cast<std::size_t>(param_);
    case GroupKind::Product:
      return slots_of(*this).size();
    case GroupKind::Integers:
    case GroupKind::Cyclic:
      return 1;
    case GroupKind::Free:
      return 0;
  }
  return 0;
}

GroupElement GroupSpec::identity() const {
  switch (kind_) {
    case GroupKind::Integers:
    case GroupKind::Cyclic:
      return GroupElement(std::int64_t{0});
    case GroupKind::IntegerLattice:
    case GroupKind::Product:
      return GroupElement(IntTuple(tuple_width(), 0));
    case GroupKind::Free:
      return GroupElement(Word{});
  }
  return {};
}

std::string GroupSpec::name() const {
  switch (kind_) {
    case GroupKind::Integers:
      return "Z";
    case GroupKind::IntegerLattice:
      return "Z^" + std::to_string(param_);
    case GroupKind::Cyclic:
      return "C" + std::to_string(param_);
    case GroupKind::Free:
      return "F" + std::to_string(param_);
    case GroupKind::Product: {
      std::string out;
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        if (i) out += "x";
        out += factors_[i].name();
      }
      return out;
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Group law

void validate(const GroupSpec& spec, const GroupElement& g) {
  switch (spec.kind()) {
    case GroupKind::Integers:
      require(g.is_integer(), "Z expects an integer payload");
      break;
    case GroupKind::Cyclic:
      require(g.is_integer(), "C_n expects an integer payload");
      require(g.integer() >= 0 && g.integer() < spec.parameter(),
              "C_n payload must lie in 0..n-1");
      break;
    case GroupKind::IntegerLattice:
    case GroupKind::Product: {
      require(g.is_tuple(), spec.name() + " expects an integer tuple payload");
      const auto slots = slots_of(spec);
      require(g.tuple().size() == slots.size(), spec.name() + " payload has wrong width");
      for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].modulus != 0) {
          require(g.tuple()[i] >= 0 && g.tuple()[i] < slots[i].modulus,
                  "cyclic coordinate out of range");
        }
      }
      break;
    }
    case GroupKind::Free: {
      require(g.is_word(), "F_k expects a word payload");
      const auto& w = g.word();
      for (std::size_t i = 0; i < w.size(); ++i) {
        require(w[i] != 0 && std::abs(w[i]) <= spec.parameter(), "letter out of range");
        require(i == 0 || w[i] != -w[i - 1], "word is not freely reduced");
      }
      break;
    }
  }
}

GroupElement multiply(const GroupSpec& spec, const GroupElement& a, const GroupElement& b) {
  switch (spec.kind()) {
    case GroupKind::Integers:
      require(a.is_integer() && b.is_integer(), "payload/spec mismatch");
      return GroupElement(a.integer() + b.integer());
    case GroupKind::Cyclic:
      require(a.is_integer() && b.is_integer(), "payload/spec mismatch");
      return GroupElement(floor_mod(a.integer() + b.integer(), spec.parameter()));
    case GroupKind::IntegerLattice:
    case GroupKind::Product: {
      require(a.is_tuple() && b.is_tuple() && a.tuple().size() == b.tuple().size() &&
                  a.tuple().size() == spec.tuple_width(),
              "payload/spec mismatch");
      IntTuple out(a.tuple().size());
      if (spec.kind() == GroupKind::IntegerLattice) {
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.tuple()[i] + b.tuple()[i];
      } else {
        const auto slots = slots_of(spec);
        for (std::size_t i = 0; i < out.size(); ++i) {
          const auto v = a.tuple()[i] + b.tuple()[i];
          out[i] = slots[i].modulus ? floor_mod(v, slots[i].modulus) : v;
        }
      }
      return GroupElement(std::move(out));
    }
    case GroupKind::Free:
      require(a.is_word() && b.is_word(), "payload/spec mismatch");
      return GroupElement(reduce_concat(a.word(), b.word()));
  }
  return {};
}

GroupElement inverse(const GroupSpec& spec, const GroupElement& a) {
  switch (spec.kind()) {
    case GroupKind::Integers:
      require(a.is_integer(), "payload/spec mismatch");
      return GroupElement(-a.integer());
    case GroupKind::Cyclic:
      require(a.is_integer(), "payload/spec mismatch");
      return GroupElement(floor_mod(-a.integer(), spec.parameter()));
    case GroupKind::IntegerLattice:
    case GroupKind::Product: {
      require(a.is_tuple() && a.tuple().size() == spec.tuple_width(), "payload/spec mismatch");
      const auto slots = slots_of(spec);
      IntTuple out(a.tuple().size());
      for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = slots[i].modulus ? floor_mod(-a.tuple()[i], slots[i].modulus) : -a.tuple()[i];
      }
      return GroupElement(std::move(out));
    }
    case GroupKind::Free: {
      require(a.is_word(), "payload/spec mismatch");
      Word w(a.word().rbegin(), a.word().rend());
      for (auto& l : w) l = -l;
      return GroupElement(std::move(w));
    }
  }
  return {};
}

std::size_t word_length(const GroupSpec& spec, const GroupElement& a) {
  if (!spec.has_standard_generators()) return bfs_length(spec, a);
  switch (spec.kind()) {
    case GroupKind::Integers:
      require(a.is_integer(), "payload/spec mismatch");
      return slot_length({0}, a.integer());
    case GroupKind::Cyclic:
      require(a.is_integer(), "payload/spec mismatch");
      return slot_length({spec.parameter()}, a.integer());
    case GroupKind::IntegerLattice:
    case GroupKind::Product: {
      require(a.is_tuple() && a.tuple().size() == spec.tuple_width(), "payload/spec mismatch");
      const auto slots = slots_of(spec);
      std::size_t len = 0;
      for (std::size_t i = 0; i < slots.size(); ++i) len += slot_length(slots[i], a.tuple()[i]);
      return len;
    }
    case GroupKind::Free:
      require(a.is_word(), "payload/spec mismatch");
      return a.word().size();
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Balls

std::optional<std::size_t> Ball::find(const GroupElement& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Ball::index_of(const GroupElement& g) const {
  auto i = find(g);
  if (!i) throw DomainError("element " + to_string(spec_, g) + " is outside the window");
  return *i;
}

std::span<const GroupElement> Ball::sphere(std::size_t m) const {
  if (m > radius_) throw DomainError("sphere radius exceeds ball radius");
  return std::span<const GroupElement>(elements_).subspan(
      layer_start_[m], layer_start_[m + 1] - layer_start_[m]);
}

std::size_t Ball::length_at(std::size_t i) const {
  auto it = std::upper_bound(layer_start_.begin(), layer_start_.end(), i);
  return static_cast<std::size_t>(std::distance(layer_start_.begin(), it)) - 1;
}

bool same_window(const Ball& a, const Ball& b) {
  if (&a == &b) return true;
  return a.radius_ == b.radius_ && a.spec_ == b.spec_ && a.elements_ == b.elements_;
}

Ball ball(const GroupSpec& spec, std::size_t n, std::size_t cap) {
  Ball b;
  b.spec_ = spec;
  b.radius_ = n;
  b.layer_start_.assign(n + 2, 0);
  b.elements_.push_back(spec.identity());
  b.index_.emplace(spec.identity(), 0);
  b.layer_start_[1] = 1;
  // Breadth-first search, parents in order, generators in order; the first
  // discovery of an element fixes its position, which yields shortlex order
  // of least geodesic words.
  for (std::size_t layer = 1; layer <= n; ++layer) {
    const std::size_t begin = b.layer_start_[layer - 1];
    const std::size_t end = b.layer_start_[layer];
    for (std::size_t i = begin; i < end; ++i) {
      for (const auto& s : spec.generators()) {
        auto g = multiply(spec, b.elements_[i], s);
        if (b.index_.contains(g)) continue;
        if (b.elements_.size() >= cap) {
          throw ResourceCapError("ball of radius " + std::to_string(n) + " in " + spec.name() +
                                 " exceeds the enumeration cap of " + std::to_string(cap));
        }
        b.index_.emplace(g, b.elements_.size());
        b.elements_.push_back(std::move(g));
      }
    }
    b.layer_start_[layer + 1] = b.elements_.size();
  }
  return b;
}

std::vector<GroupElement> sphere(const GroupSpec& spec, std::size_t n, std::size_t cap) {
  const auto b = ball(spec, n, cap);
  auto s = b.sphere(n);
  return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------
// Text forms

std::string to_string(const GroupSpec& spec, const GroupElement& g) {
  if (g.is_integer()) return std::to_string(g.integer());
  if (g.is_tuple()) {
    std::string out = "(";
    for (std::size_t i = 0; i < g.tuple().size(); ++i) {
      if (i) out += ",";
      out += std::to_string(g.tuple()[i]);
    }
    return out + ")";
  }
  (void)spec;
  if (g.word().empty()) return "e";
  std::string out;
  for (auto l : g.word()) {
    const char c = kLetters[static_cast<std::size_t>(std::abs(l) - 1)];
    out += l > 0 ? c : static_cast<char>(c - 'a' + 'A');
  }
  return out;
}

namespace {

std::int64_t parse_int(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
    throw DomainError("cannot parse integer '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

GroupElement parse_element(const GroupSpec& spec, std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  GroupElement g;
  switch (spec.kind()) {
    case GroupKind::Integers:
      g = GroupElement(parse_int(text));
      break;
    case GroupKind::Cyclic:
      g = GroupElement(floor_mod(parse_int(text), spec.parameter()));
      break;
    case GroupKind::IntegerLattice:
    case GroupKind::Product: {
      if (!text.empty() && text.front() == '(') text.remove_prefix(1);
      if (!text.empty() && text.back() == ')') text.remove_suffix(1);
      IntTuple coords;
      std::size_t pos = 0;
      while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        coords.push_back(parse_int(text.substr(pos, comma - pos)));
        pos = comma + 1;
      }
      if (spec.kind() == GroupKind::Product) {
        const auto slots = slots_of(spec);
        if (coords.size() == slots.size()) {
          for (std::size_t i = 0; i < slots.size(); ++i) {
            if (slots[i].modulus) coords[i] = floor_mod(coords[i], slots[i].modulus);
          }
        }
      }
      g = GroupElement(std::move(coords));
      break;
    }
    case GroupKind::Free: {
      Word w;
      if (text != "e") {
        for (char c : text) {
          const char lower = static_cast<char>(c >= 'A' && c <= 'Z' ? c - 'A' + 'a' : c);
          const auto pos = kLetters.find(lower);
          if (pos == std::string_view::npos) {
            throw DomainError("unknown free-group letter '" + std::string(1, c) + "'");
          }
          const auto letter = static_cast<std::int32_t>(pos + 1);
          w.push_back(c == lower ? letter : -letter);
        }
      }
      g = GroupElement(reduce_concat({}, w));
      break;
    }
  }
  validate(spec, g);
  return g;
}

GroupSpec parse_group(std::string_view text) {
  std::vector<GroupSpec> factors;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto sep = text.find('x', pos);
    if (sep == std::string_view::npos) sep = text.size();
    const auto tok = text.substr(pos, sep - pos);
    if (tok.empty()) throw DomainError("empty group factor in '" + std::string(text) + "'");
    if (tok == "Z") {
      factors.push_back(GroupSpec::integers());
    } else if (tok.starts_with("Z^")) {
      factors.push_back(GroupSpec::lattice(static_cast<int>(parse_int(tok.substr(2)))));
    } else if (tok.front() == 'C') {
      factors.push_back(GroupSpec::cyclic(static_cast<int>(parse_int(tok.substr(1)))));
    } else if (tok.front() == 'F') {
      factors.push_back(GroupSpec::free(static_cast<int>(parse_int(tok.substr(1)))));
    } else {
      throw DomainError("unknown group '" + std::string(tok) + "'");
    }
    pos = sep + 1;
  }
  if (factors.size() == 1) return factors.front();
  return GroupSpec::product(std::move(factors));
}

}  // namespace xprod
