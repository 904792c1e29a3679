#pragma once

// Group engines with canonical normal forms, word length, and deterministic
// ball/sphere enumeration.
//
// Supported groups: the integers Z, lattices Z^d, cyclic groups C_n, free
// groups F_k, and finite direct products of the abelian ones. Every element
// has exactly one payload (its normal form), so payload equality is group
// element equality.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

namespace xprod {

/// Reduced word in a free group. Letter +i is generator a_i, -i its inverse
/// (i in 1..k). No adjacent pair (i, -i).
using Word = std::vector<std::int32_t>;

/// Coordinates in Z^d or in a product of abelian factors.
using IntTuple = std::vector<std::int64_t>;

class GroupElement {
 public:
  using Payload = std::variant<std::int64_t, IntTuple, Word>;

  GroupElement() = default;
  explicit GroupElement(std::int64_t value) : payload_(value) {}
  explicit GroupElement(IntTuple coords) : payload_(std::move(coords)) {}
  explicit GroupElement(Word word) : payload_(std::move(word)) {}

  const Payload& payload() const { return payload_; }

  bool is_integer() const { return std::holds_alternative<std::int64_t>(payload_); }
  bool is_tuple() const { return std::holds_alternative<IntTuple>(payload_); }
  bool is_word() const { return std::holds_alternative<Word>(payload_); }

  std::int64_t integer() const { return std::get<std::int64_t>(payload_); }
  const IntTuple& tuple() const { return std::get<IntTuple>(payload_); }
  const Word& word() const { return std::get<Word>(payload_); }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;

 private:
  Payload payload_{std::int64_t{0}};
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

enum class GroupKind { Integers, IntegerLattice, Cyclic, Free, Product };

class GroupSpec {
 public:
  static GroupSpec integers();
  static GroupSpec lattice(int dim);
  static GroupSpec cyclic(int order);
  static GroupSpec free(int rank);
  /// Direct product of abelian factors (Integers, IntegerLattice, Cyclic, or
  /// nested products, which are flattened).
  static GroupSpec product(std::vector<GroupSpec> factors);

  /// Same group with a caller-chosen symmetric generating set. Word length is
  /// then computed by breadth-first search.
  GroupSpec with_generators(std::vector<GroupElement> generators) const;

  GroupKind kind() const { return kind_; }
  /// d for lattices, n for cyclic groups, k for free groups, 0 otherwise.
  int parameter() const { return param_; }
  const std::vector<GroupSpec>& factors() const { return factors_; }
  const std::vector<GroupElement>& generators() const { return generators_; }
  bool has_standard_generators() const { return standard_; }

  std::optional<std::uint64_t> order() const;
  bool is_finite() const { return order().has_value(); }
  bool is_amenable() const { return kind_ != GroupKind::Free || param_ < 2; }
  /// Number of integer coordinates in a tuple payload (lattices, products).
  std::size_t tuple_width() const;

  GroupElement identity() const;
  /// Compact name: "Z", "Z^2", "C4", "F2", "Z^2xC3".
  std::string name() const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  GroupKind kind_ = GroupKind::Integers;
  int param_ = 0;
  std::vector<GroupSpec> factors_;
  std::vector<GroupElement> generators_;
  bool standard_ = true;

  void build_standard_generators();
};

/// Throws DomainError when `g` is not a valid normal form for `spec`.
void validate(const GroupSpec& spec, const GroupElement& g);

GroupElement multiply(const GroupSpec& spec, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const GroupSpec& spec, const GroupElement& a);
std::size_t word_length(const GroupSpec& spec, const GroupElement& a);

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

/// Bumped whenever the ball ordering changes; matrices exported against a
/// window record it.
inline constexpr int kBallOrderingVersion = 1;

/// All elements of word length <= radius in shortlex order of their least
/// geodesic word (generator order a1 < a1^-1 < a2 < ...). elements[0] is the
/// identity.
class Ball {
 public:
  const GroupSpec& spec() const { return spec_; }
  std::size_t radius() const { return radius_; }
  std::size_t size() const { return elements_.size(); }
  std::span<const GroupElement> elements() const& { return elements_; }
  // A span into a temporary ball would dangle.
  std::span<const GroupElement> elements() const&& = delete;
  const GroupElement& operator[](std::size_t i) const { return elements_[i]; }

  std::optional<std::size_t> find(const GroupElement& g) const;
  bool contains(const GroupElement& g) const { return find(g).has_value(); }
  /// Throws DomainError when g is outside the ball.
  std::size_t index_of(const GroupElement& g) const;

  /// Elements of word length exactly m (m <= radius), as a contiguous slice.
  std::span<const GroupElement> sphere(std::size_t m) const;
  /// Word length of elements[i].
  std::size_t length_at(std::size_t i) const;

  friend bool same_window(const Ball& a, const Ball& b);

 private:
  friend Ball ball(const GroupSpec&, std::size_t, std::size_t);

  GroupSpec spec_;
  std::size_t radius_ = 0;
  std::vector<GroupElement> elements_;
  std::vector<std::size_t> layer_start_;  // size radius_ + 2
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> index_;
};

Ball ball(const GroupSpec& spec, std::size_t n, std::size_t cap = kDefaultEnumerationCap);
std::vector<GroupElement> sphere(const GroupSpec& spec, std::size_t n,
                                 std::size_t cap = kDefaultEnumerationCap);

std::string to_string(const GroupSpec& spec, const GroupElement& g);
/// Inverse of to_string. Free-group letters are a, b, c, d, f, g, ... ('e'
/// is reserved for the identity); upper case denotes the inverse letter.
GroupElement parse_element(const GroupSpec& spec, std::string_view text);
GroupSpec parse_group(std::string_view text);

}  // namespace xprod
