#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

namespace afpt {

using Letter = std::uint32_t;
using VertexId = std::uint32_t;

/// Ordered generator symbols, each paired with a formal inverse symbol.
///
/// The order of symbols is part of the contract: every tie-break in the
/// toolkit compares words letter by letter using this order.
class GeneratorAlphabet {
 public:
  /// Adds `name` as a self-inverse symbol; `pair_inverses` re-pairs it.
  Letter add(std::string name);
  void pair_inverses(Letter a, Letter b);

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Letter l) const { return names_.at(l); }
  Letter inverse(Letter l) const { return inverse_.at(l); }
  std::optional<Letter> find(std::string_view name) const;

  /// Throws std::logic_error if names repeat or the inverse map is not an involution.
  void check_invariants() const;

 private:
  std::vector<std::string> names_;
  std::vector<Letter> inverse_;
  std::unordered_map<std::string, Letter> lookup_;
};

/// A canonical normal-form word. The identity is the empty word.
///
/// Elements are only meaningful together with the oracle that produced them;
/// equality of words is equality in the group.
struct GroupElement {
  std::vector<Letter> word;

  bool is_identity() const noexcept { return word.empty(); }

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  /// Shortlex: shorter words first, then letter-wise by alphabet order.
  friend std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b);
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

/// Multiplication table of a finite group. `elements[0]` is the identity and
/// `product[i][j]` is the index of elements[i] * elements[j].
struct FiniteTable {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::vector<int>> product;
  std::vector<std::string> generators;

  std::size_t order() const noexcept { return elements.size(); }
};

/// Throws InputError unless `t` is a group table whose generators generate it.
void validate_table(const FiniteTable& t);

struct FreeGroupSpec {
  std::vector<std::string> generators;
};
struct FreeProductSpec {
  std::vector<FiniteTable> factors;
};
struct DirectProductSpec {
  std::vector<std::string> free_generators;
  FiniteTable factor;
};
struct FiniteGroupSpec {
  FiniteTable table;
};

using GroupFamily = std::variant<FreeGroupSpec, FreeProductSpec, DirectProductSpec, FiniteGroupSpec>;

enum class FamilyKind { Free, FreeProduct, DirectProduct, Finite };

std::string_view family_name(FamilyKind k);

/// Exact arithmetic for one of the supported group families.
///
/// Free letters come first in the alphabet (g, g^-1 for each free generator),
/// followed by one letter per nontrivial element of each finite factor. Free
/// groups and free products share a syllable-merging normal form; direct
/// products F_k x K keep the reduced free word followed by at most one letter
/// of K.
class GroupOracle {
 public:
  explicit GroupOracle(GroupFamily family);

  FamilyKind kind() const noexcept { return kind_; }
  const GroupFamily& family() const noexcept { return family_; }
  const GeneratorAlphabet& alphabet() const noexcept { return alphabet_; }

  /// Symmetric Cayley generating set, in alphabet order.
  std::span<const Letter> generators() const noexcept { return generators_; }

  GroupElement identity() const { return {}; }
  GroupElement normalize(std::span<const Letter> raw) const;
  GroupElement letter(Letter l) const { return normalize(std::span<const Letter>(&l, 1)); }

  /// Exact word length with respect to `generators()`.
  std::size_t word_length(const GroupElement& g) const;

  /// Upper bound on the order of finite subgroups, from the family structure.
  std::size_t finite_subgroup_bound() const;

  /// Image under F x K -> F (direct products and free groups only).
  std::optional<GroupElement> free_projection(const GroupElement& g) const;

  /// Finite factor a letter belongs to; nullopt for free letters.
  std::optional<std::size_t> letter_factor(Letter l) const;
  std::size_t factor_count() const noexcept { return tables_.size(); }
  const FiniteTable& factor(std::size_t f) const { return tables_.at(f); }
  /// Every element of finite factor f, identity first, in table order.
  std::vector<GroupElement> factor_elements(std::size_t f) const;

  /// Space-separated symbol names, "1" for the identity.
  std::string format(const GroupElement& g) const;
  /// Parses tokens `name`, `name^k` and `1`, separated by whitespace, '*' or '.'.
  std::vector<Letter> parse_word(std::string_view text) const;
  GroupElement parse(std::string_view text) const { return normalize(parse_word(text)); }

 private:
  struct LetterInfo {
    bool free = true;
    int factor = -1;   // finite factor index
    int element = -1;  // element index within the factor
  };

  void add_free(const std::vector<std::string>& names);
  void add_factor(const FiniteTable& t);
  void push(std::vector<Letter>& stack, Letter l) const;

  GroupFamily family_;
  FamilyKind kind_;
  GeneratorAlphabet alphabet_;
  std::vector<LetterInfo> info_;
  std::vector<std::size_t> letter_length_;
  std::vector<Letter> generators_;
  std::vector<FiniteTable> tables_;
  std::vector<std::vector<int>> element_inverse_;
  // factor_letter_[f][e] is the letter of element e of factor f (unused for e = 0).
  std::vector<std::vector<Letter>> factor_letter_;
};

GroupElement normalize(const GroupOracle& oracle, std::span<const Letter> raw);
GroupElement multiply(const GroupOracle& oracle, const GroupElement& x, const GroupElement& y);
GroupElement invert(const GroupOracle& oracle, const GroupElement& x);
/// g^-1 x g
GroupElement conjugate(const GroupOracle& oracle, const GroupElement& g, const GroupElement& x);
GroupElement power(const GroupOracle& oracle, const GroupElement& x, std::int64_t k);

/// The radius-R ball of the Cayley graph around the identity.
///
/// Edges join x and x*s for generators s, so left multiplication by any group
/// element is a graph automorphism of the full Cayley graph.
struct CayleyBall {
  int radius = 0;
  std::vector<GroupElement> vertices;  // BFS order; vertices[0] is the identity
  std::vector<int> lengths;
  std::vector<std::vector<VertexId>> adjacency;
  std::unordered_map<GroupElement, VertexId, GroupElementHash> index;

  std::size_t size() const noexcept { return vertices.size(); }
  std::optional<VertexId> find(const GroupElement& g) const;
};

inline constexpr std::size_t kDefaultBallBudget = 2'000'000;

/// Throws ResourceError when more than `budget` vertices would be needed.
CayleyBall build_ball(const GroupOracle& oracle, int radius, std::size_t budget = kDefaultBallBudget);

/// A closure-verified finite subgroup, elements sorted shortlex (identity first).
struct FiniteSubgroup {
  std::vector<GroupElement> elements;

  std::size_t order() const noexcept { return elements.size(); }
};

struct SubgroupVerdict {
  std::optional<FiniteSubgroup> subgroup;
  std::string failure;
  std::optional<std::pair<GroupElement, GroupElement>> violating_pair;

  bool ok() const noexcept { return subgroup.has_value(); }
};

SubgroupVerdict verify_subgroup(const GroupOracle& oracle, const std::vector<GroupElement>& elements);

/// Closure of `generators` under multiplication; ResourceError past `max_order`.
FiniteSubgroup generate_subgroup(const GroupOracle& oracle, const std::vector<GroupElement>& generators,
                                 std::size_t max_order = 4096);

}  // namespace afpt
