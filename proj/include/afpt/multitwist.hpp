#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace afpt {

/// A finite group by multiplication table; element 0 is the identity and
/// table[x][y] is the index of xy.
struct GroupTable {
  std::string name;
  std::vector<std::string> elements;
  std::vector<std::vector<std::size_t>> table;
  std::vector<std::size_t> generators;  // optional, used for enumeration

  std::size_t order() const noexcept { return elements.size(); }
  std::size_t mul(std::size_t x, std::size_t y) const { return table[x][y]; }
  std::size_t inverse(std::size_t x) const;
};

/// InputError unless the table is a group with identity 0.
void validate_group(const GroupTable& g);

/// Z/n, Z/2 x Z/2, S3, and every group of order <= max_order among these.
GroupTable cyclic_group(std::size_t n);
GroupTable klein_four();
GroupTable symmetric3();
std::vector<GroupTable> small_groups(std::size_t max_order);

/// H acting on a labelled curve family; perms[h][a] is the index of h.a.
struct PermutationAction {
  std::vector<std::string> labels;
  GroupTable group;
  std::vector<std::vector<std::size_t>> perms;

  std::size_t curves() const noexcept { return labels.size(); }
};

/// InputError unless labels are distinct, every perm is a bijection and
/// perm(xy) = perm(x) perm(y).
void validate_action(const PermutationAction& action);

/// Text format, one directive per line, '#' comments:
///   curves: a b c
///   element e: a b c        (images of the curves, identity first)
///   element g: b c a
///   table:                  (optional; rows "x: x*y for each y")
///   g: g g2 e
/// Without a table the elements multiply by composing their permutations.
PermutationAction parse_permutation_action(std::string_view text);
std::string format_permutation_action(const PermutationAction& action);

/// An element (v, h) of Z^A x| H with (v, h)(w, k) = (v + h.w, hk).
struct SemidirectElement {
  std::vector<std::int64_t> v;
  std::size_t h = 0;
  bool operator==(const SemidirectElement&) const = default;
};

/// (h.w)[h.a] = w[a].
std::vector<std::int64_t> permute(const PermutationAction& action, std::size_t h, const std::vector<std::int64_t>& w);
SemidirectElement multiply(const PermutationAction& action, const SemidirectElement& x, const SemidirectElement& y);
SemidirectElement pure_group(const PermutationAction& action, std::size_t h);
bool commutes(const PermutationAction& action, const SemidirectElement& x, const SemidirectElement& y);

/// h-cycles of the curves, each starting at its least label index, ordered by that index.
std::vector<std::vector<std::size_t>> cycle_decomposition(const PermutationAction& action, std::size_t h);
std::string format_cycles(const PermutationAction& action, const std::vector<std::vector<std::size_t>>& cycles);

/// The full multitwist: exponent 1 on every curve. InputError for an empty family.
SemidirectElement build_T(const PermutationAction& action);

/// Some h with (v, 1)(0, h) != (0, h)(v, 1), or nullopt when v centralizes H.
std::optional<std::size_t> noncommuting_witness(const PermutationAction& action, const std::vector<std::int64_t>& v);
/// v is constant on every H-orbit of curves.
bool is_invariant(const PermutationAction& action, const std::vector<std::int64_t>& v);

struct Lemma59Entry {
  std::size_t h = 0;
  std::vector<std::vector<std::size_t>> cycles;
  bool commutes = false;
};

struct Lemma59Report {
  std::vector<Lemma59Entry> entries;   // T against each h
  std::uint64_t vectors_checked = 0;   // characterization sample
  std::uint64_t invariant_vectors = 0;
  std::uint64_t mismatches = 0;        // commuting status differs from invariance
  bool exhaustive = true;              // all vectors with entries in [-bound, bound]
  bool passed = false;
};

/// T commutes with every h; and for every v with entries in [-bound, bound]
/// (all of them when (2 bound + 1)^|A| <= limit, else the first `limit` in
/// lexicographic order), (v, 1) centralizes H iff v is H-invariant.
Lemma59Report verify_lemma59(const PermutationAction& action, std::int64_t bound = 2, std::uint64_t limit = 1u << 20);

/// Every homomorphism from the group to Sym(n), as actions on curves c1..cn.
std::vector<PermutationAction> enumerate_actions(const GroupTable& group, std::size_t n);

}  // namespace afpt
