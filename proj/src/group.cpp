#include "afpt/group.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <deque>
#include <set>
#include <stdexcept>

#include "afpt/errors.hpp"

namespace afpt {

// ---------------------------------------------------------------------------
// GeneratorAlphabet

Letter GeneratorAlphabet::add(std::string name) {
  if (lookup_.count(name) != 0) throw InputError("duplicate generator symbol '" + name + "'");
  const auto l = static_cast<Letter>(names_.size());
  lookup_.emplace(name, l);
  names_.push_back(std::move(name));
  inverse_.push_back(l);
  return l;
}

void GeneratorAlphabet::pair_inverses(Letter a, Letter b) {
  inverse_.at(a) = b;
  inverse_.at(b) = a;
}

std::optional<Letter> GeneratorAlphabet::find(std::string_view name) const {
  auto it = lookup_.find(std::string(name));
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

void GeneratorAlphabet::check_invariants() const {
  if (lookup_.size() != names_.size()) throw std::logic_error("alphabet: repeated symbol names");
  for (Letter l = 0; l < inverse_.size(); ++l) {
    if (inverse_[inverse_[l]] != l) throw std::logic_error("alphabet: inverse pairing is not an involution");
  }
}

// ---------------------------------------------------------------------------
// GroupElement

std::strong_ordering operator<=>(const GroupElement& a, const GroupElement& b) {
  if (auto c = a.word.size() <=> b.word.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.word.begin(), a.word.end(), b.word.begin(), b.word.end());
}

std::size_t GroupElementHash::operator()(const GroupElement& g) const noexcept {
  // FNV-1a over the letters
  std::uint64_t h = 1469598103934665603ull;
  for (Letter l : g.word) {
    h ^= l + 0x9e3779b9u;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------------------------
// Finite tables

namespace {

bool valid_symbol(const std::string& s) {
  if (s.empty() || s == "1") return false;
  if (s.front() >= '0' && s.front() <= '9') return false;
  return std::none_of(s.begin(), s.end(), [](char c) {
    return c == '^' || c == '*' || c == '.' || c == '#' || c == ',' || c == ';' || c == '(' || c == ')' ||
           std::isspace(static_cast<unsigned char>(c));
  });
}

std::vector<std::size_t> table_lengths(const FiniteTable& t, const std::vector<int>& inverse) {
  const std::size_t n = t.order();
  std::vector<int> gens;
  for (const auto& g : t.generators) {
    auto it = std::find(t.elements.begin(), t.elements.end(), g);
    const int gi = static_cast<int>(it - t.elements.begin());
    gens.push_back(gi);
    gens.push_back(inverse[gi]);
  }
  std::vector<std::size_t> dist(n, SIZE_MAX);
  std::deque<int> queue{0};
  dist[0] = 0;
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int g : gens) {
      const int y = t.product[x][g];
      if (dist[y] == SIZE_MAX) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    }
  }
  return dist;
}

std::vector<int> table_inverses(const FiniteTable& t) {
  std::vector<int> inv(t.order(), -1);
  for (std::size_t i = 0; i < t.order(); ++i)
    for (std::size_t j = 0; j < t.order(); ++j)
      if (t.product[i][j] == 0) inv[i] = static_cast<int>(j);
  return inv;
}

}  // namespace

void validate_table(const FiniteTable& t) {
  const std::size_t n = t.order();
  const std::string who = "finite factor '" + t.name + "': ";
  if (n == 0) throw InputError(who + "no elements");
  std::set<std::string> seen;
  for (const auto& e : t.elements) {
    if (!valid_symbol(e)) throw InputError(who + "invalid element name '" + e + "'");
    if (!seen.insert(e).second) throw InputError(who + "duplicate element '" + e + "'");
  }
  if (t.product.size() != n) throw InputError(who + "table must have " + std::to_string(n) + " rows");
  for (const auto& row : t.product) {
    if (row.size() != n) throw InputError(who + "every table row needs " + std::to_string(n) + " entries");
    for (int v : row)
      if (v < 0 || static_cast<std::size_t>(v) >= n) throw InputError(who + "table entry out of range");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (t.product[0][i] != static_cast<int>(i) || t.product[i][0] != static_cast<int>(i))
      throw InputError(who + "first element '" + t.elements[0] + "' is not the identity");
    std::vector<bool> row(n), col(n);
    for (std::size_t j = 0; j < n; ++j) {
      row[t.product[i][j]] = true;
      col[t.product[j][i]] = true;
    }
    if (std::count(row.begin(), row.end(), true) != static_cast<long>(n) ||
        std::count(col.begin(), col.end(), true) != static_cast<long>(n))
      throw InputError(who + "table is not a Latin square at '" + t.elements[i] + "'");
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (t.product[t.product[i][j]][k] != t.product[i][t.product[j][k]])
          throw InputError(who + "multiplication is not associative at (" + t.elements[i] + ", " + t.elements[j] +
                           ", " + t.elements[k] + ")");
  for (const auto& g : t.generators) {
    if (std::find(t.elements.begin(), t.elements.end(), g) == t.elements.end())
      throw InputError(who + "generator '" + g + "' is not an element");
  }
  const auto lengths = table_lengths(t, table_inverses(t));
  if (std::find(lengths.begin(), lengths.end(), SIZE_MAX) != lengths.end())
    throw InputError(who + "generators do not generate the group");
}

std::string_view family_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::Free: return "free";
    case FamilyKind::FreeProduct: return "free_product";
    case FamilyKind::DirectProduct: return "direct_product";
    case FamilyKind::Finite: return "finite";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// GroupOracle

GroupOracle::GroupOracle(GroupFamily family) : family_(std::move(family)) {
  std::visit(
      [this](const auto& spec) {
        using T = std::decay_t<decltype(spec)>;
        if constexpr (std::is_same_v<T, FreeGroupSpec>) {
          kind_ = FamilyKind::Free;
          add_free(spec.generators);
        } else if constexpr (std::is_same_v<T, FreeProductSpec>) {
          kind_ = FamilyKind::FreeProduct;
          if (spec.factors.empty()) throw InputError("free product needs at least one factor");
          for (const auto& t : spec.factors) add_factor(t);
        } else if constexpr (std::is_same_v<T, DirectProductSpec>) {
          kind_ = FamilyKind::DirectProduct;
          add_free(spec.free_generators);
          add_factor(spec.factor);
        } else {
          kind_ = FamilyKind::Finite;
          add_factor(spec.table);
        }
      },
      family_);
  alphabet_.check_invariants();
  std::sort(generators_.begin(), generators_.end());
  generators_.erase(std::unique(generators_.begin(), generators_.end()), generators_.end());
}

void GroupOracle::add_free(const std::vector<std::string>& names) {
  for (const auto& n : names) {
    if (!valid_symbol(n)) throw InputError("invalid generator name '" + n + "'");
    const Letter a = alphabet_.add(n);
    const Letter b = alphabet_.add(n + "^-1");
    alphabet_.pair_inverses(a, b);
    info_.push_back({});
    info_.push_back({});
    letter_length_.push_back(1);
    letter_length_.push_back(1);
    generators_.push_back(a);
    generators_.push_back(b);
  }
}

void GroupOracle::add_factor(const FiniteTable& t) {
  validate_table(t);
  const int f = static_cast<int>(tables_.size());
  tables_.push_back(t);
  const auto inverse = table_inverses(t);
  const auto lengths = table_lengths(t, inverse);
  element_inverse_.push_back(inverse);
  std::vector<Letter> letters(t.order(), 0);
  for (std::size_t e = 1; e < t.order(); ++e) {
    letters[e] = alphabet_.add(t.elements[e]);
    info_.push_back({false, f, static_cast<int>(e)});
    letter_length_.push_back(lengths[e]);
  }
  for (std::size_t e = 1; e < t.order(); ++e) alphabet_.pair_inverses(letters[e], letters[inverse[e]]);
  for (const auto& g : t.generators) {
    const auto e = std::find(t.elements.begin(), t.elements.end(), g) - t.elements.begin();
    if (e == 0) continue;
    generators_.push_back(letters[e]);
    generators_.push_back(letters[inverse[e]]);
  }
  factor_letter_.push_back(std::move(letters));
}

void GroupOracle::push(std::vector<Letter>& stack, Letter l) const {
  if (!stack.empty()) {
    const Letter top = stack.back();
    const auto& a = info_[top];
    const auto& b = info_[l];
    if (a.free && b.free && alphabet_.inverse(top) == l) {
      stack.pop_back();
      return;
    }
    if (!a.free && !b.free && a.factor == b.factor) {
      const int prod = tables_[a.factor].product[a.element][b.element];
      stack.pop_back();
      if (prod != 0) stack.push_back(factor_letter_[a.factor][prod]);
      return;
    }
  }
  stack.push_back(l);
}

GroupElement GroupOracle::normalize(std::span<const Letter> raw) const {
  for (Letter l : raw)
    if (l >= alphabet_.size()) throw InputError("letter " + std::to_string(l) + " is not in the alphabet");

  GroupElement out;
  if (kind_ != FamilyKind::DirectProduct) {
    for (Letter l : raw) push(out.word, l);
    return out;
  }
  int finite = 0;
  for (Letter l : raw) {
    const auto& i = info_[l];
    if (i.free)
      push(out.word, l);
    else
      finite = tables_[0].product[finite][i.element];
  }
  if (finite != 0) out.word.push_back(factor_letter_[0][finite]);
  return out;
}

std::size_t GroupOracle::word_length(const GroupElement& g) const {
  std::size_t n = 0;
  for (Letter l : g.word) n += letter_length_[l];
  return n;
}

std::optional<std::size_t> GroupOracle::letter_factor(Letter l) const {
  const auto& i = info_.at(l);
  if (i.free) return std::nullopt;
  return static_cast<std::size_t>(i.factor);
}

std::vector<GroupElement> GroupOracle::factor_elements(std::size_t f) const {
  std::vector<GroupElement> out{identity()};
  for (std::size_t e = 1; e < tables_.at(f).order(); ++e) out.push_back(GroupElement{{factor_letter_[f][e]}});
  return out;
}

std::size_t GroupOracle::finite_subgroup_bound() const {
  switch (kind_) {
    case FamilyKind::Free: return 1;
    case FamilyKind::FreeProduct: {
      std::size_t m = 1;
      for (const auto& t : tables_) m = std::max(m, t.order());
      return m;
    }
    case FamilyKind::DirectProduct:
    case FamilyKind::Finite: return tables_[0].order();
  }
  return 1;
}

std::optional<GroupElement> GroupOracle::free_projection(const GroupElement& g) const {
  if (kind_ == FamilyKind::Free) return g;
  if (kind_ != FamilyKind::DirectProduct) return std::nullopt;
  GroupElement out;
  for (Letter l : g.word)
    if (info_[l].free) out.word.push_back(l);
  return out;
}

std::string GroupOracle::format(const GroupElement& g) const {
  if (g.word.empty()) return "1";
  std::string s;
  for (Letter l : g.word) {
    if (!s.empty()) s += ' ';
    s += alphabet_.name(l);
  }
  return s;
}

std::vector<Letter> GroupOracle::parse_word(std::string_view text) const {
  std::vector<Letter> out;
  std::size_t i = 0;
  auto is_sep = [](char c) { return c == '*' || c == '.' || std::isspace(static_cast<unsigned char>(c)); };
  while (i < text.size()) {
    if (is_sep(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_sep(text[j])) ++j;
    std::string_view token = text.substr(i, j - i);
    i = j;

    std::string_view name = token;
    long long exponent = 1;
    if (auto caret = token.find('^'); caret != std::string_view::npos) {
      name = token.substr(0, caret);
      auto digits = token.substr(caret + 1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
      if (ec != std::errc() || ptr != digits.data() + digits.size())
        throw InputError("bad exponent in token '" + std::string(token) + "'");
    }
    if (name == "1") continue;
    auto letter = alphabet_.find(name);
    if (!letter) throw InputError("unknown symbol '" + std::string(name) + "'");
    const Letter l = exponent < 0 ? alphabet_.inverse(*letter) : *letter;
    for (long long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) out.push_back(l);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Arithmetic

GroupElement normalize(const GroupOracle& oracle, std::span<const Letter> raw) { return oracle.normalize(raw); }

GroupElement multiply(const GroupOracle& oracle, const GroupElement& x, const GroupElement& y) {
  std::vector<Letter> w;
  w.reserve(x.word.size() + y.word.size());
  w.insert(w.end(), x.word.begin(), x.word.end());
  w.insert(w.end(), y.word.begin(), y.word.end());
  return oracle.normalize(w);
}

GroupElement invert(const GroupOracle& oracle, const GroupElement& x) {
  std::vector<Letter> w(x.word.rbegin(), x.word.rend());
  for (auto& l : w) l = oracle.alphabet().inverse(l);
  return oracle.normalize(w);
}

GroupElement conjugate(const GroupOracle& oracle, const GroupElement& g, const GroupElement& x) {
  return multiply(oracle, multiply(oracle, invert(oracle, g), x), g);
}

GroupElement power(const GroupOracle& oracle, const GroupElement& x, std::int64_t k) {
  GroupElement base = k < 0 ? invert(oracle, x) : x;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  GroupElement acc;
  while (n > 0) {
    if (n & 1u) acc = multiply(oracle, acc, base);
    n >>= 1u;
    if (n > 0) base = multiply(oracle, base, base);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// Balls

std::optional<VertexId> CayleyBall::find(const GroupElement& g) const {
  auto it = index.find(g);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

CayleyBall build_ball(const GroupOracle& oracle, int radius, std::size_t budget) {
  if (radius < 0) throw InputError("ball radius must be non-negative");
  if (budget == 0) throw InputError("ball budget must be positive");
  CayleyBall ball;
  ball.radius = radius;
  ball.vertices.push_back(oracle.identity());
  ball.lengths.push_back(0);
  ball.index.emplace(oracle.identity(), 0);

  std::size_t level_begin = 0;
  for (int depth = 1; depth <= radius; ++depth) {
    const std::size_t level_end = ball.vertices.size();
    for (std::size_t v = level_begin; v < level_end; ++v) {
      for (Letter s : oracle.generators()) {
        std::vector<Letter> w = ball.vertices[v].word;
        w.push_back(s);
        GroupElement y = oracle.normalize(w);
        if (ball.index.count(y) != 0) continue;
        if (ball.vertices.size() >= budget)
          throw ResourceError("ball budget of " + std::to_string(budget) + " vertices exceeded at radius " +
                              std::to_string(depth) + " (radius " + std::to_string(depth - 1) + " complete)");
        ball.index.emplace(y, static_cast<VertexId>(ball.vertices.size()));
        ball.vertices.push_back(std::move(y));
        ball.lengths.push_back(depth);
      }
    }
    level_begin = level_end;
  }

  ball.adjacency.resize(ball.vertices.size());
  for (std::size_t v = 0; v < ball.vertices.size(); ++v) {
    for (Letter s : oracle.generators()) {
      std::vector<Letter> w = ball.vertices[v].word;
      w.push_back(s);
      if (auto u = ball.find(oracle.normalize(w))) ball.adjacency[v].push_back(*u);
    }
  }
  return ball;
}

// ---------------------------------------------------------------------------
// Subgroups

SubgroupVerdict verify_subgroup(const GroupOracle& oracle, const std::vector<GroupElement>& elements) {
  SubgroupVerdict verdict;
  if (elements.empty()) {
    verdict.failure = "empty set";
    return verdict;
  }
  std::set<GroupElement> set;
  for (const auto& e : elements) set.insert(oracle.normalize(e.word));
  if (set.count(oracle.identity()) == 0) {
    verdict.failure = "identity missing";
    return verdict;
  }
  for (const auto& x : set) {
    for (const auto& y : set) {
      if (set.count(multiply(oracle, x, y)) == 0) {
        verdict.failure = "not closed under multiplication: " + oracle.format(x) + " * " + oracle.format(y) + " = " +
                          oracle.format(multiply(oracle, x, y)) + " missing";
        verdict.violating_pair = std::make_pair(x, y);
        return verdict;
      }
    }
  }
  for (const auto& x : set) {
    if (set.count(invert(oracle, x)) == 0) {
      verdict.failure = "not closed under inversion: inverse of " + oracle.format(x) + " missing";
      verdict.violating_pair = std::make_pair(x, x);
      return verdict;
    }
  }
  verdict.subgroup = FiniteSubgroup{{set.begin(), set.end()}};
  return verdict;
}

FiniteSubgroup generate_subgroup(const GroupOracle& oracle, const std::vector<GroupElement>& generators,
                                 std::size_t max_order) {
  std::set<GroupElement> seen{oracle.identity()};
  std::deque<GroupElement> queue{oracle.identity()};
  while (!queue.empty()) {
    const GroupElement x = queue.front();
    queue.pop_front();
    for (const auto& g : generators) {
      GroupElement y = multiply(oracle, x, g);
      if (seen.insert(y).second) {
        if (seen.size() > max_order)
          throw ResourceError("subgroup generated by the given elements has more than " +
                              std::to_string(max_order) + " elements");
        queue.push_back(std::move(y));
      }
    }
  }
  auto verdict = verify_subgroup(oracle, {seen.begin(), seen.end()});
  if (!verdict.ok()) throw std::logic_error("generated set failed closure: " + verdict.failure);
  return *verdict.subgroup;
}

}  // namespace afpt
