#include "afpt/multitwist.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "afpt/errors.hpp"

namespace afpt {

std::size_t GroupTable::inverse(std::size_t x) const {
  for (std::size_t y = 0; y < order(); ++y)
    if (table[x][y] == 0) return y;
  throw InputError("element " + elements.at(x) + " has no inverse");
}

void validate_group(const GroupTable& g) {
  const auto n = g.order();
  if (n == 0) throw InputError("group has no elements");
  if (g.table.size() != n) throw InputError("group table has the wrong number of rows");
  if (std::set<std::string>(g.elements.begin(), g.elements.end()).size() != n)
    throw InputError("group element names are not distinct");
  for (const auto& row : g.table) {
    if (row.size() != n) throw InputError("group table has a row of the wrong length");
    for (auto v : row)
      if (v >= n) throw InputError("group table entry out of range");
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (g.table[0][x] != x || g.table[x][0] != x) throw InputError("first element is not the identity");
    std::vector<bool> seen(n, false);
    for (std::size_t y = 0; y < n; ++y) seen[g.table[x][y]] = true;
    if (std::count(seen.begin(), seen.end(), false)) throw InputError("row of " + g.elements[x] + " is not a permutation");
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (std::size_t z = 0; z < n; ++z)
        if (g.table[g.table[x][y]][z] != g.table[x][g.table[y][z]]) throw InputError("group table is not associative");
  for (auto gen : g.generators)
    if (gen >= n) throw InputError("generator index out of range");
}

GroupTable cyclic_group(std::size_t n) {
  if (n == 0) throw InputError("cyclic group of order 0");
  GroupTable g;
  g.name = "Z" + std::to_string(n);
  for (std::size_t k = 0; k < n; ++k) g.elements.push_back(k == 0 ? "e" : k == 1 ? "g" : "g" + std::to_string(k));
  g.table.assign(n, std::vector<std::size_t>(n));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) g.table[x][y] = (x + y) % n;
  if (n > 1) g.generators = {1};
  return g;
}

GroupTable klein_four() {
  GroupTable g{"Z2xZ2", {"e", "a", "b", "ab"}, {}, {1, 2}};
  g.table.assign(4, std::vector<std::size_t>(4));
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) g.table[x][y] = x ^ y;
  return g;
}

GroupTable symmetric3() {
  // elements as images of (0 1 2)
  std::vector<std::array<std::size_t, 3>> perms;
  std::array<std::size_t, 3> p{0, 1, 2};
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  GroupTable g{"S3", {"e", "(12)", "(01)", "(012)", "(021)", "(02)"}, {}, {1, 2}};
  g.table.assign(6, std::vector<std::size_t>(6));
  for (std::size_t x = 0; x < 6; ++x)
    for (std::size_t y = 0; y < 6; ++y) {
      std::array<std::size_t, 3> c{};
      for (std::size_t i = 0; i < 3; ++i) c[i] = perms[x][perms[y][i]];
      g.table[x][y] = static_cast<std::size_t>(std::find(perms.begin(), perms.end(), c) - perms.begin());
    }
  return g;
}

std::vector<GroupTable> small_groups(std::size_t max_order) {
  std::vector<GroupTable> out;
  for (std::size_t n = 1; n <= max_order; ++n) {
    out.push_back(cyclic_group(n));
    if (n == 4) out.push_back(klein_four());
    if (n == 6) out.push_back(symmetric3());
  }
  return out;
}

void validate_action(const PermutationAction& action) {
  validate_group(action.group);
  const auto n = action.curves();
  if (std::set<std::string>(action.labels.begin(), action.labels.end()).size() != n)
    throw InputError("curve labels are not distinct");
  if (action.perms.size() != action.group.order()) throw InputError("need one permutation per group element");
  for (std::size_t h = 0; h < action.perms.size(); ++h) {
    const auto& p = action.perms[h];
    if (p.size() != n) throw InputError("permutation of " + action.group.elements[h] + " has the wrong length");
    std::vector<bool> seen(n, false);
    for (auto a : p) {
      if (a >= n || seen[a]) throw InputError("permutation of " + action.group.elements[h] + " is not a bijection");
      seen[a] = true;
    }
  }
  for (std::size_t a = 0; a < n; ++a)
    if (action.perms[0][a] != a) throw InputError("identity does not act trivially");
  for (std::size_t x = 0; x < action.group.order(); ++x)
    for (std::size_t y = 0; y < action.group.order(); ++y) {
      const auto& xy = action.perms[action.group.mul(x, y)];
      for (std::size_t a = 0; a < n; ++a)
        if (xy[a] != action.perms[x][action.perms[y][a]])
          throw InputError("not a homomorphism at " + action.group.elements[x] + " * " + action.group.elements[y]);
    }
}

namespace {

std::vector<std::string> tokens(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

PermutationAction parse_permutation_action(std::string_view text) {
  PermutationAction out;
  std::map<std::string, std::size_t> label_index, element_index;
  std::vector<std::vector<std::string>> table_rows;
  bool in_table = false, have_curves = false;
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(line_no, "expected 'key: values'");
    const auto key = tokens(line.substr(0, colon));
    const auto values = tokens(line.substr(colon + 1));
    if (key.size() == 1 && key[0] == "curves") {
      if (have_curves) throw ParseError(line_no, "curves given twice");
      if (values.empty()) throw ParseError(line_no, "empty curve family");
      have_curves = true;
      for (const auto& l : values) {
        if (!label_index.emplace(l, out.labels.size()).second) throw ParseError(line_no, "duplicate curve '" + l + "'");
        out.labels.push_back(l);
      }
    } else if (key.size() == 2 && key[0] == "element") {
      if (in_table) throw ParseError(line_no, "element after table");
      if (!have_curves) throw ParseError(line_no, "element before curves");
      if (!element_index.emplace(key[1], out.group.elements.size()).second)
        throw ParseError(line_no, "duplicate element '" + key[1] + "'");
      if (values.size() != out.labels.size()) throw ParseError(line_no, "element " + key[1] + " needs one image per curve");
      std::vector<std::size_t> perm;
      for (const auto& v : values) {
        auto it = label_index.find(v);
        if (it == label_index.end()) throw ParseError(line_no, "unknown curve '" + v + "'");
        perm.push_back(it->second);
      }
      out.group.elements.push_back(key[1]);
      out.perms.push_back(std::move(perm));
    } else if (key.size() == 1 && key[0] == "table" && values.empty()) {
      if (in_table) throw ParseError(line_no, "table given twice");
      in_table = true;
      table_rows.assign(out.group.elements.size(), {});
    } else if (in_table && key.size() == 1) {
      auto it = element_index.find(key[0]);
      if (it == element_index.end()) throw ParseError(line_no, "unknown element '" + key[0] + "'");
      if (!table_rows[it->second].empty()) throw ParseError(line_no, "row for " + key[0] + " given twice");
      if (values.size() != out.group.elements.size()) throw ParseError(line_no, "table row has the wrong length");
      table_rows[it->second] = values;
    } else {
      throw ParseError(line_no, "unknown directive '" + line.substr(0, colon) + "'");
    }
  }
  if (!have_curves) throw ParseError(0, "missing curves");
  if (out.group.elements.empty()) throw ParseError(0, "missing elements");
  const auto n = out.group.elements.size();
  out.group.name = "H";
  out.group.table.assign(n, std::vector<std::size_t>(n));
  if (in_table) {
    for (std::size_t x = 0; x < n; ++x) {
      if (table_rows[x].empty()) throw ParseError(0, "table row for " + out.group.elements[x] + " missing");
      for (std::size_t y = 0; y < n; ++y) {
        auto it = element_index.find(table_rows[x][y]);
        if (it == element_index.end()) throw ParseError(0, "unknown element '" + table_rows[x][y] + "' in table");
        out.group.table[x][y] = it->second;
      }
    }
  } else {
    std::map<std::vector<std::size_t>, std::size_t> by_perm;
    for (std::size_t x = 0; x < n; ++x)
      if (!by_perm.emplace(out.perms[x], x).second)
        throw InputError("elements " + out.group.elements[by_perm[out.perms[x]]] + " and " + out.group.elements[x] +
                         " act identically; give a table");
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) {
        std::vector<std::size_t> c(out.labels.size());
        for (std::size_t a = 0; a < c.size(); ++a) c[a] = out.perms[x][out.perms[y][a]];
        auto it = by_perm.find(c);
        if (it == by_perm.end())
          throw InputError("permutations are not closed: " + out.group.elements[x] + " * " + out.group.elements[y]);
        out.group.table[x][y] = it->second;
      }
  }
  validate_action(out);
  return out;
}

std::string format_permutation_action(const PermutationAction& action) {
  std::ostringstream out;
  out << "curves:";
  for (const auto& l : action.labels) out << ' ' << l;
  out << '\n';
  for (std::size_t h = 0; h < action.group.order(); ++h) {
    out << "element " << action.group.elements[h] << ':';
    for (auto a : action.perms[h]) out << ' ' << action.labels[a];
    out << '\n';
  }
  out << "table:\n";
  for (std::size_t x = 0; x < action.group.order(); ++x) {
    out << action.group.elements[x] << ':';
    for (auto y : action.group.table[x]) out << ' ' << action.group.elements[y];
    out << '\n';
  }
  return out.str();
}

std::vector<std::int64_t> permute(const PermutationAction& action, std::size_t h, const std::vector<std::int64_t>& w) {
  if (w.size() != action.curves()) throw InputError("exponent vector has the wrong length");
  std::vector<std::int64_t> out(w.size());
  for (std::size_t a = 0; a < w.size(); ++a) out[action.perms.at(h)[a]] = w[a];
  return out;
}

SemidirectElement multiply(const PermutationAction& action, const SemidirectElement& x, const SemidirectElement& y) {
  if (x.v.size() != action.curves()) throw InputError("exponent vector has the wrong length");
  auto hw = permute(action, x.h, y.v);
  for (std::size_t a = 0; a < hw.size(); ++a) hw[a] += x.v[a];
  return {std::move(hw), action.group.mul(x.h, y.h)};
}

SemidirectElement pure_group(const PermutationAction& action, std::size_t h) {
  return {std::vector<std::int64_t>(action.curves(), 0), h};
}

bool commutes(const PermutationAction& action, const SemidirectElement& x, const SemidirectElement& y) {
  return multiply(action, x, y) == multiply(action, y, x);
}

std::vector<std::vector<std::size_t>> cycle_decomposition(const PermutationAction& action, std::size_t h) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<bool> seen(action.curves(), false);
  for (std::size_t a = 0; a < action.curves(); ++a) {
    if (seen[a]) continue;
    out.emplace_back();
    for (std::size_t b = a; !seen[b]; b = action.perms.at(h)[b]) {
      seen[b] = true;
      out.back().push_back(b);
    }
  }
  return out;
}

std::string format_cycles(const PermutationAction& action, const std::vector<std::vector<std::size_t>>& cycles) {
  std::string s;
  for (const auto& c : cycles) {
    s += '(';
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? " " : "") + action.labels[c[i]];
    s += ')';
  }
  return s;
}

SemidirectElement build_T(const PermutationAction& action) {
  if (action.curves() == 0) throw InputError("the multitwist needs a nonempty curve family");
  return {std::vector<std::int64_t>(action.curves(), 1), 0};
}

std::optional<std::size_t> noncommuting_witness(const PermutationAction& action, const std::vector<std::int64_t>& v) {
  const SemidirectElement x{v, 0};
  for (std::size_t h = 0; h < action.group.order(); ++h)
    if (!commutes(action, x, pure_group(action, h))) return h;
  return std::nullopt;
}

bool is_invariant(const PermutationAction& action, const std::vector<std::int64_t>& v) {
  // orbits by union-find over all generator moves
  std::vector<std::size_t> parent(action.curves());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const auto& p : action.perms)
    for (std::size_t a = 0; a < p.size(); ++a) parent[root(a)] = root(p[a]);
  std::map<std::size_t, std::int64_t> value;
  for (std::size_t a = 0; a < v.size(); ++a) {
    auto [it, fresh] = value.emplace(root(a), v[a]);
    if (!fresh && it->second != v[a]) return false;
  }
  return true;
}

Lemma59Report verify_lemma59(const PermutationAction& action, std::int64_t bound, std::uint64_t limit) {
  validate_action(action);
  if (bound < 0) throw InputError("exponent bound must be non-negative");
  Lemma59Report r;
  const auto t = build_T(action);
  bool all = true;
  for (std::size_t h = 0; h < action.group.order(); ++h) {
    Lemma59Entry e{h, cycle_decomposition(action, h), commutes(action, t, pure_group(action, h))};
    all = all && e.commutes;
    r.entries.push_back(std::move(e));
  }
  const auto n = action.curves();
  std::vector<std::int64_t> v(n, -bound);
  for (;;) {
    if (r.vectors_checked == limit) {
      r.exhaustive = false;
      break;
    }
    ++r.vectors_checked;
    const bool central = !noncommuting_witness(action, v);
    const bool invariant = is_invariant(action, v);
    r.invariant_vectors += invariant;
    r.mismatches += central != invariant;
    std::size_t k = n;
    while (k > 0 && v[k - 1] == bound) v[--k] = -bound;
    if (k == 0) break;
    ++v[k - 1];
  }
  r.passed = all && r.mismatches == 0;
  return r;
}

std::vector<PermutationAction> enumerate_actions(const GroupTable& group, std::size_t n) {
  validate_group(group);
  std::vector<std::size_t> gens = group.generators;
  if (gens.empty() && group.order() > 1)
    for (std::size_t x = 1; x < group.order(); ++x) gens.push_back(x);

  std::vector<std::vector<std::size_t>> sym;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do sym.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));

  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) labels.push_back("c" + std::to_string(a + 1));

  std::vector<PermutationAction> out;
  std::vector<std::size_t> choice(gens.size(), 0);
  for (;;) {
    // extend along words in the generators
    std::vector<std::vector<std::size_t>> perms(group.order());
    perms[0] = sym[0];
    std::vector<std::size_t> queue{0};
    bool ok = true;
    for (std::size_t i = 0; i < queue.size() && ok; ++i)
      for (std::size_t k = 0; k < gens.size() && ok; ++k) {
        const auto x = queue[i];
        const auto y = group.mul(x, gens[k]);
        std::vector<std::size_t> c(n);
        for (std::size_t a = 0; a < n; ++a) c[a] = perms[x][sym[choice[k]][a]];
        if (perms[y].empty()) {
          perms[y] = std::move(c);
          queue.push_back(y);
        } else if (perms[y] != c) {
          ok = false;
        }
      }
    if (ok && queue.size() != group.order()) throw InputError("generators do not generate " + group.name);
    if (ok) {
      PermutationAction a{labels, group, std::move(perms)};
      try {
        validate_action(a);
        out.push_back(std::move(a));
      } catch (const InputError&) {
      }
    }
    std::size_t k = 0;
    while (k < choice.size() && ++choice[k] == sym.size()) choice[k++] = 0;
    if (k == choice.size()) break;
  }
  return out;
}

}  // namespace afpt
