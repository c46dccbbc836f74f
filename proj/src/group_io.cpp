#include "afpt/group_io.hpp"

#include <algorithm>
#include <fstream>
#include <regex>
#include <sstream>

#include "afpt/errors.hpp"

namespace afpt {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

struct FactorDraft {
  FiniteTable table;
  std::vector<std::vector<std::string>> rows;
  bool explicit_generators = false;
  int line = 0;
};

FiniteTable finish_factor(FactorDraft& d) {
  auto& t = d.table;
  if (t.elements.empty()) throw ParseError(d.line, "factor '" + t.name + "' has no 'elements' line");
  if (d.rows.size() != t.elements.size())
    throw ParseError(d.line, "factor '" + t.name + "' needs " + std::to_string(t.elements.size()) +
                                 " rows, found " + std::to_string(d.rows.size()));
  for (const auto& row : d.rows) {
    if (row.size() != t.elements.size())
      throw ParseError(d.line, "factor '" + t.name + "': every row needs " + std::to_string(t.elements.size()) +
                                   " entries");
    std::vector<int> r;
    for (const auto& name : row) {
      auto it = std::find(t.elements.begin(), t.elements.end(), name);
      if (it == t.elements.end())
        throw ParseError(d.line, "factor '" + t.name + "': unknown element '" + name + "' in row");
      r.push_back(static_cast<int>(it - t.elements.begin()));
    }
    t.product.push_back(std::move(r));
  }
  if (!d.explicit_generators) t.generators.assign(t.elements.begin() + 1, t.elements.end());
  try {
    validate_table(t);
  } catch (const InputError& e) {
    throw ParseError(d.line, e.what());
  }
  return t;
}

}  // namespace

GroupFamily parse_group_definition(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string family;
  std::vector<std::string> free_gens;
  bool have_free_gens = false;
  std::vector<FiniteTable> factors;
  std::optional<FactorDraft> open;

  int lineno = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    auto tok = split_ws(raw);
    if (tok.empty()) continue;
    const std::string& key = tok[0];
    std::vector<std::string> args(tok.begin() + 1, tok.end());

    if (open) {
      if (key == "elements") {
        if (!open->table.elements.empty()) throw ParseError(lineno, "repeated 'elements' line");
        if (args.empty()) throw ParseError(lineno, "'elements' needs at least the identity");
        open->table.elements = args;
      } else if (key == "generators") {
        open->table.generators = args;
        open->explicit_generators = true;
      } else if (key == "row") {
        open->rows.push_back(args);
      } else if (key == "end") {
        if (!args.empty()) throw ParseError(lineno, "'end' takes no arguments");
        open->line = lineno;
        factors.push_back(finish_factor(*open));
        open.reset();
      } else {
        throw ParseError(lineno, "unexpected '" + key + "' inside factor block");
      }
      continue;
    }

    if (key == "family") {
      if (args.size() != 1) throw ParseError(lineno, "'family' takes one argument");
      if (!family.empty()) throw ParseError(lineno, "repeated 'family' line");
      family = args[0];
      if (family != "free" && family != "free_product" && family != "direct_product" && family != "finite")
        throw ParseError(lineno, "unknown family '" + family + "'");
    } else if (key == "generators") {
      if (have_free_gens) throw ParseError(lineno, "repeated 'generators' line");
      free_gens = args;
      have_free_gens = true;
    } else if (key == "factor") {
      if (args.size() != 1) throw ParseError(lineno, "'factor' takes one name");
      open.emplace();
      open->table.name = args[0];
      open->line = lineno;
    } else {
      throw ParseError(lineno, "unknown keyword '" + key + "'");
    }
  }
  if (open) throw ParseError(lineno, "factor '" + open->table.name + "' is missing 'end'");
  if (family.empty()) throw ParseError(0, "missing 'family' line");

  if (family == "free") {
    if (!factors.empty()) throw ParseError(0, "free family takes no factors");
    return FreeGroupSpec{free_gens};
  }
  if (family == "free_product") {
    if (have_free_gens) throw ParseError(0, "free_product takes no free generators");
    if (factors.empty()) throw ParseError(0, "free_product needs at least one factor");
    return FreeProductSpec{factors};
  }
  if (family == "direct_product") {
    if (factors.size() != 1) throw ParseError(0, "direct_product needs exactly one factor");
    return DirectProductSpec{free_gens, factors[0]};
  }
  if (have_free_gens) throw ParseError(0, "finite family takes no free generators");
  if (factors.size() != 1) throw ParseError(0, "finite family needs exactly one factor");
  return FiniteGroupSpec{factors[0]};
}

GroupFamily load_group_definition(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open group definition '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_group_definition(buf.str());
}

FiniteTable cyclic_table(std::string name, const std::string& symbol, int m) {
  if (m < 1) throw InputError("cyclic group order must be positive");
  FiniteTable t;
  t.name = std::move(name);
  for (int k = 0; k < m; ++k) t.elements.push_back(k == 0 ? "e" : k == 1 ? symbol : symbol + std::to_string(k));
  t.product.assign(m, std::vector<int>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) t.product[i][j] = (i + j) % m;
  if (m > 1) t.generators = {symbol};
  return t;
}

namespace {

void write_factor(std::ostringstream& out, const FiniteTable& t) {
  out << "factor " << t.name << "\n  elements";
  for (const auto& e : t.elements) out << ' ' << e;
  out << "\n  generators";
  for (const auto& g : t.generators) out << ' ' << g;
  out << '\n';
  for (const auto& row : t.product) {
    out << "  row";
    for (int v : row) out << ' ' << t.elements[v];
    out << '\n';
  }
  out << "end\n";
}

std::string free_names(int k) {
  std::string s;
  for (int i = 0; i < k; ++i) {
    s += ' ';
    s += static_cast<char>('a' + i);
  }
  return s;
}

}  // namespace

std::string builtin_group_definition(std::string_view name_view) {
  const std::string name(name_view);
  std::smatch m;
  std::ostringstream out;
  out << "# built-in " << name << '\n';
  if (name == "D_inf") return builtin_group_definition("Z2*Z2");
  if (std::regex_match(name, m, std::regex(R"(F([1-9]))"))) {
    out << "family free\ngenerators" << free_names(std::stoi(m[1])) << '\n';
  } else if (std::regex_match(name, m, std::regex(R"(F([1-9])xZ([1-9][0-9]?))"))) {
    out << "family direct_product\ngenerators" << free_names(std::stoi(m[1])) << '\n';
    write_factor(out, cyclic_table("Z" + std::string(m[2]), "t", std::stoi(m[2])));
  } else if (std::regex_match(name, m, std::regex(R"(Z([1-9][0-9]?)\*Z([1-9][0-9]?))"))) {
    out << "family free_product\n";
    write_factor(out, cyclic_table("Z" + std::string(m[1]), "r", std::stoi(m[1])));
    write_factor(out, cyclic_table("Z" + std::string(m[2]), "s", std::stoi(m[2])));
  } else if (std::regex_match(name, m, std::regex(R"(Z([1-9][0-9]?))"))) {
    out << "family finite\n";
    write_factor(out, cyclic_table(name, "t", std::stoi(m[1])));
  } else {
    throw InputError("unknown built-in group '" + name + "'");
  }
  return out.str();
}

GroupFamily resolve_group(const std::string& name_or_path) {
  std::ifstream probe(name_or_path);
  if (probe.good()) return load_group_definition(name_or_path);
  return parse_group_definition(builtin_group_definition(name_or_path));
}

}  // namespace afpt
