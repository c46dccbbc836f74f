#include "afpt/cli.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "afpt/action.hpp"
#include "afpt/errors.hpp"
#include "afpt/extractor.hpp"
#include "afpt/farey.hpp"
#include "afpt/fixpoint.hpp"
#include "afpt/group_io.hpp"
#include "afpt/metric_graph.hpp"
#include "afpt/multitwist.hpp"
#include "json.hpp"

namespace afpt::cli {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// configuration

void RunConfig::validate() const {
  static const std::vector<std::string> subs{"ball", "delta", "afp", "extract", "farey", "multitwist"};
  if (std::find(subs.begin(), subs.end(), subcommand) == subs.end())
    throw InputError("unknown subcommand '" + subcommand + "'");
  if (radius < 0) throw InputError("radius must be non-negative");
  if (radius_max && *radius_max < radius) throw InputError("radius_max must be at least radius");
  if (action != "cayley" && action != "tree") throw InputError("action must be cayley or tree");
  if (a && *a < 0) throw InputError("a must be non-negative");
  if (delta_mode != "exhaustive" && delta_mode != "sampled") throw InputError("delta_mode must be exhaustive or sampled");
  if (formula != "plus4" && formula != "plus10") throw InputError("formula must be plus4 or plus10");
  if (samples == 0 || max_vertices == 0 || max_pairs == 0 || order_bound == 0)
    throw InputError("budgets (samples, max_vertices, max_pairs, order_bound) must be positive");
  if ((subcommand == "afp" || subcommand == "extract") && !delta && !a)
    throw InputError(subcommand + " needs delta (a rational or 'auto') or a");
  if (subcommand == "farey") {
    if (depths.empty()) throw InputError("farey needs at least one depth");
    for (int d : depths)
      if (d < 0) throw InputError("farey depths must be non-negative");
  }
  if (subcommand == "multitwist" && action_file.empty()) throw InputError("multitwist needs action_file");
}

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const auto comma = s.find(',', start);
    auto item = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!item.empty()) out.push_back(std::move(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

template <typename T>
T number(const std::string& text, int line, const std::string& key) {
  T v{};
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw ParseError(line, "bad number '" + text + "' for " + key);
  return v;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

RunConfig parse_config(std::string_view text, RunConfig c) {
  std::istringstream in{std::string(text)};
  int line_no = 0;
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    const auto line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key == "subcommand") c.subcommand = value;
    else if (key == "group") c.group = value;
    else if (key == "h") c.h = split_list(value);
    else if (key == "radius") c.radius = number<int>(value, line_no, key);
    else if (key == "radius_max") c.radius_max = number<int>(value, line_no, key);
    else if (key == "action") c.action = value;
    else if (key == "a") c.a = number<int>(value, line_no, key);
    else if (key == "delta") c.delta = value;
    else if (key == "delta_mode") c.delta_mode = value;
    else if (key == "samples") c.samples = number<std::uint64_t>(value, line_no, key);
    else if (key == "formula") c.formula = value;
    else if (key == "order_bound") c.order_bound = number<std::uint64_t>(value, line_no, key);
    else if (key == "max_vertices") c.max_vertices = number<std::size_t>(value, line_no, key);
    else if (key == "max_pairs") c.max_pairs = number<std::uint64_t>(value, line_no, key);
    else if (key == "subgroup") c.subgroup = value;
    else if (key == "depths") {
      c.depths.clear();
      for (const auto& d : split_list(value)) c.depths.push_back(number<int>(d, line_no, key));
    } else if (key == "pairs") c.pairs = split_list(value);
    else if (key == "action_file") c.action_file = value;
    else if (key == "seed") c.seed = number<std::uint64_t>(value, line_no, key);
    else if (key == "output") c.output = value;
    else if (key == "summary") c.summary = value;
    else throw ParseError(line_no, "unknown key '" + key + "'");
  }
  return c;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  const auto before = base.action_file;
  auto c = parse_config(read_text(path), std::move(base));
  // a relative action_file named in the file is relative to the file
  if (c.action_file != before && !c.action_file.empty() && std::filesystem::path(c.action_file).is_relative())
    c.action_file = (std::filesystem::path(path).parent_path() / c.action_file).lexically_normal().string();
  return c;
}

// ---------------------------------------------------------------------------
// reporting

namespace {

std::string fnv1a64(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json config_json(const RunConfig& c) {
  json j;
  j["subcommand"] = c.subcommand;
  j["group"] = c.group;
  j["h"] = c.h;
  j["radius"] = c.radius;
  j["radius_max"] = c.radius_max ? json(*c.radius_max) : json(nullptr);
  j["action"] = c.action;
  j["a"] = c.a ? json(*c.a) : json(nullptr);
  j["delta"] = c.delta ? json(*c.delta) : json(nullptr);
  j["delta_mode"] = c.delta_mode;
  j["samples"] = c.samples;
  j["formula"] = c.formula;
  j["order_bound"] = c.order_bound;
  j["max_vertices"] = c.max_vertices;
  j["max_pairs"] = c.max_pairs;
  j["subgroup"] = c.subgroup;
  j["depths"] = c.depths;
  j["pairs"] = c.pairs;
  j["action_file"] = c.action_file;
  j["seed"] = c.seed;
  return j;
}

class Reporter {
 public:
  Reporter(std::ostream& out, std::uint64_t seed) : out_(out), seed_(seed) {}

  void input(const std::string& name, json version) { inputs_[name] = std::move(version); }

  void emit(const std::string& type, json body) {
    body["record"] = type;
    body["seed"] = seed_;
    body["tool"] = "afpt " + std::string(kVersion);
    body["inputs"] = inputs_;
    out_ << body.dump() << '\n';
  }

 private:
  std::ostream& out_;
  std::uint64_t seed_;
  json inputs_ = json::object();
};

struct LoadedGroup {
  std::string source;
  std::string text;
  GroupOracle oracle;
};

LoadedGroup load_group(const std::string& name) {
  std::ifstream probe(name);
  if (probe.good()) {
    auto text = read_text(name);
    GroupOracle oracle(parse_group_definition(text));
    return {"file:" + name, std::move(text), std::move(oracle)};
  }
  auto text = builtin_group_definition(name);
  GroupOracle oracle(parse_group_definition(text));
  return {"builtin:" + name, std::move(text), std::move(oracle)};
}

FiniteSubgroup load_subgroup(const GroupOracle& g, const std::vector<std::string>& words) {
  std::vector<GroupElement> gens;
  for (const auto& w : words) gens.push_back(g.parse(w));
  return generate_subgroup(g, gens);
}

json names(const GroupOracle& g, const std::vector<GroupElement>& xs) {
  json j = json::array();
  for (const auto& x : xs) j.push_back(g.format(x));
  return j;
}

struct DeltaChoice {
  Rational value{0};
  std::string source;
  json detail;
};

DeltaChoice resolve_delta(const RunConfig& c, const MetricWindow& w, const std::string& where) {
  if (c.delta && *c.delta != "auto") {
    const auto d = parse_rational(*c.delta);
    if (d < 0) throw InputError("delta must be non-negative");
    return {d, "user", json::object()};
  }
  const auto mode = c.delta_mode == "sampled" ? DeltaMode::sampled(c.samples, c.seed) : DeltaMode::exhaustive();
  const auto est = estimate_delta(w, mode);
  DeltaChoice out;
  out.value = est.delta;
  out.source = est.exhaustive ? "estimate_delta exhaustive on " + where
                              : "estimate_delta sampled on " + where + " (lower bound)";
  out.detail = {{"triangles", est.triangles}, {"skipped", est.skipped}, {"exhaustive", est.exhaustive},
                {"no_valid_triangles", est.no_valid_triangles()}};
  return out;
}

std::string vertex_list(const MetricWindow& w, const std::vector<VertexId>& vs, std::size_t limit = 12) {
  std::string s;
  for (std::size_t i = 0; i < vs.size() && i < limit; ++i) s += (i ? ", " : "") + w.vertex_name(vs[i]);
  if (vs.size() > limit) s += ", ...";
  return s;
}

// ---------------------------------------------------------------------------
// subcommands

int run_ball(const RunConfig& c, Reporter& rep, std::ostream& sum, const LoadedGroup& g) {
  const auto ball = build_ball(g.oracle, c.radius, c.max_vertices);
  std::size_t edges = 0;
  for (const auto& adj : ball.adjacency) edges += adj.size();
  std::vector<std::size_t> spheres(static_cast<std::size_t>(c.radius) + 1, 0);
  for (int l : ball.lengths) ++spheres[static_cast<std::size_t>(l)];
  json gens = json::array();
  for (Letter l : g.oracle.generators()) gens.push_back(g.oracle.format(g.oracle.letter(l)));
  rep.emit("ball", {{"radius", c.radius},
                    {"vertices", ball.size()},
                    {"edges", edges / 2},
                    {"spheres", spheres},
                    {"family", std::string(family_name(g.oracle.kind()))},
                    {"generators", gens}});
  sum << "ball: " << g.source << " radius " << c.radius << ", " << ball.size() << " vertices, " << edges / 2
      << " edges\n";
  return kOk;
}

int run_delta(const RunConfig& c, Reporter& rep, std::ostream& sum, const LoadedGroup& g) {
  const auto ball = build_ball(g.oracle, c.radius, c.max_vertices);
  const CayleyWindow w(g.oracle, ball);
  const auto mode = c.delta_mode == "sampled" ? DeltaMode::sampled(c.samples, c.seed) : DeltaMode::exhaustive();
  const auto est = estimate_delta(w, mode);
  json witness = nullptr;
  if (est.witness) witness = {w.vertex_name((*est.witness)[0]), w.vertex_name((*est.witness)[1]), w.vertex_name((*est.witness)[2])};
  rep.emit("delta", {{"radius", c.radius},
                     {"vertices", ball.size()},
                     {"delta", to_string(est.delta)},
                     {"exhaustive", est.exhaustive},
                     {"triangles", est.triangles},
                     {"skipped", est.skipped},
                     {"no_valid_triangles", est.no_valid_triangles()},
                     {"witness", witness}});
  sum << "delta: " << g.source << " radius " << c.radius << ": delta = " << to_string(est.delta) << " ("
      << (est.exhaustive ? "exhaustive" : "sampled, lower bound") << ", " << est.triangles << " triangles)\n";
  return kOk;
}

int run_afp(const RunConfig& c, Reporter& rep, std::ostream& sum, const LoadedGroup& g) {
  const auto ball = build_ball(g.oracle, c.radius, c.max_vertices);
  const CayleyWindow w(g.oracle, ball);
  const auto h = load_subgroup(g.oracle, c.h);
  const CayleyAction ctx(w, h);
  const auto delta = resolve_delta(c, w, "the radius " + std::to_string(c.radius) + " ball");
  const auto t = thresholds_for(delta.value);
  const int a = c.a ? *c.a : t.fixed;
  const auto x = almost_fixed_set(ctx, a);
  const auto diam = valid_diameter(w, x.members);
  rep.emit("almost_fixed", {{"radius", c.radius},
                            {"h", names(g.oracle, h.elements)},
                            {"delta", to_string(delta.value)},
                            {"delta_source", delta.source},
                            {"delta_detail", delta.detail},
                            {"threshold", a},
                            {"threshold_source", c.a ? "user" : "floor(6 delta)"},
                            {"members", x.members.size()},
                            {"scanned", x.scanned},
                            {"escaped", x.escaped},
                            {"invalid", x.invalid},
                            {"over_threshold", x.over_threshold},
                            {"diameter", diam ? json(*diam) : json(nullptr)}});
  sum << "afp: " << g.source << " radius " << c.radius << ", |H| = " << h.order() << ", threshold " << a << ": "
      << x.members.size() << " almost-fixed vertices";
  if (!x.members.empty()) sum << " (" << vertex_list(w, x.members) << ")";
  sum << "\n";

  std::uint64_t pairs = 0, points = 0, counterexamples = 0, unverifiable = 0;
  bool capped = false;
  const auto fixed = almost_fixed_set(ctx, t.fixed);
  for (std::size_t i = 0; i < fixed.members.size() && !capped; ++i)
    for (std::size_t j = i + 1; j < fixed.members.size(); ++j) {
      const auto d = w.valid_distance(fixed.members[i], fixed.members[j]);
      if (!d || *d < t.far) continue;
      if (pairs == c.max_pairs) {
        capped = true;
        break;
      }
      ++pairs;
      const auto cert = midpoint_certify(ctx, fixed.members[i], fixed.members[j], delta.value);
      points += cert.points.size();
      unverifiable += cert.unverifiable;
      counterexamples += cert.counterexamples;
      for (const auto& p : cert.points)
        if (p.diameter && !p.ok)
          rep.emit("midpoint_counterexample", {{"x", w.vertex_name(cert.x)},
                                               {"y", w.vertex_name(cert.y)},
                                               {"z", w.vertex_name(p.z)},
                                               {"diameter", *p.diameter},
                                               {"bound", t.midpoint}});
    }
  rep.emit("midpoint", {{"pairs", pairs},
                        {"capped", capped},
                        {"points", points},
                        {"counterexamples", counterexamples},
                        {"unverifiable", unverifiable},
                        {"far", t.far},
                        {"margin", t.margin},
                        {"midpoint_bound", t.midpoint}});
  sum << "midpoints: " << pairs << " far pairs" << (capped ? " (capped)" : "") << ", " << points << " points, "
      << counterexamples << " counterexamples, " << unverifiable << " unverifiable\n";
  return kOk;
}

// An action together with the window it lives on.
struct ActionHolder {
  std::unique_ptr<CayleyBall> ball;
  std::unique_ptr<CayleyWindow> window;
  std::unique_ptr<ProperAction> action;
};

ActionHolder make_action(const RunConfig& c, const GroupOracle& g, int radius) {
  ActionHolder out;
  if (c.action == "tree") {
    out.action = std::make_unique<FreeProductTreeAction>(g, radius);
    if (out.action->window().graph().size() > c.max_vertices)
      throw ResourceError("tree window exceeds max_vertices = " + std::to_string(c.max_vertices));
    return out;
  }
  out.ball = std::make_unique<CayleyBall>(build_ball(g, radius, c.max_vertices));
  out.window = std::make_unique<CayleyWindow>(g, *out.ball);
  out.action = std::make_unique<CayleyGraphAction>(*out.window);
  return out;
}

json transcript_json(const GroupOracle& g, const CommutationTranscript& t) {
  json j = json::array();
  for (const auto& e : t.entries)
    j.push_back({{"h", g.format(e.h)}, {"zh", g.format(e.zh)}, {"hz", g.format(e.hz)}, {"equal", e.equal}});
  return j;
}

int run_extract(const RunConfig& c, Reporter& rep, std::ostream& sum, const LoadedGroup& g) {
  const auto h = load_subgroup(g.oracle, c.h);
  const int last = c.radius_max ? *c.radius_max : c.radius;
  const auto formula = c.formula == "plus10" ? DFormula::Plus10 : DFormula::Plus4;

  std::optional<DeltaChoice> delta;
  int a = 0;
  ActionHolder held;
  AlmostFixedSet x;
  ConstantsReport constants;
  int radius = c.radius;
  for (;; ++radius) {
    held = make_action(c, g.oracle, radius);
    const auto& action = *held.action;
    if (!delta) {
      delta = resolve_delta(c, action.window(), "the radius " + std::to_string(radius) + " " + c.action + " window");
      a = c.a ? *c.a : thresholds_for(delta->value).fixed;
    }
    x = almost_fixed_set(SubgroupAction(action, h), a);
    const auto m = measure_constants(action, a);
    constants = compute_constants(g.oracle.finite_subgroup_bound(), m.c1, m.c2, m.c3, delta->value, formula);
    constants.a = a;
    constants.c0_source = "family bound on finite subgroup orders";
    constants.c1_source = "measured: vertex orbit types among " + std::to_string(m.core) + " core vertices";
    constants.c2_source = "measured: largest " + std::to_string(a) + "-ball over core vertices";
    constants.c3_source = "measured: largest vertex stabilizer over core vertices";
    constants.delta_source = delta->source;
    const bool reached = BigInt(x.members.size()) >= constants.n;
    rep.emit("window", {{"radius", radius},
                        {"action", c.action},
                        {"vertices", action.window().graph().size()},
                        {"almost_fixed", x.members.size()},
                        {"n", constants.n.str()},
                        {"threshold_reached", reached}});
    if (reached || radius >= last) break;
  }

  const bool reached = BigInt(x.members.size()) >= constants.n;
  rep.emit("constants", {{"c0", constants.c0},
                         {"c1", constants.c1},
                         {"c2", constants.c2},
                         {"c3", constants.c3},
                         {"a", a},
                         {"delta", to_string(constants.delta)},
                         {"n", constants.n.str()},
                         {"d", constants.d.str()},
                         {"formula", std::string(d_formula_name(formula))},
                         {"provenance",
                          {{"c0", constants.c0_source},
                           {"c1", constants.c1_source},
                           {"c2", constants.c2_source},
                           {"c3", constants.c3_source},
                           {"delta", constants.delta_source},
                           {"a", c.a ? "user" : "floor(6 delta)"},
                           {"formula", c.formula == "plus4" ? "default for Cayley and tree inputs" : "user"}}}});
  sum << "extract: " << g.source << ", " << c.action << " action, radius " << radius << ", |H| = " << h.order()
      << ", a = " << a << "\n";
  sum << "constants: C0 = " << constants.c0 << ", C1 = " << constants.c1 << ", C2 = " << constants.c2
      << ", C3 = " << constants.c3 << ", delta = " << to_string(constants.delta) << ", N = " << constants.n
      << ", D = " << constants.d << "\n";
  sum << "almost-fixed set: " << x.members.size() << (reached ? " >= N" : " < N") << "\n";

  if (x.members.empty()) {
    rep.emit("extraction", {{"status", "empty almost-fixed set"}, {"certificates", 0}, {"threshold_reached", false}});
    sum << "no almost-fixed vertices; nothing to extract\n";
    return kNoneFound;
  }
  const auto& action = *held.action;
  const auto r = extract_centralizers(action, h, x.members, c.order_bound);
  const auto& w = action.window();
  rep.emit("extraction", {{"status", r.nontrivial() > 0 ? "certificates found" : "none found"},
                          {"p_size", r.p_size},
                          {"orbit_classes", r.orbit_classes},
                          {"r1", r.chain.r1},
                          {"orbit_refinement", r.chain.orbit_refinement},
                          {"stabilizer_refinement", r.chain.stabilizer_refinement},
                          {"cells", r.cells.size()},
                          {"certificates", r.certificates.size()},
                          {"nontrivial", r.nontrivial()},
                          {"rejected", r.rejected},
                          {"specialized_checked", r.specialized_checked},
                          {"threshold_reached", reached},
                          {"at_least_c0_plus_1", r.certificates.size() >= constants.c0 + 1}});
  for (const auto& cert : r.certificates)
    rep.emit("certificate", {{"z", g.oracle.format(cert.z)},
                             {"from", w.vertex_name(cert.from)},
                             {"to", w.vertex_name(cert.to)},
                             {"trivial", cert.trivial},
                             {"order", cert.order.text()},
                             {"verified", cert.transcript.passed},
                             {"transcript", transcript_json(g.oracle, cert.transcript)}});
  const auto verified = std::count_if(r.certificates.begin(), r.certificates.end(),
                                      [](const auto& cert) { return cert.transcript.passed; });
  sum << "extraction: chain r1 = " << r.chain.r1 << " -> " << r.chain.r2() << " -> " << r.chain.final_size() << ", "
      << r.certificates.size() << " certificates (" << r.nontrivial() << " nontrivial), " << verified
      << " verified\n";
  for (std::size_t i = 0; i < r.certificates.size() && i < 8; ++i)
    sum << "  z = " << g.oracle.format(r.certificates[i].z) << "  [" << r.certificates[i].order.text() << "]\n";
  if (r.certificates.size() > 8) sum << "  ...\n";
  return r.nontrivial() > 0 ? kOk : kNoneFound;
}

const char* kFareyScope = "Farey graph of the once-punctured torus: a desk-scale analogue";

int run_farey(const RunConfig& c, Reporter& rep, std::ostream& sum) {
  const auto h = finite_subgroup(c.subgroup);
  const auto center = center_for(h);
  for (int d : c.depths) {
    const std::size_t size = (center == FareyCenter::Edge ? 2u : 3u) * (std::size_t{1} << std::min(d, 40));
    if (d > 40 || size > c.max_vertices)
      throw ResourceError("Farey window of depth " + std::to_string(d) + " exceeds max_vertices");
  }
  SweepOptions opts;
  opts.samples = c.samples;
  opts.seed = c.seed;
  opts.threshold = c.a;
  if (c.delta_mode == "sampled") opts.exhaustive_limit = 0;
  std::vector<int> depths = c.depths;
  std::sort(depths.begin(), depths.end());
  depths.erase(std::unique(depths.begin(), depths.end()), depths.end());
  const auto rows = depth_sweep(h, depths, opts);
  sum << "farey (" << kFareyScope << "), H = " << h.name << " of order " << h.order() << "\n";
  for (const auto& row : rows) {
    rep.emit("farey_depth", {{"scope", kFareyScope},
                             {"subgroup", h.name},
                             {"depth", row.depth},
                             {"vertices", row.vertices},
                             {"delta_measured", to_string(row.measured)},
                             {"delta", to_string(row.delta)},
                             {"delta_source", row.exhaustive ? "estimate_delta exhaustive, running maximum over depths"
                                                             : "estimate_delta sampled, running maximum over depths"},
                             {"threshold", row.threshold},
                             {"threshold_source", c.a ? "user" : "floor(6 delta)"},
                             {"almost_fixed", row.almost_fixed},
                             {"diameter", row.diameter}});
    sum << "  depth " << row.depth << ": " << row.vertices << " slopes, delta " << to_string(row.delta)
        << ", threshold " << row.threshold << ", " << row.almost_fixed << " almost-fixed, diameter " << row.diameter
        << "\n";
  }
  const FareyWindow window(center, depths.back(), h);
  const auto profile = orbit_diameter_profile(h, window, rows.back().threshold);
  json table = json::array();
  for (const auto& row : profile.rows)
    table.push_back({{"distance", row.distance}, {"slopes", row.slopes}, {"max_diameter", row.max_diameter}});
  rep.emit("farey_profile", {{"scope", kFareyScope},
                             {"subgroup", h.name},
                             {"depth", depths.back()},
                             {"rows", table},
                             {"threshold", profile.threshold},
                             {"almost_fixed", profile.almost_fixed},
                             {"almost_fixed_diameter", profile.almost_fixed_diameter}});
  for (const auto& pair : c.pairs) {
    const auto colon = pair.find(':');
    if (colon == std::string::npos) throw ParseError(0, "farey pair '" + pair + "' is not 's1:s2'");
    const auto s1 = parse_slope(pair.substr(0, colon));
    const auto s2 = parse_slope(pair.substr(colon + 1));
    const auto path = farey_geodesic(s1, s2);
    json geo = json::array();
    for (const auto& s : path.geodesic) geo.push_back(to_string(s));
    rep.emit("farey_distance", {{"scope", kFareyScope},
                                {"s1", to_string(s1)},
                                {"s2", to_string(s2)},
                                {"distance", path.distance},
                                {"geodesic", geo}});
    sum << "  d(" << to_string(s1) << ", " << to_string(s2) << ") = " << path.distance << "\n";
  }
  return kOk;
}

int run_multitwist(const std::string& text, Reporter& rep, std::ostream& sum) {
  const auto action = parse_permutation_action(text);
  const auto r = verify_lemma59(action);
  for (const auto& e : r.entries)
    rep.emit("lemma59_element", {{"h", action.group.elements[e.h]},
                                 {"cycles", format_cycles(action, e.cycles)},
                                 {"t_commutes", e.commutes}});
  const auto t = build_T(action);
  rep.emit("lemma59", {{"status", r.passed ? "verified" : "failed"},
                       {"curves", action.labels},
                       {"group_order", action.group.order()},
                       {"t", t.v},
                       {"vectors_checked", r.vectors_checked},
                       {"invariant_vectors", r.invariant_vectors},
                       {"mismatches", r.mismatches},
                       {"exhaustive", r.exhaustive}});
  sum << "multitwist: " << action.labels.size() << " curves, |H| = " << action.group.order() << "\n";
  for (const auto& e : r.entries)
    sum << "  " << action.group.elements[e.h] << " " << format_cycles(action, e.cycles) << ": T h "
        << (e.commutes ? "=" : "!=") << " h T\n";
  sum << "  T commutes with H: " << (r.passed ? "verified" : "FAILED") << "; characterization checked on "
      << r.vectors_checked << " vectors, " << r.mismatches << " mismatches\n";
  return r.passed ? kOk : kNoneFound;
}

}  // namespace

int run(const RunConfig& config, std::ostream& report, std::ostream& summary) {
  Reporter rep(report, config.seed);
  try {
    config.validate();
    if (config.subcommand == "farey") {
      rep.input("farey_subgroup", config.subgroup);
      rep.emit("config", {{"config", config_json(config)}});
      return run_farey(config, rep, summary);
    }
    if (config.subcommand == "multitwist") {
      const auto text = read_text(config.action_file);
      rep.input("action_file", {{"path", config.action_file}, {"fnv1a64", fnv1a64(text)}});
      rep.emit("config", {{"config", config_json(config)}});
      return run_multitwist(text, rep, summary);
    }
    const auto g = load_group(config.group);
    rep.input("group", {{"source", g.source}, {"fnv1a64", fnv1a64(g.text)}});
    rep.input("h", config.h);
    rep.emit("config", {{"config", config_json(config)}});
    if (config.subcommand == "ball") return run_ball(config, rep, summary, g);
    if (config.subcommand == "delta") return run_delta(config, rep, summary, g);
    if (config.subcommand == "afp") return run_afp(config, rep, summary, g);
    return run_extract(config, rep, summary, g);
  } catch (const ParseError& e) {
    rep.emit("error", {{"kind", "parse"}, {"message", e.what()}});
    summary << "parse error: " << e.what() << "\n";
    return kParseError;
  } catch (const ResourceError& e) {
    rep.emit("error", {{"kind", "budget"}, {"message", e.what()}});
    summary << "budget exceeded: " << e.what() << "\n";
    return kBudgetError;
  } catch (const WindowError& e) {
    rep.emit("error", {{"kind", "window"}, {"message", e.what()}});
    summary << "window error: " << e.what() << "\n";
    return kWindowError;
  } catch (const InputError& e) {
    rep.emit("error", {{"kind", "input"}, {"message", e.what()}});
    summary << "input error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    rep.emit("error", {{"kind", "internal"}, {"message", e.what()}});
    summary << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace afpt::cli
