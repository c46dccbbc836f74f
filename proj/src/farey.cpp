#include "afpt/farey.hpp"

#include <algorithm>
#include <charconv>
#include <limits>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "afpt/errors.hpp"

namespace afpt {

namespace {

std::int64_t narrow(__int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min())
    throw InputError("slope arithmetic overflows 64 bits");
  return static_cast<std::int64_t>(v);
}

// Sign normalization only; callers guarantee primitivity.
Slope canonical(__int128 p, __int128 q) {
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  return Slope{narrow(p), narrow(q)};
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// a p + b q = 1 for coprime p, q.
std::pair<std::int64_t, std::int64_t> bezout(std::int64_t p, std::int64_t q) {
  std::int64_t old_r = p, r = q, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t k = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - k * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - k * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - k * t);
  }
  if (old_r < 0) {
    old_s = -old_s;
    old_t = -old_t;
  }
  return {old_s, old_t};
}

// d(1/0, x) for a finite slope x, from the continued fraction of its fractional part.
int distance_from_infinity(const Slope& x) {
  if (x.q == 1) return 1;
  std::vector<std::int64_t> a;
  std::int64_t num = x.q, den = x.p - floor_div(x.p, x.q) * x.q;  // frac = den / num
  while (den != 0) {
    a.push_back(num / den);
    std::tie(num, den) = std::make_pair(den, num % den);
  }
  // h[k] = d(1/0, [0; a_k, ..., a_n])
  const auto n = a.size();
  std::vector<int> h(n);
  h[n - 1] = a[n - 1] == 1 ? 1 : 2;
  for (std::size_t k = n - 1; k-- > 0;) {
    const int phi = k + 2 < n ? h[k + 2] : 1;
    const std::int64_t via_pivot = a[k] + phi;
    h[k] = static_cast<int>(std::min<std::int64_t>(1 + h[k + 1], via_pivot));
  }
  return h[0];
}

}  // namespace

Slope Slope::make(std::int64_t p, std::int64_t q) {
  if (std::gcd(p, q) != 1) throw InputError("slope " + std::to_string(p) + "/" + std::to_string(q) + " is not primitive");
  return canonical(p, q);
}

std::string to_string(const Slope& s) { return std::to_string(s.p) + "/" + std::to_string(s.q); }

Slope parse_slope(std::string_view text) {
  if (text == "inf") return Slope::infinity();
  auto number = [&](std::string_view t) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty())
      throw ParseError(0, "bad slope '" + std::string(text) + "'");
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Slope::make(number(text), 1);
  return Slope::make(number(text.substr(0, slash)), number(text.substr(slash + 1)));
}

UniMatrix UniMatrix::make(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) {
  if (static_cast<__int128>(a) * d - static_cast<__int128>(b) * c != 1)
    throw InputError("matrix determinant is not 1");
  return {a, b, c, d};
}

UniMatrix operator*(const UniMatrix& x, const UniMatrix& y) {
  auto dot = [](std::int64_t u, std::int64_t v, std::int64_t w, std::int64_t z) {
    return narrow(static_cast<__int128>(u) * v + static_cast<__int128>(w) * z);
  };
  return {dot(x.a, y.a, x.b, y.c), dot(x.a, y.b, x.b, y.d), dot(x.c, y.a, x.d, y.c), dot(x.c, y.b, x.d, y.d)};
}

std::string to_string(const UniMatrix& m) {
  return "[" + std::to_string(m.a) + "," + std::to_string(m.b) + "," + std::to_string(m.c) + "," +
         std::to_string(m.d) + "]";
}

std::uint64_t intersection_number(const Slope& s1, const Slope& s2) {
  const __int128 v = static_cast<__int128>(s1.p) * s2.q - static_cast<__int128>(s1.q) * s2.p;
  const __int128 abs = v < 0 ? -v : v;
  if (abs > std::numeric_limits<std::uint64_t>::max()) throw InputError("intersection number overflows 64 bits");
  return static_cast<std::uint64_t>(abs);
}

bool adjacent(const Slope& s1, const Slope& s2) { return intersection_number(s1, s2) == 1; }

Slope act(const UniMatrix& m, const Slope& s) {
  return canonical(static_cast<__int128>(m.a) * s.p + static_cast<__int128>(m.b) * s.q,
                   static_cast<__int128>(m.c) * s.p + static_cast<__int128>(m.d) * s.q);
}

UniMatrix to_infinity(const Slope& s) {
  if (s.is_infinity()) return UniMatrix::identity();
  const auto [a, b] = bezout(s.p, s.q);
  return {a, b, -s.q, s.p};
}

int farey_distance(const Slope& s1, const Slope& s2) {
  if (s1 == s2) return 0;
  return distance_from_infinity(act(to_infinity(s1), s2));
}

FareyPath farey_geodesic(const Slope& s1, const Slope& s2) {
  FareyPath out;
  out.distance = farey_distance(s1, s2);
  out.geodesic.push_back(s1);
  Slope cur = s1;
  for (int k = out.distance; k > 0; --k) {
    if (k == 1) {
      out.geodesic.push_back(s2);
      break;
    }
    const auto m = to_infinity(cur);
    const auto x = act(m, s2);
    const auto back = m.inverse();
    const std::int64_t n = floor_div(x.p, x.q);
    std::optional<Slope> next;
    for (std::int64_t cand : {n, n + 1}) {
      const Slope c = act(back, Slope{cand, 1});
      if (farey_distance(c, s2) == k - 1) {
        next = c;
        break;
      }
    }
    if (!next) throw std::logic_error("no geodesic step from " + to_string(cur) + " toward " + to_string(s2));
    out.geodesic.push_back(*next);
    cur = *next;
  }
  return out;
}

MatrixGroup generate_matrix_group(const std::string& name, const std::vector<UniMatrix>& gens, std::size_t max_order) {
  std::set<UniMatrix> seen{UniMatrix::identity()};
  std::vector<UniMatrix> queue{UniMatrix::identity()};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& g : gens) {
      const auto m = queue[i] * g;
      if (seen.insert(m).second) {
        if (seen.size() > max_order) throw ResourceError("matrix group exceeds order " + std::to_string(max_order));
        queue.push_back(m);
      }
    }
  MatrixGroup out{name, {UniMatrix::identity()}};
  for (const auto& m : seen)
    if (m != UniMatrix::identity()) out.elements.push_back(m);
  for (const auto& x : out.elements)
    for (const auto& y : out.elements)
      if (!seen.count(x * y)) throw std::logic_error("matrix group not closed");
  return out;
}

MatrixGroup finite_subgroup(const std::string& name) {
  const UniMatrix s{0, -1, 1, 0}, t{1, 1, 0, 1}, minus{-1, 0, 0, -1};
  if (name == "S4") return generate_matrix_group(name, {s});
  if (name == "ST6") return generate_matrix_group(name, {s * t});
  if (name == "center2") return generate_matrix_group(name, {minus});
  if (name == "trivial") return generate_matrix_group(name, {});
  throw InputError("unknown Farey subgroup '" + name + "' (S4, ST6, center2, trivial)");
}

namespace {

const std::vector<Slope>& cell_slopes(FareyCenter c) {
  static const std::vector<Slope> edge{Slope{0, 1}, Slope::infinity()};
  static const std::vector<Slope> triangle{Slope::infinity(), Slope{0, 1}, Slope{-1, 1}};
  return c == FareyCenter::Edge ? edge : triangle;
}

bool preserves(const MatrixGroup& h, const std::vector<Slope>& cell) {
  std::set<Slope> set(cell.begin(), cell.end());
  for (const auto& m : h.elements)
    for (const auto& s : cell)
      if (!set.count(act(m, s))) return false;
  return true;
}

}  // namespace

FareyCenter center_for(const MatrixGroup& h) {
  if (preserves(h, cell_slopes(FareyCenter::Edge))) return FareyCenter::Edge;
  if (preserves(h, cell_slopes(FareyCenter::Triangle))) return FareyCenter::Triangle;
  throw InputError("subgroup " + h.name + " preserves neither the edge {0/1, 1/0} nor the triangle {1/0, 0/1, -1/1}");
}

FareyWindow::FareyWindow(FareyCenter center, int depth, const MatrixGroup& closure)
    : FareyWindow(cell_slopes(center), depth, closure) {}

FareyWindow::FareyWindow(std::vector<Slope> center, int depth, const MatrixGroup& closure)
    : center_(std::move(center)), depth_(depth) {
  if (depth < 0) throw InputError("window depth must be non-negative");
  if (center_.size() != 2 && center_.size() != 3) throw InputError("window center must be an edge or a triangle");
  for (std::size_t i = 0; i < center_.size(); ++i)
    for (std::size_t j = i + 1; j < center_.size(); ++j)
      if (!adjacent(center_[i], center_[j])) throw InputError("window center slopes are not pairwise adjacent");

  auto add = [&](const Slope& s) {
    if (index_.emplace(s, static_cast<VertexId>(slopes_.size())).second) slopes_.push_back(s);
  };
  for (const auto& s : center_) add(s);

  // frontier edge (x, y) with the third vertex of the triangle already on its inner side
  struct Edge {
    Slope x, y;
    std::optional<Slope> inner;
  };
  std::vector<Edge> frontier;
  if (center_.size() == 2) {
    frontier.push_back({center_[0], center_[1], std::nullopt});
    frontier.push_back({center_[0], center_[1], std::nullopt});
  } else {
    frontier.push_back({center_[0], center_[1], center_[2]});
    frontier.push_back({center_[1], center_[2], center_[0]});
    frontier.push_back({center_[0], center_[2], center_[1]});
  }
  for (int level = 1; level <= depth; ++level) {
    std::vector<Edge> next;
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      const auto& e = frontier[i];
      const Slope sum = canonical(static_cast<__int128>(e.x.p) + e.y.p, static_cast<__int128>(e.x.q) + e.y.q);
      const Slope diff = canonical(static_cast<__int128>(e.x.p) - e.y.p, static_cast<__int128>(e.x.q) - e.y.q);
      Slope w;
      if (e.inner)
        w = *e.inner == sum ? diff : sum;
      else  // the two sides of the center edge
        w = (i == 0) ? sum : diff;
      add(w);
      next.push_back({e.x, w, e.y});
      next.push_back({e.y, w, e.x});
    }
    frontier = std::move(next);
  }

  const std::size_t expanded = slopes_.size();
  for (std::size_t i = 0; i < expanded; ++i)
    for (const auto& m : closure.elements) add(act(m, slopes_[i]));
  closure_added_ = slopes_.size() - expanded;

  graph_.adjacency.resize(slopes_.size());
  for (VertexId u = 0; u < slopes_.size(); ++u)
    for (VertexId v = u + 1; v < slopes_.size(); ++v)
      if (adjacent(slopes_[u], slopes_[v])) {
        graph_.adjacency[u].push_back(v);
        graph_.adjacency[v].push_back(u);
      }
  for (auto& adj : graph_.adjacency) std::sort(adj.begin(), adj.end());
}

std::optional<VertexId> FareyWindow::find(const Slope& s) const {
  auto it = index_.find(s);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool FareyWindow::pair_valid(VertexId u, VertexId v, int window_distance) const {
  return window_distance == farey_distance(slopes_.at(u), slopes_.at(v));
}

std::optional<int> FareyWindow::ambient_distance(VertexId u, VertexId v) const {
  return farey_distance(slopes_.at(u), slopes_.at(v));
}

std::optional<int> FareyWindow::valid_distance(VertexId u, VertexId v) const {
  const int exact = farey_distance(slopes_.at(u), slopes_.at(v));
  if (convex()) return exact;
  auto& row = rows_[u];
  if (row.empty()) row = bfs_distances(graph_, u);
  if (row.at(v) != exact) return std::nullopt;
  return exact;
}

std::optional<VertexId> FareyAction::act(std::size_t h, VertexId v) const {
  return window_.find(afpt::act(h_.elements.at(h), window_.slopes().at(v)));
}

namespace {

std::vector<Slope> slope_orbit(const MatrixGroup& h, const Slope& s) {
  std::vector<Slope> o;
  for (const auto& m : h.elements) o.push_back(act(m, s));
  std::sort(o.begin(), o.end());
  o.erase(std::unique(o.begin(), o.end()), o.end());
  return o;
}

int slope_diameter(const std::vector<Slope>& set) {
  int d = 0;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j) d = std::max(d, farey_distance(set[i], set[j]));
  return d;
}

}  // namespace

AlmostFixedSet almost_fixed_slopes(const MatrixGroup& h, const FareyWindow& window, int a) {
  if (a < 0) throw InputError("almost-fixed threshold must be non-negative");
  AlmostFixedSet out;
  out.threshold = a;
  for (VertexId v = 0; v < window.slopes().size(); ++v) {
    ++out.scanned;
    const auto o = slope_orbit(h, window.slopes()[v]);
    if (std::any_of(o.begin(), o.end(), [&](const Slope& s) { return !window.find(s); })) {
      ++out.escaped;
      continue;
    }
    const int d = slope_diameter(o);
    if (d > a) {
      ++out.over_threshold;
      continue;
    }
    out.members.push_back(v);
    out.diameters.push_back(d);
  }
  return out;
}

namespace {

int member_diameter(const FareyWindow& window, const std::vector<VertexId>& members) {
  std::vector<Slope> s;
  for (VertexId v : members) s.push_back(window.slopes()[v]);
  return slope_diameter(s);
}

}  // namespace

OrbitProfile orbit_diameter_profile(const MatrixGroup& h, const FareyWindow& window, int a) {
  std::set<Slope> base;
  for (const auto& c : window.center())
    for (const auto& s : slope_orbit(h, c)) base.insert(s);
  std::map<int, ProfileRow> rows;
  for (const auto& s : window.slopes()) {
    int dist = std::numeric_limits<int>::max();
    for (const auto& b : base) dist = std::min(dist, farey_distance(s, b));
    auto& row = rows[dist];
    row.distance = dist;
    ++row.slopes;
    row.max_diameter = std::max(row.max_diameter, slope_diameter(slope_orbit(h, s)));
  }
  OrbitProfile out;
  for (auto& [d, row] : rows) out.rows.push_back(row);
  const auto x = almost_fixed_slopes(h, window, a);
  out.threshold = a;
  out.almost_fixed = x.members.size();
  out.almost_fixed_diameter = member_diameter(window, x.members);
  return out;
}

std::vector<SweepRow> depth_sweep(const MatrixGroup& h, const std::vector<int>& depths, const SweepOptions& opts) {
  if (!std::is_sorted(depths.begin(), depths.end())) throw InputError("sweep depths must be increasing");
  const auto center = center_for(h);
  std::vector<SweepRow> out;
  Rational running{0};
  for (int depth : depths) {
    const FareyWindow window(center, depth, h);
    SweepRow row;
    row.depth = depth;
    row.vertices = window.slopes().size();
    const auto mode = row.vertices <= opts.exhaustive_limit ? DeltaMode::exhaustive()
                                                            : DeltaMode::sampled(opts.samples, opts.seed);
    const auto est = estimate_delta(window, mode);
    row.measured = est.delta;
    row.exhaustive = est.exhaustive;
    running = std::max(running, est.delta);
    row.delta = running;
    row.threshold = opts.threshold ? *opts.threshold : static_cast<int>(floor(running * 6));
    const auto x = almost_fixed_slopes(h, window, row.threshold);
    row.almost_fixed = x.members.size();
    row.diameter = member_diameter(window, x.members);
    out.push_back(row);
  }
  return out;
}

}  // namespace afpt
