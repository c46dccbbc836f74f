#include "afpt/metric_graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <iterator>
#include <memory>
#include <random>
#include <string>
#include <unordered_map>

#include "afpt/errors.hpp"

namespace afpt {

FiniteMetricGraph graph_of(const CayleyBall& ball) {
  FiniteMetricGraph g;
  g.adjacency = ball.adjacency;
  g.base_lengths = ball.lengths;
  return g;
}

std::vector<int> bfs_distances(const FiniteMetricGraph& graph, VertexId source) {
  if (source >= graph.size()) throw InputError("BFS source " + std::to_string(source) + " is not a vertex");
  std::vector<int> dist(graph.size(), kUnreachable);
  std::deque<VertexId> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (VertexId w : graph.adjacency[v]) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

// ---------------------------------------------------------------------------

DistanceWitness safe_distance(const CayleyBall& ball, VertexId x, VertexId y) {
  if (x >= ball.size() || y >= ball.size()) throw InputError("safe_distance: vertex outside the ball");
  std::vector<VertexId> parent(ball.size(), std::numeric_limits<VertexId>::max());
  std::vector<int> dist(ball.size(), kUnreachable);
  std::deque<VertexId> queue{x};
  dist[x] = 0;
  while (!queue.empty() && dist[y] == kUnreachable) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (VertexId w : ball.adjacency[v]) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[v] + 1;
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  DistanceWitness out;
  out.x = x;
  out.y = y;
  out.distance = dist[y];
  for (VertexId v = y;; v = parent[v]) {
    out.geodesic.push_back(v);
    if (v == x) break;
  }
  std::reverse(out.geodesic.begin(), out.geodesic.end());
  out.valid = std::min(ball.lengths[x], ball.lengths[y]) + out.distance <= ball.radius;
  return out;
}

DistanceWitness safe_distance(const CayleyBall& ball, const GroupElement& x, const GroupElement& y) {
  auto u = ball.find(x);
  auto v = ball.find(y);
  if (!u || !v) throw InputError("safe_distance: element outside the ball");
  return safe_distance(ball, *u, *v);
}

GeodesicList all_geodesics(const FiniteMetricGraph& graph, VertexId x, VertexId y, std::size_t cap) {
  const auto dx = bfs_distances(graph, x);
  if (y >= graph.size()) throw InputError("all_geodesics: vertex outside the graph");
  if (dx[y] == kUnreachable)
    throw InputError("all_geodesics: vertices " + std::to_string(x) + " and " + std::to_string(y) +
                     " are not connected");
  const auto dy = bfs_distances(graph, y);
  const int d = dx[y];

  GeodesicList out;
  std::vector<VertexId> path{x};
  // Iterative DFS over the geodesic DAG; stack holds the next neighbor index per depth.
  std::vector<std::vector<VertexId>> succ(graph.size());
  std::vector<std::size_t> next{0};
  auto successors = [&](VertexId v) -> const std::vector<VertexId>& {
    auto& s = succ[v];
    if (s.empty()) {
      for (VertexId w : graph.adjacency[v])
        if (dx[w] == dx[v] + 1 && dy[w] == d - dx[w]) s.push_back(w);
      std::sort(s.begin(), s.end());
    }
    return s;
  };
  if (x == y) {
    out.paths.push_back(path);
    return out;
  }
  while (!next.empty()) {
    const VertexId v = path.back();
    if (v == y) {
      if (out.paths.size() == cap) {
        out.truncated = true;
        break;
      }
      out.paths.push_back(path);
      path.pop_back();
      next.pop_back();
      continue;
    }
    const auto& s = successors(v);
    if (next.back() < s.size()) {
      const VertexId w = s[next.back()++];
      path.push_back(w);
      next.push_back(0);
    } else {
      path.pop_back();
      next.pop_back();
    }
  }
  return out;
}

SetDiameter set_diameter(const FiniteMetricGraph& graph, std::span<const VertexId> set) {
  if (set.empty()) throw InputError("set_diameter: empty set");
  SetDiameter best{0, set[0], set[0]};
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto d = bfs_distances(graph, set[i]);
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      const int dij = d.at(set[j]);
      if (dij == kUnreachable)
        throw InputError("set_diameter: vertices " + std::to_string(set[i]) + " and " + std::to_string(set[j]) +
                         " are not connected");
      if (dij > best.diameter) best = {dij, set[i], set[j]};
    }
  }
  return best;
}

// ---------------------------------------------------------------------------

std::optional<int> MetricWindow::valid_distance(VertexId u, VertexId v) const {
  const int d = bfs_distances(graph(), u).at(v);
  if (!pair_valid(u, v, d)) return std::nullopt;
  return d;
}

CayleyWindow::CayleyWindow(const GroupOracle& oracle, const CayleyBall& ball)
    : oracle_(oracle), ball_(ball), graph_(graph_of(ball)) {}

bool CayleyWindow::pair_valid(VertexId u, VertexId v, int window_distance) const {
  return window_distance >= 0 && std::min(ball_.lengths[u], ball_.lengths[v]) + window_distance <= ball_.radius;
}

std::optional<int> CayleyWindow::ambient_distance(VertexId u, VertexId v) const {
  const auto g = multiply(oracle_, invert(oracle_, ball_.vertices[u]), ball_.vertices[v]);
  return static_cast<int>(oracle_.word_length(g));
}

std::optional<int> CayleyWindow::valid_distance(VertexId u, VertexId v) const {
  const auto g = multiply(oracle_, invert(oracle_, ball_.vertices[u]), ball_.vertices[v]);
  auto id = ball_.find(g);
  if (!id) return std::nullopt;
  const int d = ball_.lengths[*id];
  if (!pair_valid(u, v, d)) return std::nullopt;
  return d;
}

// ---------------------------------------------------------------------------
// delta

namespace {

constexpr int kFar = std::numeric_limits<int>::max() / 4;

// BFS with a reusable dense distance array; only touched entries are reset.
class BoundedBfs {
 public:
  explicit BoundedBfs(const FiniteMetricGraph& g) : g_(g), dist_(g.size(), kUnreachable) {}

  /// Distances up to `depth`; with a target, stops at the target's level.
  void run(VertexId source, int depth, std::optional<VertexId> target = std::nullopt) {
    for (VertexId v : order_) dist_[v] = kUnreachable;
    order_.clear();
    dist_[source] = 0;
    order_.push_back(source);
    if (target && *target == source) return;
    for (std::size_t i = 0; i < order_.size(); ++i) {
      const VertexId v = order_[i];
      if (dist_[v] >= depth) break;
      for (VertexId w : g_.adjacency[v])
        if (dist_[w] == kUnreachable) {
          dist_[w] = dist_[v] + 1;
          order_.push_back(w);
          if (target && w == *target) depth = dist_[w];
        }
    }
  }

  int operator[](VertexId v) const { return dist_[v]; }
  /// Reached vertices in nondecreasing distance.
  const std::vector<VertexId>& reached() const { return order_; }

 private:
  const FiniteMetricGraph& g_;
  std::vector<int> dist_;
  std::vector<VertexId> order_;
};

class AmbientCache {
 public:
  explicit AmbientCache(const MetricWindow& w) : window_(w), n_(w.graph().size()) {
    if (n_ <= kDenseLimit) dense_.assign(n_ * n_, kUnknown);
  }

  int operator()(VertexId u, VertexId v) {
    if (u == v) return 0;
    if (u > v) std::swap(u, v);
    if (n_ <= kDenseLimit) {
      int& slot = dense_[static_cast<std::size_t>(u) * n_ + v];
      if (slot == kUnknown) slot = compute(u, v);
      return slot;
    }
    const auto key = (static_cast<std::uint64_t>(u) << 32) | v;
    auto it = sparse_.find(key);
    if (it != sparse_.end()) return it->second;
    if (sparse_.size() > (1u << 22)) sparse_.clear();
    return sparse_.emplace(key, compute(u, v)).first->second;
  }

 private:
  static constexpr std::size_t kDenseLimit = 3000;
  static constexpr int kUnknown = -2;

  int compute(VertexId u, VertexId v) const {
    auto d = window_.ambient_distance(u, v);
    return d ? *d : kFar;
  }

  const MetricWindow& window_;
  std::size_t n_;
  std::vector<int> dense_;
  std::unordered_map<std::uint64_t, int> sparse_;
};

// Union of all geodesics from a to b in nondecreasing distance from a, with
// predecessor lists in local indices. Vertex b comes last.
struct Interval {
  std::vector<VertexId> vertices;
  std::vector<std::vector<std::uint32_t>> preds;
};

// Meets in the middle: BFS to depth h from a and d - h from b, then walks out
// from the middle layer in both directions. d is the window distance of a, b.
Interval interval(const FiniteMetricGraph& g, BoundedBfs& from_a, BoundedBfs& from_b, VertexId a, VertexId b,
                  int d) {
  const int h = (d + 1) / 2;
  from_a.run(a, h);
  from_b.run(b, d - h);
  // level[k] holds the interval vertices at distance k from a.
  std::vector<std::vector<VertexId>> level(d + 1);
  std::unordered_map<VertexId, std::uint32_t> seen;
  for (VertexId v : from_a.reached())
    if (from_a[v] == h && from_b[v] == d - h) level[h].push_back(v);
  if (level[h].empty()) throw InputError("estimate_delta: window distance is not realized");
  for (VertexId v : level[h]) seen.emplace(v, 0);
  for (int k = h; k > 0; --k)
    for (VertexId v : level[k])
      for (VertexId w : g.adjacency[v])
        if (from_a[w] == k - 1 && seen.emplace(w, 0).second) level[k - 1].push_back(w);
  for (int k = h; k < d; ++k)
    for (VertexId v : level[k])
      for (VertexId w : g.adjacency[v])
        if (from_b[w] == d - k - 1 && seen.emplace(w, 0).second) level[k + 1].push_back(w);

  Interval out;
  std::vector<int> depth;
  for (int k = 0; k <= d; ++k) {
    std::sort(level[k].begin(), level[k].end());
    for (VertexId v : level[k]) {
      seen[v] = static_cast<std::uint32_t>(out.vertices.size());
      out.vertices.push_back(v);
      depth.push_back(k);
    }
  }
  out.preds.resize(out.vertices.size());
  for (std::uint32_t i = 0; i < out.vertices.size(); ++i)
    for (VertexId w : g.adjacency[out.vertices[i]]) {
      auto it = seen.find(w);
      if (it != seen.end() && depth[it->second] == depth[i] - 1) out.preds[i].push_back(it->second);
    }
  return out;
}

// max over geodesics of min over its vertices u of ambient(v, u)
int farthest_geodesic(AmbientCache& ambient, const Interval& side, VertexId v, std::vector<int>& scratch) {
  scratch.assign(side.vertices.size(), 0);
  for (std::size_t i = 0; i < side.vertices.size(); ++i) {
    int through = kFar;
    if (!side.preds[i].empty()) {
      through = 0;
      for (auto p : side.preds[i]) through = std::max(through, scratch[p]);
    }
    scratch[i] = std::min(through, ambient(v, side.vertices[i]));
  }
  return scratch.back();
}

struct Side {
  VertexId from;
  VertexId to;
  int length;
};

int thinness(const MetricWindow& w, BoundedBfs& bfs, BoundedBfs& bfs2, AmbientCache& ambient,
             const std::array<Side, 3>& t) {
  const auto& g = w.graph();
  const Interval xy = interval(g, bfs, bfs2, t[0].from, t[0].to, t[0].length);
  const Interval yz = interval(g, bfs, bfs2, t[1].from, t[1].to, t[1].length);
  const Interval zx = interval(g, bfs, bfs2, t[2].from, t[2].to, t[2].length);
  std::vector<int> scratch;
  int worst = 0;
  auto side = [&](const Interval& s, const Interval& o1, const Interval& o2) {
    for (VertexId v : s.vertices) {
      const int a = farthest_geodesic(ambient, o1, v, scratch);
      if (a <= worst) continue;
      const int b = farthest_geodesic(ambient, o2, v, scratch);
      worst = std::max(worst, std::min(a, b));
    }
  };
  side(xy, yz, zx);
  side(yz, zx, xy);
  side(zx, xy, yz);
  return worst;
}

struct Partner {
  VertexId v;
  int d;
  bool operator<(const Partner& o) const { return v < o.v; }
};

// Valid partners v > u of every u with their window distances, sorted by v.
std::vector<std::vector<Partner>> forward_partners(const MetricWindow& w, BoundedBfs& bfs) {
  const auto n = static_cast<VertexId>(w.graph().size());
  std::vector<std::vector<Partner>> out(n);
  for (VertexId u = 0; u < n; ++u) {
    const auto reach = w.forward_reach(u);
    if (reach && *reach < 0) continue;
    bfs.run(u, reach ? *reach : kFar);
    for (VertexId v : bfs.reached())
      if (v > u && w.pair_valid(u, v, bfs[v])) out[u].push_back({v, bfs[v]});
    std::sort(out[u].begin(), out[u].end());
  }
  return out;
}

int window_distance(BoundedBfs& bfs, VertexId u, VertexId v) {
  bfs.run(u, kFar, v);
  if (bfs[v] == kUnreachable) throw InputError("estimate_delta: window is not connected");
  return bfs[v];
}

}  // namespace

int triangle_thinness(const MetricWindow& window, VertexId x, VertexId y, VertexId z) {
  BoundedBfs bfs(window.graph()), bfs2(window.graph());
  AmbientCache ambient(window);
  const int dxy = window_distance(bfs, x, y), dyz = window_distance(bfs, y, z), dzx = window_distance(bfs, z, x);
  return thinness(window, bfs, bfs2, ambient, {Side{x, y, dxy}, Side{y, z, dyz}, Side{z, x, dzx}});
}

DeltaEstimate estimate_delta(const MetricWindow& window, DeltaMode mode) {
  const auto n = static_cast<VertexId>(window.graph().size());
  if (n == 0) throw InputError("estimate_delta: empty window");
  BoundedBfs bfs(window.graph()), bfs2(window.graph());
  AmbientCache ambient(window);
  DeltaEstimate est;
  est.exhaustive = mode.kind == DeltaMode::Kind::Exhaustive;
  est.seed = mode.seed;
  int best = -1;

  auto visit = [&](VertexId x, VertexId y, VertexId z, int dxy, int dyz, int dxz) {
    ++est.triangles;
    const int t = thinness(window, bfs, bfs2, ambient, {Side{x, y, dxy}, Side{y, z, dyz}, Side{z, x, dxz}});
    if (t > best) {
      best = t;
      est.witness = std::array<VertexId, 3>{x, y, z};
    }
  };

  if (est.exhaustive) {
    const auto fwd = forward_partners(window, bfs);
    for (VertexId x = 0; x < n; ++x) {
      const auto& fx = fwd[x];
      for (std::size_t i = 0; i < fx.size(); ++i) {
        const auto& fy = fwd[fx[i].v];
        // merge fx[i+1..] with fy on vertex id
        std::size_t p = i + 1, q = 0;
        while (p < fx.size() && q < fy.size()) {
          if (fx[p].v < fy[q].v) {
            ++p;
          } else if (fy[q].v < fx[p].v) {
            ++q;
          } else {
            visit(x, fx[i].v, fx[p].v, fx[i].d, fy[q].d, fx[p].d);
            ++p;
            ++q;
          }
        }
      }
    }
    const std::uint64_t m = n;
    est.skipped = m * (m - 1) * (m - 2) / 6 - est.triangles;
  } else if (n >= 3) {
    std::mt19937_64 rng(mode.seed);
    std::uniform_int_distribution<VertexId> pick(0, n - 1);
    for (std::uint64_t s = 0; s < mode.samples; ++s) {
      std::array<VertexId, 3> t{pick(rng), pick(rng), pick(rng)};
      std::sort(t.begin(), t.end());
      if (t[0] == t[1] || t[1] == t[2]) {
        ++est.skipped;
        continue;
      }
      const int d01 = window_distance(bfs, t[0], t[1]), d12 = window_distance(bfs, t[1], t[2]),
                d02 = window_distance(bfs, t[0], t[2]);
      if (!window.pair_valid(t[0], t[1], d01) || !window.pair_valid(t[1], t[2], d12) ||
          !window.pair_valid(t[0], t[2], d02)) {
        ++est.skipped;
        continue;
      }
      visit(t[0], t[1], t[2], d01, d12, d02);
    }
  }
  est.delta = Rational(std::max(best, 0));
  return est;
}

}  // namespace afpt
