#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "afpt/group.hpp"
#include "afpt/rational.hpp"

namespace afpt {

/// Undirected graph with unit edge lengths.
struct FiniteMetricGraph {
  std::vector<std::vector<VertexId>> adjacency;
  /// Distance of each vertex to a distinguished base point, when there is one.
  std::optional<std::vector<int>> base_lengths;

  std::size_t size() const noexcept { return adjacency.size(); }
};

FiniteMetricGraph graph_of(const CayleyBall& ball);

inline constexpr int kUnreachable = -1;

std::vector<int> bfs_distances(const FiniteMetricGraph& graph, VertexId source);

/// A window distance together with whether it is exact in the ambient graph.
struct DistanceWitness {
  VertexId x = 0;
  VertexId y = 0;
  int distance = 0;
  /// min(|x|,|y|) + d <= R: every ambient geodesic lies in the ball.
  bool valid = false;
  std::vector<VertexId> geodesic;
};

DistanceWitness safe_distance(const CayleyBall& ball, VertexId x, VertexId y);
DistanceWitness safe_distance(const CayleyBall& ball, const GroupElement& x, const GroupElement& y);

struct GeodesicList {
  std::vector<std::vector<VertexId>> paths;
  bool truncated = false;
};

/// Shortest paths from x to y, in lexicographic order of vertex ids, at most `cap`.
GeodesicList all_geodesics(const FiniteMetricGraph& graph, VertexId x, VertexId y, std::size_t cap = 4096);

struct SetDiameter {
  int diameter = 0;
  VertexId a = 0;
  VertexId b = 0;
};

/// Max pairwise graph distance over `set`; InputError names a disconnected pair.
SetDiameter set_diameter(const FiniteMetricGraph& graph, std::span<const VertexId> set);

/// A finite window on an infinite graph: which window distances are
/// trustworthy, and exact ambient distances where they are known.
class MetricWindow {
 public:
  virtual ~MetricWindow() = default;
  virtual const FiniteMetricGraph& graph() const = 0;
  /// True when `window_distance` is the ambient distance and every ambient
  /// geodesic between the two vertices lies inside the window.
  virtual bool pair_valid(VertexId u, VertexId v, int window_distance) const = 0;
  /// Exact ambient distance, or nullopt when it exceeds every distance the
  /// window can certify.
  virtual std::optional<int> ambient_distance(VertexId u, VertexId v) const = 0;
  /// The window distance when the pair is valid. The default runs a BFS.
  virtual std::optional<int> valid_distance(VertexId u, VertexId v) const;
  /// Upper bound on the window distance of any valid pair (u, v) with v > u,
  /// a negative value when there is none; nullopt means no bound is known.
  virtual std::optional<int> forward_reach(VertexId) const { return std::nullopt; }
  /// Short printable name of a vertex.
  virtual std::string vertex_name(VertexId v) const { return std::to_string(v); }
};

/// A Cayley ball viewed as a window; ambient distances are word lengths of x^-1 y.
class CayleyWindow final : public MetricWindow {
 public:
  CayleyWindow(const GroupOracle& oracle, const CayleyBall& ball);

  const FiniteMetricGraph& graph() const override { return graph_; }
  bool pair_valid(VertexId u, VertexId v, int window_distance) const override;
  std::optional<int> ambient_distance(VertexId u, VertexId v) const override;

  /// Same value and validity as safe_distance, via group arithmetic instead of BFS.
  std::optional<int> valid_distance(VertexId u, VertexId v) const override;
  std::string vertex_name(VertexId v) const override { return oracle_.format(ball_.vertices.at(v)); }
  /// Ball ids are in nondecreasing word length, so a valid pair (u, v > u) has d <= R - |u|.
  std::optional<int> forward_reach(VertexId u) const override { return ball_.radius - ball_.lengths.at(u); }

  const CayleyBall& ball() const noexcept { return ball_; }
  const GroupOracle& oracle() const noexcept { return oracle_; }

 private:
  const GroupOracle& oracle_;
  const CayleyBall& ball_;
  FiniteMetricGraph graph_;
};

struct DeltaMode {
  enum class Kind { Exhaustive, Sampled };
  Kind kind = Kind::Exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;

  static DeltaMode exhaustive() { return {}; }
  static DeltaMode sampled(std::uint64_t n, std::uint64_t seed) { return {Kind::Sampled, n, seed}; }
};

struct DeltaEstimate {
  Rational delta{0};
  std::uint64_t triangles = 0;  // valid triangles examined
  std::uint64_t skipped = 0;    // triples with a window-invalid side
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::optional<std::array<VertexId, 3>> witness;

  bool no_valid_triangles() const noexcept { return triangles == 0; }
};

/// Thinness of one geodesic triangle, worst case over all geodesic choices:
/// the least d such that every vertex of each side is within d of some vertex
/// on the other two sides.
int triangle_thinness(const MetricWindow& window, VertexId x, VertexId y, VertexId z);

/// Largest thinness over window-valid triangles of pairwise distinct vertices.
DeltaEstimate estimate_delta(const MetricWindow& window, DeltaMode mode = DeltaMode::exhaustive());

}  // namespace afpt
