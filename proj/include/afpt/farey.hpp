#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "afpt/fixpoint.hpp"
#include "afpt/metric_graph.hpp"
#include "afpt/rational.hpp"

namespace afpt {

/// A primitive integer pair p/q up to sign: q > 0, or the slope 1/0.
struct Slope {
  std::int64_t p = 1;
  std::int64_t q = 0;

  /// Canonical slope of (p, q); InputError unless gcd(|p|, |q|) = 1.
  static Slope make(std::int64_t p, std::int64_t q);
  static Slope infinity() { return {1, 0}; }

  bool is_infinity() const noexcept { return q == 0; }
  auto operator<=>(const Slope&) const = default;
};

std::string to_string(const Slope& s);
/// "p/q", an integer "p", or "inf".
Slope parse_slope(std::string_view text);

struct SlopeHash {
  std::size_t operator()(const Slope& s) const noexcept {
    return std::hash<std::int64_t>{}(s.p) * 1000003u ^ std::hash<std::int64_t>{}(s.q);
  }
};

/// Integer 2x2 matrix of determinant 1, row-major.
struct UniMatrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  /// InputError unless ad - bc = 1.
  static UniMatrix make(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);
  static UniMatrix identity() { return {}; }
  UniMatrix inverse() const { return {d, -b, -c, a}; }
  bool operator==(const UniMatrix&) const = default;
  auto operator<=>(const UniMatrix&) const = default;
};

UniMatrix operator*(const UniMatrix& x, const UniMatrix& y);
std::string to_string(const UniMatrix& m);

/// |p q' - q p'|.
std::uint64_t intersection_number(const Slope& s1, const Slope& s2);
bool adjacent(const Slope& s1, const Slope& s2);

/// (p, q) -> (ap + bq, cp + dq), recanonicalized.
Slope act(const UniMatrix& m, const Slope& s);

/// Some M with M.s = 1/0.
UniMatrix to_infinity(const Slope& s);

struct FareyPath {
  int distance = 0;
  std::vector<Slope> geodesic;  // s1, ..., s2
};

/// Exact Farey-graph distance by continued-fraction descent.
int farey_distance(const Slope& s1, const Slope& s2);
/// Distance with one geodesic; each step goes to floor(x) or ceil(x) in the
/// frame where the current vertex is 1/0, floor first.
FareyPath farey_geodesic(const Slope& s1, const Slope& s2);

/// A finite matrix group, identity first, closed under multiplication.
struct MatrixGroup {
  std::string name;
  std::vector<UniMatrix> elements;

  std::size_t order() const noexcept { return elements.size(); }
};

/// "S4" = <S>, "ST6" = <ST>, "center2" = <-I>, "trivial"; with S = [[0,-1],[1,0]], T = [[1,1],[0,1]].
MatrixGroup finite_subgroup(const std::string& name);
/// Closure of the generators under multiplication; ResourceError past `max_order`.
MatrixGroup generate_matrix_group(const std::string& name, const std::vector<UniMatrix>& gens,
                                  std::size_t max_order = 64);

/// Where mediant expansion starts: the edge {0/1, 1/0} or the triangle {1/0, 0/1, -1/1}.
enum class FareyCenter { Edge, Triangle };

/// The center cell that the named subgroup preserves.
FareyCenter center_for(const MatrixGroup& h);

/// Union of the Farey triangles within `depth` steps of a center cell, closed
/// under a matrix group. Distances are exact Farey distances.
class FareyWindow final : public MetricWindow {
 public:
  FareyWindow(std::vector<Slope> center, int depth, const MatrixGroup& closure);
  FareyWindow(FareyCenter center, int depth, const MatrixGroup& closure);

  const FiniteMetricGraph& graph() const override { return graph_; }
  bool pair_valid(VertexId u, VertexId v, int window_distance) const override;
  std::optional<int> ambient_distance(VertexId u, VertexId v) const override;
  std::optional<int> valid_distance(VertexId u, VertexId v) const override;
  std::string vertex_name(VertexId v) const override { return to_string(slopes_.at(v)); }

  const std::vector<Slope>& slopes() const noexcept { return slopes_; }
  const std::vector<Slope>& center() const noexcept { return center_; }
  std::optional<VertexId> find(const Slope& s) const;
  int depth() const noexcept { return depth_; }
  /// Slopes added by the closure step beyond the mediant expansion.
  std::size_t closure_added() const noexcept { return closure_added_; }
  /// No closure additions: the window is a union of triangles forming a
  /// subtree of the dual tree, so window geodesics are Farey geodesics.
  bool convex() const noexcept { return closure_added_ == 0; }

 private:
  std::vector<Slope> center_;
  int depth_;
  std::vector<Slope> slopes_;
  std::unordered_map<Slope, VertexId, SlopeHash> index_;
  FiniteMetricGraph graph_;
  std::size_t closure_added_ = 0;
  mutable std::unordered_map<VertexId, std::vector<int>> rows_;
};

/// A finite matrix group acting on a Farey window.
class FareyAction final : public ActionContext {
 public:
  FareyAction(const FareyWindow& window, MatrixGroup h) : window_(window), h_(std::move(h)) {}

  const MetricWindow& window() const override { return window_; }
  std::size_t order() const override { return h_.order(); }
  std::string element_name(std::size_t h) const override { return to_string(h_.elements.at(h)); }
  std::optional<VertexId> act(std::size_t h, VertexId v) const override;

 private:
  const FareyWindow& window_;
  MatrixGroup h_;
};

/// Slopes of the window whose H-orbit has Farey diameter <= a.
AlmostFixedSet almost_fixed_slopes(const MatrixGroup& h, const FareyWindow& window, int a);

struct ProfileRow {
  int distance = 0;          // Farey distance to the orbit of the center
  std::uint64_t slopes = 0;
  int max_diameter = 0;      // largest orbit diameter among them
};

struct OrbitProfile {
  std::vector<ProfileRow> rows;
  int threshold = 0;
  std::uint64_t almost_fixed = 0;
  int almost_fixed_diameter = 0;
};

/// Orbit diameter against distance from the center, plus the almost-fixed set at threshold a.
OrbitProfile orbit_diameter_profile(const MatrixGroup& h, const FareyWindow& window, int a);

struct SweepRow {
  int depth = 0;
  std::uint64_t vertices = 0;
  Rational measured{0};   // estimate on this window
  Rational delta{0};      // running maximum over the sweep so far
  bool exhaustive = true;
  int threshold = 0;      // floor(6 delta)
  std::uint64_t almost_fixed = 0;
  int diameter = 0;       // diameter of the almost-fixed set
};

struct SweepOptions {
  /// Windows with more vertices than this use sampled estimation.
  std::size_t exhaustive_limit = 128;
  std::uint64_t samples = 20000;
  std::uint64_t seed = 1;
  /// Fixed threshold instead of floor(6 delta).
  std::optional<int> threshold;
};

/// Empirical delta and almost-fixed diameter across window depths. The delta
/// used at each depth is the largest estimate seen so far, since windows are nested.
std::vector<SweepRow> depth_sweep(const MatrixGroup& h, const std::vector<int>& depths, const SweepOptions& opts = {});

}  // namespace afpt
