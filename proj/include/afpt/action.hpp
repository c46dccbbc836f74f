#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "afpt/fixpoint.hpp"
#include "afpt/group.hpp"
#include "afpt/metric_graph.hpp"

namespace afpt {

/// G acting properly and cocompactly on a graph, seen through a finite window.
class ProperAction {
 public:
  virtual ~ProperAction() = default;
  virtual const GroupOracle& oracle() const = 0;
  virtual const MetricWindow& window() const = 0;
  /// Index of the G-orbit of p among orbit_types().
  virtual std::size_t orbit_type(VertexId p) const = 0;
  virtual std::size_t orbit_types() const = 0;
  /// Some g with g.from = to; both vertices must have the same orbit type.
  virtual GroupElement transporter(VertexId from, VertexId to) const = 0;
  /// g.p, or nullopt outside the window.
  virtual std::optional<VertexId> act(const GroupElement& g, VertexId p) const = 0;
  virtual std::vector<GroupElement> stabilizer(VertexId p) const = 0;
  /// True when B(p, a) lies in the window with exact distances.
  virtual bool ball_inside(VertexId p, int a) const = 0;
  /// Total order on vertices used for every "least" choice.
  virtual bool precedes(VertexId a, VertexId b) const = 0;
  virtual bool is_free_cayley() const { return false; }
};

/// G acting on its own Cayley ball by left multiplication; free and transitive.
class CayleyGraphAction final : public ProperAction {
 public:
  explicit CayleyGraphAction(const CayleyWindow& window) : window_(window) {}

  const GroupOracle& oracle() const override { return window_.oracle(); }
  const MetricWindow& window() const override { return window_; }
  std::size_t orbit_type(VertexId) const override { return 0; }
  std::size_t orbit_types() const override { return 1; }
  GroupElement transporter(VertexId from, VertexId to) const override;
  std::optional<VertexId> act(const GroupElement& g, VertexId p) const override;
  std::vector<GroupElement> stabilizer(VertexId) const override { return {oracle().identity()}; }
  bool ball_inside(VertexId p, int a) const override;
  bool precedes(VertexId a, VertexId b) const override;
  bool is_free_cayley() const override { return true; }

  const CayleyWindow& cayley() const noexcept { return window_; }

 private:
  const CayleyWindow& window_;
};

/// A window on a tree in which every pair distance is exact (balls in a tree are convex).
class TreeWindow final : public MetricWindow {
 public:
  TreeWindow(FiniteMetricGraph graph, std::vector<std::string> names);

  const FiniteMetricGraph& graph() const override { return graph_; }
  bool pair_valid(VertexId, VertexId, int d) const override { return d >= 0; }
  std::optional<int> ambient_distance(VertexId u, VertexId v) const override;
  std::optional<int> valid_distance(VertexId u, VertexId v) const override { return ambient_distance(u, v); }
  std::string vertex_name(VertexId v) const override { return names_.at(v); }

 private:
  FiniteMetricGraph graph_;
  std::vector<std::string> names_;
  mutable std::vector<std::vector<int>> rows_;
};

/// A * B acting on its Bass-Serre tree: vertices are cosets gA and gB, edges
/// join gA and gB. Two orbit types; stab(gA) = gAg^-1.
class FreeProductTreeAction final : public ProperAction {
 public:
  /// The window is the ball of the given radius around the vertex 1A.
  FreeProductTreeAction(const GroupOracle& oracle, int radius);

  const GroupOracle& oracle() const override { return oracle_; }
  const MetricWindow& window() const override { return *window_; }
  std::size_t orbit_type(VertexId p) const override { return keys_.at(p).type; }
  std::size_t orbit_types() const override { return 2; }
  GroupElement transporter(VertexId from, VertexId to) const override;
  std::optional<VertexId> act(const GroupElement& g, VertexId p) const override;
  std::vector<GroupElement> stabilizer(VertexId p) const override;
  bool ball_inside(VertexId p, int a) const override { return depth_.at(p) + a <= radius_; }
  bool precedes(VertexId a, VertexId b) const override;

  /// Coset representative: the normal form with no trailing letter of the factor.
  const GroupElement& representative(VertexId p) const { return keys_.at(p).rep; }
  std::optional<VertexId> find(std::size_t type, const GroupElement& g) const;
  int radius() const noexcept { return radius_; }

 private:
  struct Key {
    std::size_t type;
    GroupElement rep;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept { return GroupElementHash{}(k.rep) * 3 + k.type; }
  };

  GroupElement canonical(std::size_t type, GroupElement g) const;

  const GroupOracle& oracle_;
  int radius_;
  std::vector<Key> keys_;
  std::vector<int> depth_;
  std::unordered_map<Key, VertexId, KeyHash> index_;
  std::optional<TreeWindow> window_;
};

/// A finite subgroup acting through a proper action, as a fixpoint context.
class SubgroupAction final : public ActionContext {
 public:
  SubgroupAction(const ProperAction& action, const FiniteSubgroup& h);

  const MetricWindow& window() const override { return action_.window(); }
  std::size_t order() const override { return h_.order(); }
  std::string element_name(std::size_t h) const override { return action_.oracle().format(h_.elements.at(h)); }
  std::optional<VertexId> act(std::size_t h, VertexId v) const override { return action_.act(h_.elements.at(h), v); }

 private:
  const ProperAction& action_;
  FiniteSubgroup h_;
};

}  // namespace afpt
