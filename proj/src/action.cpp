#include "afpt/action.hpp"

#include <algorithm>

#include "afpt/errors.hpp"

namespace afpt {

GroupElement CayleyGraphAction::transporter(VertexId from, VertexId to) const {
  const auto& ball = window_.ball();
  return multiply(oracle(), ball.vertices.at(to), invert(oracle(), ball.vertices.at(from)));
}

std::optional<VertexId> CayleyGraphAction::act(const GroupElement& g, VertexId p) const {
  const auto& ball = window_.ball();
  return ball.find(multiply(oracle(), g, ball.vertices.at(p)));
}

bool CayleyGraphAction::ball_inside(VertexId p, int a) const {
  const auto& ball = window_.ball();
  return ball.lengths.at(p) + a <= ball.radius;
}

bool CayleyGraphAction::precedes(VertexId a, VertexId b) const {
  const auto& ball = window_.ball();
  return ball.vertices.at(a) < ball.vertices.at(b);
}

// ---------------------------------------------------------------------------

TreeWindow::TreeWindow(FiniteMetricGraph graph, std::vector<std::string> names)
    : graph_(std::move(graph)), names_(std::move(names)), rows_(graph_.size()) {}

std::optional<int> TreeWindow::ambient_distance(VertexId u, VertexId v) const {
  auto& row = rows_.at(u);
  if (row.empty()) row = bfs_distances(graph_, u);
  const int d = row.at(v);
  if (d == kUnreachable) return std::nullopt;
  return d;
}

FreeProductTreeAction::FreeProductTreeAction(const GroupOracle& oracle, int radius)
    : oracle_(oracle), radius_(radius) {
  if (oracle.kind() != FamilyKind::FreeProduct || oracle.factor_count() != 2)
    throw InputError("tree action needs a free product of exactly two finite factors");
  if (radius < 0) throw InputError("radius must be non-negative");

  const Key root{0, oracle.identity()};
  keys_.push_back(root);
  depth_.push_back(0);
  index_.emplace(root, 0);
  std::vector<std::vector<VertexId>> adjacency(1);
  for (VertexId v = 0; v < keys_.size(); ++v) {
    const Key key = keys_[v];
    const std::size_t other = 1 - key.type;
    for (const auto& e : oracle.factor_elements(key.type)) {
      Key next{other, canonical(other, multiply(oracle, key.rep, e))};
      auto it = index_.find(next);
      if (it == index_.end()) {
        if (depth_[v] == radius) continue;
        it = index_.emplace(next, static_cast<VertexId>(keys_.size())).first;
        keys_.push_back(next);
        depth_.push_back(depth_[v] + 1);
        adjacency.emplace_back();
      }
      if (std::find(adjacency[v].begin(), adjacency[v].end(), it->second) == adjacency[v].end()) {
        adjacency[v].push_back(it->second);
        adjacency[it->second].push_back(v);
      }
    }
  }
  for (auto& adj : adjacency) std::sort(adj.begin(), adj.end());
  std::vector<std::string> names;
  for (const auto& k : keys_) names.push_back("(" + oracle.format(k.rep) + ")" + oracle.factor(k.type).name);
  FiniteMetricGraph g;
  g.adjacency = std::move(adjacency);
  g.base_lengths = depth_;
  window_.emplace(std::move(g), std::move(names));
}

GroupElement FreeProductTreeAction::canonical(std::size_t type, GroupElement g) const {
  if (!g.word.empty() && oracle_.letter_factor(g.word.back()) == type) g.word.pop_back();
  return g;
}

std::optional<VertexId> FreeProductTreeAction::find(std::size_t type, const GroupElement& g) const {
  auto it = index_.find(Key{type, canonical(type, g)});
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

GroupElement FreeProductTreeAction::transporter(VertexId from, VertexId to) const {
  if (orbit_type(from) != orbit_type(to)) throw InputError("transporter between different orbit types");
  return multiply(oracle_, representative(to), invert(oracle_, representative(from)));
}

std::optional<VertexId> FreeProductTreeAction::act(const GroupElement& g, VertexId p) const {
  const auto& k = keys_.at(p);
  return find(k.type, multiply(oracle_, g, k.rep));
}

std::vector<GroupElement> FreeProductTreeAction::stabilizer(VertexId p) const {
  const auto& k = keys_.at(p);
  std::vector<GroupElement> out;
  const auto inv = invert(oracle_, k.rep);
  for (const auto& e : oracle_.factor_elements(k.type)) out.push_back(multiply(oracle_, multiply(oracle_, k.rep, e), inv));
  std::sort(out.begin(), out.end());
  return out;
}

bool FreeProductTreeAction::precedes(VertexId a, VertexId b) const {
  const auto& x = keys_.at(a);
  const auto& y = keys_.at(b);
  if (x.rep != y.rep) return x.rep < y.rep;
  return x.type < y.type;
}

// ---------------------------------------------------------------------------

SubgroupAction::SubgroupAction(const ProperAction& action, const FiniteSubgroup& h) : action_(action), h_(h) {
  if (h_.elements.empty() || !h_.elements.front().is_identity())
    throw InputError("subgroup must list the identity first");
}

}  // namespace afpt
