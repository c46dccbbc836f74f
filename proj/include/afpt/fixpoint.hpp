#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "afpt/group.hpp"
#include "afpt/metric_graph.hpp"
#include "afpt/rational.hpp"

namespace afpt {

/// A finite group H acting on the vertices of a metric window. Elements of H
/// are addressed by index; index 0 is the identity.
class ActionContext {
 public:
  virtual ~ActionContext() = default;
  virtual const MetricWindow& window() const = 0;
  virtual std::size_t order() const = 0;
  virtual std::string element_name(std::size_t h) const = 0;
  /// h.v, or nullopt when the image is outside the window.
  virtual std::optional<VertexId> act(std::size_t h, VertexId v) const = 0;
};

/// H < G acting on a Cayley ball by left multiplication.
class CayleyAction final : public ActionContext {
 public:
  CayleyAction(const CayleyWindow& window, const FiniteSubgroup& h);

  const MetricWindow& window() const override { return window_; }
  std::size_t order() const override { return h_.order(); }
  std::string element_name(std::size_t h) const override;
  std::optional<VertexId> act(std::size_t h, VertexId v) const override;

  const FiniteSubgroup& subgroup() const noexcept { return h_; }

 private:
  const CayleyWindow& window_;
  FiniteSubgroup h_;
};

/// H.x, sorted and deduplicated. WindowError names the first h whose image escapes.
std::vector<VertexId> orbit(const ActionContext& ctx, VertexId x);

/// Diameter of a vertex set, or nullopt when some pair is window-invalid.
std::optional<int> valid_diameter(const MetricWindow& window, const std::vector<VertexId>& set);

struct AlmostFixedSet {
  int threshold = 0;
  std::vector<VertexId> members;       // increasing ids
  std::vector<int> diameters;          // orbit diameter per member
  std::uint64_t scanned = 0;
  std::uint64_t escaped = 0;           // orbit leaves the window
  std::uint64_t invalid = 0;           // orbit inside, some pairwise distance not certified
  std::uint64_t over_threshold = 0;

  bool contains(VertexId v) const;
};

AlmostFixedSet almost_fixed_set(const ActionContext& ctx, int threshold);

/// Integer thresholds derived from an exact delta. Upper bounds round down,
/// lower bounds round up.
struct Thresholds {
  Rational delta{0};
  int fixed = 0;     // diam <= 6 delta
  int midpoint = 0;  // diam <= 8 delta
  int far = 0;       // d(x, y) >= 20 delta
  int margin = 0;    // d(x, z), d(z, y) >= 6 delta + 1
};

Thresholds thresholds_for(const Rational& delta);

struct CertifiedPoint {
  VertexId z = 0;
  int from_x = 0;
  int to_y = 0;
  std::optional<int> diameter;  // nullopt: orbit of z not certifiable in the window
  bool ok = false;
};

struct MidpointCertificate {
  VertexId x = 0;
  VertexId y = 0;
  int distance = 0;
  Thresholds bounds;
  std::uint64_t geodesics = 0;
  bool truncated = false;
  std::vector<CertifiedPoint> points;  // one per distinct interior vertex, increasing id
  std::uint64_t counterexamples = 0;
  std::uint64_t unverifiable = 0;
};

/// Checks diam(H.z) <= 8 delta for every interior vertex z of every geodesic
/// [x, y] at distance >= 6 delta + 1 from both ends. InputError unless x and y
/// are in the 6 delta almost-fixed set and d(x, y) >= 20 delta is certified.
MidpointCertificate midpoint_certify(const ActionContext& ctx, VertexId x, VertexId y, const Rational& delta,
                                     std::size_t geodesic_cap = 4096);

}  // namespace afpt
