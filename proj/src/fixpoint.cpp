#include "afpt/fixpoint.hpp"

#include <algorithm>
#include <map>

#include "afpt/errors.hpp"

namespace afpt {

CayleyAction::CayleyAction(const CayleyWindow& window, const FiniteSubgroup& h) : window_(window), h_(h) {
  if (h_.elements.empty() || !h_.elements.front().is_identity())
    throw InputError("subgroup must list the identity first");
}

std::string CayleyAction::element_name(std::size_t h) const { return window_.oracle().format(h_.elements.at(h)); }

std::optional<VertexId> CayleyAction::act(std::size_t h, VertexId v) const {
  const auto& ball = window_.ball();
  return ball.find(multiply(window_.oracle(), h_.elements.at(h), ball.vertices.at(v)));
}

std::vector<VertexId> orbit(const ActionContext& ctx, VertexId x) {
  std::vector<VertexId> out;
  out.reserve(ctx.order());
  for (std::size_t h = 0; h < ctx.order(); ++h) {
    auto image = ctx.act(h, x);
    if (!image)
      throw WindowError("image of " + ctx.window().vertex_name(x) + " under " + ctx.element_name(h) +
                        " leaves the window");
    out.push_back(*image);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<int> valid_diameter(const MetricWindow& window, const std::vector<VertexId>& set) {
  int diam = 0;
  for (std::size_t i = 0; i < set.size(); ++i)
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      auto d = window.valid_distance(set[i], set[j]);
      if (!d) return std::nullopt;
      diam = std::max(diam, *d);
    }
  return diam;
}

bool AlmostFixedSet::contains(VertexId v) const { return std::binary_search(members.begin(), members.end(), v); }

AlmostFixedSet almost_fixed_set(const ActionContext& ctx, int threshold) {
  if (threshold < 0) throw InputError("almost-fixed threshold must be non-negative");
  AlmostFixedSet out;
  out.threshold = threshold;
  const auto n = static_cast<VertexId>(ctx.window().graph().size());
  for (VertexId v = 0; v < n; ++v) {
    ++out.scanned;
    std::vector<VertexId> o;
    try {
      o = orbit(ctx, v);
    } catch (const WindowError&) {
      ++out.escaped;
      continue;
    }
    auto diam = valid_diameter(ctx.window(), o);
    if (!diam) {
      ++out.invalid;
    } else if (*diam > threshold) {
      ++out.over_threshold;
    } else {
      out.members.push_back(v);
      out.diameters.push_back(*diam);
    }
  }
  return out;
}

Thresholds thresholds_for(const Rational& delta) {
  if (delta < 0) throw InputError("delta must be non-negative");
  Thresholds t;
  t.delta = delta;
  t.fixed = static_cast<int>(floor(delta * 6));
  t.midpoint = static_cast<int>(floor(delta * 8));
  t.far = static_cast<int>(ceil(delta * 20));
  t.margin = static_cast<int>(ceil(delta * 6 + 1));
  return t;
}

namespace {

std::optional<int> orbit_diameter(const ActionContext& ctx, VertexId v) {
  try {
    return valid_diameter(ctx.window(), orbit(ctx, v));
  } catch (const WindowError&) {
    return std::nullopt;
  }
}

}  // namespace

MidpointCertificate midpoint_certify(const ActionContext& ctx, VertexId x, VertexId y, const Rational& delta,
                                     std::size_t geodesic_cap) {
  MidpointCertificate cert;
  cert.x = x;
  cert.y = y;
  cert.bounds = thresholds_for(delta);
  const auto& window = ctx.window();
  const auto name = [&](VertexId v) { return window.vertex_name(v); };

  for (VertexId end : {x, y}) {
    auto diam = orbit_diameter(ctx, end);
    if (!diam) throw InputError("orbit of " + name(end) + " is not certifiable in the window");
    if (*diam > cert.bounds.fixed)
      throw InputError(name(end) + " is not almost fixed: orbit diameter " + std::to_string(*diam) + " > " +
                       std::to_string(cert.bounds.fixed));
  }
  auto d = window.valid_distance(x, y);
  if (!d) throw InputError("distance between " + name(x) + " and " + name(y) + " is not certified by the window");
  if (*d < cert.bounds.far)
    throw InputError("endpoints too close: " + std::to_string(*d) + " < " + std::to_string(cert.bounds.far));
  cert.distance = *d;

  const auto geos = all_geodesics(window.graph(), x, y, geodesic_cap);
  cert.geodesics = geos.paths.size();
  cert.truncated = geos.truncated;
  std::map<VertexId, CertifiedPoint> seen;
  for (const auto& path : geos.paths) {
    for (std::size_t i = 0; i < path.size(); ++i) {
      const int from_x = static_cast<int>(i);
      const int to_y = cert.distance - from_x;
      if (from_x < cert.bounds.margin || to_y < cert.bounds.margin) continue;
      if (seen.count(path[i])) continue;
      CertifiedPoint p{path[i], from_x, to_y, orbit_diameter(ctx, path[i]), false};
      p.ok = p.diameter && *p.diameter <= cert.bounds.midpoint;
      if (!p.diameter)
        ++cert.unverifiable;
      else if (!p.ok)
        ++cert.counterexamples;
      seen.emplace(p.z, p);
    }
  }
  for (auto& [z, p] : seen) cert.points.push_back(p);
  return cert;
}

}  // namespace afpt
