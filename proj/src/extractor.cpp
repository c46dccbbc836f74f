#include "afpt/extractor.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "afpt/errors.hpp"

namespace afpt {

std::string_view d_formula_name(DFormula f) { return f == DFormula::Plus4 ? "N+12delta+4" : "N+12delta+10"; }

ConstantsReport compute_constants(std::uint64_t c0, std::uint64_t c1, std::uint64_t c2, std::uint64_t c3,
                                  const Rational& delta, DFormula formula) {
  if (c0 == 0 || c1 == 0 || c2 == 0 || c3 == 0) throw InputError("C0..C3 must be positive");
  if (delta < 0) throw InputError("delta must be non-negative");
  if (c0 > 4096) throw InputError("C0 above 4096 is not supported");
  ConstantsReport r;
  r.c0 = c0;
  r.c1 = c1;
  r.c2 = c2;
  r.c3 = c3;
  r.delta = delta;
  r.formula = formula;
  const auto e = static_cast<unsigned>(c0);
  r.n = ((BigInt(c0) + 1) * boost::multiprecision::pow(BigInt(c3), e) + 1) * BigInt(c1) *
        boost::multiprecision::pow(BigInt(c2), e);
  r.d = BigRational(r.n) + BigRational(BigInt(delta.numerator()), BigInt(delta.denominator())) * 12 +
        (formula == DFormula::Plus4 ? 4 : 10);
  return r;
}

MeasuredConstants measure_constants(const ProperAction& action, int a) {
  if (a < 0) throw InputError("threshold a must be non-negative");
  const auto& g = action.window().graph();
  MeasuredConstants out;
  std::vector<bool> types(action.orbit_types(), false);
  std::vector<int> dist(g.size(), kUnreachable);
  std::vector<VertexId> seen;
  for (VertexId p = 0; p < g.size(); ++p) {
    if (!action.ball_inside(p, a)) continue;
    ++out.core;
    types.at(action.orbit_type(p)) = true;
    out.c3 = std::max<std::uint64_t>(out.c3, action.stabilizer(p).size());
    // |B(p, a)| by a bounded BFS
    for (VertexId v : seen) dist[v] = kUnreachable;
    seen.assign(1, p);
    dist[p] = 0;
    for (std::size_t i = 0; i < seen.size(); ++i) {
      if (dist[seen[i]] == a) continue;
      for (VertexId w : g.adjacency[seen[i]])
        if (dist[w] == kUnreachable) {
          dist[w] = dist[seen[i]] + 1;
          seen.push_back(w);
        }
    }
    out.c2 = std::max<std::uint64_t>(out.c2, seen.size());
  }
  if (out.core == 0) throw ResourceError("window too small: no vertex has its " + std::to_string(a) + "-ball inside");
  out.c1 = static_cast<std::uint64_t>(std::count(types.begin(), types.end(), true));
  return out;
}

CommutationTranscript verify_centralizer(const GroupOracle& oracle, const GroupElement& z, const FiniteSubgroup& h) {
  CommutationTranscript t;
  for (const auto& e : h.elements) {
    CommutationEntry entry{e, multiply(oracle, z, e), multiply(oracle, e, z), false};
    entry.equal = entry.zh == entry.hz;
    t.passed = t.passed && entry.equal;
    t.entries.push_back(std::move(entry));
  }
  return t;
}

std::string OrderReport::text() const {
  switch (kind) {
    case Kind::Finite:
      return "order " + std::to_string(value);
    case Kind::Exceeds:
      return "exceeds " + std::to_string(value);
    case Kind::Infinite:
      return "infinite (exact)";
  }
  return {};
}

OrderReport order_lower_bound(const GroupOracle& oracle, const GroupElement& z, std::uint64_t m) {
  if (m == 0) throw InputError("order bound must be at least 1");
  if (auto proj = oracle.free_projection(z); proj && !proj->is_identity()) return {OrderReport::Kind::Infinite, 0};
  GroupElement acc = z;
  for (std::uint64_t k = 1; k <= m; ++k) {
    if (acc.is_identity()) return {OrderReport::Kind::Finite, k};
    acc = multiply(oracle, acc, z);
  }
  return {OrderReport::Kind::Exceeds, m};
}

std::uint64_t ExtractionReport::nontrivial() const {
  return static_cast<std::uint64_t>(
      std::count_if(certificates.begin(), certificates.end(), [](const auto& c) { return !c.trivial; }));
}

namespace {

using Cell = std::vector<std::size_t>;  // indices into the chosen class, increasing

// Splits every cell by key(c, i); subcells ordered by least member, origin[]
// carried along. Returns the index of the largest subcell of cells[follow]
// (ties: least member) in the result.
template <typename KeyFn>
std::size_t refine(std::vector<Cell>& cells, std::vector<std::size_t>& origin, std::size_t follow, KeyFn key) {
  std::vector<Cell> out;
  std::vector<std::size_t> out_origin;
  std::size_t followed = 0;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    using Key = decltype(key(std::size_t{}, std::size_t{}));
    std::map<Key, Cell> groups;
    for (std::size_t i : cells[c]) groups[key(c, i)].push_back(i);
    std::vector<Cell> parts;
    for (auto& [k, cell] : groups) parts.push_back(std::move(cell));
    std::sort(parts.begin(), parts.end(), [](const Cell& x, const Cell& y) { return x.front() < y.front(); });
    if (c == follow) {
      std::size_t best = 0;
      for (std::size_t j = 1; j < parts.size(); ++j)
        if (parts[j].size() > parts[best].size()) best = j;
      followed = out.size() + best;
    }
    for (auto& part : parts) {
      out.push_back(std::move(part));
      out_origin.push_back(origin[c]);
    }
  }
  cells = std::move(out);
  origin = std::move(out_origin);
  return followed;
}

}  // namespace

std::vector<GroupElement> conjugation_vector_centralizers(const GroupOracle& oracle, const FiniteSubgroup& h,
                                                          const std::vector<GroupElement>& p) {
  std::vector<GroupElement> sorted = p;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::map<std::vector<GroupElement>, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    std::vector<GroupElement> key;
    for (const auto& e : h.elements) key.push_back(conjugate(oracle, sorted[i], e));
    classes[key].push_back(i);
  }
  std::vector<GroupElement> out;
  for (const auto& [key, members] : classes) {
    if (members.size() < 2) continue;
    const auto& pc = sorted[members.front()];
    for (std::size_t i : members) out.push_back(multiply(oracle, pc, invert(oracle, sorted[i])));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

ExtractionReport extract_centralizers(const ProperAction& action, const FiniteSubgroup& h,
                                      const std::vector<VertexId>& p, std::uint64_t m) {
  const auto& oracle = action.oracle();
  if (p.empty()) throw InputError("extraction needs a nonempty set of almost-fixed vertices");
  if (!verify_subgroup(oracle, h.elements).ok()) throw InputError("H is not closed under multiplication");

  ExtractionReport report;
  std::vector<VertexId> pts = p;
  std::sort(pts.begin(), pts.end(), [&](VertexId a, VertexId b) { return action.precedes(a, b); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  report.p_size = pts.size();

  // (1) largest G-orbit class, ties broken by the least representative
  std::map<std::size_t, std::vector<VertexId>> by_type;
  for (VertexId v : pts) by_type[action.orbit_type(v)].push_back(v);
  report.orbit_classes = by_type.size();
  const std::vector<VertexId>* best = nullptr;
  for (const auto& [type, cls] : by_type)
    if (!best || cls.size() > best->size() ||
        (cls.size() == best->size() && action.precedes(cls.front(), best->front())))
      best = &cls;
  const auto& cls = *best;
  report.chosen_class = cls;
  report.chain.r1 = cls.size();

  // (2) transporters g_i with g_i p_1 = p_i
  std::vector<GroupElement> g, g_inv;
  for (VertexId v : cls) {
    g.push_back(action.transporter(cls.front(), v));
    g_inv.push_back(invert(oracle, g.back()));
  }

  // (3) refine by v_t(i) = g_i^-1 h_t p_i
  Cell all(cls.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  std::vector<Cell> cells{all};
  std::vector<std::size_t> origin{0};
  std::size_t chain = 0;
  for (const auto& ht : h.elements) {
    chain = refine(cells, origin, chain, [&](std::size_t, std::size_t i) {
      auto v = action.act(multiply(oracle, g_inv[i], ht), cls[i]);
      if (!v) throw WindowError("g_i^-1 h p_i leaves the window for p_i = " + action.window().vertex_name(cls[i]));
      return *v;
    });
    report.chain.orbit_refinement.push_back(cells[chain].size());
  }

  // (4) refine by s_t(i) = h_t^-1 g_b g_i^-1 h_t g_i g_b^-1, which lies in stab(p_b)
  // b is the least member of the step (3) cell each current cell descends from
  for (std::size_t c = 0; c < cells.size(); ++c) origin[c] = cells[c].front();
  std::vector<std::vector<GroupElement>> stabs(cls.size());
  for (const auto& ht : h.elements) {
    const auto ht_inv = invert(oracle, ht);
    chain = refine(cells, origin, chain, [&](std::size_t c, std::size_t i) {
      const std::size_t b = origin[c];
      auto& st = stabs[b];
      if (st.empty()) {
        st = action.stabilizer(cls[b]);
        std::sort(st.begin(), st.end());
      }
      GroupElement s = multiply(oracle, ht_inv, g[b]);
      s = multiply(oracle, s, g_inv[i]);
      s = multiply(oracle, s, ht);
      s = multiply(oracle, s, g[i]);
      s = multiply(oracle, s, g_inv[b]);
      if (!std::binary_search(st.begin(), st.end(), s) || action.act(s, cls[b]) != cls[b])
        throw std::logic_error("stabilizer identity failed for " + oracle.format(s));
      return s;
    });
    report.chain.stabilizer_refinement.push_back(cells[chain].size());
  }
  report.cells.reserve(cells.size());
  for (const auto& cell : cells) {
    report.cells.emplace_back();
    for (std::size_t i : cell) report.cells.back().push_back(cls[i]);
  }

  // (5) z = g_c g_i^-1 within each final cell
  std::map<GroupElement, CentralizerCertificate> found;
  for (const auto& cell : cells) {
    if (cell.size() < 2) continue;
    const std::size_t c = cell.front();
    for (std::size_t i : cell) {
      GroupElement z = multiply(oracle, g[c], g_inv[i]);
      if (found.count(z)) continue;
      auto transcript = verify_centralizer(oracle, z, h);
      if (!transcript.passed) {
        ++report.rejected;
        continue;
      }
      CentralizerCertificate cert;
      cert.z = z;
      cert.from = cls[i];
      cert.to = cls[c];
      cert.transcript = std::move(transcript);
      cert.order = order_lower_bound(oracle, z, m);
      cert.trivial = z.is_identity();
      found.emplace(std::move(z), std::move(cert));
    }
  }
  for (auto& [z, cert] : found) report.certificates.push_back(std::move(cert));

  if (action.is_free_cayley()) {
    const auto& ball = dynamic_cast<const CayleyGraphAction&>(action).cayley().ball();
    std::vector<GroupElement> elems;
    for (VertexId v : cls) elems.push_back(ball.vertices[v]);
    const auto special = conjugation_vector_centralizers(oracle, h, elems);
    std::vector<GroupElement> general;
    for (const auto& cert : report.certificates) general.push_back(cert.z);
    if (special != general || report.rejected != 0)
      throw std::logic_error("conjugation-vector path disagrees with the general extraction");
    report.specialized_checked = true;
  }
  return report;
}

}  // namespace afpt
