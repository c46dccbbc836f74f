#include <gmpxx.h>

#include <numeric>
#include <random>
#include <set>

#include "afpt/errors.hpp"
#include "afpt/extractor.hpp"
#include "corpus.hpp"
#include "doctest.h"

using namespace afpt;
using afpt::testing::builtin;
using afpt::testing::subgroup;

namespace {

std::string gmp_n(unsigned long c0, unsigned long c1, unsigned long c2, unsigned long c3) {
  mpz_class p3, p2;
  mpz_ui_pow_ui(p3.get_mpz_t(), c3, c0);
  mpz_ui_pow_ui(p2.get_mpz_t(), c2, c0);
  mpz_class n = ((c0 + 1) * p3 + 1) * c1 * p2;
  return n.get_str();
}

bool commutes_with_all(const GroupOracle& g, const GroupElement& z, const FiniteSubgroup& h) {
  for (const auto& e : h.elements)
    if (multiply(g, z, e) != multiply(g, e, z)) return false;
  return true;
}

std::vector<VertexId> all_vertices(const MetricWindow& w) {
  std::vector<VertexId> v(w.graph().size());
  for (VertexId i = 0; i < v.size(); ++i) v[i] = i;
  return v;
}

}  // namespace

TEST_CASE("compute_constants") {
  auto r = compute_constants(1, 1, 1, 1, Rational(0));
  CHECK(r.n == 3);
  CHECK(r.d == 7);
  r = compute_constants(2, 1, 5, 1, Rational(1));
  CHECK(r.n == 100);
  CHECK(r.d == 116);
  r = compute_constants(2, 1, 5, 1, Rational(1), DFormula::Plus10);
  CHECK(r.d == 122);
  r = compute_constants(2, 1, 5, 1, Rational(1, 2));
  CHECK(r.d == 110);
  CHECK(compute_constants(3, 1, 7, 1, Rational(1)).n == 1715);
  CHECK_THROWS_AS(compute_constants(0, 1, 1, 1, Rational(0)), InputError);
  CHECK_THROWS_AS(compute_constants(1, 1, 1, 1, Rational(-1)), InputError);
  CHECK(d_formula_name(DFormula::Plus10) == "N+12delta+10");
}

TEST_CASE("compute_constants agrees with GMP on random inputs, including large ones") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<unsigned long> small(1, 12), exp(1, 40);
  for (int i = 0; i < 200; ++i) {
    const auto c0 = exp(rng), c1 = small(rng), c2 = small(rng), c3 = small(rng);
    const auto r = compute_constants(c0, c1, c2, c3, Rational(static_cast<std::int64_t>(small(rng)), 2));
    CHECK(r.n.str() == gmp_n(c0, c1, c2, c3));
  }
}

TEST_CASE("measure_constants on Cayley balls") {
  auto f2 = builtin("F2");
  const auto ball = build_ball(f2, 3);
  CayleyWindow window(f2, ball);
  CayleyGraphAction action(window);
  auto m = measure_constants(action, 1);
  CHECK(m.c1 == 1);
  CHECK(m.c2 == 5);
  CHECK(m.c3 == 1);
  CHECK(m.core == 17);  // |p| <= 2
  CHECK(measure_constants(action, 0).c2 == 1);
  CHECK(measure_constants(action, 2).c2 == 17);
  CHECK_THROWS_AS(measure_constants(action, 4), ResourceError);

  auto f2z3 = builtin("F2xZ3");
  const auto ball3 = build_ball(f2z3, 3);
  CayleyWindow w3(f2z3, ball3);
  CHECK(measure_constants(CayleyGraphAction(w3), 1).c2 == 7);
}

TEST_CASE("Bass-Serre tree action of Z2*Z3") {
  auto g = builtin("Z2*Z3");
  FreeProductTreeAction tree(g, 6);
  const auto& w = tree.window();

  SUBCASE("vertex counts and degrees") {
    // A-vertices have degree 2, B-vertices degree 3; the ball alternates types
    std::size_t inner = 0;
    for (VertexId v = 0; v < w.graph().size(); ++v) {
      if (!tree.ball_inside(v, 1)) continue;
      ++inner;
      CHECK(w.graph().adjacency[v].size() == (tree.orbit_type(v) == 0 ? 2u : 3u));
    }
    CHECK(inner > 0);
    // spheres around 1A: A-vertices add one new neighbour, B-vertices two
    std::vector<std::size_t> sphere{1, 2};
    for (int d = 2; d <= 6; ++d) sphere.push_back(sphere.back() * (d % 2 == 0 ? 2 : 1));
    CHECK(w.graph().size() == std::accumulate(sphere.begin(), sphere.end(), std::size_t{0}));
  }
  SUBCASE("action preserves adjacency and the transporter moves p to q") {
    for (VertexId p = 0; p < w.graph().size(); ++p) {
      for (Letter l : g.generators()) {
        const auto s = g.letter(l);
        auto sp = tree.act(s, p);
        if (!sp) continue;
        for (VertexId q : w.graph().adjacency[p]) {
          auto sq = tree.act(s, q);
          if (!sq) continue;
          const auto& adj = w.graph().adjacency[*sp];
          CHECK(std::find(adj.begin(), adj.end(), *sq) != adj.end());
        }
      }
    }
    for (VertexId p = 0; p < 20; ++p)
      for (VertexId q = 0; q < 20; ++q)
        if (tree.orbit_type(p) == tree.orbit_type(q)) CHECK(tree.act(tree.transporter(p, q), p) == q);
  }
  SUBCASE("stabilizers match enumeration over a Cayley ball") {
    const auto ball = build_ball(g, 7);
    for (VertexId p = 0; p < w.graph().size(); ++p) {
      if (tree.representative(p).word.size() > 2) continue;
      std::vector<GroupElement> fixing;
      for (const auto& x : ball.vertices)
        if (tree.act(x, p) == p) fixing.push_back(x);
      std::sort(fixing.begin(), fixing.end());
      CHECK(fixing == tree.stabilizer(p));
    }
  }
  SUBCASE("constants") {
    auto m = measure_constants(tree, 1);
    CHECK(m.c1 == 2);
    CHECK(m.c2 == 4);
    CHECK(m.c3 == 3);
  }
  CHECK_THROWS_AS(FreeProductTreeAction(builtin("F2"), 2), InputError);
}

TEST_CASE("verify_centralizer") {
  auto f2z2 = builtin("F2xZ2");
  const auto t = subgroup(f2z2, {"t"});
  CHECK(verify_centralizer(f2z2, f2z2.identity(), t).passed);
  auto pass = verify_centralizer(f2z2, f2z2.parse("a"), t);
  CHECK(pass.passed);
  CHECK(pass.entries.size() == 2);

  auto d = builtin("D_inf");
  auto fail = verify_centralizer(d, d.parse("r s"), subgroup(d, {"r"}));
  CHECK_FALSE(fail.passed);
  CHECK(fail.entries[1].zh == d.parse("r s r"));
  CHECK(fail.entries[1].hz == d.parse("s"));
}

TEST_CASE("order_lower_bound") {
  auto f2z2 = builtin("F2xZ2");
  CHECK(order_lower_bound(f2z2, f2z2.identity()).text() == "order 1");
  CHECK(order_lower_bound(f2z2, f2z2.parse("t")).text() == "order 2");
  CHECK(order_lower_bound(f2z2, f2z2.parse("a t")).kind == OrderReport::Kind::Infinite);
  auto z23 = builtin("Z2*Z3");
  CHECK(order_lower_bound(z23, z23.parse("r s"), 50).text() == "exceeds 50");
  CHECK(order_lower_bound(z23, z23.parse("s r s2"), 50).text() == "order 2");
  CHECK_THROWS_AS(order_lower_bound(z23, z23.parse("r"), 0), InputError);
}

TEST_CASE("extract_centralizers examples") {
  SUBCASE("trivial H: every quotient p_c p_i^-1 of the class") {
    auto g = builtin("F2");
    const auto ball = build_ball(g, 2);
    CayleyWindow w(g, ball);
    CayleyGraphAction action(w);
    auto r = extract_centralizers(action, subgroup(g, {}), all_vertices(w));
    CHECK(r.specialized_checked);
    CHECK(r.certificates.size() == ball.size());  // z = p_i^-1, the ball is closed under inverses
    CHECK(r.nontrivial() == ball.size() - 1);
    CHECK(r.chain.r1 == ball.size());
    CHECK(r.chain.final_size() == ball.size());
  }
  SUBCASE("F2 x Z3, central H, P = {(w, 1) : |w| <= 3}: one class") {
    auto g = builtin("F2xZ3");
    const auto ball = build_ball(g, 4);
    CayleyWindow w(g, ball);
    CayleyGraphAction action(w);
    std::vector<VertexId> p;
    std::set<GroupElement> expected;
    for (VertexId v = 0; v < ball.size(); ++v)
      if (ball.vertices[v].word.size() <= 3 && g.free_projection(ball.vertices[v]) == ball.vertices[v]) {
        p.push_back(v);
        expected.insert(ball.vertices[v]);
      }
    const auto h = subgroup(g, {"t"});
    auto r = extract_centralizers(action, h, p);
    CHECK(r.cells.size() == 1);
    std::set<GroupElement> got;
    for (const auto& c : r.certificates) got.insert(c.z);
    CHECK(got == expected);
    CHECK(got.count(g.parse("a")));
    CHECK(got.count(g.parse("a b")));
    for (const auto& c : r.certificates) {
      CHECK(c.transcript.passed);
      CHECK(c.order.kind == (c.trivial ? OrderReport::Kind::Finite : OrderReport::Kind::Infinite));
    }
  }
  SUBCASE("D_inf, H = {1, r}: only 1 and r survive") {
    auto g = builtin("D_inf");
    const auto ball = build_ball(g, 6);
    CayleyWindow w(g, ball);
    CayleyGraphAction action(w);
    const auto h = subgroup(g, {"r"});
    const auto x = almost_fixed_set(SubgroupAction(action, h), 2);
    CHECK(x.members.size() == 2);
    auto r = extract_centralizers(action, h, x.members);
    REQUIRE(r.certificates.size() == 2);
    CHECK(r.certificates[0].z == g.identity());
    CHECK(r.certificates[1].z == g.parse("r"));
    CHECK(r.certificates[1].order.text() == "order 2");
  }
  SUBCASE("all cells singletons: empty list") {
    auto g = builtin("D_inf");
    const auto ball = build_ball(g, 6);
    CayleyWindow w(g, ball);
    CayleyGraphAction action(w);
    auto r = extract_centralizers(action, subgroup(g, {"r"}), {*ball.find(g.parse("s")), *ball.find(g.parse("s r"))});
    CHECK(r.certificates.empty());
    CHECK(r.cells.size() == 2);
  }
  SUBCASE("tree action, Z2*Z3, H = <r>: the B-neighbours of the fixed vertex give z = r") {
    auto g = builtin("Z2*Z3");
    FreeProductTreeAction tree(g, 6);
    const auto h = subgroup(g, {"r"});
    const auto x = almost_fixed_set(SubgroupAction(tree, h), 2);
    CHECK(x.members.size() == 3);  // 1A, 1B, rB
    auto r = extract_centralizers(tree, h, x.members);
    CHECK(r.orbit_classes == 2);
    CHECK(r.chain.r1 == 2);
    CHECK_FALSE(r.specialized_checked);
    REQUIRE(r.certificates.size() == 2);
    CHECK(r.certificates[1].z == g.parse("r"));
  }
  CHECK_THROWS_AS(([] {
                    auto g = builtin("F2");
                    const auto ball = build_ball(g, 1);
                    CayleyWindow w(g, ball);
                    extract_centralizers(CayleyGraphAction(w), subgroup(g, {}), {});
                  })(),
                  InputError);
}

TEST_CASE("soundness: every certificate commutes with H, on every corpus group, subgroup and threshold") {
  for (const auto& name : afpt::testing::corpus_names()) {
    auto g = builtin(name);
    const auto ball = build_ball(g, name.front() == 'F' ? 4 : 7);
    CayleyWindow w(g, ball);
    CayleyGraphAction cayley(w);
    std::optional<FreeProductTreeAction> tree;
    if (g.kind() == FamilyKind::FreeProduct) tree.emplace(g, 7);
    for (const auto& gens : afpt::testing::corpus_subgroup_generators(name)) {
      const auto h = subgroup(g, gens);
      for (int a = 0; a <= 4; ++a) {
        std::vector<const ProperAction*> actions{&cayley};
        if (tree) actions.push_back(&*tree);
        for (const auto* action : actions) {
          CAPTURE(name);
          CAPTURE(a);
          const auto x = almost_fixed_set(SubgroupAction(*action, h), a);
          if (x.members.empty()) continue;
          const auto r = extract_centralizers(*action, h, x.members);
          CHECK(r.rejected == 0);
          for (const auto& c : r.certificates) CHECK(commutes_with_all(g, c.z, h));
          if (action == &cayley) CHECK(r.specialized_checked);
        }
      }
    }
  }
}

TEST_CASE("equivariance: certificates map the almost-fixed set into itself") {
  auto g = builtin("F2xZ3");
  const auto ball = build_ball(g, 5);
  CayleyWindow w(g, ball);
  CayleyGraphAction action(w);
  const auto h = subgroup(g, {"t"});
  SubgroupAction ctx(action, h);
  const auto x = almost_fixed_set(ctx, 1);
  const auto r = extract_centralizers(action, h, x.members);
  std::uint64_t checked = 0;
  for (std::size_t k = 0; k < r.certificates.size(); k += 7) {
    for (VertexId v : x.members) {
      auto zv = action.act(r.certificates[k].z, v);
      if (!zv) continue;
      std::vector<VertexId> o;
      try {
        o = orbit(ctx, *zv);
      } catch (const WindowError&) {
        continue;
      }
      if (!valid_diameter(w, o)) continue;
      CHECK(x.contains(*zv));
      ++checked;
    }
  }
  CHECK(checked > 0);
}

TEST_CASE("pigeonhole threshold: card(P_H) >= N yields at least C0 + 1 certificates") {
  auto g = builtin("F2xZ2");
  const auto h = subgroup(g, {"t"});
  for (int radius = 2;; ++radius) {
    const auto ball = build_ball(g, radius);
    CayleyWindow w(g, ball);
    CayleyGraphAction action(w);
    const int a = 1;
    const auto x = almost_fixed_set(SubgroupAction(action, h), a);
    const auto m = measure_constants(action, a);
    const auto c = compute_constants(g.finite_subgroup_bound(), m.c1, m.c2, m.c3, Rational(1));
    CHECK(c.n == 144);
    if (x.members.size() < c.n) continue;
    const auto r = extract_centralizers(action, h, x.members);
    CHECK(r.certificates.size() >= c.c0 + 1);
    CHECK(r.chain.final_size() >= c.c0 + 1);
    CHECK(radius == 5);
    break;
  }
}

TEST_CASE("contrapositive: D_inf, H = {1, r}: diam X_H stays below D as the window grows") {
  auto g = builtin("D_inf");
  const auto h = subgroup(g, {"r"});
  int previous = 0;
  for (int radius = 4; radius <= 12; radius += 2) {
    const auto ball = build_ball(g, radius);
    CayleyWindow w(g, ball);
    CayleyGraphAction action(w);
    const auto delta = estimate_delta(w).delta;
    const int a = std::max<int>(2, static_cast<int>(floor(delta * 6)));
    const auto x = almost_fixed_set(SubgroupAction(action, h), a);
    const auto m = measure_constants(action, a);
    const auto c = compute_constants(g.finite_subgroup_bound(), m.c1, m.c2, m.c3, delta);
    const int diam = x.members.empty() ? 0 : *valid_diameter(w, x.members);
    CHECK(diam >= previous);
    CHECK(BigRational(diam) < c.d);
    previous = diam;
  }
}
