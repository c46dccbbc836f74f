#include <random>

#include "afpt/errors.hpp"
#include "afpt/group.hpp"
#include "corpus.hpp"
#include "doctest.h"

using namespace afpt;
using afpt::testing::builtin;

TEST_CASE("normalize: documented examples") {
  auto f2 = builtin("F2");
  CHECK(f2.format(f2.parse("a a^-1 b")) == "b");

  auto z23 = builtin("Z2*Z3");
  CHECK(z23.parse("r r").is_identity());
  CHECK(z23.format(z23.parse("r s s r")) == "r s2 r");
  CHECK(z23.format(z23.parse("s^-1")) == "s2");

  auto f2z2 = builtin("F2xZ2");
  CHECK(f2z2.format(f2z2.parse("a t a^-1")) == "t");
  CHECK(f2z2.format(f2z2.parse("t a b t t")) == "a b t");
}

TEST_CASE("normalize rejects unknown symbols") {
  auto f2 = builtin("F2");
  CHECK_THROWS_AS(f2.parse("a c"), InputError);
  CHECK_THROWS_AS(f2.normalize(std::vector<Letter>{99}), InputError);
  CHECK_THROWS_AS(f2.parse("a^x"), InputError);
}

TEST_CASE("multiply, invert, conjugate") {
  auto f2 = builtin("F2");
  CHECK(multiply(f2, f2.parse("a"), f2.parse("a^-1")).is_identity());
  CHECK(f2.format(invert(f2, f2.parse("a b"))) == "b^-1 a^-1");
  CHECK(invert(f2, f2.identity()).is_identity());

  auto z23 = builtin("Z2*Z3");
  CHECK(z23.format(multiply(z23, z23.parse("r s"), z23.parse("s r"))) == "r s2 r");
  const auto x = z23.parse("r s r s2");
  CHECK(multiply(z23, z23.identity(), x) == x);

  auto f2z2 = builtin("F2xZ2");
  CHECK(f2z2.format(conjugate(f2z2, f2z2.parse("a"), f2z2.parse("t"))) == "t");
  CHECK(f2z2.format(conjugate(f2z2, f2z2.parse("a"), f2z2.parse("b"))) == "a^-1 b a");

  CHECK(power(z23, z23.parse("s"), 3).is_identity());
  CHECK(z23.format(power(z23, z23.parse("r s"), -1)) == "s2 r");
  CHECK(power(f2, f2.parse("a b"), 0).is_identity());
}

TEST_CASE("alphabet: inverse pairing is an involution, names unique") {
  for (const auto& name : afpt::testing::corpus_names()) {
    auto g = builtin(name);
    CHECK_NOTHROW(g.alphabet().check_invariants());
    for (Letter l = 0; l < g.alphabet().size(); ++l)
      CHECK(multiply(g, g.letter(l), g.letter(g.alphabet().inverse(l))).is_identity());
  }
  GeneratorAlphabet a;
  a.add("x");
  CHECK_THROWS_AS(a.add("x"), InputError);
}

TEST_CASE("group axioms hold on random ball elements") {
  std::mt19937_64 rng(7);
  for (const auto& name : afpt::testing::corpus_names()) {
    CAPTURE(name);
    auto g = builtin(name);
    const auto ball = build_ball(g, 4);
    for (int trial = 0; trial < 300; ++trial) {
      const auto& x = afpt::testing::random_vertex(ball, rng);
      const auto& y = afpt::testing::random_vertex(ball, rng);
      const auto& z = afpt::testing::random_vertex(ball, rng);
      CHECK(multiply(g, multiply(g, x, y), z) == multiply(g, x, multiply(g, y, z)));
      CHECK(multiply(g, x, invert(g, x)).is_identity());
      CHECK(multiply(g, invert(g, x), x).is_identity());
      CHECK(g.normalize(x.word) == x);
      // well-defined multiplication on raw concatenations
      std::vector<Letter> raw = x.word;
      raw.insert(raw.end(), y.word.begin(), y.word.end());
      CHECK(g.normalize(raw) == multiply(g, x, y));
    }
  }
}

TEST_CASE("build_ball: sizes") {
  CHECK(build_ball(builtin("F2"), 2).size() == 17);
  CHECK(build_ball(builtin("F2"), 0).size() == 1);
  CHECK(build_ball(builtin("Z2*Z3"), 0).vertices[0].is_identity());
  CHECK(build_ball(builtin("D_inf"), 3).size() == 7);
  // F2: 2*3^R - 1
  CHECK(build_ball(builtin("F2"), 5).size() == 485);
  // F2 x Z3 with generators a, b, t: |B_F(R)| + 2 |B_F(R-1)|
  CHECK(build_ball(builtin("F2xZ3"), 3).size() == 53 + 2 * 17);
}

TEST_CASE("build_ball: budget") {
  try {
    build_ball(builtin("F2"), 6, 100);
    FAIL("expected ResourceError");
  } catch (const ResourceError& e) {
    CHECK(std::string(e.what()).find("radius 4") != std::string::npos);
  }
  CHECK_THROWS_AS(build_ball(builtin("F2"), -1), InputError);
}

TEST_CASE("build_ball: lengths equal BFS depth and exact word length") {
  for (const auto& name : afpt::testing::corpus_names()) {
    CAPTURE(name);
    auto g = builtin(name);
    const auto ball = build_ball(g, 5);
    std::size_t previous = build_ball(g, 4).size();
    CHECK(previous <= ball.size());
    for (VertexId v = 0; v < ball.size(); ++v) {
      CHECK(static_cast<std::size_t>(ball.lengths[v]) == g.word_length(ball.vertices[v]));
      if (ball.lengths[v] > 0) {
        bool has_parent = false;
        for (VertexId w : ball.adjacency[v]) has_parent |= ball.lengths[w] == ball.lengths[v] - 1;
        CHECK(has_parent);
      }
      for (VertexId w : ball.adjacency[v]) {
        CHECK(std::abs(ball.lengths[w] - ball.lengths[v]) <= 1);
        // undirected
        const auto& back = ball.adjacency[w];
        CHECK(std::find(back.begin(), back.end(), v) != back.end());
      }
    }
  }
}

TEST_CASE("left multiplication embeds B(R) into B(R') preserving adjacency") {
  for (const auto& name : afpt::testing::corpus_names()) {
    CAPTURE(name);
    auto g = builtin(name);
    const int r = 2;
    const auto inner = build_ball(g, r);
    const auto outer = build_ball(g, 2 * r + 2);
    for (VertexId gi = 0; gi < inner.size(); ++gi) {
      const auto& h = inner.vertices[gi];
      if (inner.lengths[gi] + 2 * r > outer.radius) continue;
      for (VertexId x = 0; x < inner.size(); ++x) {
        auto hx = outer.find(multiply(g, h, inner.vertices[x]));
        REQUIRE(hx);
        for (VertexId y : inner.adjacency[x]) {
          auto hy = outer.find(multiply(g, h, inner.vertices[y]));
          REQUIRE(hy);
          const auto& adj = outer.adjacency[*hx];
          CHECK(std::find(adj.begin(), adj.end(), *hy) != adj.end());
        }
      }
    }
  }
}

TEST_CASE("verify_subgroup") {
  auto f2z2 = builtin("F2xZ2");
  auto trivial = verify_subgroup(f2z2, {f2z2.identity()});
  REQUIRE(trivial.ok());
  CHECK(trivial.subgroup->order() == 1);

  auto center = verify_subgroup(f2z2, {f2z2.identity(), f2z2.parse("t")});
  REQUIRE(center.ok());
  CHECK(center.subgroup->order() == 2);

  auto z23 = builtin("Z2*Z3");
  auto bad = verify_subgroup(z23, {z23.identity(), z23.parse("s")});
  CHECK_FALSE(bad.ok());
  REQUIRE(bad.violating_pair);
  CHECK(bad.violating_pair->first == z23.parse("s"));
  CHECK(bad.violating_pair->second == z23.parse("s"));

  CHECK_FALSE(verify_subgroup(z23, {z23.parse("r")}).ok());  // identity missing
  CHECK_FALSE(verify_subgroup(z23, {}).ok());
}

TEST_CASE("generate_subgroup") {
  auto z23 = builtin("Z2*Z3");
  CHECK(afpt::testing::subgroup(z23, {"s"}).order() == 3);
  CHECK(afpt::testing::subgroup(z23, {"s r s2"}).order() == 2);
  CHECK_THROWS_AS(generate_subgroup(z23, {z23.parse("r s")}, 50), ResourceError);
}

TEST_CASE("finite subgroup bound and free projection") {
  CHECK(builtin("F2").finite_subgroup_bound() == 1);
  CHECK(builtin("F2xZ3").finite_subgroup_bound() == 3);
  CHECK(builtin("Z2*Z3").finite_subgroup_bound() == 3);
  CHECK(builtin("Z5").finite_subgroup_bound() == 5);
  auto f2z3 = builtin("F2xZ3");
  CHECK(f2z3.format(*f2z3.free_projection(f2z3.parse("a t b"))) == "a b");
  CHECK_FALSE(builtin("Z2*Z3").free_projection(GroupElement{}).has_value());
}

TEST_CASE("shortlex order") {
  auto f2 = builtin("F2");
  CHECK(f2.identity() < f2.parse("b"));
  CHECK(f2.parse("b") < f2.parse("a a"));
  CHECK(f2.parse("a") < f2.parse("a^-1"));
  CHECK(f2.parse("a b") < f2.parse("b a"));
}
