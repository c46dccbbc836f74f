#include <random>
#include <set>

#include "afpt/errors.hpp"
#include "afpt/farey.hpp"
#include "doctest.h"
#include "farey_oracle.hpp"

using namespace afpt;
using afpt::testing::BoundedFarey;

namespace {

UniMatrix power(const UniMatrix& m, int k) {
  UniMatrix out;
  for (int i = 0; i < k; ++i) out = out * m;
  return out;
}

// Random word in S, T, T^-1.
UniMatrix random_matrix(std::mt19937_64& rng, int length) {
  const UniMatrix gens[] = {{0, -1, 1, 0}, {1, 1, 0, 1}, {1, -1, 0, 1}};
  UniMatrix m;
  for (int i = 0; i < length; ++i) m = m * gens[rng() % 3];
  return m;
}

Slope random_slope(std::mt19937_64& rng, std::int64_t bound) {
  std::uniform_int_distribution<std::int64_t> dist(-bound, bound);
  for (;;) {
    const auto p = dist(rng), q = dist(rng);
    if (std::gcd(p, q) == 1) return Slope::make(p, q);
  }
}

}  // namespace

TEST_CASE("slopes are canonical") {
  CHECK(Slope::make(-1, -2) == Slope{1, 2});
  CHECK(Slope::make(3, -4) == Slope{-3, 4});
  CHECK(Slope::make(-1, 0) == Slope::infinity());
  CHECK_THROWS_AS(Slope::make(2, 4), InputError);
  CHECK_THROWS_AS(Slope::make(0, 0), InputError);
  CHECK(to_string(Slope::infinity()) == "1/0");
  CHECK(parse_slope("-2/5") == Slope{-2, 5});
  CHECK(parse_slope("3") == Slope{3, 1});
  CHECK(parse_slope("inf") == Slope::infinity());
  CHECK_THROWS_AS(parse_slope("1/x"), ParseError);
  CHECK_THROWS_AS(UniMatrix::make(1, 1, 1, 1), InputError);
}

TEST_CASE("intersection numbers and adjacency") {
  CHECK(intersection_number(Slope{0, 1}, Slope::infinity()) == 1);
  CHECK(intersection_number(Slope{1, 2}, Slope{1, 3}) == 1);
  CHECK(intersection_number(Slope{2, 1}, Slope{1, 2}) == 3);
  CHECK(intersection_number(Slope{2, 1}, Slope{2, 1}) == 0);
  CHECK(adjacent(Slope{0, 1}, Slope::infinity()));
  CHECK_FALSE(adjacent(Slope{2, 1}, Slope{1, 2}));
  CHECK(adjacent(Slope{5, 2}, Slope{3, 1}));
}

TEST_CASE("farey_distance examples") {
  CHECK(farey_distance(Slope{0, 1}, Slope::infinity()) == 1);
  CHECK(farey_distance(Slope::infinity(), Slope{5, 2}) == 2);
  CHECK(farey_distance(Slope{7, 3}, Slope{7, 3}) == 0);
  CHECK(farey_distance(Slope::infinity(), Slope{2, 5}) == 3);

  const BoundedFarey small(10);
  CHECK(small.distances_from(small.id(Slope::infinity()))[small.id(Slope{5, 2})] == 2);
  const auto path = farey_geodesic(Slope::infinity(), Slope{5, 2});
  CHECK(path.geodesic.size() == 3);
  CHECK((path.geodesic[1] == Slope{2, 1} || path.geodesic[1] == Slope{3, 1}));
}

TEST_CASE("farey_distance agrees with BFS on bounded slopes") {
  const BoundedFarey oracle(15);
  const auto& s = oracle.slopes();
  std::uint64_t pairs = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto d = oracle.distances_from(i);
    for (std::size_t j = 0; j < s.size(); ++j) {
      if (farey_distance(s[i], s[j]) != d[j]) {
        FAIL_CHECK(to_string(s[i]) << " " << to_string(s[j]) << " bfs " << d[j]);
      }
      ++pairs;
    }
  }
  CHECK(pairs > 10000);
}

TEST_CASE("geodesic witnesses are paths of the stated length") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 2000; ++i) {
    const auto a = random_slope(rng, 500), b = random_slope(rng, 500);
    const auto path = farey_geodesic(a, b);
    REQUIRE(path.geodesic.size() == static_cast<std::size_t>(path.distance) + 1);
    CHECK(path.geodesic.front() == a);
    CHECK(path.geodesic.back() == b);
    for (std::size_t k = 0; k + 1 < path.geodesic.size(); ++k) CHECK(adjacent(path.geodesic[k], path.geodesic[k + 1]));
    CHECK(farey_distance(b, a) == path.distance);
  }
}

TEST_CASE("large partial quotients stay fast and exact") {
  CHECK(farey_distance(Slope::infinity(), Slope{1, 1000000007}) == 2);
  CHECK(farey_distance(Slope::infinity(), Slope{1000000006, 1000000007}) == 2);
  // Fibonacci ratios: every partial quotient 1
  std::int64_t a = 1, b = 1;
  for (int k = 0; k < 60; ++k) std::tie(a, b) = std::make_pair(b, a + b);
  const int d = farey_distance(Slope::infinity(), Slope::make(a, b));
  CHECK(d > 20);
  CHECK(farey_geodesic(Slope::infinity(), Slope::make(a, b)).geodesic.size() == static_cast<std::size_t>(d) + 1);
}

TEST_CASE("act") {
  const UniMatrix s{0, -1, 1, 0};
  CHECK(act(UniMatrix::identity(), Slope{5, 2}) == Slope{5, 2});
  CHECK(act(s, Slope{0, 1}) == Slope::infinity());
  CHECK(act(s, Slope{5, 2}) == Slope{-2, 5});
  std::mt19937_64 rng(11);
  for (int i = 0; i < 3000; ++i) {
    const auto m = random_matrix(rng, 12);
    const auto x = random_slope(rng, 200), y = random_slope(rng, 200);
    CHECK(intersection_number(act(m, x), act(m, y)) == intersection_number(x, y));
    CHECK(farey_distance(act(m, x), act(m, y)) == farey_distance(x, y));
  }
  for (int i = 0; i < 200; ++i) {
    const auto x = random_slope(rng, 1000);
    CHECK(act(to_infinity(x), x) == Slope::infinity());
  }
}

TEST_CASE("finite matrix subgroups") {
  const UniMatrix s{0, -1, 1, 0}, t{1, 1, 0, 1};
  CHECK(power(s, 4) == UniMatrix::identity());
  CHECK(power(s * t, 6) == UniMatrix::identity());
  CHECK(power(s * t, 3) == UniMatrix(-1, 0, 0, -1));
  CHECK(finite_subgroup("S4").order() == 4);
  CHECK(finite_subgroup("ST6").order() == 6);
  CHECK(finite_subgroup("center2").order() == 2);
  CHECK(finite_subgroup("trivial").order() == 1);
  for (const auto* name : {"S4", "ST6", "center2"}) {
    const auto h = finite_subgroup(name);
    CHECK(h.elements.front() == UniMatrix::identity());
    std::set<UniMatrix> set(h.elements.begin(), h.elements.end());
    for (const auto& x : h.elements)
      for (const auto& y : h.elements) CHECK(set.count(x * y));
  }
  CHECK_THROWS_AS(finite_subgroup("S5"), InputError);
  CHECK_THROWS_AS(generate_matrix_group("T", {t}, 20), ResourceError);
  CHECK(center_for(finite_subgroup("S4")) == FareyCenter::Edge);
  CHECK(center_for(finite_subgroup("ST6")) == FareyCenter::Triangle);
}

TEST_CASE("Farey windows") {
  const auto trivial = finite_subgroup("trivial");
  for (int depth = 0; depth <= 6; ++depth) {
    const FareyWindow edge(FareyCenter::Edge, depth, trivial);
    CHECK(edge.slopes().size() == (std::size_t{2} << depth));
    const FareyWindow tri(FareyCenter::Triangle, depth, trivial);
    CHECK(tri.slopes().size() == (std::size_t{3} << depth));
  }
  SUBCASE("window distances are Farey distances in convex windows") {
    const FareyWindow w(FareyCenter::Edge, 5, finite_subgroup("S4"));
    REQUIRE(w.convex());
    for (VertexId u = 0; u < w.graph().size(); ++u) {
      const auto row = bfs_distances(w.graph(), u);
      for (VertexId v = 0; v < w.graph().size(); ++v) CHECK(row[v] == farey_distance(w.slopes()[u], w.slopes()[v]));
    }
  }
  SUBCASE("edge window at depth k holds the slopes of Stern-Brocot depth <= k") {
    const FareyWindow w(FareyCenter::Edge, 4, trivial);
    CHECK(w.find(Slope{3, 2}));    // [1; 2]
    CHECK(w.find(Slope{-1, 4}));   // [0; 4]
    CHECK(w.find(Slope{5, 2}));        // [2; 2]
    CHECK_FALSE(w.find(Slope{7, 2}));  // [3; 2]
    CHECK_FALSE(w.find(Slope{5, 1}));
  }
  SUBCASE("closure under a group that moves the center") {
    const FareyWindow w(FareyCenter::Edge, 2, finite_subgroup("ST6"));
    CHECK(w.closure_added() > 0);
    CHECK_FALSE(w.convex());
    for (VertexId u = 0; u < w.graph().size(); ++u) {
      const auto row = bfs_distances(w.graph(), u);
      for (VertexId v = 0; v < w.graph().size(); ++v) {
        const auto d = w.valid_distance(u, v);
        if (d) CHECK(*d == row[v]);
        CHECK(row[v] >= farey_distance(w.slopes()[u], w.slopes()[v]));
      }
    }
  }
  CHECK_THROWS_AS(FareyWindow(std::vector<Slope>{Slope{0, 1}, Slope{2, 1}}, 1, trivial), InputError);
}

TEST_CASE("almost_fixed_slopes examples") {
  const auto s4 = finite_subgroup("S4");
  const FareyWindow w(FareyCenter::Edge, 4, s4);
  SUBCASE("-I acts trivially") {
    const auto center = finite_subgroup("center2");
    const auto x = almost_fixed_slopes(center, FareyWindow(FareyCenter::Edge, 4, center), 0);
    CHECK(x.members.size() == 32);
    for (int d : x.diameters) CHECK(d == 0);
  }
  SUBCASE("S swaps 0/1 and 1/0") {
    const auto zero = *w.find(Slope{0, 1});
    CHECK_FALSE(almost_fixed_slopes(s4, w, 0).contains(zero));
    const auto x = almost_fixed_slopes(s4, w, 1);
    REQUIRE(x.contains(zero));
    CHECK(x.diameters[std::find(x.members.begin(), x.members.end(), zero) - x.members.begin()] == 1);
  }
  SUBCASE("5/2 against its image -2/5") {
    const BoundedFarey oracle(10);
    const int d = oracle.distances_from(oracle.id(Slope{5, 2}))[oracle.id(Slope{-2, 5})];
    CHECK(d == 5);
    const FareyWindow deep(FareyCenter::Edge, 5, s4);
    const auto v = *deep.find(Slope{5, 2});
    CHECK_FALSE(almost_fixed_slopes(s4, deep, d - 1).contains(v));
    CHECK(almost_fixed_slopes(s4, deep, d).contains(v));
  }
  SUBCASE("agrees with the generic almost-fixed set on a convex window") {
    for (int a = 0; a <= 6; ++a) {
      const auto x = almost_fixed_slopes(s4, w, a);
      const auto y = almost_fixed_set(FareyAction(w, s4), a);
      CHECK(x.members == y.members);
      CHECK(x.diameters == y.diameters);
    }
  }
  SUBCASE("escaping orbits are counted") {
    const FareyWindow small(FareyCenter::Edge, 2, finite_subgroup("trivial"));
    const auto x = almost_fixed_slopes(finite_subgroup("ST6"), small, 10);
    CHECK(x.escaped > 0);
    CHECK(x.escaped + x.members.size() + x.over_threshold == x.scanned);
  }
}

TEST_CASE("orbit_diameter_profile") {
  for (const auto* name : {"trivial", "center2"}) {
    const auto h = finite_subgroup(name);
    const auto p = orbit_diameter_profile(h, FareyWindow(FareyCenter::Edge, 5, h), 2);
    for (const auto& row : p.rows) CHECK(row.max_diameter == 0);
  }
  const auto s4 = finite_subgroup("S4");
  const auto p = orbit_diameter_profile(s4, FareyWindow(FareyCenter::Edge, 6, s4), 2);
  REQUIRE(p.rows.size() >= 3);
  CHECK(p.rows[0].distance == 0);
  CHECK(p.rows[0].max_diameter == 1);
  for (std::size_t k = 1; k < p.rows.size(); ++k) CHECK(p.rows[k].max_diameter > p.rows[k - 1].max_diameter);
  // the a = 2 set stabilizes
  std::vector<int> diam;
  for (int depth : {4, 6, 8}) diam.push_back(orbit_diameter_profile(s4, FareyWindow(FareyCenter::Edge, depth, s4), 2).almost_fixed_diameter);
  CHECK(diam[1] == diam[2]);
}

TEST_CASE("estimate_delta on Farey windows is nondecreasing in depth") {
  const auto s4 = finite_subgroup("S4");
  Rational previous{0};
  for (int depth = 1; depth <= 5; ++depth) {
    const auto est = estimate_delta(FareyWindow(FareyCenter::Edge, depth, s4));
    CHECK(est.exhaustive);
    CHECK(est.delta >= previous);
    previous = est.delta;
  }
  CHECK(previous == Rational(1));
}

TEST_CASE("depth sweep") {
  SweepOptions opts;
  opts.exhaustive_limit = 64;
  opts.samples = 3000;
  const auto rows = depth_sweep(finite_subgroup("S4"), {3, 4, 5, 6, 7}, opts);
  REQUIRE(rows.size() == 5);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    CHECK(rows[k].delta >= rows[k - 1].delta);
    CHECK(rows[k].diameter >= rows[k - 1].diameter);
  }
  CHECK(rows[0].exhaustive);
  CHECK_FALSE(rows[4].exhaustive);
  CHECK(rows[4].threshold == 6);
  CHECK(rows[3].diameter == rows[4].diameter);
  CHECK_THROWS_AS(depth_sweep(finite_subgroup("S4"), {5, 4}), InputError);
}
