#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "coreent/entropy.hpp"
#include "coreent/errors.hpp"
#include "coreent/hubbard_tree.hpp"
#include "coreent/itinerary.hpp"
#include "coreent/lamination.hpp"
#include "oracles.hpp"

using namespace coreent;

namespace {

Angle A(std::int64_t n, std::int64_t d) { return Angle::make(n, d); }
MarkedClass C(std::initializer_list<Angle> a) { return MarkedClass{std::vector<Angle>(a)}; }

std::size_t max_degree(const HubbardTree& t) {
  std::size_t m = 0;
  for (const auto& nb : t.adjacency()) m = std::max(m, nb.size());
  return m;
}

void check_structure(const HubbardTree& t) {
  const std::size_t n = t.vertices.size();
  REQUIRE(t.edges.size() + 1 == n);
  // connected: every vertex reachable from 0
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  const auto adj = t.adjacency();
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto w : adj[v]) {
      if (seen[w]) continue;
      seen[w] = true;
      stack.push_back(w);
    }
  }
  for (bool s : seen) REQUIRE(s);
  REQUIRE(t.vertex_map.size() == n);
  for (std::size_t v = 0; v < n; ++v) {
    REQUIRE(t.vertex_map[v] < n);
    if (t.vertices[v].steiner) {
      REQUIRE(adj[v].size() >= 3);
      REQUIRE(t.vertices[v].cls.angles.empty());
    }
  }
  for (const auto& [u, v] : t.edges) REQUIRE(u < v);
  REQUIRE(std::is_sorted(t.edges.begin(), t.edges.end()));
  REQUIRE(betweenness_consistent(t));
}

bool is_path(const HubbardTree& t) { return max_degree(t) <= 2; }

}  // namespace

TEST_CASE("postcritical classes") {
  const auto c2 = postcritical_classes(A(1, 2));
  REQUIRE(c2.size() == 3);
  CHECK(c2[0] == C({A(0, 1)}));
  CHECK(c2[1] == C({A(1, 4), A(3, 4)}));
  CHECK(c2[2] == C({A(1, 2)}));
  CHECK(c2[1].str() == "{1/4, 3/4}");

  const auto c6 = postcritical_classes(A(1, 6));
  REQUIRE(c6.size() == 4);
  CHECK(c6[0] == C({A(1, 12), A(7, 12)}));
  CHECK(c6[1] == C({A(1, 6)}));

  // the airplane orbit classes pair up; the critical class absorbs two of them
  for (const auto& c : postcritical_classes(A(3, 7))) CHECK(c.angles.size() >= 2);

  CHECK_THROWS_AS(postcritical_classes(A(0, 1)), InvalidInput);
}

TEST_CASE("betweenness") {
  const auto half = C({A(1, 2)}), diam = C({A(1, 4), A(3, 4)}), zero = C({A(0, 1)});
  CHECK(betweenness(half, diam, zero));
  CHECK_FALSE(betweenness(half, zero, diam));
  CHECK_THROWS_AS(betweenness(half, half, zero), PreconditionError);
  CHECK_THROWS_AS(betweenness(C({A(0, 1), A(1, 2)}), diam, zero), InvariantViolation);
}

TEST_CASE("tree for 1/2 is the real interval") {
  const auto t = build_tree(A(1, 2));
  check_structure(t);
  REQUIRE(t.vertices.size() == 3);
  const auto vh = *t.vertex_of(A(1, 2)), v0 = *t.vertex_of(A(0, 1)), vc = *t.vertex_of(A(1, 4));
  CHECK(t.marked_critical == vc);
  CHECK(t.path(vh, v0) == std::vector<std::size_t>{vh, vc, v0});
  CHECK(t.vertex_map[vc] == vh);
  CHECK(t.vertex_map[vh] == v0);
  CHECK(t.vertex_map[v0] == v0);
  const auto m = edge_markov(t);
  CHECK(m.dense() == std::vector<std::vector<std::uint64_t>>{{1, 1}, {1, 1}});
  const auto r = tree_entropy(A(1, 2));
  CHECK(r.h == doctest::Approx(std::log(2.0)).epsilon(1e-9));
  CHECK(r.method == EntropyMethod::Tree);
  CHECK_FALSE(t.vertex_of(A(1, 3)).has_value());
  CHECK_THROWS_AS(t.edge_index(vh, v0), InvalidInput);
}

TEST_CASE("tree for 1/6 branches") {
  const auto t = build_tree(A(1, 6));
  check_structure(t);
  CHECK(t.edges.size() >= 3);
  CHECK(max_degree(t) >= 3);
  CHECK(t.adjacency()[*t.vertex_of(A(1, 6))].size() == 1);
  const double lambda = oracle::bisect([](double x) { return x * x * x - x - 2.0; }, 1.0, 2.0);
  CHECK(tree_entropy(A(1, 6)).rho == doctest::Approx(lambda).epsilon(1e-9));
}

TEST_CASE("airplane tree is a path") {
  const auto t = build_tree(A(3, 7));
  check_structure(t);
  CHECK(is_path(t));
  CHECK(tree_entropy(A(3, 7)).rho == doctest::Approx(oracle::golden()).epsilon(1e-9));
  CHECK(tree_entropy(A(1, 7)).h == 0.0);
}

TEST_CASE("graphviz output") {
  const auto dot = to_dot(build_tree(A(1, 2)));
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("{1/4, 3/4}") != std::string::npos);
  CHECK(dot.find("dir=none") != std::string::npos);
}

TEST_CASE("primitive bound") {
  CHECK(primitive_bound_check(root_pair(A(3, 7))));
  CHECK_THROWS_AS(primitive_bound_check(root_pair(A(1, 3))), PreconditionError);
  for (const auto& r : roots_of_period(4))
    if (!r.satellite) CHECK(primitive_bound_check(r));
}

TEST_CASE("horseshoes") {
  const auto w = find_horseshoe(root_pair(A(3, 7)), 6);
  REQUIRE(w.has_value());
  CHECK(w->k <= 3);
  CHECK(w->split > 0);
  CHECK(w->split + 1 < w->path.size());
  CHECK_FALSE(w->str(build_tree(A(3, 7))).empty());
  CHECK_THROWS_AS(find_horseshoe(root_pair(A(1, 3)), 4), PreconditionError);
  CHECK_THROWS_AS(find_horseshoe(root_pair(A(3, 7)), 2), PreconditionError);
  CHECK_FALSE(find_horseshoe(build_tree(A(1, 7)), 6).has_value());
}

TEST_CASE("cardioid satellites have entropy zero") {
  for (std::size_t p = 2; p <= 8; ++p)
    for (const auto& r : roots_of_period(p)) {
      if (!is_cardioid_satellite(r)) continue;
      const auto e = tree_entropy(r.minus);
      CHECK(e.rho == doctest::Approx(1.0));
      CHECK(e.h == 0.0);
    }
}

TEST_CASE("property: structure, real slice and critical-value endpoint") {
  std::vector<Angle> angles;
  for (std::uint64_t p = 2; p <= 8; ++p) {
    const std::uint64_t d = (std::uint64_t{1} << p) - 1;
    for (std::uint64_t k = 1; k < d; ++k) angles.push_back(Angle::from_unsigned(k, d));
  }
  for (std::uint64_t d = 4; d <= 60; d += 2)
    for (std::uint64_t k = 1; k < d; ++k)
      if (std::gcd(k, d) == 1) angles.push_back(Angle::from_unsigned(k, d));
  std::size_t paths = 0;
  for (const auto& t : angles) {
    INFO(t.str());
    const auto tree = build_tree(t);
    check_structure(tree);
    const auto c = companion(t);
    const Angle mirror = Angle::from_unsigned(t.den() - t.num(), t.den());
    if (c && *c == mirror) {
      REQUIRE(is_path(tree));
      ++paths;
    }
    const std::size_t cls_size = value_class(t).size();
    if (cls_size <= 2 && tree.vertices.size() > 1) {
      const auto v = *tree.vertex_of(t);
      REQUIRE(tree.adjacency()[v].size() == 1);
    }
  }
  CHECK(paths > 10);
}

TEST_CASE("property: edge matrix rows follow image paths") {
  for (const auto& theta : {A(1, 6), A(3, 7), A(9, 56), A(1, 4), A(26, 63), A(5, 12)}) {
    const auto t = build_tree(theta);
    const auto m = edge_markov(t);
    for (std::size_t e = 0; e < t.edges.size(); ++e) {
      const auto [u, v] = t.edges[e];
      const auto p = t.path(t.vertex_map[u], t.vertex_map[v]);
      std::set<std::size_t> want;
      for (std::size_t i = 0; i + 1 < p.size(); ++i) want.insert(t.edge_index(p[i], p[i + 1]));
      std::set<std::size_t> got;
      for (const auto& [j, w] : m.row(e)) {
        REQUIRE(w == 1);
        got.insert(j);
      }
      REQUIRE(got == want);
    }
    CHECK(tree_entropy(theta).h == doctest::Approx(core_entropy(theta).h).epsilon(1e-9));
  }
}
