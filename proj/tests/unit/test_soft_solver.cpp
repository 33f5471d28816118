#include "doctest.h"
#include "errors.hpp"
#include "exact_oracle.hpp"
#include "fixtures.hpp"
#include "generators.hpp"
#include "lp.hpp"
#include "pipeline.hpp"
#include "soft_solver.hpp"

using namespace capkc;
using fixtures::make_graph;

namespace {

Graph path(int n) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return make_graph(n, edges);
}

void check_independent_set(const Graph& g, const std::vector<Vertex>& s) {
  HopDistances hops(g);
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j) CHECK_FALSE(hops.within(s[i], s[j], 2));
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    bool near = false;
    for (Vertex u : s) near = near || hops.within(u, v, 2);
    CHECK(near);
  }
  // Connected through steps of at most three hops.
  std::vector<Vertex> reached{s.front()};
  std::vector<char> seen(g.vertex_count(), 0);
  seen[s.front()] = 1;
  for (std::size_t i = 0; i < reached.size(); ++i)
    for (Vertex u : s)
      if (!seen[u] && hops.within(reached[i], u, 3)) {
        seen[u] = 1;
        reached.push_back(u);
      }
  CHECK(reached.size() == s.size());
}

std::optional<SoftRounding> soft_round(const Graph& g, const std::vector<long long>& cap, int k) {
  auto lp = solve_feasibility(build_lp1(g, cap, k, CapacityMode::kSoft));
  if (lp.status != LPStatus::kFeasible) return std::nullopt;
  return solve_soft(g, HopDistances(g), cap, lp.point);
}

}  // namespace

TEST_SUITE("soft_solver") {
  TEST_CASE("independent set on small graphs") {
    Graph one(1);
    CHECK(ks_independent_set(one, HopDistances(one)) == std::vector<Vertex>{0});
    Graph p5 = path(5);
    auto s = ks_independent_set(p5, HopDistances(p5));
    CHECK(s == std::vector<Vertex>{0, 3});
    check_independent_set(p5, s);
    Graph split(2);
    CHECK_THROWS_AS(ks_independent_set(split, HopDistances(split)), InvariantViolation);
  }

  TEST_CASE("independent set properties on random graphs") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Graph g = gen_random_connected(5 + static_cast<int>(seed % 30), 0.03, 1, 1, 1, CapacityMode::kSoft, seed)
                    .unit_graph();
      check_independent_set(g, ks_independent_set(g, HopDistances(g)));
    }
  }

  TEST_CASE("one center for a star") {
    Graph star = make_graph(4, {{0, 1}, {0, 2}, {0, 3}});
    std::vector<long long> cap(4, 4);
    auto r = soft_round(star, cap, 1);
    REQUIRE(r);
    CHECK(r->solution.opened() == 1);
    CHECK(r->solution.radius <= 1);
    CHECK_FALSE(find_solution_violation(star, cap, CapacityMode::kSoft, r->solution));
  }

  TEST_CASE("path of nine against the oracle") {
    Graph g = path(9);
    std::vector<long long> cap(9, 3);
    auto r = soft_round(g, cap, 3);
    REQUIRE(r);
    CHECK(r->solution.radius <= 11);
    CHECK_FALSE(find_solution_violation(g, cap, CapacityMode::kSoft, r->solution));
    std::vector<WeightedEdge> edges;
    for (auto [u, v] : g.edges()) edges.push_back({u, v, Rational(1)});
    Instance inst(9, cap, 3, CapacityMode::kSoft, edges);
    auto opt = exact_opt(inst, CapacityMode::kSoft);
    REQUIRE(opt.feasible);
    CHECK(opt.radius == 1);
    CHECK(Rational(r->solution.radius) <= 11 * opt.radius);
  }

  TEST_CASE("random soft instances stay within eleven hops") {
    int solved = 0;
    for (std::uint64_t seed = 0; seed < 120; ++seed) {
      int n = 4 + static_cast<int>(seed % 27);
      Instance inst = gen_random_connected(n, 0.05, 0, 4, 1, CapacityMode::kSoft, 500 + seed);
      Graph g = inst.unit_graph();
      std::vector<long long> cap(inst.capacities().begin(), inst.capacities().end());
      for (int k = 1; k <= n; ++k) {
        auto r = soft_round(g, cap, k);
        if (!r) continue;
        ++solved;
        CHECK(r->solution.opened() == k);
        CHECK(r->solution.radius <= 11);
        CHECK(r->independent_set.size() <= static_cast<std::size_t>(k));
        long long units = 0;
        for (const auto& [s, u] : r->units) units += u;
        CHECK(units == k);
        CHECK_FALSE(find_solution_violation(g, cap, CapacityMode::kSoft, r->solution));
        break;
      }
    }
    CHECK(solved > 100);
  }
}
