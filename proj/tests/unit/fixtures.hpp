#pragma once

#include <random>
#include <utility>
#include <vector>

#include "assignment.hpp"
#include "caterpillar.hpp"
#include "graph.hpp"
#include "instance.hpp"
#include "shifting.hpp"

namespace capkc::fixtures {

Rational q(const char* text);
Graph make_graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges);
Instance unit_instance(int n, const std::vector<std::pair<Vertex, Vertex>>& edges, std::vector<long long> capacity,
                       int k, CapacityMode mode = CapacityMode::kHard);

// Two sources, two fully opened relays and three sinks, plus a client w of
// s2 so that moving s2's clients is visible.
struct ChainCase {
  enum : Vertex { s1, s2, a, b, t1, t2, t3, w, count };
  Graph g;
  std::vector<long long> capacity;
  Assignment start;
  YFlow flow;
};
ChainCase chain_case();
// Post-state derived by hand from the arc rule.
Assignment chain_case_expected();

// Straightforward rendition of the arc rule, used as an oracle: every arc
// (u, w) moves cap(u, w) / (L(u) y_u) of each original client of u to w;
// sources lose and sinks gain their totals.
Assignment reference_chain_shift(const Assignment& a, std::span<const long long> capacity, const YFlow& flow);

// Caterpillars laid out as a path v_1..v_p (ids 0..p-1) with each leaf
// attached to its anchor, served by the spine so the point is 1-feasible.
struct CaterpillarCase {
  Graph g;
  std::vector<long long> capacity;
  Assignment a;
  Caterpillar c;
  int k = 0;
};
CaterpillarCase caterpillar_case(const std::vector<long long>& spine_capacity,
                                 const std::vector<std::pair<long long, const char*>>& leaves);  // per position, L 0 = nil
CaterpillarCase separable_case();     // spine L (3,2,10,10,3,10,10)
CaterpillarCase dangerous_case();     // spine L (10,10,2,10,2,10,10)

// Random LP-feasible point together with a valid acyclic y-flow on it.
struct RandomFlowCase {
  std::vector<long long> capacity;
  Assignment a;
  YFlow flow;
  int k = 0;
};
RandomFlowCase random_flow_case(std::mt19937_64& rng);

}  // namespace capkc::fixtures
