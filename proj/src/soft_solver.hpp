#pragma once

#include <map>
#include <span>
#include <vector>

#include "assignment.hpp"
#include "graph.hpp"
#include "x_rounding.hpp"

namespace capkc {

// Maximal set of vertices pairwise more than 2 hops apart whose members are
// connected through steps of exactly 3 hops. Grown from the lowest id by
// repeatedly adding the lowest-id vertex at distance exactly 3 from the set.
std::vector<Vertex> ks_independent_set(const Graph& g, const HopDistances& hops);

struct SoftRounding {
  Solution solution;
  std::vector<Vertex> independent_set;
  std::map<Vertex, long long> units;     // integral opening collected at each set member
  std::map<Vertex, Vertex> relocated_to; // set member -> heaviest vertex within 6 hops
};

// Rounds a 1-feasible soft-capacity LP1 point on connected g into a
// multiset of k centers whose clients all lie within 11 hops.
SoftRounding solve_soft(const Graph& g, const HopDistances& hops, std::span<const long long> capacity,
                        const Assignment& a);

}  // namespace capkc
