#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "assignment.hpp"
#include "instance.hpp"
#include "x_rounding.hpp"

namespace capkc {

// Two disjoint gadgets, each an adjacent pair a, b with four common
// neighbors; uniform capacity 4 and k = 3. LP1 is feasible at one hop but no
// three centers cover both gadgets at any radius.
struct Fig1Instance {
  Instance instance;
  Assignment witness;  // y_a = y_b = 3/4, x(a, v) = x(b, v) = 1/2 inside each gadget
};
Fig1Instance gen_fig1();

struct GapLayout {
  Vertex root = 0;
  std::vector<Vertex> a, b, x, leaf;
  std::vector<std::vector<Vertex>> middles;  // the L + 2 common neighbors of a_i, b_i
};

// Instance where the LP at one hop is feasible although every integral
// solution needs radius larger than 4 hops. k >= 24, L = k - 1. The
// non-uniform variant zeroes every capacity except the root and the a_i, b_i.
struct GapInstance {
  Instance instance;
  Assignment witness;
  GapLayout layout;
};
GapInstance gen_gap_construction(int k, bool nonuniform);

// N_{G^4}[B_i] = V(G_i) + {x_i, leaf_i, root} for every gadget i.
bool gap_neighborhood_check(const Graph& g, const GapLayout& layout);

struct X3CLayout {
  int universe = 0;
  std::vector<std::array<int, 3>> sets;
  std::vector<Vertex> set_vertex;                    // S
  std::vector<Vertex> guard;                         // x_S, adjacent to S and its pendants
  std::vector<std::vector<Vertex>> element_copies;   // [copy][element]
  std::vector<std::vector<Vertex>> pendants;         // per set
};

// Reduction from exact cover by 3-sets: a YES instance has a radius-1
// solution, a NO instance has none below radius 3.
struct X3CInstance {
  Instance instance;
  X3CLayout layout;
};
X3CInstance gen_x3c(const std::vector<std::array<int, 3>>& sets, int universe_size);

// Sets chosen by a solution of radius < 3 (those whose set vertex and guard
// together carry two or more centers), if they form an exact cover.
std::optional<std::vector<int>> decode_x3c_cover(const X3CLayout& layout, const Solution& s);

// Random spanning tree plus independent extra edges with probability
// `density`; capacities uniform in [cap_lo, cap_hi]; unit weights.
Instance gen_random_connected(int n, double density, long long cap_lo, long long cap_hi, int k, CapacityMode mode,
                              std::uint64_t seed);

}  // namespace capkc
