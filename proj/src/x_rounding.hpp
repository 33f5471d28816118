#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "assignment.hpp"
#include "graph.hpp"
#include "instance.hpp"
#include "rational.hpp"

namespace capkc {

// An integral answer. Hard mode uses multiplicity 1 everywhere; soft mode
// may open several copies of a vertex. `radius` counts hops in the graph of
// pairs at distance at most `threshold`.
struct Solution {
  int k = 0;
  std::map<Vertex, int> centers;
  std::vector<Vertex> assignment;  // center of every client
  int radius = 0;
  Rational threshold = 1;

  int opened() const;
};

// Independent check: counts, multiplicities, loads recomputed from the
// assignment, and hop distances in g (the threshold graph).
std::optional<std::string> find_solution_violation(const Graph& g, std::span<const long long> capacity,
                                                   CapacityMode mode, const Solution& s);

// Text format:
//   solution <k> <radius>
//   threshold <r>              (optional, defaults to 1)
//   center <v> <multiplicity>
//   assign <client> <center>
void write_solution(std::ostream& out, const Solution& s);
Solution parse_solution(std::istream& in, int vertex_count);

// Integral assignment for an integral, delta-feasible LP1 point, found as a
// max flow over client/center pairs within delta hops.
Solution round_x(const HopDistances& hops, std::span<const long long> capacity, const Assignment& a, int delta);

}  // namespace capkc
