#pragma once

#include <iosfwd>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "graph.hpp"
#include "rational.hpp"

namespace capkc {

// Infeasibility certificate for uniform capacity L: a core set of vertices
// pairwise at least 3 hops apart such that |core| + |far| / L > k, where far
// holds every vertex at least 3 hops from the whole core. Every center near
// a core vertex is needed for that vertex's own neighborhood, and the far
// vertices can only be served by the remaining centers.
struct UniformWitnessCheck {
  bool spread = false;   // core pairwise >= 3 hops apart
  bool exceeds = false;  // |core| + |far|/L > k
  Rational bound;        // |core| + |far|/L
  std::vector<Vertex> far;
  bool valid() const { return spread && exceeds; }
};

UniformWitnessCheck check_uniform_witness(const HopDistances& hops, long long capacity, int k,
                                          std::span<const Vertex> core);

inline bool verify_uniform_witness(const HopDistances& hops, long long capacity, int k, std::span<const Vertex> core) {
  return check_uniform_witness(hops, capacity, k, core).valid();
}

// Greedy search for a core with a large bound. With rng, ties and the scan
// order are randomized (for fuzzing); without, vertices are scanned by id.
std::vector<Vertex> greedy_uniform_witness(const HopDistances& hops, long long capacity, std::mt19937_64* rng = nullptr);

// "witness" followed by one "v <id>" line per core vertex.
void write_uniform_witness(std::ostream& out, std::span<const Vertex> core);
std::vector<Vertex> parse_uniform_witness(std::istream& in, int vertex_count);

}  // namespace capkc
