#pragma once

#include <algorithm>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "assignment.hpp"
#include "graph.hpp"
#include "rational.hpp"
#include "shifting.hpp"

namespace capkc {

// A spine v_1..v_p of fully opened vertices and leaves v'_0..v'_{p+1}. Leaf
// v'_i (1 <= i <= p) hangs off v_i; v'_0 and v'_{p+1} hang off the ends.
// Positions in the public API are 1-based for the spine, 0-based for leaves.
struct Caterpillar {
  int delta = 0;
  std::vector<Vertex> spine;
  std::vector<std::optional<Vertex>> leaves;  // size spine.size() + 2

  int length() const { return static_cast<int>(spine.size()); }
  Vertex v(int i) const { return spine[i - 1]; }
  const std::optional<Vertex>& leaf(int i) const { return leaves[i]; }
  // Spine vertex a leaf position hangs off.
  Vertex anchor(int i) const { return spine[std::clamp(i, 1, length()) - 1]; }
  bool has_leaves() const;
  std::vector<Vertex> vertices() const;
  Caterpillar reversed() const;
};

std::string describe(const Caterpillar& c);

// First violated structural condition (spine opened and chained within
// delta, leaves fractional, lighter than their spine vertex, within delta,
// distinct, integral total), or nullopt.
std::optional<std::string> find_caterpillar_violation(const Caterpillar& c, const Assignment& a,
                                                      const HopDistances& hops, std::span<const long long> capacity);

// Some vertex outside every structure with fractional y, or nullopt.
std::optional<std::string> find_fractional_outside(std::span<const Caterpillar> structures, const Assignment& a);

// 1-based indices i of spine vertices with a strictly heavier leaf on both
// sides (positions < i and > i).
std::vector<int> dangerous_spine(const Caterpillar& c, std::span<const long long> capacity);
inline bool is_safe(const Caterpillar& c, std::span<const long long> capacity) {
  return dangerous_spine(c, capacity).empty();
}

enum class Side { kRight, kLeft };

struct SeparabilityWitness {
  int index;
  Side side;
  Rational deficit_room;  // sum of 1 - y over heavier leaves on that side
  Rational side_mass;     // sum of y over all leaves on that side
};

// Among the lightest dangerous spine vertices, the first by index whose
// right side (preferred) or left side has enough room among heavier leaves
// to round the side mass up to an integer.
std::optional<SeparabilityWitness> separability_witness(const Caterpillar& c, const Assignment& a,
                                                        std::span<const long long> capacity);

struct CaterpillarBuild {
  Caterpillar caterpillar;
  std::vector<Vertex> independent_set;  // greedy centers, pairwise > 2 hops apart
  std::vector<Vertex> hubs;             // heaviest vertex next to each center
};

// From a 1-feasible assignment on connected g: opens one hub per greedy
// center, rounds each hub's neighborhood to a single fractional vertex and
// orders the hubs along a path whose steps stay within 21 hops. The result
// is 5-feasible and a 21-caterpillar.
CaterpillarBuild build_caterpillar(Assignment& a, const Graph& g, const HopDistances& hops, const ShiftContext& ctx);

// Splits a caterpillar until no piece is separable.
std::vector<Caterpillar> separate(const Caterpillar& c, Assignment& a, const ShiftContext& ctx);

// Removes dangerous spine vertices from a non-separable caterpillar; doubles
// delta on every removal. At most two removals are ever needed.
std::vector<Caterpillar> make_safe(const Caterpillar& c, Assignment& a, const ShiftContext& ctx);

// y-flow on a safe caterpillar after which every leaf is integral: each leaf
// is a source that empties or a sink that fills.
YFlow build_rounding_flow(const Caterpillar& c, const Assignment& a, std::span<const long long> capacity);

struct StageReport {
  std::string name;
  int delta = 0;            // global delta after the stage
  int retained_radius = -1; // max radius over vertices kept in structures
  std::size_t structures = 0;
};

struct RoundingReport {
  std::vector<StageReport> stages;
  int final_delta = 0;
};

struct RoundingOptions {
  // Re-check LP1 rows after every primitive (slow; used by tests).
  bool check_each_primitive = false;
};

// Turns a 1-feasible LP1 point on connected g into an integral one. Stage
// bounds proven for the method are asserted along the way (InvariantViolation
// on failure).
RoundingReport round_y(Assignment& a, const Graph& g, const HopDistances& hops, std::span<const long long> capacity,
                       Trace* trace = nullptr, const RoundingOptions& options = {});

}  // namespace capkc
