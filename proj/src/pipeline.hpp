#pragma once

#include <optional>
#include <string>
#include <vector>

#include "caterpillar.hpp"
#include "exact_oracle.hpp"
#include "instance.hpp"
#include "lp.hpp"
#include "shifting.hpp"
#include "x_rounding.hpp"

namespace capkc {

enum class SolveMode { kHard, kSoft, kExact };

struct ComponentReport {
  std::vector<Vertex> vertices;  // global ids, sorted
  int k = 0;                     // smallest LP-feasible number of centers
  int stretch = 0;               // hop radius certified for this component
  RoundingReport rounding;       // hard mode only
};

struct SolveReport {
  bool solved = false;
  Rational threshold;       // metric radius the solution was built at
  Rational lower_bound;     // smallest swept radius passing the LP test; OPT >= it
  bool has_lower_bound = false;
  int hop_radius = 0;       // achieved radius in hops of the threshold graph
  Rational achieved_radius; // achieved radius in the instance metric
  int stretch = 0;          // largest certified hop radius over components
  Solution solution;
  std::vector<ComponentReport> components;
  Trace certificate;        // primitive trail in global vertex ids
  std::string failure;      // why the last radius failed, when unsolved
  std::optional<LPModel> lp;  // LP1 of the whole threshold graph at the last radius tried
};

struct SolveOptions {
  RoundingOptions rounding;
  // Fail with InvariantViolation when the certified stretch exceeds this (0 = off).
  int max_stretch = 0;
};

// Sweeps {0} + candidate_radii ascending. At each radius every component of
// the threshold graph gets the smallest k_i whose LP1 is feasible (found by
// binary search) and is rounded; the sweep stops at the first radius where
// the k_i sum to at most k. Spare centers are padded onto positive-capacity
// vertices. Exact mode delegates to exact_opt.
SolveReport solve_instance(const Instance& inst, SolveMode mode, const SolveOptions& options = {});

// Hard or soft rounding of one connected threshold graph with a given k
// whose LP1 is feasible; used by solve_instance and exposed for tests.
struct ComponentSolution {
  Solution solution;  // local ids
  RoundingReport rounding;
  Trace trace;
  int stretch = 0;
};
ComponentSolution round_component(const Graph& g, std::span<const long long> capacity, int k, CapacityMode mode,
                                  const RoundingOptions& options = {});

// Metric radius max_v d(v, center(v)); Solution must be complete.
Rational metric_radius(const Instance& inst, const Solution& s);

void write_report(std::ostream& out, const SolveReport& r);

}  // namespace capkc
