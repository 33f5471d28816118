#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "assignment.hpp"
#include "graph.hpp"
#include "instance.hpp"
#include "rational.hpp"

namespace capkc {

enum class Sense { kLessEqual, kEqual };

struct LinearTerm {
  int var;
  Rational coef;
};

struct Constraint {
  std::string name;
  std::vector<LinearTerm> terms;
  Sense sense;
  Rational rhs;
};

struct LPVariable {
  enum class Kind { kY, kX } kind;
  Vertex u;
  Vertex v;  // client for x variables, equal to u for y variables
  std::string name;
};

// LP1 restricted to a graph G: opening variables y_u for every vertex with
// positive capacity (zero-capacity vertices are fixed to y = 0 and carry no
// variables), assignment variables x(u, v) for u == v or uv an edge, and the
// rows
//   sum y = k, x(u,v) <= y_u, sum_v x(u,v) <= L(u) y_u, sum_u x(u,v) = 1,
//   y_u <= 1 (hard mode only).
// Non-negativity is implicit.
struct LPModel {
  int vertex_count = 0;
  int k = 0;
  CapacityMode mode = CapacityMode::kHard;
  std::vector<LPVariable> variables;
  std::vector<Constraint> constraints;
  std::vector<int> y_var;  // per vertex, -1 when fixed to zero
};

LPModel build_lp1(const Graph& g, std::span<const long long> capacity, int k, CapacityMode mode);

enum class LPStatus { kFeasible, kInfeasible };

struct FeasibilityResult {
  LPStatus status = LPStatus::kInfeasible;
  Assignment point;            // a basic feasible point when feasible
  Rational infeasibility = 0;  // certified positive lower bound on the artificial total
  long pivots = 0;
  bool exact_fallback = false;  // the rational simplex had to decide
};

// Phase-1 simplex. A floating-point run picks a basis whose exact rational
// solution (or dual certificate of infeasibility) is then checked; if that
// check fails the exact rational simplex decides.
FeasibilityResult solve_feasibility(const LPModel& model);

// First violated LP1 row for `a` on graph distances `hops`, or nullopt.
// delta < 0 skips the distance row; otherwise x(u, v) > 0 must have
// hop distance <= delta.
std::optional<std::string> find_lp1_violation(const HopDistances& hops, std::span<const long long> capacity, int k,
                                              const Assignment& a, int delta);

inline bool verify_assignment_feasible(const HopDistances& hops, std::span<const long long> capacity, int k,
                                       const Assignment& a, int delta) {
  return !find_lp1_violation(hops, capacity, k, a, delta).has_value();
}

// CPLEX LP text format.
void write_lp(std::ostream& out, const LPModel& model, const std::string& title = "capkc_lp1");

}  // namespace capkc
