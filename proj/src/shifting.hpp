#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "assignment.hpp"
#include "rational.hpp"

namespace capkc {

// One path of a y-flow: `amount` units of opening mass travel from
// vertices.front() (a source) to vertices.back() (a sink).
struct FlowPath {
  Rational amount;
  std::vector<Vertex> vertices;
};

struct YFlow {
  std::vector<FlowPath> paths;
  std::vector<Vertex> sources;
  std::vector<Vertex> sinks;

  // Sources and sinks taken from the path endpoints.
  static YFlow from_paths(std::vector<FlowPath> paths);
};

struct FlowArc {
  Rational flow;      // total amount crossing the arc
  Rational capacity;  // sum of L(source) * amount over paths using the arc
};

struct FlowGraph {
  std::map<std::pair<Vertex, Vertex>, FlowArc> arcs;
  std::vector<Vertex> topological_order;  // every vertex touched by the flow
};

// Ordered record of every primitive applied, enough to replay a rounding.
struct TraceEvent {
  enum class Kind { kShift, kChain, kNote } kind;
  Vertex from = -1;
  Vertex to = -1;
  Rational amount;
  YFlow flow;
  std::string note;
};

struct Trace {
  std::vector<TraceEvent> events;
  void note(std::string text) { events.push_back({TraceEvent::Kind::kNote, -1, -1, 0, {}, std::move(text)}); }
};

// Shared arguments of the rounding primitives. `after_primitive`, when set,
// runs after every shift or chain shift (used to check invariants).
struct ShiftContext {
  std::span<const long long> capacity;
  Trace* trace = nullptr;
  std::function<void(const Assignment&, const std::string&)> after_primitive;
};

// Moves alpha units of opening from a to b together with the same fraction
// of a's clients. Requires a != b, L(a) <= L(b), 0 < alpha <= y_a and, in
// hard mode, alpha <= 1 - y_b. Violations throw InvariantViolation.
void shift(Assignment& a, const ShiftContext& ctx, Vertex from, Vertex to, Rational alpha);

// Sorts the group by capacity (ties by id) and repeatedly shifts from the
// first fractional member to the last one until at most one member is
// fractional.
void group_shift(Assignment& a, const ShiftContext& ctx, std::span<const Vertex> group);

// Checks every clause of the y-flow definition; throws InvariantViolation
// naming the first violated clause.
void validate_yflow(const YFlow& flow, const Assignment& a, std::span<const long long> capacity);

// Arc flows and capacities of a y-flow; throws InvariantViolation if the
// flow graph has a cycle.
FlowGraph build_flow_graph(const YFlow& flow, std::span<const long long> capacity);

// Applies a validated acyclic y-flow in one step: each arc (u, w) moves the
// fraction cap(u, w) / (L(u) y_u) of u's original clients to w, then sources
// lose and sinks gain their flow totals.
void chain_shift(Assignment& a, const ShiftContext& ctx, const YFlow& flow);

// Text form of a trace:
//   shift <from> <to> <amount>
//   chain <path count>
//   path <amount> <v1> ... <vt>
//   note <text>
void write_trace(std::ostream& out, const Trace& trace);
Trace read_trace(std::istream& in);
void replay(Assignment& a, std::span<const long long> capacity, const Trace& trace);

}  // namespace capkc
