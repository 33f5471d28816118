#include "shifting.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace capkc {

YFlow YFlow::from_paths(std::vector<FlowPath> paths) {
  YFlow f;
  std::set<Vertex> s, t;
  for (const auto& p : paths) {
    if (p.vertices.empty()) continue;
    s.insert(p.vertices.front());
    t.insert(p.vertices.back());
  }
  f.paths = std::move(paths);
  f.sources.assign(s.begin(), s.end());
  f.sinks.assign(t.begin(), t.end());
  return f;
}

namespace {

std::string vtx(Vertex v) { return std::to_string(v); }

void record_shift(const ShiftContext& ctx, Vertex from, Vertex to, const Rational& alpha) {
  if (ctx.trace) ctx.trace->events.push_back({TraceEvent::Kind::kShift, from, to, alpha, {}, {}});
}

}  // namespace

void shift(Assignment& a, const ShiftContext& ctx, Vertex from, Vertex to, Rational alpha) {
  if (from == to) throw InvariantViolation("shift from " + vtx(from) + " to itself");
  if (ctx.capacity[from] > ctx.capacity[to])
    throw InvariantViolation("shift " + vtx(from) + " -> " + vtx(to) + " moves to a smaller capacity");
  if (alpha <= 0) throw InvariantViolation("shift " + vtx(from) + " -> " + vtx(to) + " with non-positive amount");
  if (alpha > a.y(from))
    throw InvariantViolation("shift " + vtx(from) + " -> " + vtx(to) + " moves " + to_string(alpha) + " > y = " +
                             to_string(a.y(from)));
  if (a.mode() == CapacityMode::kHard && alpha > 1 - a.y(to))
    throw InvariantViolation("shift " + vtx(from) + " -> " + vtx(to) + " overfills the target");

  Rational eps = alpha / a.y(from);
  for (const auto& [client, value] : a.served_by(from)) {
    Rational moved = eps * value;
    a.add_x(from, client, -moved);
    a.add_x(to, client, moved);
  }
  a.set_y(from, a.y(from) - alpha);
  a.set_y(to, a.y(to) + alpha);
  record_shift(ctx, from, to, alpha);
  if (ctx.after_primitive) ctx.after_primitive(a, "shift " + vtx(from) + " -> " + vtx(to));
}

void group_shift(Assignment& a, const ShiftContext& ctx, std::span<const Vertex> group) {
  std::vector<Vertex> order(group.begin(), group.end());
  std::sort(order.begin(), order.end(), [&](Vertex p, Vertex q) {
    return ctx.capacity[p] != ctx.capacity[q] ? ctx.capacity[p] < ctx.capacity[q] : p < q;
  });
  auto fractional = [&](Vertex v) { return !is_integral(a.y(v)); };
  for (;;) {
    auto lo = std::find_if(order.begin(), order.end(), fractional);
    auto hi = std::find_if(order.rbegin(), order.rend(), fractional);
    if (lo == order.end() || *lo == *hi) return;
    Vertex from = *lo, to = *hi;
    Rational alpha = std::min(a.y(from), Rational(1 - a.y(to)));
    shift(a, ctx, from, to, alpha);
  }
}

void validate_yflow(const YFlow& flow, const Assignment& a, std::span<const long long> capacity) {
  std::set<Vertex> sources(flow.sources.begin(), flow.sources.end());
  std::set<Vertex> sinks(flow.sinks.begin(), flow.sinks.end());
  for (Vertex s : sources)
    if (sinks.count(s)) throw InvariantViolation("vertex " + vtx(s) + " is both a source and a sink");

  std::map<Vertex, Rational> out, in, through;
  for (std::size_t i = 0; i < flow.paths.size(); ++i) {
    const auto& p = flow.paths[i];
    std::string where = "path " + std::to_string(i);
    if (p.vertices.size() < 2) throw InvariantViolation(where + " has fewer than two vertices");
    if (p.amount <= 0) throw InvariantViolation(where + " carries a non-positive amount");
    Vertex s = p.vertices.front(), t = p.vertices.back();
    if (!sources.count(s)) throw InvariantViolation(where + " starts at " + vtx(s) + ", not a source");
    if (!sinks.count(t)) throw InvariantViolation(where + " ends at " + vtx(t) + ", not a sink");
    if (capacity[s] > capacity[t])
      throw InvariantViolation(where + " goes from capacity " + std::to_string(capacity[s]) + " down to " +
                               std::to_string(capacity[t]));
    for (std::size_t j = 1; j + 1 < p.vertices.size(); ++j) {
      Vertex w = p.vertices[j];
      if (sources.count(w) || sinks.count(w))
        throw InvariantViolation(where + " passes through terminal " + vtx(w));
      if (a.y(w) != 1) throw InvariantViolation(where + " passes through " + vtx(w) + " with y != 1");
      if (capacity[w] < capacity[s])
        throw InvariantViolation(where + " passes through " + vtx(w) + " whose capacity is below the source " + vtx(s));
      through[w] += p.amount;
    }
    out[s] += p.amount;
    in[t] += p.amount;
  }
  for (const auto& [s, total] : out)
    if (total > a.y(s)) throw InvariantViolation("source " + vtx(s) + " sends more than its y");
  for (const auto& [t, total] : in)
    if (a.mode() == CapacityMode::kHard && total > 1 - a.y(t))
      throw InvariantViolation("sink " + vtx(t) + " receives more than 1 - y");
  for (const auto& [w, total] : through)
    if (total > 1) throw InvariantViolation("more than one unit passes through " + vtx(w));
}

FlowGraph build_flow_graph(const YFlow& flow, std::span<const long long> capacity) {
  FlowGraph g;
  std::set<Vertex> touched;
  for (const auto& p : flow.paths) {
    Rational weight = rational_of(capacity[p.vertices.front()]) * p.amount;
    for (std::size_t j = 0; j + 1 < p.vertices.size(); ++j) {
      auto& arc = g.arcs[{p.vertices[j], p.vertices[j + 1]}];
      arc.flow += p.amount;
      arc.capacity += weight;
    }
    touched.insert(p.vertices.begin(), p.vertices.end());
  }
  std::map<Vertex, int> indegree;
  std::map<Vertex, std::vector<Vertex>> succ;
  for (Vertex v : touched) indegree[v] = 0;
  for (const auto& [key, arc] : g.arcs) {
    if (key.first == key.second) throw InvariantViolation("flow graph has a loop at " + vtx(key.first));
    succ[key.first].push_back(key.second);
    ++indegree[key.second];
  }
  std::set<Vertex> ready;
  for (const auto& [v, d] : indegree)
    if (d == 0) ready.insert(v);
  while (!ready.empty()) {
    Vertex v = *ready.begin();
    ready.erase(ready.begin());
    g.topological_order.push_back(v);
    for (Vertex w : succ[v])
      if (--indegree[w] == 0) ready.insert(w);
  }
  if (g.topological_order.size() != touched.size()) throw InvariantViolation("y-flow graph has a cycle");
  return g;
}

void chain_shift(Assignment& a, const ShiftContext& ctx, const YFlow& flow) {
  validate_yflow(flow, a, ctx.capacity);
  FlowGraph g = build_flow_graph(flow, ctx.capacity);

  std::map<Vertex, std::size_t> position;
  for (std::size_t i = 0; i < g.topological_order.size(); ++i) position[g.topological_order[i]] = i;
  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (const auto& [key, arc] : g.arcs) arcs.push_back(key);
  std::sort(arcs.begin(), arcs.end(), [&](const auto& p, const auto& q) {
    return position[p.first] != position[q.first] ? position[p.first] > position[q.first]
                                                   : position[p.second] > position[q.second];
  });

  // All moves are computed from the x values before the chain shift.
  std::map<std::pair<Vertex, Vertex>, Rational> delta;
  for (const auto& [u, w] : arcs) {
    Rational denom = rational_of(ctx.capacity[u]) * a.y(u);
    if (denom == 0) throw InvariantViolation("chain shift arc leaves " + vtx(u) + " with L*y = 0");
    Rational ratio = g.arcs[{u, w}].capacity / denom;
    for (const auto& [client, value] : a.served_by(u)) {
      Rational moved = value * ratio;
      delta[{w, client}] += moved;
      delta[{u, client}] -= moved;
    }
  }
  for (const auto& [key, d] : delta) a.add_x(key.first, key.second, d);

  std::map<Vertex, Rational> net;
  for (const auto& p : flow.paths) {
    net[p.vertices.front()] -= p.amount;
    net[p.vertices.back()] += p.amount;
  }
  for (const auto& [v, d] : net) a.set_y(v, a.y(v) + d);

  if (ctx.trace) ctx.trace->events.push_back({TraceEvent::Kind::kChain, -1, -1, 0, flow, {}});
  if (ctx.after_primitive) ctx.after_primitive(a, "chain shift");
}

void write_trace(std::ostream& out, const Trace& trace) {
  for (const auto& e : trace.events) {
    switch (e.kind) {
      case TraceEvent::Kind::kShift:
        out << "shift " << e.from << ' ' << e.to << ' ' << to_string(e.amount) << '\n';
        break;
      case TraceEvent::Kind::kChain:
        out << "chain " << e.flow.paths.size() << '\n';
        for (const auto& p : e.flow.paths) {
          out << "path " << to_string(p.amount);
          for (Vertex v : p.vertices) out << ' ' << v;
          out << '\n';
        }
        break;
      case TraceEvent::Kind::kNote:
        out << "note " << e.note << '\n';
        break;
    }
  }
}

Trace read_trace(std::istream& in) {
  Trace trace;
  std::string line;
  int line_no = 0;
  std::size_t pending_paths = 0;
  std::vector<FlowPath> paths;
  auto finish_chain = [&] {
    trace.events.push_back({TraceEvent::Kind::kChain, -1, -1, 0, YFlow::from_paths(std::move(paths)), {}});
    paths.clear();
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line);
    std::string kind;
    if (!(ss >> kind)) continue;
    try {
      if (pending_paths > 0 && kind != "path") throw InputError(line_no, "expected a path record");
      if (kind == "shift") {
        TraceEvent e{TraceEvent::Kind::kShift, -1, -1, 0, {}, {}};
        std::string q;
        if (!(ss >> e.from >> e.to >> q)) throw InputError(line_no, "bad shift record");
        e.amount = parse_rational(q);
        trace.events.push_back(std::move(e));
      } else if (kind == "chain") {
        if (!(ss >> pending_paths) || pending_paths == 0) throw InputError(line_no, "bad chain record");
      } else if (kind == "path") {
        if (pending_paths == 0) throw InputError(line_no, "path record outside a chain");
        FlowPath p;
        std::string q;
        if (!(ss >> q)) throw InputError(line_no, "bad path record");
        p.amount = parse_rational(q);
        for (Vertex v; ss >> v;) p.vertices.push_back(v);
        paths.push_back(std::move(p));
        if (--pending_paths == 0) finish_chain();
      } else if (kind == "note") {
        std::string rest;
        std::getline(ss >> std::ws, rest);
        trace.note(rest);
      } else {
        throw InputError(line_no, "unknown trace record '" + kind + "'");
      }
    } catch (const std::invalid_argument& err) {
      throw InputError(line_no, err.what());
    }
  }
  if (pending_paths > 0) throw InputError(line_no, "trace ends inside a chain record");
  return trace;
}

void replay(Assignment& a, std::span<const long long> capacity, const Trace& trace) {
  ShiftContext ctx{capacity, nullptr, {}};
  for (const auto& e : trace.events) {
    if (e.kind == TraceEvent::Kind::kShift) shift(a, ctx, e.from, e.to, e.amount);
    else if (e.kind == TraceEvent::Kind::kChain) chain_shift(a, ctx, e.flow);
  }
}

}  // namespace capkc
