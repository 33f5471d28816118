#include "pipeline.hpp"

#include <algorithm>
#include <ostream>

#include "errors.hpp"
#include "soft_solver.hpp"

namespace capkc {

namespace {

CapacityMode capacity_mode(SolveMode mode, const Instance& inst) {
  switch (mode) {
    case SolveMode::kHard: return CapacityMode::kHard;
    case SolveMode::kSoft: return CapacityMode::kSoft;
    case SolveMode::kExact: return inst.mode();
  }
  return inst.mode();
}

bool lp_feasible(const Graph& g, std::span<const long long> capacity, int k, CapacityMode mode) {
  return solve_feasibility(build_lp1(g, capacity, k, mode)).status == LPStatus::kFeasible;
}

void append_relabelled(Trace& out, const Trace& in, const std::vector<Vertex>& global, std::size_t component) {
  auto map = [&](Vertex v) { return v >= 0 ? global[v] : v; };
  out.note("component " + std::to_string(component));
  for (TraceEvent e : in.events) {
    e.from = map(e.from);
    e.to = map(e.to);
    for (auto& p : e.flow.paths)
      for (auto& v : p.vertices) v = map(v);
    for (auto& v : e.flow.sources) v = map(v);
    for (auto& v : e.flow.sinks) v = map(v);
    out.events.push_back(std::move(e));
  }
}

}  // namespace

ComponentSolution round_component(const Graph& g, std::span<const long long> capacity, int k, CapacityMode mode,
                                  const RoundingOptions& options) {
  auto lp = solve_feasibility(build_lp1(g, capacity, k, mode));
  if (lp.status != LPStatus::kFeasible) throw InvariantViolation("LP1 is infeasible for k = " + std::to_string(k));
  HopDistances hops(g);
  ComponentSolution out;
  Assignment a = std::move(lp.point);
  if (mode == CapacityMode::kHard) {
    out.rounding = round_y(a, g, hops, capacity, &out.trace, options);
    out.solution = round_x(hops, capacity, a, out.rounding.final_delta);
    out.stretch = out.rounding.final_delta;
  } else {
    out.solution = solve_soft(g, hops, capacity, a).solution;
    out.stretch = out.solution.radius;
  }
  if (out.solution.opened() != k)
    throw InvariantViolation("rounding opened " + std::to_string(out.solution.opened()) + " centers, expected " +
                             std::to_string(k));
  out.solution.k = k;
  return out;
}

Rational metric_radius(const Instance& inst, const Solution& s) {
  Rational r = 0;
  for (Vertex v = 0; v < static_cast<Vertex>(s.assignment.size()); ++v)
    if (s.assignment[v] != v) r = std::max<Rational>(r, inst.distance(v, s.assignment[v]));
  return r;
}

SolveReport solve_instance(const Instance& inst, SolveMode mode, const SolveOptions& options) {
  SolveReport report;
  const CapacityMode cmode = capacity_mode(mode, inst);
  const int n = inst.vertex_count();
  const int k = inst.k();
  auto capacity = inst.capacities();

  if (mode == SolveMode::kExact) {
    auto opt = exact_opt(inst, cmode);
    if (!opt.feasible) {
      report.failure = "no center set of size " + std::to_string(k) + " works at any radius";
      return report;
    }
    report.solved = true;
    report.threshold = report.lower_bound = opt.radius;
    report.has_lower_bound = true;
    report.solution = std::move(opt.solution);
    report.hop_radius = report.solution.radius;
    report.stretch = 1;
    report.achieved_radius = metric_radius(inst, report.solution);
    return report;
  }

  std::vector<Rational> radii{Rational(0)};
  for (const auto& r : candidate_radii(inst)) radii.push_back(r);
  std::vector<Vertex> positive;
  for (Vertex v = 0; v < n; ++v)
    if (capacity[v] > 0) positive.push_back(v);

  for (const Rational& r : radii) {
    Graph g = threshold_graph(inst, r);
    report.lp = build_lp1(g, capacity, k, cmode);
    auto comps = connected_components(g);
    std::vector<int> need(comps.size());
    std::vector<Graph> subgraphs;
    std::vector<std::vector<long long>> caps;
    int total = 0;
    std::string failure;
    for (std::size_t c = 0; c < comps.size() && failure.empty(); ++c) {
      const auto& vs = comps[c];
      subgraphs.push_back(induced_subgraph(g, vs));
      caps.emplace_back();
      int positives = 0;
      for (Vertex v : vs) {
        caps.back().push_back(capacity[v]);
        if (capacity[v] > 0) ++positives;
      }
      int hi = cmode == CapacityMode::kHard ? std::min(k, positives) : k;
      std::string where = "component of vertex " + std::to_string(vs.front()) + " at radius " + to_string(r);
      if (hi < 1 || !lp_feasible(subgraphs.back(), caps.back(), hi, cmode)) {
        failure = where + ": LP1 infeasible with " + std::to_string(std::max(hi, 0)) + " centers";
        break;
      }
      int lo = 1;
      while (lo < hi) {
        int mid = (lo + hi) / 2;
        if (lp_feasible(subgraphs.back(), caps.back(), mid, cmode)) hi = mid;
        else lo = mid + 1;
      }
      need[c] = lo;
      total += lo;
      if (total > k)
        failure = "components at radius " + to_string(r) + " need more than " + std::to_string(k) + " centers";
    }
    if (failure.empty() && cmode == CapacityMode::kHard && static_cast<int>(positive.size()) < k)
      failure = "only " + std::to_string(positive.size()) + " vertices can host a center";
    if (!failure.empty()) {
      report.failure = failure;
      continue;
    }

    report.lower_bound = r;
    report.has_lower_bound = true;
    Solution sol;
    sol.k = k;
    sol.threshold = r;
    sol.assignment.assign(n, -1);
    for (std::size_t c = 0; c < comps.size(); ++c) {
      const auto& vs = comps[c];
      auto part = round_component(subgraphs[c], caps[c], need[c], cmode, options.rounding);
      for (auto [u, m] : part.solution.centers) sol.centers[vs[u]] += m;
      for (std::size_t i = 0; i < vs.size(); ++i) sol.assignment[vs[i]] = vs[part.solution.assignment[i]];
      sol.radius = std::max(sol.radius, part.solution.radius);
      append_relabelled(report.certificate, part.trace, vs, c);
      report.stretch = std::max(report.stretch, part.stretch);
      report.components.push_back({vs, need[c], part.stretch, std::move(part.rounding)});
    }
    // Spare centers: fresh positive-capacity vertices in hard mode, extra
    // copies on the lowest-id positive vertex in soft mode.
    for (Vertex v : positive) {
      if (sol.opened() >= k) break;
      if (cmode == CapacityMode::kSoft) sol.centers[v] += k - sol.opened();
      else if (!sol.centers.count(v)) sol.centers[v] = 1;
    }
    if (auto v = find_solution_violation(g, capacity, cmode, sol))
      throw InvariantViolation("assembled solution fails validation: " + *v);
    if (options.max_stretch > 0 && report.stretch > options.max_stretch)
      throw InvariantViolation("certified stretch " + std::to_string(report.stretch) + " exceeds " +
                               std::to_string(options.max_stretch));
    report.solved = true;
    report.failure.clear();
    report.threshold = r;
    report.hop_radius = sol.radius;
    report.achieved_radius = metric_radius(inst, sol);
    report.solution = std::move(sol);
    return report;
  }
  return report;
}

void write_report(std::ostream& out, const SolveReport& r) {
  out << "status " << (r.solved ? "solved" : "infeasible") << '\n';
  if (r.has_lower_bound) out << "lp_threshold " << to_string(r.lower_bound) << '\n';
  if (r.solved) {
    out << "threshold " << to_string(r.threshold) << '\n';
    out << "hop_radius " << r.hop_radius << '\n';
    out << "achieved_radius " << to_string(r.achieved_radius) << '\n';
    out << "stretch " << r.stretch << '\n';
    out << "components " << r.components.size() << '\n';
    for (const auto& c : r.components) {
      out << "component " << c.vertices.front() << " size " << c.vertices.size() << " k " << c.k << " stretch "
          << c.stretch;
      for (const auto& s : c.rounding.stages) out << ' ' << s.name << '=' << s.delta;
      out << '\n';
    }
  } else {
    out << "reason " << r.failure << '\n';
  }
}

}  // namespace capkc
