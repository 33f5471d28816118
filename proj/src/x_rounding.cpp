#include "x_rounding.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "errors.hpp"
#include "maxflow.hpp"

namespace capkc {

int Solution::opened() const {
  int total = 0;
  for (const auto& [v, m] : centers) total += m;
  return total;
}

std::optional<std::string> find_solution_violation(const Graph& g, std::span<const long long> capacity,
                                                   CapacityMode mode, const Solution& s) {
  int n = g.vertex_count();
  if (static_cast<int>(s.assignment.size()) != n)
    return "assignment covers " + std::to_string(s.assignment.size()) + " clients, expected " + std::to_string(n);
  if (s.opened() != s.k) return "opens " + std::to_string(s.opened()) + " centers, expected " + std::to_string(s.k);
  for (const auto& [v, m] : s.centers) {
    if (v < 0 || v >= n) return "center " + std::to_string(v) + " out of range";
    if (m <= 0) return "center " + std::to_string(v) + " has non-positive multiplicity";
    if (mode == CapacityMode::kHard && m > 1) return "center " + std::to_string(v) + " opened twice in hard mode";
  }
  std::map<Vertex, long long> load;
  std::map<Vertex, std::vector<int>> dist_from;
  for (Vertex c = 0; c < n; ++c) {
    Vertex u = s.assignment[c];
    auto it = s.centers.find(u);
    if (it == s.centers.end()) return "client " + std::to_string(c) + " is assigned to closed vertex " + std::to_string(u);
    ++load[u];
    auto& d = dist_from[u];
    if (d.empty()) d = bfs_distances(g, u);
    if (d[c] == HopDistances::kUnreachable || d[c] > s.radius)
      return "client " + std::to_string(c) + " is " + (d[c] < 0 ? std::string("unreachable") : std::to_string(d[c]) + " hops") +
             " from its center " + std::to_string(u) + ", radius " + std::to_string(s.radius);
  }
  for (const auto& [u, l] : load) {
    long long limit = capacity[u] * s.centers.at(u);
    if (l > limit) return "center " + std::to_string(u) + " serves " + std::to_string(l) + " > " + std::to_string(limit);
  }
  return std::nullopt;
}

void write_solution(std::ostream& out, const Solution& s) {
  out << "solution " << s.k << ' ' << s.radius << '\n';
  out << "threshold " << to_string(s.threshold) << '\n';
  for (const auto& [v, m] : s.centers) out << "center " << v << ' ' << m << '\n';
  for (std::size_t c = 0; c < s.assignment.size(); ++c) out << "assign " << c << ' ' << s.assignment[c] << '\n';
}

Solution parse_solution(std::istream& in, int vertex_count) {
  Solution s;
  s.assignment.assign(vertex_count, -1);
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line.substr(0, line.find('#')));
    std::string kind;
    if (!(ss >> kind)) continue;
    if (!header) {
      if (kind != "solution" || !(ss >> s.k >> s.radius)) throw InputError(line_no, "expected 'solution <k> <radius>'");
      header = true;
    } else if (kind == "threshold") {
      std::string q;
      if (!(ss >> q)) throw InputError(line_no, "bad threshold record");
      try {
        s.threshold = parse_rational(q);
      } catch (const std::invalid_argument& err) {
        throw InputError(line_no, err.what());
      }
    } else if (kind == "center") {
      int v, m;
      if (!(ss >> v >> m) || v < 0 || v >= vertex_count) throw InputError(line_no, "bad center record");
      if (s.centers.count(v)) throw InputError(line_no, "center " + std::to_string(v) + " listed twice");
      s.centers[v] = m;
    } else if (kind == "assign") {
      int c, v;
      if (!(ss >> c >> v) || c < 0 || c >= vertex_count || v < 0 || v >= vertex_count)
        throw InputError(line_no, "bad assign record");
      if (s.assignment[c] != -1) throw InputError(line_no, "client " + std::to_string(c) + " assigned twice");
      s.assignment[c] = v;
    } else {
      throw InputError(line_no, "unknown record '" + kind + "'");
    }
  }
  if (!header) throw InputError(line_no, "missing solution header");
  for (int c = 0; c < vertex_count; ++c)
    if (s.assignment[c] == -1) throw InputError(line_no, "client " + std::to_string(c) + " has no assign record");
  return s;
}

Solution round_x(const HopDistances& hops, std::span<const long long> capacity, const Assignment& a, int delta) {
  int n = a.vertex_count();
  std::vector<Vertex> open;
  std::vector<long long> slots;
  Solution s;
  for (Vertex u = 0; u < n; ++u) {
    if (a.y(u) == 0) continue;
    if (!is_integral(a.y(u))) throw InvariantViolation("round_x needs integral y; y_" + std::to_string(u) + " is fractional");
    int m = static_cast<int>(a.y(u).get_num().get_si());
    s.centers[u] = m;
    open.push_back(u);
    slots.push_back(capacity[u] * m);
  }
  std::vector<std::vector<int>> allowed(open.size());
  for (std::size_t i = 0; i < open.size(); ++i)
    for (Vertex v = 0; v < n; ++v)
      if (hops.within(open[i], v, delta)) allowed[i].push_back(v);
  auto owner = assign_clients(n, slots, allowed);
  if (!owner) throw InvariantViolation("round_x: no integral assignment within " + std::to_string(delta) + " hops");
  s.k = s.opened();
  s.assignment.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    s.assignment[v] = open[(*owner)[v]];
    s.radius = std::max(s.radius, hops(s.assignment[v], v));
  }
  return s;
}

}  // namespace capkc
