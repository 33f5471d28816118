#include "soft_solver.hpp"

#include <algorithm>

#include "errors.hpp"
#include "maxflow.hpp"

namespace capkc {

std::vector<Vertex> ks_independent_set(const Graph& g, const HopDistances& hops) {
  int n = g.vertex_count();
  if (n == 0) return {};
  std::vector<Vertex> set{0};
  std::vector<int> to_set(n);
  for (Vertex v = 0; v < n; ++v) to_set[v] = hops(0, v) < 0 ? 1 << 29 : hops(0, v);
  for (;;) {
    Vertex next = -1;
    for (Vertex v = 0; v < n && next < 0; ++v)
      if (to_set[v] == 3) next = v;
    if (next < 0) break;
    set.push_back(next);
    for (Vertex v = 0; v < n; ++v)
      if (hops(next, v) >= 0) to_set[v] = std::min(to_set[v], hops(next, v));
  }
  for (Vertex v = 0; v < n; ++v)
    if (to_set[v] > 2) throw InvariantViolation("ks_independent_set needs a connected graph");
  std::sort(set.begin(), set.end());
  return set;
}

SoftRounding solve_soft(const Graph& g, const HopDistances& hops, std::span<const long long> capacity,
                        const Assignment& a) {
  int n = g.vertex_count();
  Rational total = a.y_sum();
  if (!is_integral(total)) throw InvariantViolation("soft rounding needs an integral opening total");
  long long k = total.get_num().get_si();

  SoftRounding out;
  auto& S = out.independent_set;
  S = ks_independent_set(g, hops);
  if (static_cast<long long>(S.size()) > k)
    throw InvariantViolation("independent set of size " + std::to_string(S.size()) + " exceeds k = " + std::to_string(k));

  // Anchor every vertex: the unique member within one hop, else the
  // lowest-id member within two.
  std::map<Vertex, Rational> mass;
  for (Vertex s : S) mass[s] = 0;
  for (Vertex v = 0; v < n; ++v) {
    Vertex anchor = -1;
    for (Vertex s : S)
      if (hops.within(s, v, 1)) anchor = s;
    if (anchor < 0)
      for (Vertex s : S)
        if (hops.within(s, v, 2)) {
          anchor = s;
          break;
        }
    if (anchor < 0) throw InvariantViolation("vertex " + std::to_string(v) + " has no anchor within two hops");
    mass[anchor] += a.y(v);
  }

  // BFS tree over members joined when at most 3 hops apart; fractional parts
  // move towards the root.
  std::vector<Vertex> order{S.front()};
  std::map<Vertex, Vertex> parent;
  std::map<Vertex, bool> seen{{S.front(), true}};
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Vertex s : S)
      if (!seen[s] && hops.within(order[i], s, 3)) {
        seen[s] = true;
        parent[s] = order[i];
        order.push_back(s);
      }
  if (order.size() != S.size()) throw InvariantViolation("independent set is not connected in the cube");
  for (std::size_t i = order.size(); i-- > 1;) {
    Vertex s = order[i];
    Rational frac = fractional_part(mass[s]);
    mass[s] -= frac;
    mass[parent[s]] += frac;
  }
  for (Vertex s : S) {
    if (!is_integral(mass[s]) || mass[s] < 1)
      throw InvariantViolation("member " + std::to_string(s) + " collects " + to_string(mass[s]) + " units");
    out.units[s] = mass[s].get_num().get_si();
  }

  std::vector<long long> slots;
  std::vector<std::vector<int>> allowed;
  for (Vertex s : S) {
    Vertex heavy = s;
    for (Vertex v = 0; v < n; ++v)
      if (hops.within(s, v, 6) && (capacity[v] > capacity[heavy] || (capacity[v] == capacity[heavy] && v < heavy)))
        heavy = v;
    out.relocated_to[s] = heavy;
    slots.push_back(out.units[s] * capacity[heavy]);
    std::vector<int> near;
    for (Vertex v = 0; v < n; ++v)
      if (hops.within(s, v, 5)) near.push_back(v);
    allowed.push_back(std::move(near));
  }
  auto owner = assign_clients(n, slots, allowed);
  if (!owner) throw InvariantViolation("no assignment to set members within 5 hops");

  Solution& sol = out.solution;
  sol.k = static_cast<int>(k);
  for (Vertex s : S) sol.centers[out.relocated_to[s]] += static_cast<int>(out.units[s]);
  sol.assignment.resize(n);
  for (Vertex v = 0; v < n; ++v) {
    sol.assignment[v] = out.relocated_to[S[(*owner)[v]]];
    sol.radius = std::max(sol.radius, hops(sol.assignment[v], v));
  }
  if (sol.radius > 11) throw InvariantViolation("soft rounding radius " + std::to_string(sol.radius) + " exceeds 11");
  return out;
}

}  // namespace capkc
