#include "fixtures.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>

namespace capkc::fixtures {

Rational q(const char* text) { return parse_rational(text); }

Graph make_graph(int n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) g.add_edge(u, v);
  return g;
}

Instance unit_instance(int n, const std::vector<std::pair<Vertex, Vertex>>& edges, std::vector<long long> capacity,
                       int k, CapacityMode mode) {
  std::vector<WeightedEdge> weighted;
  for (auto [u, v] : edges) weighted.push_back({u, v, Rational(1)});
  return Instance(n, std::move(capacity), k, mode, std::move(weighted));
}

ChainCase chain_case() {
  using C = ChainCase;
  ChainCase c;
  c.g = make_graph(C::count, {{C::s1, C::a}, {C::s2, C::a}, {C::a, C::b}, {C::b, C::t1}, {C::b, C::t2},
                              {C::b, C::t3}, {C::w, C::s2}});
  c.capacity = {3, 1, 4, 4, 2, 2, 3, 1};
  Assignment& a = c.start = Assignment(C::count, CapacityMode::kHard);
  a.set_y(C::s1, q("0.4"));
  a.set_y(C::s2, 1);
  a.set_y(C::a, 1);
  a.set_y(C::b, 1);
  a.set_y(C::t2, q("0.8"));
  a.set_y(C::t3, q("0.1"));
  a.set_y(C::w, q("0.7"));
  for (Vertex v : {C::s1, C::s2, C::a}) a.set_x(C::a, v, 1);
  for (Vertex v : {C::b, C::t1, C::t2, C::t3}) a.set_x(C::b, v, 1);
  a.set_x(C::s2, C::w, 1);
  c.flow = YFlow::from_paths({{q("0.2"), {C::s1, C::a, C::b, C::t3}},
                              {q("0.6"), {C::s2, C::a, C::b, C::t1}},
                              {q("0.2"), {C::s2, C::a, C::b, C::t2}}});
  return c;
}

Assignment chain_case_expected() {
  using C = ChainCase;
  Assignment a(C::count, CapacityMode::kHard);
  a.set_y(C::s1, q("0.2"));
  a.set_y(C::s2, q("0.2"));
  a.set_y(C::a, 1);
  a.set_y(C::b, 1);
  a.set_y(C::t1, q("0.6"));
  a.set_y(C::t2, 1);
  a.set_y(C::t3, q("0.3"));
  a.set_y(C::w, q("0.7"));
  // a -> b carries L-weighted flow 0.6 + 0.6 + 0.2 = 1.4 of a's 4 units.
  for (Vertex v : {C::s1, C::s2, C::a}) {
    a.set_x(C::a, v, q("0.65"));
    a.set_x(C::b, v, q("0.35"));
  }
  // s2 -> a carries 0.8 of s2's single unit.
  a.set_x(C::s2, C::w, q("0.2"));
  a.set_x(C::a, C::w, q("0.8"));
  // b -> t1, t2, t3 carry 0.6, 0.2, 0.6 of b's 4 units.
  for (Vertex v : {C::b, C::t1, C::t2, C::t3}) {
    a.set_x(C::b, v, q("0.65"));
    a.set_x(C::t1, v, q("0.15"));
    a.set_x(C::t2, v, q("0.05"));
    a.set_x(C::t3, v, q("0.15"));
  }
  return a;
}

Assignment reference_chain_shift(const Assignment& a, std::span<const long long> capacity, const YFlow& flow) {
  std::map<std::pair<Vertex, Vertex>, Rational> weight;
  for (const auto& p : flow.paths)
    for (std::size_t j = 0; j + 1 < p.vertices.size(); ++j)
      weight[{p.vertices[j], p.vertices[j + 1]}] += rational_of(capacity[p.vertices.front()]) * p.amount;
  Assignment out = a;
  for (const auto& [arc, wgt] : weight) {
    auto [u, w] = arc;
    Rational fraction = wgt / (rational_of(capacity[u]) * a.y(u));
    for (const auto& [client, value] : a.served_by(u)) {
      out.add_x(u, client, -fraction * value);
      out.add_x(w, client, fraction * value);
    }
  }
  for (const auto& p : flow.paths) {
    out.set_y(p.vertices.front(), out.y(p.vertices.front()) - p.amount);
    out.set_y(p.vertices.back(), out.y(p.vertices.back()) + p.amount);
  }
  return out;
}

CaterpillarCase caterpillar_case(const std::vector<long long>& spine_capacity,
                                 const std::vector<std::pair<long long, const char*>>& leaves) {
  CaterpillarCase out;
  const int p = static_cast<int>(spine_capacity.size());
  int n = p;
  std::vector<std::optional<Vertex>> leaf_ids;
  for (const auto& [L, y] : leaves) leaf_ids.push_back(L > 0 ? std::optional<Vertex>(n++) : std::nullopt);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i + 1 < p; ++i) edges.emplace_back(i, i + 1);
  out.c.spine.resize(p);
  std::iota(out.c.spine.begin(), out.c.spine.end(), 0);
  out.c.leaves = leaf_ids;
  out.c.delta = 1;
  for (int j = 0; j <= p + 1; ++j)
    if (leaf_ids[j]) edges.emplace_back(out.c.anchor(j), *leaf_ids[j]);
  out.g = make_graph(n, edges);
  out.capacity.assign(n, 0);
  out.a = Assignment(n, CapacityMode::kHard);
  for (int i = 0; i < p; ++i) {
    out.capacity[i] = spine_capacity[i];
    out.a.set_y(i, 1);
  }
  std::vector<long long> load(p, 0);
  for (int i = 0; i < p; ++i) {
    out.a.set_x(i, i, 1);
    load[i] = 1;
  }
  for (int j = 0; j <= p + 1; ++j) {
    if (!leaf_ids[j]) continue;
    Vertex l = *leaf_ids[j];
    out.capacity[l] = leaves[j].first;
    out.a.set_y(l, q(leaves[j].second));
    // Served by the nearest spine vertex with spare capacity.
    Vertex host = -1;
    int anchor = out.c.anchor(j);
    for (int d = 0; d < p && host < 0; ++d)
      for (int i : {anchor - d, anchor + d})
        if (i >= 0 && i < p && load[i] < spine_capacity[i] && host < 0) host = i;
    out.a.set_x(host, l, 1);
    ++load[host];
  }
  Rational total = out.a.y_sum();
  out.k = static_cast<int>(total.get_num().get_si());
  return out;
}

CaterpillarCase separable_case() {
  return caterpillar_case({3, 2, 10, 10, 3, 10, 10}, {{5, "0.1"}, {1, "0.2"}, {0, ""}, {1, "0.4"}, {5, "0.9"},
                                                      {0, ""}, {5, "0.4"}, {0, ""}, {0, ""}});
}

CaterpillarCase dangerous_case() {
  return caterpillar_case({10, 10, 2, 10, 2, 10, 10}, {{5, "0.4"}, {1, "0.7"}, {0, ""}, {1, "0.8"}, {1, "0.2"},
                                                       {1, "0.8"}, {1, "0.6"}, {5, "0.5"}, {0, ""}});
}

RandomFlowCase random_flow_case(std::mt19937_64& rng) {
  auto uniform = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  RandomFlowCase out;
  const int relays = uniform(1, 4), terminals = uniform(2, 7);
  // The last vertex only balances the opening total to an integer.
  const int n = relays + terminals + 1;
  const Vertex balance = n - 1;
  const int big = n + 2;
  out.capacity.assign(n, 1);
  Assignment a(n, CapacityMode::kHard);
  // Relays 0..relays-1 are fully open with room for everybody.
  for (Vertex r = 0; r < relays; ++r) {
    out.capacity[r] = big;
    a.set_y(r, 1);
  }
  const int den = uniform(2, 12);
  for (Vertex t = relays; t < balance; ++t) {
    out.capacity[t] = uniform(1, 6);
    a.set_y(t, fraction(uniform(0, den), den));
  }
  Rational total = a.y_sum();
  a.set_y(balance, Rational(ceil_of(total)) - total);
  // Fractional terminals take random shares of random clients; relays cover
  // the rest.
  std::vector<Rational> covered(n, Rational(0));
  for (Vertex t = relays; t < balance; ++t) {
    if (a.y(t) == 0) continue;
    Rational room = rational_of(out.capacity[t]) * a.y(t);
    for (Vertex c = 0; c < n; ++c) {
      if (uniform(0, 2) != 0) continue;
      Rational share = std::min<Rational>({a.y(t) * fraction(uniform(1, 4), 4), 1 - covered[c], room});
      if (share <= 0) continue;
      a.add_x(t, c, share);
      covered[c] += share;
      room -= share;
    }
  }
  for (Vertex c = 0; c < n; ++c) {
    Rational rest = 1 - covered[c];
    for (Vertex r = 0; r < relays && rest > 0; ++r) {
      Rational part = r + 1 == relays ? rest : rest * fraction(uniform(0, 2), 2);
      if (part > 0) a.add_x(r, c, part);
      rest -= part;
    }
  }

  // Paths: source terminal -> increasing relays -> sink terminal, with
  // L(source) <= L(sink) and budgets respected.
  std::vector<Rational> send(n), take(n), pass(n, Rational(0));
  for (Vertex t = relays; t < balance; ++t) {
    send[t] = a.y(t);
    take[t] = 1 - a.y(t);
  }
  std::vector<Vertex> terms;
  for (Vertex t = relays; t < balance; ++t) terms.push_back(t);
  std::shuffle(terms.begin(), terms.end(), rng);
  std::set<Vertex> sources, sinks;
  std::vector<FlowPath> paths;
  const int tries = uniform(1, 6);
  for (int attempt = 0; attempt < tries; ++attempt) {
    Vertex s = terms[uniform(0, static_cast<int>(terms.size()) - 1)];
    Vertex t = terms[uniform(0, static_cast<int>(terms.size()) - 1)];
    if (s == t || sinks.count(s) || sources.count(t)) continue;
    if (out.capacity[s] > out.capacity[t] || send[s] <= 0 || take[t] <= 0) continue;
    std::vector<Vertex> via;
    for (Vertex r = 0; r < relays; ++r)
      if (uniform(0, 1) == 1) via.push_back(r);
    Rational room = std::min(send[s], take[t]);
    for (Vertex r : via) room = std::min<Rational>(room, 1 - pass[r]);
    if (room <= 0) continue;
    Rational amount = room * fraction(uniform(1, 3), 3);
    std::vector<Vertex> vertices{s};
    vertices.insert(vertices.end(), via.begin(), via.end());
    vertices.push_back(t);
    paths.push_back({amount, vertices});
    send[s] -= amount;
    take[t] -= amount;
    for (Vertex r : via) pass[r] += amount;
    sources.insert(s);
    sinks.insert(t);
  }
  out.flow = YFlow::from_paths(std::move(paths));
  out.k = static_cast<int>(ceil_of(a.y_sum()).get_si());
  out.a = std::move(a);
  return out;
}

}  // namespace capkc::fixtures
