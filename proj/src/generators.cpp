#include "generators.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "errors.hpp"

namespace capkc {

namespace {

std::vector<WeightedEdge> unit_edges(const std::vector<std::pair<Vertex, Vertex>>& pairs) {
  std::vector<WeightedEdge> out;
  out.reserve(pairs.size());
  for (auto [u, v] : pairs) out.push_back({u, v, Rational(1)});
  return out;
}

}  // namespace

Fig1Instance gen_fig1() {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int g = 0; g < 2; ++g) {
    Vertex a = 6 * g, b = 6 * g + 1;
    edges.emplace_back(a, b);
    for (Vertex m = 6 * g + 2; m < 6 * g + 6; ++m) {
      edges.emplace_back(a, m);
      edges.emplace_back(b, m);
    }
  }
  Fig1Instance out{Instance(12, std::vector<long long>(12, 4), 3, CapacityMode::kHard, unit_edges(edges)),
                   Assignment(12, CapacityMode::kHard)};
  for (int g = 0; g < 2; ++g) {
    Vertex a = 6 * g, b = 6 * g + 1;
    out.witness.set_y(a, fraction(3, 4));
    out.witness.set_y(b, fraction(3, 4));
    for (Vertex v = 6 * g; v < 6 * g + 6; ++v) {
      out.witness.set_x(a, v, fraction(1, 2));
      out.witness.set_x(b, v, fraction(1, 2));
    }
  }
  return out;
}

GapInstance gen_gap_construction(int k, bool nonuniform) {
  if (k < 24) throw InputError("gap construction needs k >= 24");
  const int L = k - 1;
  const int gadgets = k - 6;
  const int n = 1 + gadgets * (L + 6);
  GapLayout lay;
  lay.root = 0;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int i = 0; i < gadgets; ++i) {
    Vertex base = 1 + i * (L + 6);
    Vertex a = base, b = base + 1, x = base + L + 4, leaf = base + L + 5;
    lay.a.push_back(a);
    lay.b.push_back(b);
    lay.x.push_back(x);
    lay.leaf.push_back(leaf);
    std::vector<Vertex> mids;
    edges.emplace_back(a, b);
    for (Vertex m = base + 2; m < base + L + 4; ++m) {
      mids.push_back(m);
      edges.emplace_back(a, m);
      edges.emplace_back(b, m);
    }
    lay.middles.push_back(std::move(mids));
    edges.emplace_back(lay.root, leaf);
    edges.emplace_back(leaf, x);
    edges.emplace_back(x, a);
    edges.emplace_back(x, b);
  }
  std::vector<long long> capacity(n, nonuniform ? 0 : L);
  capacity[lay.root] = L;
  for (int i = 0; i < gadgets; ++i) capacity[lay.a[i]] = capacity[lay.b[i]] = L;

  GapInstance out{Instance(n, capacity, k, CapacityMode::kHard, unit_edges(edges)), Assignment(n, CapacityMode::kHard),
                  lay};
  Assignment& w = out.witness;
  w.set_y(lay.root, 1);
  w.set_x(lay.root, lay.root, 1);
  for (Vertex l : lay.leaf) w.set_x(lay.root, l, 1);
  Rational open = fraction(L + 5, 2 * L);
  for (int i = 0; i < gadgets; ++i) {
    w.set_y(lay.a[i], open);
    w.set_y(lay.b[i], open);
    std::vector<Vertex> served = lay.middles[i];
    served.push_back(lay.a[i]);
    served.push_back(lay.b[i]);
    served.push_back(lay.x[i]);
    for (Vertex v : served) {
      w.set_x(lay.a[i], v, fraction(1, 2));
      w.set_x(lay.b[i], v, fraction(1, 2));
    }
  }
  // The openings above total at most k; LP1 asks for exactly k, so raise
  // gadget openings towards 1 until the total matches.
  Rational missing = Rational(k) - w.y_sum();
  for (int i = 0; i < gadgets && missing > 0; ++i)
    for (Vertex u : {lay.a[i], lay.b[i]}) {
      Rational add = std::min<Rational>(missing, Rational(1) - w.y(u));
      w.set_y(u, w.y(u) + add);
      missing -= add;
    }
  return out;
}

bool gap_neighborhood_check(const Graph& g, const GapLayout& layout) {
  for (std::size_t i = 0; i < layout.a.size(); ++i) {
    std::set<Vertex> ball;
    for (Vertex m : layout.middles[i]) {
      auto d = bfs_distances(g, m);
      for (Vertex v = 0; v < g.vertex_count(); ++v)
        if (d[v] >= 0 && d[v] <= 4) ball.insert(v);
    }
    std::set<Vertex> expected(layout.middles[i].begin(), layout.middles[i].end());
    expected.insert({layout.a[i], layout.b[i], layout.x[i], layout.leaf[i], layout.root});
    if (ball != expected) return false;
  }
  return true;
}

X3CInstance gen_x3c(const std::vector<std::array<int, 3>>& sets, int universe_size) {
  if (universe_size <= 0 || universe_size % 3 != 0)
    throw InputError("universe size " + std::to_string(universe_size) + " is not a positive multiple of 3");
  if (sets.empty()) throw InputError("exact cover instance needs at least one set");
  for (const auto& s : sets) {
    for (int e : s)
      if (e < 0 || e >= universe_size) throw InputError("set element " + std::to_string(e) + " outside the universe");
    if (s[0] == s[1] || s[0] == s[2] || s[1] == s[2]) throw InputError("set with repeated element");
  }
  const int F = static_cast<int>(sets.size());
  const int U = universe_size;
  X3CLayout lay;
  lay.universe = U;
  lay.sets = sets;
  Vertex next = 0;
  for (int j = 0; j < F; ++j) lay.set_vertex.push_back(next++);
  for (int j = 0; j < F; ++j) lay.guard.push_back(next++);
  lay.element_copies.assign(F + 1, {});
  for (int c = 0; c <= F; ++c)
    for (int e = 0; e < U; ++e) lay.element_copies[c].push_back(next++);
  lay.pendants.assign(F, {});
  for (int j = 0; j < F; ++j)
    for (int t = 0; t < 3 * F + 1; ++t) lay.pendants[j].push_back(next++);

  const int n = next;
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (int j = 0; j < F; ++j) {
    for (int c = 0; c <= F; ++c)
      for (int e : sets[j]) edges.emplace_back(lay.set_vertex[j], lay.element_copies[c][e]);
    edges.emplace_back(lay.set_vertex[j], lay.guard[j]);
    for (Vertex p : lay.pendants[j]) edges.emplace_back(lay.guard[j], p);
  }
  std::vector<long long> capacity(n, 0);
  for (int j = 0; j < F; ++j) capacity[lay.set_vertex[j]] = capacity[lay.guard[j]] = 3LL * F + 3;
  int k = F + U / 3;
  return {Instance(n, capacity, k, CapacityMode::kHard, unit_edges(edges)), lay};
}

std::optional<std::vector<int>> decode_x3c_cover(const X3CLayout& layout, const Solution& s) {
  std::vector<int> chosen;
  for (std::size_t j = 0; j < layout.sets.size(); ++j) {
    int count = 0;
    for (Vertex v : {layout.set_vertex[j], layout.guard[j]}) {
      auto it = s.centers.find(v);
      if (it != s.centers.end()) count += it->second;
    }
    if (count >= 2) chosen.push_back(static_cast<int>(j));
  }
  std::vector<int> hits(layout.universe, 0);
  for (int j : chosen)
    for (int e : layout.sets[j]) ++hits[e];
  for (int h : hits)
    if (h != 1) return std::nullopt;
  return chosen;
}

Instance gen_random_connected(int n, double density, long long cap_lo, long long cap_hi, int k, CapacityMode mode,
                              std::uint64_t seed) {
  if (n <= 0) throw InputError("random instance needs at least one vertex");
  if (cap_lo < 0 || cap_hi < cap_lo) throw InputError("bad capacity range");
  std::mt19937_64 rng(seed);
  std::set<std::pair<Vertex, Vertex>> edges;
  for (Vertex v = 1; v < n; ++v) {
    Vertex u = std::uniform_int_distribution<Vertex>(0, v - 1)(rng);
    edges.emplace(u, v);
  }
  std::bernoulli_distribution extra(std::clamp(density, 0.0, 1.0));
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!edges.count({u, v}) && extra(rng)) edges.emplace(u, v);
  std::vector<long long> capacity(n);
  std::uniform_int_distribution<long long> cap(cap_lo, cap_hi);
  for (auto& c : capacity) c = cap(rng);
  return Instance(n, capacity, k, mode, unit_edges({edges.begin(), edges.end()}));
}

}  // namespace capkc
