#include "graph.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

namespace capkc {

Graph::Graph(int vertex_count) : adjacency_(static_cast<std::size_t>(std::max(vertex_count, 0))) {}

void Graph::add_edge(Vertex u, Vertex v) {
  int n = vertex_count();
  if (u < 0 || v < 0 || u >= n || v >= n)
    throw std::invalid_argument("edge (" + std::to_string(u) + ", " + std::to_string(v) + ") out of range");
  if (u == v) throw std::invalid_argument("self-loop at vertex " + std::to_string(u));
  auto& au = adjacency_[u];
  auto it = std::lower_bound(au.begin(), au.end(), v);
  if (it != au.end() && *it == v)
    throw std::invalid_argument("duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
  au.insert(it, v);
  auto& av = adjacency_[v];
  av.insert(std::lower_bound(av.begin(), av.end(), u), u);
  ++edge_count_;
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u < 0 || u >= vertex_count()) return false;
  return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
}

std::vector<std::pair<Vertex, Vertex>> Graph::edges() const {
  std::vector<std::pair<Vertex, Vertex>> out;
  out.reserve(edge_count_);
  for (Vertex u = 0; u < vertex_count(); ++u)
    for (Vertex v : adjacency_[u])
      if (u < v) out.emplace_back(u, v);
  return out;
}

std::vector<int> bfs_distances(const Graph& g, Vertex source) {
  std::vector<int> dist(g.vertex_count(), HopDistances::kUnreachable);
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(u)) {
      if (dist[w] != HopDistances::kUnreachable) continue;
      dist[w] = dist[u] + 1;
      queue.push_back(w);
    }
  }
  return dist;
}

HopDistances::HopDistances(const Graph& g) : n_(g.vertex_count()) {
  dist_.resize(static_cast<std::size_t>(n_) * n_);
  for (Vertex s = 0; s < n_; ++s) {
    auto row = bfs_distances(g, s);
    std::copy(row.begin(), row.end(), dist_.begin() + static_cast<std::ptrdiff_t>(s) * n_);
  }
}

Graph power_graph(const Graph& g, int delta) {
  Graph out(g.vertex_count());
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    auto dist = bfs_distances(g, u);
    for (Vertex v = u + 1; v < g.vertex_count(); ++v)
      if (dist[v] != HopDistances::kUnreachable && dist[v] <= delta) out.add_edge(u, v);
  }
  return out;
}

std::vector<std::vector<Vertex>> connected_components(const Graph& g) {
  std::vector<int> label(g.vertex_count(), -1);
  std::vector<std::vector<Vertex>> out;
  for (Vertex s = 0; s < g.vertex_count(); ++s) {
    if (label[s] != -1) continue;
    std::vector<Vertex> comp{s};
    label[s] = static_cast<int>(out.size());
    for (std::size_t i = 0; i < comp.size(); ++i)
      for (Vertex w : g.neighbors(comp[i]))
        if (label[w] == -1) {
          label[w] = label[s];
          comp.push_back(w);
        }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices) {
  std::vector<int> local(g.vertex_count(), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[vertices[i]] = static_cast<int>(i);
  Graph out(static_cast<int>(vertices.size()));
  for (std::size_t i = 0; i < vertices.size(); ++i)
    for (Vertex w : g.neighbors(vertices[i]))
      if (local[w] > static_cast<int>(i)) out.add_edge(static_cast<int>(i), local[w]);
  return out;
}

std::vector<Vertex> hamiltonian_path_in_cube(const Graph& g) {
  int n = g.vertex_count();
  if (n == 0) return {};
  // BFS spanning tree rooted at vertex 0; children listed in id order.
  std::vector<std::vector<Vertex>> children(n);
  std::vector<char> seen(n, 0);
  std::vector<Vertex> order{0};
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (Vertex w : g.neighbors(order[i]))
      if (!seen[w]) {
        seen[w] = 1;
        children[order[i]].push_back(w);
        order.push_back(w);
      }
  if (static_cast<int>(order.size()) != n)
    throw std::invalid_argument("hamiltonian_path_in_cube needs a connected graph");

  // Two walk shapes alternate by depth. A "head" walk emits the vertex first
  // and then every child subtree as a tail walk; a tail walk emits the child
  // subtrees as head walks and the vertex last. Head walks end at a child (or
  // the vertex itself), tail walks start at one, so every hop stays within 3.
  struct Frame {
    Vertex v;
    bool head;
    std::size_t next_child;
  };
  std::vector<Vertex> path;
  path.reserve(n);
  std::vector<Frame> stack{{0, true, 0}};
  path.push_back(0);
  while (!stack.empty()) {
    Frame& f = stack.back();
    if (f.next_child < children[f.v].size()) {
      Vertex c = children[f.v][f.next_child++];
      bool child_head = !f.head;
      if (child_head) path.push_back(c);
      stack.push_back({c, child_head, 0});
      continue;
    }
    if (!f.head) path.push_back(f.v);
    stack.pop_back();
  }
  return path;
}

}  // namespace capkc
