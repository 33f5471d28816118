#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace capkc {

using Vertex = int;

// Simple undirected graph on vertices 0..n-1 with sorted adjacency lists.
class Graph {
 public:
  explicit Graph(int vertex_count = 0);

  // Rejects self-loops, duplicates and out-of-range endpoints with
  // std::invalid_argument.
  void add_edge(Vertex u, Vertex v);

  int vertex_count() const { return static_cast<int>(adjacency_.size()); }
  std::size_t edge_count() const { return edge_count_; }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  bool has_edge(Vertex u, Vertex v) const;

  // Every edge once, as (u, v) with u < v, in lexicographic order.
  std::vector<std::pair<Vertex, Vertex>> edges() const;

 private:
  std::vector<std::vector<Vertex>> adjacency_;
  std::size_t edge_count_ = 0;
};

// All-pairs hop distances, filled by one BFS per source.
class HopDistances {
 public:
  static constexpr int kUnreachable = -1;

  HopDistances() = default;
  explicit HopDistances(const Graph& g);

  int operator()(Vertex u, Vertex v) const { return dist_[static_cast<std::size_t>(u) * n_ + v]; }
  bool within(Vertex u, Vertex v, int radius) const {
    int d = (*this)(u, v);
    return d != kUnreachable && d <= radius;
  }
  int vertex_count() const { return n_; }

 private:
  int n_ = 0;
  std::vector<int> dist_;
};

std::vector<int> bfs_distances(const Graph& g, Vertex source);

// Graph with an edge between every pair at hop distance 1..delta.
Graph power_graph(const Graph& g, int delta);

// Components as sorted vertex lists, ordered by smallest member.
std::vector<std::vector<Vertex>> connected_components(const Graph& g);

// Subgraph induced by `vertices`; vertex i of the result is vertices[i].
Graph induced_subgraph(const Graph& g, std::span<const Vertex> vertices);

// Hamiltonian path of the cube of a connected graph: consecutive vertices of
// the returned order are at hop distance at most 3 in g.
std::vector<Vertex> hamiltonian_path_in_cube(const Graph& g);

}  // namespace capkc
