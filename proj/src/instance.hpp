#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "graph.hpp"
#include "rational.hpp"

namespace capkc {

enum class CapacityMode { kHard, kSoft };

const char* mode_name(CapacityMode mode);

struct WeightedEdge {
  Vertex u;
  Vertex v;
  Rational weight;
};

// An instance of capacitated k-center. Listed edge weights induce the
// shortest-path metric; pairs in different components are unreachable.
// Weight lists that are not already a metric on their own pairs are
// rejected instead of being silently closed.
class Instance {
 public:
  Instance() = default;
  Instance(int vertex_count, std::vector<long long> capacity, int k, CapacityMode mode,
           std::vector<WeightedEdge> edges);

  int vertex_count() const { return n_; }
  int k() const { return k_; }
  CapacityMode mode() const { return mode_; }
  long long capacity(Vertex v) const { return capacity_[v]; }
  std::span<const long long> capacities() const { return capacity_; }
  const std::vector<WeightedEdge>& edges() const { return edges_; }

  bool reachable(Vertex u, Vertex v) const { return reach_[index(u, v)] != 0; }
  // Only meaningful when reachable(u, v).
  const Rational& distance(Vertex u, Vertex v) const { return dist_[index(u, v)]; }

  // The listed edges, ignoring weights.
  Graph unit_graph() const;

  void set_k(int k) { k_ = k; }
  void set_mode(CapacityMode mode) { mode_ = mode; }

 private:
  std::size_t index(Vertex u, Vertex v) const { return static_cast<std::size_t>(u) * n_ + v; }

  int n_ = 0;
  int k_ = 0;
  CapacityMode mode_ = CapacityMode::kHard;
  std::vector<long long> capacity_;
  std::vector<WeightedEdge> edges_;
  std::vector<Rational> dist_;
  std::vector<char> reach_;
};

// Line-oriented text format:
//   capkc 1 <n> <m> <k> <hard|soft>
//   v <id> <capacity>          (n lines)
//   e <u> <v> <weight>         (m lines, weight integer or p/q)
// '#' starts a comment. Errors are InputError carrying the line number.
Instance parse_instance(std::istream& in);
Instance read_instance_file(const std::string& path);
void write_instance(std::ostream& out, const Instance& inst);

// Unweighted graph joining the pairs at distance at most r.
Graph threshold_graph(const Instance& inst, const Rational& r);

// Sorted distinct distances between distinct reachable pairs.
std::vector<Rational> candidate_radii(const Instance& inst);

}  // namespace capkc
