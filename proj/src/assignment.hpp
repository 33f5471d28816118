#pragma once

#include <iosfwd>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include "graph.hpp"
#include "instance.hpp"
#include "rational.hpp"

namespace capkc {

// A fractional LP1 point: opening values y and assignment values x, where
// x(u, v) is the part of client v served by center u. Zero x entries are
// never stored.
class Assignment {
 public:
  using XMap = std::map<std::pair<Vertex, Vertex>, Rational>;

  Assignment() = default;
  Assignment(int vertex_count, CapacityMode mode);

  int vertex_count() const { return static_cast<int>(y_.size()); }
  CapacityMode mode() const { return mode_; }

  const Rational& y(Vertex v) const { return y_[v]; }
  void set_y(Vertex v, const Rational& value) { y_[v] = value; }
  Rational y_sum() const;

  Rational x(Vertex u, Vertex v) const;
  void set_x(Vertex u, Vertex v, const Rational& value);
  void add_x(Vertex u, Vertex v, const Rational& delta);

  const XMap& x_entries() const { return x_; }
  // Clients with positive x(u, .), in client order.
  std::vector<std::pair<Vertex, Rational>> served_by(Vertex u) const;

  bool operator==(const Assignment& other) const { return mode_ == other.mode_ && y_ == other.y_ && x_ == other.x_; }

 private:
  CapacityMode mode_ = CapacityMode::kHard;
  std::vector<Rational> y_;
  XMap x_;
};

// Largest hop distance from u to a client it serves (0 when it serves none).
int radius_of(const Assignment& a, const HopDistances& hops, Vertex u);

// Smallest delta for which the assignment is delta-feasible in the sense of
// the distance constraint: the maximum radius over all vertices. Unreachable
// pairs count as HopDistances::kUnreachable and make the result -1.
int global_delta(const Assignment& a, const HopDistances& hops);

// Debug dump: "y <v> <p/q>" for every vertex, then "x <u> <v> <p/q>" sorted.
void write_assignment(std::ostream& out, const Assignment& a);
Assignment read_assignment(std::istream& in, int vertex_count, CapacityMode mode);

}  // namespace capkc
