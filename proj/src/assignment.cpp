#include "assignment.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "errors.hpp"

namespace capkc {

Assignment::Assignment(int vertex_count, CapacityMode mode) : mode_(mode), y_(vertex_count, Rational(0)) {}

Rational Assignment::y_sum() const {
  Rational s = 0;
  for (const auto& v : y_) s += v;
  return s;
}

Rational Assignment::x(Vertex u, Vertex v) const {
  auto it = x_.find({u, v});
  return it == x_.end() ? Rational(0) : it->second;
}

void Assignment::set_x(Vertex u, Vertex v, const Rational& value) {
  if (value == 0) x_.erase({u, v});
  else x_[{u, v}] = value;
}

void Assignment::add_x(Vertex u, Vertex v, const Rational& delta) {
  if (delta == 0) return;
  auto [it, inserted] = x_.try_emplace({u, v}, delta);
  if (inserted) return;
  it->second += delta;
  if (it->second == 0) x_.erase(it);
}

std::vector<std::pair<Vertex, Rational>> Assignment::served_by(Vertex u) const {
  std::vector<std::pair<Vertex, Rational>> out;
  for (auto it = x_.lower_bound({u, -1}); it != x_.end() && it->first.first == u; ++it)
    out.emplace_back(it->first.second, it->second);
  return out;
}

int radius_of(const Assignment& a, const HopDistances& hops, Vertex u) {
  int r = 0;
  const auto& xs = a.x_entries();
  for (auto it = xs.lower_bound({u, -1}); it != xs.end() && it->first.first == u; ++it) {
    int d = hops(u, it->first.second);
    if (d == HopDistances::kUnreachable) return HopDistances::kUnreachable;
    r = std::max(r, d);
  }
  return r;
}

int global_delta(const Assignment& a, const HopDistances& hops) {
  int r = 0;
  for (const auto& [key, value] : a.x_entries()) {
    int d = hops(key.first, key.second);
    if (d == HopDistances::kUnreachable) return HopDistances::kUnreachable;
    r = std::max(r, d);
  }
  return r;
}

void write_assignment(std::ostream& out, const Assignment& a) {
  for (Vertex v = 0; v < a.vertex_count(); ++v) out << "y " << v << ' ' << to_string(a.y(v)) << '\n';
  for (const auto& [key, value] : a.x_entries())
    out << "x " << key.first << ' ' << key.second << ' ' << to_string(value) << '\n';
}

Assignment read_assignment(std::istream& in, int vertex_count, CapacityMode mode) {
  Assignment a(vertex_count, mode);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line.substr(0, line.find('#')));
    std::string kind;
    if (!(ss >> kind)) continue;
    try {
      if (kind == "y") {
        int v;
        std::string q;
        if (!(ss >> v >> q) || v < 0 || v >= vertex_count) throw InputError(line_no, "bad y record");
        a.set_y(v, parse_rational(q));
      } else if (kind == "x") {
        int u, v;
        std::string q;
        if (!(ss >> u >> v >> q) || u < 0 || v < 0 || u >= vertex_count || v >= vertex_count)
          throw InputError(line_no, "bad x record");
        a.set_x(u, v, parse_rational(q));
      } else {
        throw InputError(line_no, "unknown record '" + kind + "'");
      }
    } catch (const std::invalid_argument& err) {
      throw InputError(line_no, err.what());
    }
  }
  return a;
}

}  // namespace capkc
