#include "uniform_witness.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "errors.hpp"

namespace capkc {

namespace {

bool far_from(const HopDistances& hops, Vertex v, std::span<const Vertex> core) {
  for (Vertex u : core)
    if (hops.within(u, v, 2)) return false;
  return true;
}

Rational bound_of(const HopDistances& hops, long long capacity, std::span<const Vertex> core) {
  long long far = 0;
  for (Vertex v = 0; v < hops.vertex_count(); ++v)
    if (far_from(hops, v, core)) ++far;
  return rational_of(static_cast<long long>(core.size())) + fraction(far, capacity);
}

}  // namespace

UniformWitnessCheck check_uniform_witness(const HopDistances& hops, long long capacity, int k,
                                          std::span<const Vertex> core) {
  if (capacity <= 0) throw InputError("uniform witness needs a positive capacity");
  UniformWitnessCheck out;
  std::set<Vertex> distinct(core.begin(), core.end());
  out.spread = distinct.size() == core.size();
  for (std::size_t i = 0; i < core.size() && out.spread; ++i)
    for (std::size_t j = i + 1; j < core.size(); ++j)
      if (hops.within(core[i], core[j], 2)) out.spread = false;
  for (Vertex v = 0; v < hops.vertex_count(); ++v)
    if (far_from(hops, v, core)) out.far.push_back(v);
  out.bound = rational_of(static_cast<long long>(core.size())) +
              fraction(static_cast<long long>(out.far.size()), capacity);
  out.exceeds = out.bound > k;
  return out;
}

std::vector<Vertex> greedy_uniform_witness(const HopDistances& hops, long long capacity, std::mt19937_64* rng) {
  int n = hops.vertex_count();
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  if (rng) std::shuffle(order.begin(), order.end(), *rng);

  std::vector<Vertex> core, best;
  Rational best_bound = bound_of(hops, capacity, core);
  for (;;) {
    Vertex pick = -1;
    Rational pick_bound;
    for (Vertex v : order) {
      bool ok = true;
      for (Vertex u : core)
        if (hops.within(u, v, 2)) ok = false;
      if (!ok) continue;
      core.push_back(v);
      Rational b = bound_of(hops, capacity, core);
      core.pop_back();
      if (pick < 0 || b > pick_bound) {
        pick = v;
        pick_bound = b;
      }
    }
    if (pick < 0) break;
    core.push_back(pick);
    if (pick_bound > best_bound) {
      best_bound = pick_bound;
      best = core;
    }
  }
  std::sort(best.begin(), best.end());
  return best;
}

void write_uniform_witness(std::ostream& out, std::span<const Vertex> core) {
  out << "witness\n";
  for (Vertex v : core) out << "v " << v << '\n';
}

std::vector<Vertex> parse_uniform_witness(std::istream& in, int vertex_count) {
  std::vector<Vertex> core;
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ss(line.substr(0, line.find('#')));
    std::string kind;
    if (!(ss >> kind)) continue;
    if (!header) {
      if (kind != "witness") throw InputError(line_no, "expected 'witness'");
      header = true;
      continue;
    }
    int v;
    if (kind != "v" || !(ss >> v) || v < 0 || v >= vertex_count) throw InputError(line_no, "bad witness vertex record");
    core.push_back(v);
  }
  if (!header) throw InputError(line_no, "missing witness header");
  return core;
}

}  // namespace capkc
