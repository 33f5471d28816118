#include "exact_oracle.hpp"

#include "errors.hpp"
#include "maxflow.hpp"

namespace capkc {

namespace {

std::vector<Vertex> positive_vertices(const Instance& inst) {
  std::vector<Vertex> out;
  for (Vertex v = 0; v < inst.vertex_count(); ++v)
    if (inst.capacity(v) > 0) out.push_back(v);
  return out;
}

// C(n, r), saturating at cap.
std::size_t binomial(std::size_t n, std::size_t r, std::size_t cap) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 acc = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    acc = acc * (n - r + i) / i;
    if (acc > cap) return cap;
  }
  return static_cast<std::size_t>(acc);
}

}  // namespace

std::size_t oracle_candidates(const Instance& inst, CapacityMode mode, std::size_t limit) {
  std::size_t m = positive_vertices(inst).size();
  std::size_t k = static_cast<std::size_t>(std::max(inst.k(), 0));
  if (mode == CapacityMode::kHard) return binomial(m, k, limit + 1);
  if (m == 0) return k == 0 ? 1 : 0;
  return binomial(m + k - 1, k, limit + 1);
}

std::optional<Solution> feasible_at(const Instance& inst, const Rational& d, CapacityMode mode, std::size_t limit) {
  if (oracle_candidates(inst, mode, limit) > limit)
    throw OracleRefused("more than " + std::to_string(limit) + " candidate center sets");
  const int n = inst.vertex_count();
  const int k = inst.k();
  auto pool = positive_vertices(inst);
  const int m = static_cast<int>(pool.size());

  std::vector<std::vector<int>> near(m);
  for (int i = 0; i < m; ++i)
    for (Vertex v = 0; v < n; ++v)
      if (inst.reachable(pool[i], v) && inst.distance(pool[i], v) <= d) near[i].push_back(v);

  auto try_set = [&](const std::vector<int>& pick) -> std::optional<Solution> {
    std::vector<int> distinct;
    std::vector<long long> slots;
    long long total = 0;
    for (int i : pick) {
      if (!distinct.empty() && distinct.back() == i) {
        slots.back() += inst.capacity(pool[i]);
      } else {
        distinct.push_back(i);
        slots.push_back(inst.capacity(pool[i]));
      }
      total += inst.capacity(pool[i]);
    }
    if (total < n) return std::nullopt;
    std::vector<std::vector<int>> allowed;
    for (int i : distinct) allowed.push_back(near[i]);
    auto owner = assign_clients(n, slots, allowed);
    if (!owner) return std::nullopt;
    Solution s;
    s.k = k;
    s.threshold = d;
    for (int i : pick) ++s.centers[pool[i]];
    s.assignment.resize(n);
    for (Vertex v = 0; v < n; ++v) {
      s.assignment[v] = pool[distinct[(*owner)[v]]];
      if (s.assignment[v] != v) s.radius = 1;
    }
    return s;
  };

  if (k <= 0) {
    if (n > 0) return std::nullopt;
    Solution s;
    s.threshold = d;
    return s;
  }
  if (m == 0) return std::nullopt;
  // Non-decreasing index sequences (strictly increasing in hard mode).
  const int step = mode == CapacityMode::kHard ? 1 : 0;
  std::vector<int> pick(k);
  for (int i = 0; i < k; ++i) pick[i] = i * step;
  if (pick.back() >= m) return std::nullopt;
  for (;;) {
    if (auto s = try_set(pick)) return s;
    int i = k - 1;
    // Largest value allowed at position i.
    auto top = [&](int pos) { return m - 1 - (k - 1 - pos) * step; };
    while (i >= 0 && pick[i] == top(i)) --i;
    if (i < 0) return std::nullopt;
    ++pick[i];
    for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + step;
  }
}

ExactOptimum exact_opt(const Instance& inst, CapacityMode mode, std::size_t limit) {
  if (oracle_candidates(inst, mode, limit) > limit)
    throw OracleRefused("more than " + std::to_string(limit) + " candidate center sets");
  std::vector<Rational> radii{Rational(0)};
  for (const auto& r : candidate_radii(inst)) radii.push_back(r);
  ExactOptimum out;
  std::size_t lo = 0, hi = radii.size();  // first feasible index lies in [lo, hi]
  while (lo < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (auto s = feasible_at(inst, radii[mid], mode, limit)) {
      out.feasible = true;
      out.radius = radii[mid];
      out.solution = std::move(*s);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return out;
}

}  // namespace capkc
