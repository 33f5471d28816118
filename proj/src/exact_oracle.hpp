#pragma once

#include <cstddef>
#include <optional>

#include "instance.hpp"
#include "x_rounding.hpp"

namespace capkc {

// Brute-force ground truth. Centers are drawn from the positive-capacity
// vertices: k-subsets in hard mode, k-multisets in soft mode, in
// lexicographic order; each is tested by a bipartite max flow. Throws
// OracleRefused when the number of candidate sets exceeds `limit`.
inline constexpr std::size_t kOracleLimit = 10'000'000;

// Number of candidate center sets, saturating at limit + 1.
std::size_t oracle_candidates(const Instance& inst, CapacityMode mode, std::size_t limit = kOracleLimit);

// First feasible center set serving every client within metric distance d.
// The returned Solution uses the threshold graph at d, so its hop radius is
// 0 or 1.
std::optional<Solution> feasible_at(const Instance& inst, const Rational& d, CapacityMode mode,
                                    std::size_t limit = kOracleLimit);

struct ExactOptimum {
  bool feasible = false;
  Rational radius;
  Solution solution;
};

// Smallest d in {0} + candidate_radii(inst) with feasible_at(d), by binary
// search (feasibility is monotone in d).
ExactOptimum exact_opt(const Instance& inst, CapacityMode mode, std::size_t limit = kOracleLimit);

}  // namespace capkc
