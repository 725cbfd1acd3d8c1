#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qpromo/constraints.hpp"
#include "qpromo/qubo.hpp"

namespace qpromo {

// Everything the exhaustive solver learns about a problem. Degenerate
// minima are collected with an absolute tolerance of 1e-9; for massively
// degenerate inputs (for example the all-zero objective) the state lists
// grow with the degeneracy, so callers at large n should expect that.
struct ExactSummary {
  int n = 0;
  double ground_energy = 0.0;
  std::vector<BitString> ground_states;  // all minima of the bare objective
  std::optional<double> optimal_feasible_energy;
  std::vector<BitString> optimal_feasible_states;  // minima over feasible x
  std::uint64_t feasible_count = 0;
  std::vector<std::uint64_t> feasible_mask;  // bit per basis word

  bool is_feasible(std::uint64_t word) const {
    return (feasible_mask[word >> 6] >> (word & 63)) & 1ULL;
  }
};

// Exhaustive scan over all 2^n assignments (1 <= n <= 26). Enumeration
// walks a Gray code so each step updates the energy in O(weight) instead of
// re-evaluating the full objective.
ExactSummary brute_force(const QuboProblem& p, const ConstraintSet& cs = {});

struct WeightProfileEntry {
  int weight = 0;
  double min_value = 0.0;
  BitString argmin;  // first minimizer in enumeration order
};

// min f(x) restricted to each Hamming weight 0..n.
std::vector<WeightProfileEntry> min_objective_by_weight(const QuboProblem& p);

// Joint profile over the weights (w1, w2) of the two halves of an even-size
// problem. Each cell records the minimum of f over its fiber, how many
// states tie with that minimum (within 1e-9), and whether all tied states
// satisfy the pair inequalities of cs. Cell (w1, w2) sits at index
// w1 * (block + 1) + w2 with block = n / 2.
struct WeightPairCell {
  double min_value = 0.0;
  std::uint64_t ties = 0;
  bool ties_ineq_feasible = true;
};

std::vector<WeightPairCell> weight_pair_profile(const QuboProblem& p,
                                                const ConstraintSet& cs);

}  // namespace qpromo
