#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "qpromo/constraints.hpp"
#include "qpromo/instances.hpp"
#include "qpromo/qubo.hpp"

namespace qpromo {

// Result of probing one linear penalty strength: the distinct ground-state
// weights of the penalized problem and whether every ground state satisfies
// the full constraint set.
struct GroundWeightReport {
  std::vector<int> weights;  // distinct Hamming weights among minima, sorted
  bool all_feasible = false;
  double ground_energy = 0.0;
};

// Applies alpha1-linear penalties to every equality of cs (and quadratic
// penalties of strength ineq_alpha2 to any pair inequalities), then solves
// exhaustively.
GroundWeightReport ground_weight(const QuboProblem& p, const ConstraintSet& cs,
                                 double alpha1, double ineq_alpha2 = 2.0);

// An interval of linear penalty strengths. When found, every probed alpha1
// strictly inside (lo, hi) produced only feasible weight-target minima; both
// endpoints are themselves verified probes, and each is within `precision`
// of the true window edge. Interval edges that extend past +/-2^20 are
// clamped there.
struct AlphaInterval {
  double lo = 0.0;
  double hi = 0.0;
  int target_weight = 0;
  bool found = false;
  int oracle_calls = 0;    // exhaustive solves performed in total
  int doubling_calls = 0;  // of which during the bracketing phase
};

// Core search: fixed must already contain every penalty except the linear
// term for `target`, whose strength is the search variable. Starts at -1,
// doubles away until the target weight is bracketed, then bisects. The
// ground-state weight along the target equality is non-increasing in alpha1
// (each state's energy is linear in alpha1 with slope weight - c), which is
// what makes the bracketing sound. If `violated` is non-null and the search
// fails on a plateau whose minima break other constraints, the violated
// labels are reported there.
AlphaInterval find_weight_window(const QuboProblem& fixed,
                                 const ConstraintSet& cs,
                                 const EqualityConstraint& target,
                                 double precision,
                                 std::vector<std::string>* violated = nullptr);

// Single-quarter search for the alpha1 window that makes the penalized
// ground state match the budget constraint exactly.
AlphaInterval find_alpha1_interval(const CMatrix& c, int A, double precision);

struct MixedSearchResult {
  AlphaInterval interval;
  // Constraint labels broken by the penalized minima when the search fails
  // even though the quarter-1 weight is on target (quadratic side too weak).
  std::vector<std::string> violated;
};

// Two-quarter search with the quarter-2 budget and all overlap inequalities
// encoded quadratically at strength alpha2, and the quarter-1 budget encoded
// linearly with the strength being searched.
MixedSearchResult mixed_scheme_search(const CMatrix& c, int A,
                                      const std::array<double, 2>& lambda,
                                      double alpha2, double precision);

struct GridSpec {
  double lo = -3.0;
  double hi = 0.0;
  int points = 61;
};

struct GridCell {
  int w1 = 0;  // quarter weights of the minimum; ties reported at the
  int w2 = 0;  // lexicographically smallest tied weight pair
  bool degenerate = false;  // more than one ground state
  bool feasible = false;    // every ground state satisfies all constraints
  double energy = 0.0;
};

struct GridScanResult {
  std::vector<double> alpha1_q1;  // axis values
  std::vector<double> alpha1_q2;
  std::vector<GridCell> cells;  // row-major, index i1 * alpha1_q2.size() + i2
  std::vector<std::pair<int, int>> satisfying_cells;  // (i1, i2) with w1=w2=A
};

// Scans a grid of (alpha1_q1, alpha1_q2) linear penalty strengths for the
// two-quarter problem, with overlap inequalities encoded quadratically at
// ineq_alpha2. Both linear penalties depend on x only through the two
// quarter weights, so each cell's ground state is read off the weight-pair
// profile of the fixed part instead of re-enumerating 2^n states per cell;
// the result is identical to a per-cell exhaustive solve.
GridScanResult grid_scan_two_quarter(const CMatrix& c, int A,
                                     const std::array<double, 2>& lambda,
                                     double ineq_alpha2,
                                     const GridSpec& spec1 = {},
                                     const GridSpec& spec2 = {});

// Exact analysis of the region where the cell (A, A) wins strictly: the
// region is an intersection of half-planes (one per competing weight pair),
// so its largest inscribed circle can be computed directly. radius = 0
// means the region is empty; a radius below the search precision means no
// grid or bisection search at that precision can be expected to hit it.
struct TwoQuarterWindow {
  bool exists = false;   // radius > 0
  double radius = 0.0;   // largest inscribed circle radius, capped at r_cap
  double alpha1_q1 = 0.0;  // center of that circle (when exists)
  double alpha1_q2 = 0.0;
};

TwoQuarterWindow two_quarter_window(const CMatrix& c, int A,
                                    const std::array<double, 2>& lambda,
                                    double ineq_alpha2, double r_cap = 10.0);

}  // namespace qpromo
