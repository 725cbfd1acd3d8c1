#pragma once

#include <functional>
#include <vector>

namespace qpromo {

struct NmOptions {
  int max_iterations = 100;  // reflect/contract/shrink cycles, not evaluations
  double f_tol = 1e-10;      // stop when the simplex value spread drops below
  double step = 0.25;        // initial simplex offset along each coordinate
};

struct NmTracePoint {
  int iteration = 0;    // 0 marks the initial simplex
  int evaluations = 0;  // objective evaluations consumed so far
  double best_value = 0.0;
};

struct NmResult {
  std::vector<double> x;
  double value = 0.0;
  int evaluations = 0;
  std::vector<NmTracePoint> trace;
};

// Downhill simplex minimization with the standard reflection, expansion,
// contraction and shrink moves. Uses objective evaluations only, so it
// tolerates the shot noise of sampled objectives; with max_iterations = 0 it
// returns the starting point untouched (after one evaluation for the value).
NmResult nelder_mead(const std::function<double(const std::vector<double>&)>& fn,
                     const std::vector<double>& x0, const NmOptions& opts = {});

}  // namespace qpromo
