#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "qpromo/constraints.hpp"
#include "qpromo/ising.hpp"
#include "qpromo/neldermead.hpp"
#include "qpromo/penalty.hpp"
#include "qpromo/qubo.hpp"
#include "qpromo/statevector.hpp"

namespace qpromo {

struct QaoaParams {
  std::vector<double> gamma;  // phase angles, one per layer
  std::vector<double> beta;   // mixer angles, one per layer
};

// Applies alternating layers to |+>^n: the phase layer multiplies amplitude
// x by exp(-i gamma_k E(x)) with E = evaluate_ising (constant included, a
// pure global phase); the mixer layer applies exp(+i beta_k sigma^x) to
// every qubit, the single-qubit factorization of exp(-i beta_k H_M) for
// H_M = -sum sigma^x.
Statevector qaoa_state(const IsingModel& m, const QaoaParams& params);

// <f(x)> under |psi_x|^2, exactly.
double exact_objective(const Statevector& psi, const QuboProblem& p);

// Empirical mean of f over `shots` basis-state samples drawn from |psi_x|^2.
double estimate_objective(const Statevector& psi, const QuboProblem& p,
                          long long shots, std::mt19937_64& rng);

struct QaoaRunConfig {
  int p = 8;
  int restarts = 10;
  long long shots_optimize = 1000;       // samples per objective evaluation
  std::optional<long long> shots_final;  // empty: exact final probabilities
  int max_iterations = 100;              // optimizer iteration cap
  std::uint64_t rng_seed = 0;

  // The heavyweight profile: 80 restarts, million-shot final estimates.
  static QaoaRunConfig benchmark_profile();
};

struct QaoaRestartOutcome {
  int restart = 0;
  std::uint64_t sub_seed = 0;
  QaoaParams params;            // angles after optimization
  double p_success = 0.0;       // exact, drives restart selection
  double p_feasible = 0.0;      // exact
  double mean_objective = 0.0;  // exact <f> of the penalized problem
  std::vector<NmTracePoint> trace;
};

struct QaoaOptimizeResult {
  int best_restart = 0;  // index into restarts
  std::vector<QaoaRestartOutcome> restarts;

  const QaoaRestartOutcome& best() const {
    return restarts[static_cast<std::size_t>(best_restart)];
  }
};

// Runs cfg.restarts independent attempts. Each draws its 2p starting angles
// i.i.d. uniform from [0, 1) radians using a sub-seed derived from
// cfg.rng_seed and the restart index, then minimizes the shot-estimated
// <f(penalized)> with the downhill simplex optimizer. Selection goes to the
// highest exact success probability against `target` (the unpenalized
// constrained problem's summary); ties go to the smallest sub-seed, making
// the choice independent of execution order.
QaoaOptimizeResult optimize_angles(const IsingModel& m,
                                   const QuboProblem& penalized,
                                   const ExactSummary& target,
                                   const QaoaRunConfig& cfg);

struct QaoaRunResult {
  RunMetrics metrics;  // normalization stays 1: the circuit sees raw energies
  QaoaOptimizeResult detail;
};

// Full pipeline: penalize the base problem per `scheme`, convert to an
// (unnormalized) Ising model, optimize angles, and report final metrics,
// exact by default or sampled when cfg.shots_final is set.
QaoaRunResult run_qaoa(const QuboProblem& base, const ConstraintSet& cs,
                       const PenaltyScheme& scheme, const QaoaRunConfig& cfg);

}  // namespace qpromo
