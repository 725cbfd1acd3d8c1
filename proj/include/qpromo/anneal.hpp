#pragma once

#include <functional>

#include "qpromo/ising.hpp"
#include "qpromo/statevector.hpp"

namespace qpromo {

// Interpolation controls for H(t) = a(t) * H_D + b(t) * H_P with the driver
// H_D = -sum_i sigma^x_i and H_P the diagonal Ising problem Hamiltonian.
struct AnnealSchedule {
  double t_f = 10.0;
  std::function<double(double)> a;
  std::function<double(double)> b;

  // a(t) = 1 - t/t_f, b(t) = t/t_f.
  static AnnealSchedule linear(double t_f);
};

// Evolves |+>^n through `steps` equal time slices. Each slice freezes the
// Hamiltonian at its midpoint and applies that frozen propagator exactly
// (Krylov matrix exponential, tolerance well below the step error). Phases
// follow exp(-i H t) with hbar = 1; the Ising constant rides along as a
// global phase so that energies match evaluate_ising everywhere.
Statevector anneal(const IsingModel& m, const AnnealSchedule& sched, int steps);

struct AnnealResult {
  Statevector state;
  int steps = 0;          // step count of the accepted run
  double distance = 0.0;  // total variation between the last two refinements
};

// Runs anneal with a power-of-two step count starting near 10 * t_f and
// doubles it until two consecutive refinements agree to prob_tol in total
// variation. Probabilities of any outcome set then move by less than
// prob_tol under the doubling, and by a quarter of that per further doubling
// (the slice scheme is second order). Throws ConvergenceError past
// max_steps.
AnnealResult anneal_converged(const IsingModel& m, const AnnealSchedule& sched,
                              double prob_tol = 5e-7,
                              int max_steps = 1 << 20);

}  // namespace qpromo
