#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "qpromo/exact.hpp"

namespace qpromo {

// Largest qubit count the simulators accept. Two-quarter 8-product problems
// need 16 qubits; 20 leaves headroom without letting anyone allocate a
// surprise multi-gigabyte vector.
inline constexpr int kSimulationBound = 20;

// Dense state over the computational basis. amplitudes[x] belongs to the
// basis word x, with bit i of x holding variable x_i (matching BitString).
struct Statevector {
  int n = 0;
  std::vector<std::complex<double>> amplitudes;
};

// |+>^n, the ground state of the transverse-field driver.
Statevector uniform_initial_state(int n);

double norm_squared(const Statevector& psi);

// L2 distance between two states of equal dimension.
double state_distance(const Statevector& a, const Statevector& b);

// Sum over basis words of |p_a(x) - p_b(x)|. Any set-probability (success,
// feasibility, single outcomes) differs between the states by at most this,
// and unlike the L2 distance it ignores physically irrelevant phase drift.
double total_variation(const Statevector& a, const Statevector& b);

struct RunMetrics {
  double p_success = 0.0;   // mass on the optimal feasible set
  double p_feasible = 0.0;  // mass on the feasible set
  double normalization = 1.0;  // scale divisor applied before simulation
};

// Probabilities against the UNPENALIZED constrained problem's summary: the
// success set is exact.optimal_feasible_states and the feasible set is
// exact.feasible_mask. normalization is left at 1; callers that scaled the
// Hamiltonian record their factor on the returned struct.
RunMetrics measure_metrics(const Statevector& psi, const ExactSummary& exact);

}  // namespace qpromo
