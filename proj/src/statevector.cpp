#include "qpromo/statevector.hpp"

#include <cmath>

#include "qpromo/errors.hpp"

namespace qpromo {

Statevector uniform_initial_state(int n) {
  if (n < 1) throw ParameterError("uniform_initial_state: n must be >= 1");
  if (n > kSimulationBound)
    throw CapacityError("uniform_initial_state: n exceeds simulation bound");
  Statevector psi;
  psi.n = n;
  const std::size_t dim = std::size_t{1} << n;
  psi.amplitudes.assign(dim, std::complex<double>(std::pow(2.0, -0.5 * n), 0.0));
  return psi;
}

double norm_squared(const Statevector& psi) {
  double total = 0.0;
  for (const auto& a : psi.amplitudes) total += std::norm(a);
  return total;
}

double state_distance(const Statevector& a, const Statevector& b) {
  if (a.n != b.n || a.amplitudes.size() != b.amplitudes.size())
    throw DimensionError("state_distance: dimension mismatch");
  double total = 0.0;
  for (std::size_t x = 0; x < a.amplitudes.size(); ++x)
    total += std::norm(a.amplitudes[x] - b.amplitudes[x]);
  return std::sqrt(total);
}

double total_variation(const Statevector& a, const Statevector& b) {
  if (a.n != b.n || a.amplitudes.size() != b.amplitudes.size())
    throw DimensionError("total_variation: dimension mismatch");
  double total = 0.0;
  for (std::size_t x = 0; x < a.amplitudes.size(); ++x)
    total += std::abs(std::norm(a.amplitudes[x]) - std::norm(b.amplitudes[x]));
  return total;
}

RunMetrics measure_metrics(const Statevector& psi, const ExactSummary& exact) {
  if (psi.n != exact.n)
    throw DimensionError("measure_metrics: state and summary sizes differ");
  if (psi.amplitudes.size() != (std::size_t{1} << psi.n))
    throw DimensionError("measure_metrics: amplitude count is not 2^n");

  RunMetrics metrics;
  for (const auto& x : exact.optimal_feasible_states)
    metrics.p_success += std::norm(psi.amplitudes[x.word]);
  for (std::size_t word = 0; word < psi.amplitudes.size(); ++word)
    if (exact.is_feasible(word))
      metrics.p_feasible += std::norm(psi.amplitudes[word]);
  return metrics;
}

}  // namespace qpromo
