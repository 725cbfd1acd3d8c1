#include "qpromo/qaoa.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <unordered_set>

#include "qpromo/errors.hpp"
#include "qpromo/exact.hpp"
#include "qpromo/rng.hpp"

namespace qpromo {

namespace {

using cd = std::complex<double>;

std::vector<double> cumulative_probabilities(const Statevector& psi) {
  std::vector<double> cum(psi.amplitudes.size());
  double running = 0.0;
  for (std::size_t x = 0; x < psi.amplitudes.size(); ++x) {
    running += std::norm(psi.amplitudes[x]);
    cum[x] = running;
  }
  return cum;
}

std::size_t sample_word(const std::vector<double>& cum, std::mt19937_64& rng) {
  const double u = uniform_unit(rng) * cum.back();
  const auto it = std::upper_bound(cum.begin(), cum.end(), u);
  const std::size_t idx = static_cast<std::size_t>(it - cum.begin());
  return std::min(idx, cum.size() - 1);
}

}  // namespace

QaoaRunConfig QaoaRunConfig::benchmark_profile() {
  QaoaRunConfig cfg;
  cfg.restarts = 80;
  cfg.shots_final = 1000000;
  return cfg;
}

Statevector qaoa_state(const IsingModel& m, const QaoaParams& params) {
  validate(m);
  if (m.n > kSimulationBound)
    throw CapacityError("qaoa_state: n exceeds simulation bound");
  if (params.gamma.size() != params.beta.size())
    throw DimensionError("qaoa_state: gamma and beta lengths differ");

  const std::vector<double> energy = ising_energy_table(m);
  Statevector psi = uniform_initial_state(m.n);
  const std::size_t dim = psi.amplitudes.size();

  for (std::size_t layer = 0; layer < params.gamma.size(); ++layer) {
    const double gamma = params.gamma[layer];
    for (std::size_t x = 0; x < dim; ++x)
      psi.amplitudes[x] *= std::exp(cd(0.0, -gamma * energy[x]));

    const cd c(std::cos(params.beta[layer]), 0.0);
    const cd is(0.0, std::sin(params.beta[layer]));
    for (int q = 0; q < m.n; ++q) {
      const std::size_t bit = std::size_t{1} << q;
      for (std::size_t x = 0; x < dim; ++x) {
        if (x & bit) continue;
        const cd lo = psi.amplitudes[x];
        const cd hi = psi.amplitudes[x | bit];
        psi.amplitudes[x] = c * lo + is * hi;
        psi.amplitudes[x | bit] = is * lo + c * hi;
      }
    }
  }
  return psi;
}

double exact_objective(const Statevector& psi, const QuboProblem& p) {
  if (psi.n != p.n)
    throw DimensionError("exact_objective: state and problem sizes differ");
  const std::vector<double> values = qubo_value_table(p);
  double mean = 0.0;
  for (std::size_t x = 0; x < values.size(); ++x)
    mean += std::norm(psi.amplitudes[x]) * values[x];
  return mean;
}

double estimate_objective(const Statevector& psi, const QuboProblem& p,
                          long long shots, std::mt19937_64& rng) {
  if (psi.n != p.n)
    throw DimensionError("estimate_objective: state and problem sizes differ");
  if (shots < 1)
    throw ParameterError("estimate_objective: shots must be >= 1");
  const std::vector<double> values = qubo_value_table(p);
  const std::vector<double> cum = cumulative_probabilities(psi);
  double total = 0.0;
  for (long long s = 0; s < shots; ++s) total += values[sample_word(cum, rng)];
  return total / static_cast<double>(shots);
}

QaoaOptimizeResult optimize_angles(const IsingModel& m,
                                   const QuboProblem& penalized,
                                   const ExactSummary& target,
                                   const QaoaRunConfig& cfg) {
  if (m.n != penalized.n || m.n != target.n)
    throw DimensionError("optimize_angles: model, problem and summary differ");
  if (cfg.p < 1) throw ParameterError("optimize_angles: p must be >= 1");
  if (cfg.restarts < 1)
    throw ParameterError("optimize_angles: restarts must be >= 1");
  if (cfg.shots_optimize < 1)
    throw ParameterError("optimize_angles: shots_optimize must be >= 1");
  if (cfg.shots_final && *cfg.shots_final < 1)
    throw ParameterError("optimize_angles: shots_final must be >= 1");
  if (cfg.max_iterations < 0)
    throw ParameterError("optimize_angles: max_iterations must be >= 0");

  const std::size_t p = static_cast<std::size_t>(cfg.p);
  auto unpack = [p](const std::vector<double>& x) {
    QaoaParams params;
    params.gamma.assign(x.begin(), x.begin() + static_cast<long>(p));
    params.beta.assign(x.begin() + static_cast<long>(p), x.end());
    return params;
  };

  QaoaOptimizeResult result;
  result.restarts.reserve(static_cast<std::size_t>(cfg.restarts));
  for (int r = 0; r < cfg.restarts; ++r) {
    const std::uint64_t sub_seed =
        derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(r));
    std::mt19937_64 rng(sub_seed);
    std::vector<double> x0(2 * p);
    for (auto& angle : x0) angle = uniform_unit(rng);

    auto objective = [&](const std::vector<double>& x) {
      const Statevector psi = qaoa_state(m, unpack(x));
      return estimate_objective(psi, penalized, cfg.shots_optimize, rng);
    };
    NmOptions opts;
    opts.max_iterations = cfg.max_iterations;
    NmResult nm = nelder_mead(objective, x0, opts);

    QaoaRestartOutcome outcome;
    outcome.restart = r;
    outcome.sub_seed = sub_seed;
    outcome.params = unpack(nm.x);
    outcome.trace = std::move(nm.trace);
    const Statevector psi = qaoa_state(m, outcome.params);
    const RunMetrics exact = measure_metrics(psi, target);
    outcome.p_success = exact.p_success;
    outcome.p_feasible = exact.p_feasible;
    outcome.mean_objective = exact_objective(psi, penalized);
    result.restarts.push_back(std::move(outcome));
  }

  int best = 0;
  for (int r = 1; r < cfg.restarts; ++r) {
    const auto& cand = result.restarts[static_cast<std::size_t>(r)];
    const auto& cur = result.restarts[static_cast<std::size_t>(best)];
    if (cand.p_success > cur.p_success ||
        (cand.p_success == cur.p_success && cand.sub_seed < cur.sub_seed))
      best = r;
  }
  result.best_restart = best;
  return result;
}

QaoaRunResult run_qaoa(const QuboProblem& base, const ConstraintSet& cs,
                       const PenaltyScheme& scheme, const QaoaRunConfig& cfg) {
  const QuboProblem penalized = apply_scheme(base, cs, scheme);
  const IsingModel m = qubo_to_ising(penalized);
  const ExactSummary target = brute_force(base, cs);

  QaoaRunResult run;
  run.detail = optimize_angles(m, penalized, target, cfg);
  const QaoaRestartOutcome& best = run.detail.best();

  if (!cfg.shots_final) {
    run.metrics.p_success = best.p_success;
    run.metrics.p_feasible = best.p_feasible;
  } else {
    const Statevector psi = qaoa_state(m, best.params);
    const std::vector<double> cum = cumulative_probabilities(psi);
    std::unordered_set<std::uint64_t> optimal;
    for (const auto& x : target.optimal_feasible_states) optimal.insert(x.word);
    std::mt19937_64 rng(derive_seed(cfg.rng_seed, "final-metrics"));
    long long hits_success = 0;
    long long hits_feasible = 0;
    for (long long s = 0; s < *cfg.shots_final; ++s) {
      const std::uint64_t word = sample_word(cum, rng);
      if (optimal.count(word)) ++hits_success;
      if (target.is_feasible(word)) ++hits_feasible;
    }
    run.metrics.p_success =
        static_cast<double>(hits_success) / static_cast<double>(*cfg.shots_final);
    run.metrics.p_feasible =
        static_cast<double>(hits_feasible) / static_cast<double>(*cfg.shots_final);
  }
  return run;
}

}  // namespace qpromo
