#include "qpromo/anneal.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <vector>

#include "qpromo/errors.hpp"

namespace qpromo {

namespace {

using cd = std::complex<double>;

// Per-slice error budget for the Krylov propagator. Slice counts stay below
// 2^20, so the accumulated propagator error sits comfortably under the 5e-7
// state tolerance used by anneal_converged.
constexpr double kSliceTol = 1e-13;
constexpr int kKrylovMax = 32;
constexpr int kSplitDepthMax = 24;

// H = a * H_D + b * diag(H_P) frozen at one slice midpoint. The driver flips
// one bit per term: (H_D psi)[x] = -sum_i psi[x ^ (1 << i)].
struct FrozenHamiltonian {
  int n;
  double a;
  double b;
  const std::vector<double>* diag;

  void apply(const std::vector<cd>& in, std::vector<cd>& out) const {
    const std::size_t dim = in.size();
    for (std::size_t x = 0; x < dim; ++x) out[x] = b * (*diag)[x] * in[x];
    for (int i = 0; i < n; ++i) {
      const std::size_t bit = std::size_t{1} << i;
      for (std::size_t x = 0; x < dim; ++x) out[x] -= a * in[x ^ bit];
    }
  }
};

double l2_norm(const std::vector<cd>& v) {
  double total = 0.0;
  for (const auto& z : v) total += std::norm(z);
  return std::sqrt(total);
}

cd inner(const std::vector<cd>& a, const std::vector<cd>& b) {
  cd total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) total += std::conj(a[i]) * b[i];
  return total;
}

// One Lanczos attempt at v <- exp(-i dt H) v. Builds a Krylov basis with
// full reorthogonalization and exponentiates the tridiagonal projection via
// its eigendecomposition. Returns false when the residual estimate still
// exceeds tol at the dimension cap, in which case the caller splits dt.
bool lanczos_exp_try(const FrozenHamiltonian& h, std::vector<cd>& v, double dt,
                     double tol) {
  const std::size_t dim = v.size();
  const double beta0 = l2_norm(v);
  if (beta0 == 0.0) return true;

  const int m_max = static_cast<int>(
      std::min<std::size_t>(static_cast<std::size_t>(kKrylovMax), dim));
  std::vector<std::vector<cd>> basis;
  basis.reserve(static_cast<std::size_t>(m_max));
  {
    std::vector<cd> q0 = v;
    for (auto& z : q0) z /= beta0;
    basis.push_back(std::move(q0));
  }
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<cd> w(dim);
  std::vector<cd> y;

  for (int j = 0; j < m_max; ++j) {
    h.apply(basis[static_cast<std::size_t>(j)], w);
    alpha.push_back(std::real(inner(basis[static_cast<std::size_t>(j)], w)));
    for (std::size_t x = 0; x < dim; ++x)
      w[x] -= alpha.back() * basis[static_cast<std::size_t>(j)][x];
    if (j > 0)
      for (std::size_t x = 0; x < dim; ++x)
        w[x] -= beta.back() * basis[static_cast<std::size_t>(j - 1)][x];
    // Full reorthogonalization keeps the basis clean; at m <= 32 the extra
    // inner products are cheap next to the matrix applications.
    for (const auto& q : basis) {
      const cd overlap = inner(q, w);
      for (std::size_t x = 0; x < dim; ++x) w[x] -= overlap * q[x];
    }
    const double bj = l2_norm(w);

    // Exponentiate the (j+1)-dimensional tridiagonal projection.
    const int k = j + 1;
    Eigen::VectorXd t_diag(k);
    for (int i = 0; i < k; ++i) t_diag[i] = alpha[static_cast<std::size_t>(i)];
    Eigen::VectorXd t_sub(std::max(k - 1, 0));
    for (int i = 0; i + 1 < k; ++i) t_sub[i] = beta[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(t_diag, t_sub, Eigen::ComputeEigenvectors);
    const Eigen::VectorXd& lambda = es.eigenvalues();
    const Eigen::MatrixXd& q = es.eigenvectors();
    y.assign(static_cast<std::size_t>(k), cd(0.0, 0.0));
    for (int col = 0; col < k; ++col) {
      const cd phase = std::exp(cd(0.0, -dt * lambda[col])) * q(0, col);
      for (int row = 0; row < k; ++row)
        y[static_cast<std::size_t>(row)] += q(row, col) * phase;
    }

    const double residual = beta0 * bj * std::abs(y[static_cast<std::size_t>(j)]);
    const bool breakdown = bj <= 1e-14;  // basis spans an invariant subspace
    const bool spans_all = static_cast<std::size_t>(k) == dim;
    if (residual <= tol || breakdown || spans_all) {
      for (std::size_t x = 0; x < dim; ++x) {
        cd acc = 0.0;
        for (int row = 0; row < k; ++row)
          acc += y[static_cast<std::size_t>(row)] *
                 basis[static_cast<std::size_t>(row)][x];
        v[x] = beta0 * acc;
      }
      return true;
    }
    if (k == m_max) return false;

    beta.push_back(bj);
    std::vector<cd> next = w;
    for (auto& z : next) z /= bj;
    basis.push_back(std::move(next));
  }
  return false;
}

void apply_propagator(const FrozenHamiltonian& h, std::vector<cd>& v, double dt,
                      double tol, int depth) {
  if (lanczos_exp_try(h, v, dt, tol)) return;
  if (depth >= kSplitDepthMax)
    throw ConvergenceError("anneal: slice propagator did not converge");
  apply_propagator(h, v, 0.5 * dt, 0.5 * tol, depth + 1);
  apply_propagator(h, v, 0.5 * dt, 0.5 * tol, depth + 1);
}

}  // namespace

AnnealSchedule AnnealSchedule::linear(double t_f) {
  if (t_f <= 0.0)
    throw ParameterError("AnnealSchedule::linear: t_f must be > 0");
  AnnealSchedule sched;
  sched.t_f = t_f;
  sched.a = [t_f](double t) { return 1.0 - t / t_f; };
  sched.b = [t_f](double t) { return t / t_f; };
  return sched;
}

Statevector anneal(const IsingModel& m, const AnnealSchedule& sched,
                   int steps) {
  validate(m);
  if (m.n > kSimulationBound)
    throw CapacityError("anneal: n exceeds simulation bound");
  if (steps < 1) throw ParameterError("anneal: steps must be >= 1");
  if (sched.t_f <= 0.0) throw ParameterError("anneal: t_f must be > 0");
  if (!sched.a || !sched.b)
    throw ParameterError("anneal: schedule control functions not set");

  const std::vector<double> diag = ising_energy_table(m);
  Statevector psi = uniform_initial_state(m.n);
  const double dt = sched.t_f / steps;
  for (int k = 0; k < steps; ++k) {
    const double t_mid = (static_cast<double>(k) + 0.5) * dt;
    const FrozenHamiltonian h{m.n, sched.a(t_mid), sched.b(t_mid), &diag};
    apply_propagator(h, psi.amplitudes, dt, kSliceTol, 0);
  }
  return psi;
}

AnnealResult anneal_converged(const IsingModel& m, const AnnealSchedule& sched,
                              double prob_tol, int max_steps) {
  if (prob_tol <= 0.0)
    throw ParameterError("anneal_converged: prob_tol must be > 0");
  if (max_steps < 2)
    throw ParameterError("anneal_converged: max_steps must be >= 2");

  int steps = 1;
  while (steps < 10.0 * sched.t_f && 2 * steps <= max_steps) steps *= 2;

  Statevector prev = anneal(m, sched, steps);
  while (2 * steps <= max_steps) {
    const int next_steps = 2 * steps;
    Statevector next = anneal(m, sched, next_steps);
    const double d = total_variation(prev, next);
    if (d < prob_tol) {
      AnnealResult result;
      result.state = std::move(next);
      result.steps = next_steps;
      result.distance = d;
      return result;
    }
    prev = std::move(next);
    steps = next_steps;
  }
  throw ConvergenceError("anneal_converged: step doubling hit max_steps");
}

}  // namespace qpromo
