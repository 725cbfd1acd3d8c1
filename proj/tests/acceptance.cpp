// Acceptance runner: ten end-to-end checks, one per shipped guarantee. Each
// check prints a single PASS/FAIL line with its wall time (details indented
// below it) and the process exits nonzero if any check fails. Where a check
// judges a simulator or a search, the reference values come from small
// independent oracles written here (plain enumeration, RK4 integration,
// dense matrices), not from the code paths under test.
//
// Run with no arguments for the full suite, or pass check numbers to run a
// subset, e.g. `qpromo-acceptance 5 9`.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "qpromo/anneal.hpp"
#include "qpromo/bits.hpp"
#include "qpromo/constraints.hpp"
#include "qpromo/exact.hpp"
#include "qpromo/instances.hpp"
#include "qpromo/ising.hpp"
#include "qpromo/penalty.hpp"
#include "qpromo/qaoa.hpp"
#include "qpromo/qubo.hpp"
#include "qpromo/rng.hpp"
#include "qpromo/search.hpp"
#include "qpromo/statevector.hpp"

namespace {

using namespace qpromo;
using Complex = std::complex<double>;

constexpr const char* kCorpusDir = QPROMO_SOURCE_DIR "/data/corpus";

// Seed of the acceptance run. Alpha1 values are sampled from search windows
// with the same recipe the experiment pipelines use, so results here can be
// reproduced with the CLI at --seed 0.
constexpr std::uint64_t kRunSeed = 0;

InstanceRecord load_id(const std::string& id) {
  return load_instance(std::string(kCorpusDir) + "/" + id + ".json");
}

double sample_alpha1(const AlphaInterval& itv, const std::string& id) {
  std::mt19937_64 rng(derive_seed(kRunSeed, id));
  return uniform_in(rng, itv.lo, itv.hi);
}

std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  if (n == 0) return std::numeric_limits<double>::quiet_NaN();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<std::uint64_t> sorted_words(const std::vector<BitString>& xs) {
  std::vector<std::uint64_t> w;
  w.reserve(xs.size());
  for (const BitString& x : xs) w.push_back(x.word);
  std::sort(w.begin(), w.end());
  return w;
}

struct CheckResult {
  bool pass = false;
  std::vector<std::string> details;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details.push_back("FAILED: " + what);
    }
  }
};

class Runner {
 public:
  void run(int index, const char* title,
           const std::function<CheckResult()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    CheckResult r;
    try {
      r = body();
    } catch (const std::exception& e) {
      r.pass = false;
      r.details.push_back(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    std::printf("check %2d: %s  %-48s (%7.2f s)\n", index,
                r.pass ? "PASS" : "FAIL", title, secs);
    for (const std::string& d : r.details)
      std::printf("          %s\n", d.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failures_;
  }

  int failures() const { return failures_; }

 private:
  int failures_ = 0;
};

// ---------------------------------------------------------------------------
// check 1: the qubo/ising change of variables is exact

CheckResult check_conversion() {
  CheckResult r;
  r.pass = true;

  // the two-variable hand case: a single pair coefficient of 2 must land on
  // coupling 1/2 with both fields at -1/2 (and constant 1/2, which keeps the
  // energies themselves equal, not just equal up to a shift).
  QuboProblem hand;
  hand.n = 2;
  hand.linear.assign(2, 0.0);
  hand.quadratic[{0, 1}] = 2.0;
  const IsingModel hm = qubo_to_ising(hand);
  r.require(hm.couplings.at({0, 1}) == 0.5, "hand case coupling != 1/2");
  r.require(hm.fields[0] == -0.5 && hm.fields[1] == -0.5,
            "hand case fields != -1/2");
  r.require(hm.constant == 0.5, "hand case constant != 1/2");

  // random round trips: every bitstring of every problem must give the same
  // energy through both forms, to 1e-12 relative.
  int checked = 0;
  double worst = 0.0;
  for (int k = 0; k < 50; ++k) {
    std::mt19937_64 rng(derive_seed(777, static_cast<std::uint64_t>(k)));
    const int n = 1 + static_cast<int>(rng() % 10);
    QuboProblem q;
    q.n = n;
    q.linear.resize(n);
    for (int i = 0; i < n; ++i) q.linear[i] = uniform_in(rng, -3.0, 3.0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (uniform_unit(rng) < 0.7)
          q.quadratic[{i, j}] = uniform_in(rng, -3.0, 3.0);
    q.offset = uniform_in(rng, -2.0, 2.0);

    const IsingModel m = qubo_to_ising(q);
    for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
      const BitString b{n, x};
      const double fq = evaluate_qubo(q, b);
      const double fi = evaluate_ising(m, b);
      const double rel = std::abs(fq - fi) / std::max(1.0, std::abs(fq));
      worst = std::max(worst, rel);
      ++checked;
    }
  }
  r.require(worst <= 1e-12,
            fmt("round-trip relative error %.3g > 1e-12", worst));
  r.details.push_back(
      fmt("50 random problems, %d energies, worst relative error %.3g",
          checked, worst));
  return r;
}

// ---------------------------------------------------------------------------
// check 2: quadratic penalties vanish exactly on feasible strings and are
// strictly positive elsewhere; the expansion coefficients are the closed
// forms

CheckResult check_penalty() {
  CheckResult r;
  r.pass = true;

  std::uint64_t feasible_seen = 0, infeasible_seen = 0;
  for (int n = 2; n <= 8; ++n) {
    for (int A = 1; A < n; ++A) {
      EqualityConstraint eq{"budget", std::vector<double>(n, 1.0),
                            static_cast<double>(A)};
      const QuboProblem pen = quadratic_equality_penalty(eq, 2.0);
      for (std::uint64_t x = 0; x < (1ULL << n); ++x) {
        const BitString b{n, x};
        const double v = evaluate_qubo(pen, b);
        if (b.weight() == A) {
          ++feasible_seen;
          if (v != 0.0) r.require(false, fmt("n=%d A=%d x=%llu: feasible penalty %.3g != 0", n, A, static_cast<unsigned long long>(x), v));
        } else {
          ++infeasible_seen;
          if (!(v > 0.0)) r.require(false, fmt("n=%d A=%d x=%llu: infeasible penalty %.3g not > 0", n, A, static_cast<unsigned long long>(x), v));
        }
      }
    }
  }
  r.details.push_back(fmt(
      "exhaustive to n=8: %llu feasible strings at 0, %llu infeasible > 0",
      static_cast<unsigned long long>(feasible_seen),
      static_cast<unsigned long long>(infeasible_seen)));

  // unit-weight expansion at alpha2=2, A=3, n=8: every linear coefficient is
  // alpha2*(1-2A), every pair is 2*alpha2, the offset is alpha2*A^2. All
  // values are small integers, so the comparison is exact.
  {
    const double a2 = 2.0, A = 3.0;
    EqualityConstraint eq{"budget", std::vector<double>(8, 1.0), A};
    const QuboProblem pen = quadratic_equality_penalty(eq, a2);
    for (int i = 0; i < 8; ++i)
      r.require(pen.linear[i] == a2 * (1.0 - 2.0 * A),
                fmt("unit linear coefficient %d is %.17g", i, pen.linear[i]));
    r.require(pen.quadratic.size() == 28, "unit pair count != 28");
    for (const auto& [key, v] : pen.quadratic)
      r.require(v == 2.0 * a2, fmt("unit pair coefficient is %.17g", v));
    r.require(pen.offset == a2 * A * A,
              fmt("unit offset is %.17g", pen.offset));
  }

  // general weights keep the closed form alpha2*mu_i*(mu_i-2c) /
  // 2*alpha2*mu_i*mu_j / alpha2*c^2.
  {
    const double a2 = 2.0, c = 4.0;
    EqualityConstraint eq{"w", {1.0, 2.0, 3.0}, c};
    const QuboProblem pen = quadratic_equality_penalty(eq, a2);
    for (int i = 0; i < 3; ++i)
      r.require(pen.linear[i] == a2 * eq.mu[i] * (eq.mu[i] - 2.0 * c),
                fmt("weighted linear coefficient %d is %.17g", i,
                    pen.linear[i]));
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        r.require(
            pen.quadratic.at({i, j}) == 2.0 * a2 * eq.mu[i] * eq.mu[j],
            fmt("weighted pair (%d,%d) is %.17g", i, j,
                pen.quadratic.at({i, j})));
    r.require(pen.offset == a2 * c * c,
              fmt("weighted offset is %.17g", pen.offset));
  }
  return r;
}

// ---------------------------------------------------------------------------
// check 3: the per-weight objective minimum never decreases with the weight

CheckResult check_weight_monotone() {
  CheckResult r;
  r.pass = true;
  int instances = 0, violations = 0;
  for (int n : {6, 8, 10}) {
    for (int k = 0; k < 100; ++k) {
      const InstanceRecord rec = load_id(std::to_string(n) + "_" +
                                         std::to_string(k));
      const BuiltProblem built = build_single_quarter(rec.c, rec.budget);
      const auto profile = min_objective_by_weight(built.objective);
      ++instances;
      for (std::size_t w = 0; w + 1 < profile.size(); ++w)
        if (profile[w + 1].min_value < profile[w].min_value) ++violations;
    }
  }
  r.require(violations == 0, fmt("%d monotonicity violations", violations));
  r.details.push_back(
      fmt("%d instances (all of sizes 6, 8, 10), %d violations", instances,
          violations));
  return r;
}

// ---------------------------------------------------------------------------
// check 4: the penalized ground-state weight is monotone in alpha1 and the
// window search brackets exactly the strengths that recover the constrained
// optimum

CheckResult check_alpha1_search() {
  CheckResult r;
  r.pass = true;

  int monotone_breaks = 0, windows = 0, samples_ok = 0, samples = 0;
  for (int k = 0; k < 20; ++k) {
    const std::string id = "8_" + std::to_string(k);
    const InstanceRecord rec = load_id(id);
    const BuiltProblem built = build_single_quarter(rec.c, rec.budget);

    // dense scan: both the largest and smallest tied ground weight must be
    // non-increasing along increasing alpha1.
    int prev_max = 1 << 20, prev_min = 1 << 20;
    for (int s = 0; s <= 240; ++s) {
      const double a1 = -5.0 + 6.0 * s / 240.0;
      const GroundWeightReport g =
          ground_weight(built.objective, built.constraints, a1);
      if (g.weights.back() > prev_max || g.weights.front() > prev_min)
        ++monotone_breaks;
      prev_max = g.weights.back();
      prev_min = g.weights.front();
    }

    // the reported window, probed at ten interior strengths: each penalized
    // ground set must coincide with the constrained optimum of the bare
    // problem (same energy, same states).
    const AlphaInterval itv = find_alpha1_interval(rec.c, rec.budget, 1e-5);
    r.require(itv.found, id + ": no alpha1 window found");
    if (!itv.found) continue;
    ++windows;
    const ExactSummary bare = brute_force(built.objective, built.constraints);
    const auto want = sorted_words(bare.optimal_feasible_states);
    for (int j = 0; j < 10; ++j) {
      const double a1 = itv.lo + (itv.hi - itv.lo) * (2 * j + 1) / 20.0;
      const QuboProblem pen = apply_scheme(
          built.objective, built.constraints,
          uniform_scheme(built.constraints, PenaltyKind::Linear, a1, 2.0));
      const ExactSummary got = brute_force(pen);
      const double tol =
          1e-12 * std::max(1.0, std::abs(*bare.optimal_feasible_energy));
      ++samples;
      if (std::abs(got.ground_energy - *bare.optimal_feasible_energy) <= tol &&
          sorted_words(got.ground_states) == want) {
        ++samples_ok;
      } else {
        r.require(false, fmt("%s sample %d at alpha1=%.9g misses the "
                             "constrained optimum",
                             id.c_str(), j, a1));
      }
    }
  }
  r.require(monotone_breaks == 0,
            fmt("%d weight monotonicity breaks across scans", monotone_breaks));
  r.details.push_back(fmt("20 dense scans (241 points each), %d breaks; %d "
                          "windows, %d/%d interior samples exact",
                          monotone_breaks, windows, samples_ok, samples));

  // a problem built so that no single linear strength works: two cliques
  // with a cheap size-3 plateau and an expensive jump to size 5, so weight 4
  // needs alpha1 < -4.2 and alpha1 > -4.0 at once.
  CMatrix c(8, std::vector<double>(8, 0.0));
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      if (i == j) continue;
      const bool a = i < 5, b = j < 5;
      c[i][j] = (a && b) ? 0.5 : (!a && !b) ? 0.3 : 0.8;
    }
  const AlphaInterval blocked = find_alpha1_interval(c, 4, 1e-5);
  r.require(!blocked.found, "constructed blocked instance reported a window");
  r.details.push_back(fmt("constructed blocked instance: found=%s",
                          blocked.found ? "true" : "false"));
  return r;
}

// ---------------------------------------------------------------------------
// check 5: on the two-quarter corpus the default strength grid splits into
// instances with satisfying cells and instances without any; the mixed
// fallback either finds a window or its failure is logged with the violated
// labels

CheckResult check_grid_dichotomy() {
  CheckResult r;
  r.pass = true;
  const std::array<double, 2> lambda{1.5, 1.0};

  int with_cells = 0, without_cells = 0;
  for (int k = 0; k < 20; ++k) {
    const std::string id = "8_" + std::to_string(k);
    const InstanceRecord rec = load_id(id);
    const GridScanResult grid =
        grid_scan_two_quarter(rec.c, rec.budget, lambda, 2.0);
    if (!grid.satisfying_cells.empty()) {
      ++with_cells;
      continue;
    }
    ++without_cells;

    const TwoQuarterWindow win =
        two_quarter_window(rec.c, rec.budget, lambda, 2.0);
    const MixedSearchResult mixed =
        mixed_scheme_search(rec.c, rec.budget, lambda, 2.0, 1e-5);
    if (mixed.interval.found) {
      // verify the window's midpoint really recovers the feasible optimum
      const double mid = 0.5 * (mixed.interval.lo + mixed.interval.hi);
      const BuiltProblem built =
          build_two_quarter(rec.c, rec.budget, lambda);
      PenaltyScheme sch;
      sch.equalities["budget_q1"] = {PenaltyKind::Linear, mid};
      sch.equalities["budget_q2"] = {PenaltyKind::Quadratic, 2.0};
      for (const auto& ineq : built.constraints.inequalities)
        sch.inequalities[ineq.label] = 2.0;
      const ExactSummary got =
          brute_force(apply_scheme(built.objective, built.constraints, sch));
      bool all_ok = !got.ground_states.empty();
      for (const BitString& x : got.ground_states)
        all_ok = all_ok && feasible(built.constraints, x);
      r.require(all_ok, id + ": mixed window midpoint minima infeasible");
      r.details.push_back(fmt(
          "%s: no satisfying cell on the default grid; mixed window "
          "[%.6g, %.6g] verified at midpoint",
          id.c_str(), mixed.interval.lo, mixed.interval.hi));
    } else {
      std::string labels;
      for (const std::string& l : mixed.violated)
        labels += (labels.empty() ? "" : ";") + l;
      r.details.push_back(fmt(
          "%s: no satisfying cell on the default grid; mixed search failed "
          "(violated: %s; exact window %s, radius %.3g at (%.4g, %.4g))",
          id.c_str(), labels.c_str(), win.exists ? "exists off-grid" : "empty",
          win.radius, win.alpha1_q1, win.alpha1_q2));
    }
  }
  r.require(with_cells >= 1, "no instance with a satisfying cell");
  r.require(without_cells >= 1, "no instance without satisfying cells");
  r.details.push_back(fmt("%d instances with satisfying cells, %d without",
                          with_cells, without_cells));
  return r;
}

// ---------------------------------------------------------------------------
// check 6: annealer validity: unitarity, the t_f -> 0 limit, the adiabatic
// single-spin case against an RK4 oracle, and step-doubling convergence

// true time-dependent RK4 for one qubit, no slice freezing: psi' = -i H(t)
// psi with H(t) = a(t) * (-sigma^x) + b(t) * h * sigma^z.
double rk4_single_spin(double h, double t_f, int steps) {
  std::array<Complex, 2> psi{Complex(1.0 / std::sqrt(2.0), 0.0),
                             Complex(1.0 / std::sqrt(2.0), 0.0)};
  const double dt = t_f / steps;
  const auto deriv = [&](double t, const std::array<Complex, 2>& y) {
    const double a = 1.0 - t / t_f, b = t / t_f;
    const Complex mi(0.0, -1.0);
    return std::array<Complex, 2>{mi * (-a * y[1] + b * h * y[0]),
                                  mi * (-a * y[0] - b * h * y[1])};
  };
  for (int s = 0; s < steps; ++s) {
    const double t = s * dt;
    const auto k1 = deriv(t, psi);
    std::array<Complex, 2> y2{psi[0] + 0.5 * dt * k1[0],
                              psi[1] + 0.5 * dt * k1[1]};
    const auto k2 = deriv(t + 0.5 * dt, y2);
    std::array<Complex, 2> y3{psi[0] + 0.5 * dt * k2[0],
                              psi[1] + 0.5 * dt * k2[1]};
    const auto k3 = deriv(t + 0.5 * dt, y3);
    std::array<Complex, 2> y4{psi[0] + dt * k3[0], psi[1] + dt * k3[1]};
    const auto k4 = deriv(t + dt, y4);
    for (int i = 0; i < 2; ++i)
      psi[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  }
  return std::norm(psi[1]);
}

CheckResult check_anneal_validity() {
  CheckResult r;
  r.pass = true;

  const InstanceRecord rec = load_id("6_0");
  const BuiltProblem built = build_single_quarter(rec.c, rec.budget);
  const QuboProblem pen = apply_scheme(
      built.objective, built.constraints,
      uniform_scheme(built.constraints, PenaltyKind::Quadratic, 2.0, 2.0));
  const IsingModel m = normalize_ising(qubo_to_ising(pen), 1.0, 3.0).model;

  // unitarity
  const Statevector evolved = anneal(m, AnnealSchedule::linear(10.0), 512);
  const double norm_drift = std::abs(norm_squared(evolved) - 1.0);
  r.require(norm_drift <= 1e-9, fmt("norm drift %.3g > 1e-9", norm_drift));

  // t_f -> 0 keeps the uniform superposition
  const Statevector frozen = anneal(m, AnnealSchedule::linear(1e-8), 16);
  double worst_uniform = 0.0;
  for (const Complex& a : frozen.amplitudes)
    worst_uniform = std::max(
        worst_uniform, std::abs(std::norm(a) - 1.0 / frozen.amplitudes.size()));
  r.require(worst_uniform <= 1e-6,
            fmt("t_f=1e-8 probability deviation %.3g > 1e-6", worst_uniform));

  // slow single-spin sweep: h = +1 makes x = 1 the problem ground state
  const IsingModel spin{1, {1.0}, {}, 0.0};
  const AnnealResult slow =
      anneal_converged(spin, AnnealSchedule::linear(50.0), 5e-7);
  const double p1 = std::norm(slow.state.amplitudes[1]);
  const double p1_oracle = rk4_single_spin(1.0, 50.0, 200000);
  r.require(p1 > 0.99, fmt("single-spin success %.6f <= 0.99", p1));
  r.require(std::abs(p1 - p1_oracle) < 1e-6,
            fmt("single-spin vs RK4 oracle differ by %.3g", p1 - p1_oracle));
  r.details.push_back(fmt(
      "norm drift %.2g; t_f->0 deviation %.2g; single spin P=%.6f "
      "(oracle %.6f)",
      norm_drift, worst_uniform, p1, p1_oracle));

  // step doubling moves the success probability by less than 1e-6
  const InstanceRecord rec2 = load_id("6_3");
  const BuiltProblem built2 = build_single_quarter(rec2.c, rec2.budget);
  const ExactSummary target2 =
      brute_force(built2.objective, built2.constraints);
  const QuboProblem pen2 = apply_scheme(
      built2.objective, built2.constraints,
      uniform_scheme(built2.constraints, PenaltyKind::Quadratic, 2.0, 2.0));
  const IsingModel m2 = normalize_ising(qubo_to_ising(pen2), 1.0, 3.0).model;
  const AnnealResult conv =
      anneal_converged(m2, AnnealSchedule::linear(10.0), 5e-7);
  const Statevector doubled =
      anneal(m2, AnnealSchedule::linear(10.0), 2 * conv.steps);
  const double ps_a = measure_metrics(conv.state, target2).p_success;
  const double ps_b = measure_metrics(doubled, target2).p_success;
  r.require(std::abs(ps_a - ps_b) < 1e-6,
            fmt("doubling moved P_S by %.3g", ps_a - ps_b));
  r.details.push_back(fmt(
      "step doubling %d -> %d steps moved P_S by %.2g", conv.steps,
      2 * conv.steps, std::abs(ps_a - ps_b)));
  return r;
}

// ---------------------------------------------------------------------------
// check 7: the quadratic encoding needs more rescaling than the linear one
// at every corpus size

CheckResult check_normalization_ratio() {
  CheckResult r;
  r.pass = true;
  for (int n = 6; n <= 12; ++n) {
    double sum_ratio = 0.0, sum_q = 0.0, sum_l = 0.0;
    int used = 0, skipped = 0;
    for (int k = 0; k < 100; ++k) {
      const std::string id = std::to_string(n) + "_" + std::to_string(k);
      const InstanceRecord rec = load_id(id);
      const BuiltProblem built = build_single_quarter(rec.c, rec.budget);
      const QuboProblem quad = apply_scheme(
          built.objective, built.constraints,
          uniform_scheme(built.constraints, PenaltyKind::Quadratic, 2.0, 2.0));
      const double n_q =
          normalize_ising(qubo_to_ising(quad), 1.0, 3.0).factor;
      const AlphaInterval itv = find_alpha1_interval(rec.c, rec.budget, 1e-5);
      if (!itv.found) {
        ++skipped;
        continue;
      }
      const QuboProblem lin = apply_scheme(
          built.objective, built.constraints,
          uniform_scheme(built.constraints, PenaltyKind::Linear,
                         sample_alpha1(itv, id), 2.0));
      const double n_l = normalize_ising(qubo_to_ising(lin), 1.0, 3.0).factor;
      sum_ratio += n_q / n_l;
      sum_q += n_q;
      sum_l += n_l;
      ++used;
    }
    r.require(used > 0, fmt("size %d: no instance with a linear window", n));
    if (used == 0) continue;
    const double mean_ratio = sum_ratio / used;
    r.require(mean_ratio > 1.0,
              fmt("size %d: mean ratio %.4f <= 1", n, mean_ratio));
    r.require(sum_q > sum_l,
              fmt("size %d: mean N_quadratic <= mean N_linear", n));
    r.details.push_back(fmt(
        "size %2d: mean N_quad/N_lin = %.3f (means %.3f / %.3f, %d used, "
        "%d skipped)",
        n, mean_ratio, sum_q / used, sum_l / used, used, skipped));
  }
  return r;
}

// ---------------------------------------------------------------------------
// check 8: the full annealing comparison beats random guessing under both
// encodings on nearly every instance

CheckResult check_qa_pipeline() {
  CheckResult r;
  r.pass = true;
  std::vector<double> ps_q, pf_q, ps_l, pf_l;
  int beats_q = 0, beats_l = 0, ran_l = 0, total = 0, skipped = 0;

  for (int n : {6, 8}) {
    for (int k = 0; k < 50; ++k) {
      const std::string id = std::to_string(n) + "_" + std::to_string(k);
      const InstanceRecord rec = load_id(id);
      const BuiltProblem built = build_single_quarter(rec.c, rec.budget);
      const ExactSummary target =
          brute_force(built.objective, built.constraints);
      const double baseline =
          static_cast<double>(target.optimal_feasible_states.size()) /
          std::ldexp(1.0, built.objective.n);
      ++total;

      const auto run_arm = [&](PenaltyKind kind, double strength) {
        const QuboProblem pen = apply_scheme(
            built.objective, built.constraints,
            uniform_scheme(built.constraints, kind, strength, 2.0));
        const IsingModel m =
            normalize_ising(qubo_to_ising(pen), 1.0, 3.0).model;
        const AnnealResult res =
            anneal_converged(m, AnnealSchedule::linear(10.0), 5e-7);
        return measure_metrics(res.state, target);
      };

      const RunMetrics mq = run_arm(PenaltyKind::Quadratic, 2.0);
      ps_q.push_back(mq.p_success);
      pf_q.push_back(mq.p_feasible);
      if (mq.p_success > baseline) ++beats_q;

      const AlphaInterval itv = find_alpha1_interval(rec.c, rec.budget, 1e-5);
      if (!itv.found) {
        ++skipped;
        r.details.push_back(id + ": no linear window, linear arm skipped");
        continue;
      }
      ++ran_l;
      const RunMetrics ml =
          run_arm(PenaltyKind::Linear, sample_alpha1(itv, id));
      ps_l.push_back(ml.p_success);
      pf_l.push_back(ml.p_feasible);
      if (ml.p_success > baseline) ++beats_l;
    }
  }

  // both encodings must beat the uniform-guess baseline on at least 95% of
  // the instances they ran on
  r.require(beats_q * 20 >= total * 19,
            fmt("quadratic beats baseline on only %d of %d", beats_q, total));
  r.require(ran_l > 0 && beats_l * 20 >= ran_l * 19,
            fmt("linear beats baseline on only %d of %d", beats_l, ran_l));
  r.details.push_back(fmt(
      "quadratic: beats baseline %d/%d, median P_S %.4f, median P_F %.4f",
      beats_q, total, median(ps_q), median(pf_q)));
  r.details.push_back(fmt(
      "linear:    beats baseline %d/%d, median P_S %.4f, median P_F %.4f",
      beats_l, ran_l, median(ps_l), median(pf_l)));
  r.details.push_back(fmt(
      "median ordering (informational, not gated): linear >= quadratic on "
      "P_S: %s",
      median(ps_l) >= median(ps_q) ? "yes" : "no"));
  if (skipped) r.details.push_back(fmt("%d instance(s) skipped", skipped));
  return r;
}

// ---------------------------------------------------------------------------
// check 9: circuit-level validity of the alternating-layer simulator plus
// the desk-scale optimization pipeline

// dense mixer oracle: exp(+i beta sigma^x) on every qubit has the explicit
// matrix element cos(beta)^(n-d) * (i sin(beta))^d between words at Hamming
// distance d, which avoids reusing the simulator's own qubit loop.
Statevector dense_qaoa_p1(const IsingModel& m, double gamma, double beta) {
  const int n = m.n;
  const std::size_t dim = 1ULL << n;
  const std::vector<double> energy = ising_energy_table(m);
  std::vector<Complex> phased(dim);
  const double amp0 = 1.0 / std::sqrt(static_cast<double>(dim));
  for (std::size_t x = 0; x < dim; ++x)
    phased[x] = amp0 * std::polar(1.0, -gamma * energy[x]);
  std::vector<Complex> powers(n + 1);
  for (int d = 0; d <= n; ++d)
    powers[d] = std::pow(Complex(std::cos(beta), 0.0), n - d) *
                std::pow(Complex(0.0, std::sin(beta)), d);
  Statevector out;
  out.n = n;
  out.amplitudes.assign(dim, Complex(0.0, 0.0));
  for (std::size_t x = 0; x < dim; ++x)
    for (std::size_t y = 0; y < dim; ++y)
      out.amplitudes[x] += powers[std::popcount(x ^ y)] * phased[y];
  return out;
}

CheckResult check_qaoa() {
  CheckResult r;
  r.pass = true;

  // zero angles leave the uniform state, so success probability equals the
  // random-guess baseline bit for bit
  {
    const InstanceRecord rec = load_id("6_0");
    const BuiltProblem built = build_single_quarter(rec.c, rec.budget);
    const ExactSummary target =
        brute_force(built.objective, built.constraints);
    const QuboProblem pen = apply_scheme(
        built.objective, built.constraints,
        uniform_scheme(built.constraints, PenaltyKind::Quadratic, 2.0, 2.0));
    const IsingModel m = qubo_to_ising(pen);
    const Statevector psi =
        qaoa_state(m, QaoaParams{{0.0, 0.0}, {0.0, 0.0}});
    const double baseline =
        static_cast<double>(target.optimal_feasible_states.size()) / 64.0;
    const double ps = measure_metrics(psi, target).p_success;
    r.require(ps == baseline,
              fmt("zero-angle P_S %.17g != baseline %.17g", ps, baseline));
  }

  // one layer against the dense oracle
  {
    double worst = 0.0;
    for (int n = 2; n <= 4; ++n) {
      std::mt19937_64 rng(derive_seed(4242, static_cast<std::uint64_t>(n)));
      IsingModel m;
      m.n = n;
      m.fields.resize(n);
      for (int i = 0; i < n; ++i) m.fields[i] = uniform_in(rng, -1.0, 1.0);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          m.couplings[{i, j}] = uniform_in(rng, -1.0, 1.0);
      m.constant = uniform_in(rng, -1.0, 1.0);
      for (int rep = 0; rep < 3; ++rep) {
        const double gamma = uniform_in(rng, 0.0, 6.283185307179586);
        const double beta = uniform_in(rng, 0.0, 6.283185307179586);
        const Statevector got = qaoa_state(m, QaoaParams{{gamma}, {beta}});
        const Statevector want = dense_qaoa_p1(m, gamma, beta);
        worst = std::max(worst, state_distance(got, want));
      }
    }
    r.require(worst <= 1e-10,
              fmt("p=1 dense-oracle distance %.3g > 1e-10", worst));
    r.details.push_back(fmt("p=1 dense oracle worst distance %.2g", worst));
  }

  // discretized-evolution angles approach the annealer as depth grows
  {
    const CMatrix c = generate_c_matrix(4, 11);
    const BuiltProblem built = build_single_quarter(c, 2);
    const QuboProblem pen = apply_scheme(
        built.objective, built.constraints,
        uniform_scheme(built.constraints, PenaltyKind::Quadratic, 2.0, 2.0));
    const IsingModel m = normalize_ising(qubo_to_ising(pen), 1.0, 3.0).model;
    const double t_f = 6.0;
    const Statevector ref =
        anneal_converged(m, AnnealSchedule::linear(t_f), 5e-7).state;
    std::vector<double> dist;
    for (int p : {4, 16, 64}) {
      QaoaParams params;
      for (int k = 1; k <= p; ++k) {
        const double mid = (k - 0.5) / p;
        params.gamma.push_back(t_f / p * mid);
        params.beta.push_back(t_f / p * (1.0 - mid));
      }
      dist.push_back(total_variation(qaoa_state(m, params), ref));
    }
    r.require(dist[0] > dist[1] && dist[1] > dist[2],
              fmt("trotter distances not decreasing: %.3g %.3g %.3g", dist[0],
                  dist[1], dist[2]));
    r.require(dist[2] < 0.05, fmt("p=64 distance %.3g >= 0.05", dist[2]));
    r.details.push_back(fmt("trotterized distance to anneal: %.3g -> %.3g "
                            "-> %.3g at p = 4, 16, 64",
                            dist[0], dist[1], dist[2]));
  }

  // optimized circuits beat random guessing under both encodings on every
  // desk instance
  {
    int beaten = 0, total = 0;
    double worst_margin = 1.0;
    for (int k = 0; k < 20; ++k) {
      const std::string id = "6_" + std::to_string(k);
      const InstanceRecord rec = load_id(id);
      const BuiltProblem built = build_single_quarter(rec.c, rec.budget);
      const ExactSummary target =
          brute_force(built.objective, built.constraints);
      const double baseline =
          static_cast<double>(target.optimal_feasible_states.size()) / 64.0;
      const AlphaInterval itv = find_alpha1_interval(rec.c, rec.budget, 1e-5);
      r.require(itv.found, id + ": no alpha1 window");
      if (!itv.found) continue;

      const auto run_arm = [&](const char* label, PenaltyKind kind,
                               double strength) {
        QaoaRunConfig cfg;
        cfg.rng_seed = derive_seed(kRunSeed, id + "/" + std::string(label));
        const QaoaRunResult run = run_qaoa(
            built.objective, built.constraints,
            uniform_scheme(built.constraints, kind, strength, 2.0), cfg);
        ++total;
        if (run.metrics.p_success > baseline) ++beaten;
        worst_margin =
            std::min(worst_margin, run.metrics.p_success - baseline);
      };
      run_arm("quadratic", PenaltyKind::Quadratic, 2.0);
      run_arm("linear", PenaltyKind::Linear, sample_alpha1(itv, id));
    }
    r.require(beaten == total,
              fmt("only %d of %d optimized runs beat the baseline", beaten,
                  total));
    r.details.push_back(fmt(
        "depth-8 pipeline: %d/%d runs beat random guessing, smallest margin "
        "%.4f",
        beaten, total, worst_margin));
  }
  return r;
}

// ---------------------------------------------------------------------------
// check 10: sweeping the quadratic strength trades success probability
// against feasibility: normalized success rises to an interior peak and
// falls, feasibility rises and stays high

CheckResult check_alpha2_sweep() {
  CheckResult r;
  r.pass = true;
  const std::vector<double> grid = {0.25, 0.5, 1.0, 2.0, 4.0, 8.0};
  const std::size_t g = grid.size();
  std::vector<std::vector<double>> ps(20, std::vector<double>(g));
  std::vector<std::vector<double>> pf(20, std::vector<double>(g));

  for (int k = 0; k < 20; ++k) {
    const InstanceRecord rec = load_id("8_" + std::to_string(k));
    const BuiltProblem built = build_single_quarter(rec.c, rec.budget);
    const ExactSummary target =
        brute_force(built.objective, built.constraints);
    for (std::size_t a = 0; a < g; ++a) {
      const QuboProblem pen = apply_scheme(
          built.objective, built.constraints,
          uniform_scheme(built.constraints, PenaltyKind::Quadratic, grid[a],
                         grid[a]));
      const IsingModel m =
          normalize_ising(qubo_to_ising(pen), 1.0, 3.0).model;
      const AnnealResult res =
          anneal_converged(m, AnnealSchedule::linear(10.0), 5e-7);
      const RunMetrics met = measure_metrics(res.state, target);
      ps[k][a] = met.p_success;
      pf[k][a] = met.p_feasible;
    }
  }

  std::vector<double> mean_norm_ps(g, 0.0), mean_pf(g, 0.0);
  for (int k = 0; k < 20; ++k) {
    const double peak = *std::max_element(ps[k].begin(), ps[k].end());
    r.require(peak > 0.0, fmt("instance 8_%d has zero success everywhere", k));
    for (std::size_t a = 0; a < g; ++a) {
      if (peak > 0.0) mean_norm_ps[a] += ps[k][a] / peak / 20.0;
      mean_pf[a] += pf[k][a] / 20.0;
    }
  }

  const std::size_t peak =
      std::max_element(mean_norm_ps.begin(), mean_norm_ps.end()) -
      mean_norm_ps.begin();
  r.require(peak > 0 && peak + 1 < g,
            fmt("normalized success peaks at the grid edge (index %zu)",
                peak));
  for (std::size_t a = 0; a + 1 < g; ++a) {
    if (a < peak)
      r.require(mean_norm_ps[a] < mean_norm_ps[a + 1],
                fmt("success not rising between grid points %zu and %zu", a,
                    a + 1));
    else
      r.require(mean_norm_ps[a] > mean_norm_ps[a + 1],
                fmt("success not falling between grid points %zu and %zu", a,
                    a + 1));
    r.require(mean_pf[a] <= mean_pf[a + 1],
              fmt("feasibility drops between grid points %zu and %zu", a,
                  a + 1));
  }
  r.require(mean_pf.back() >= 0.5,
            fmt("final mean feasibility %.3f < 0.5", mean_pf.back()));

  std::string s1 = "mean normalized P_S:", s2 = "mean P_F:           ";
  for (std::size_t a = 0; a < g; ++a) {
    s1 += fmt(" %.3f", mean_norm_ps[a]);
    s2 += fmt(" %.3f", mean_pf[a]);
  }
  r.details.push_back(s1 + fmt("  (peak at alpha2 = %g)", grid[peak]));
  r.details.push_back(s2);
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  const auto wanted = [&](int k) { return only.empty() || only.count(k); };

  Runner runner;
  const struct {
    int index;
    const char* title;
    CheckResult (*body)();
  } checks[] = {
      {1, "qubo/ising conversion is exact", check_conversion},
      {2, "penalty terms have the closed-form expansion", check_penalty},
      {3, "objective minima are monotone in weight", check_weight_monotone},
      {4, "alpha1 window search brackets the optimum", check_alpha1_search},
      {5, "strength grid splits into cell/no-cell cases", check_grid_dichotomy},
      {6, "annealer conserves norm and matches oracles", check_anneal_validity},
      {7, "quadratic encoding rescales harder at all sizes",
       check_normalization_ratio},
      {8, "annealing comparison beats random guessing", check_qa_pipeline},
      {9, "alternating-layer circuits valid and competitive", check_qaoa},
      {10, "strength sweep peaks inside the grid", check_alpha2_sweep},
  };
  for (const auto& c : checks)
    if (wanted(c.index)) runner.run(c.index, c.title, c.body);

  if (runner.failures() == 0) {
    std::printf("all checks passed\n");
    return 0;
  }
  std::printf("%d check(s) failed\n", runner.failures());
  return 1;
}
