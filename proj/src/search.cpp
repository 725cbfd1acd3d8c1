#include "qpromo/search.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "qpromo/errors.hpp"
#include "qpromo/exact.hpp"
#include "qpromo/penalty.hpp"

namespace qpromo {

namespace {

constexpr double kAlphaCap = 1048576.0;  // 2^20, bound for one-sided windows
constexpr double kTieTol = 1e-9;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Classification of the ground-state set at one linear strength. The probe
// looks at the target weight of every degenerate minimum:
//   Good      every minimum sits at the target weight and is feasible
//   Heavy     every minimum is heavier than the target
//   Light     every minimum is lighter than the target
//   EdgeLow   ties between target weight and heavier (lower window edge)
//   EdgeHigh  ties between lighter and target weight (upper window edge)
//   Span      minima both lighter and heavier: no strength can work, because
//             lowering the heavy side always re-exposes the light side
//   BadPlateau  minima at the target weight but violating other constraints;
//             states of equal target weight keep their relative order at
//             every strength, so this is also terminal
enum class ProbeState { Good, Heavy, Light, EdgeLow, EdgeHigh, Span, BadPlateau };

struct Probe {
  ProbeState state = ProbeState::Good;
  std::vector<std::string> violated;
};

bool is_bad_terminal(ProbeState s) {
  return s == ProbeState::Span || s == ProbeState::BadPlateau;
}

bool is_low_side(ProbeState s) {
  return s == ProbeState::Heavy || s == ProbeState::EdgeLow;
}

struct Searcher {
  std::function<Probe(double)> probe_fn;
  int calls = 0;
  int doubling_calls = 0;

  Probe probe(double alpha) {
    ++calls;
    return probe_fn(alpha);
  }
};

}  // namespace

GroundWeightReport ground_weight(const QuboProblem& p, const ConstraintSet& cs,
                                 double alpha1, double ineq_alpha2) {
  QuboProblem penalized = p;
  for (const auto& eq : cs.equalities)
    add_in_place(penalized, linear_equality_penalty(eq, alpha1));
  for (const auto& ineq : cs.inequalities)
    add_in_place(penalized, pair_inequality_penalty(ineq, ineq_alpha2, p.n));
  const ExactSummary summary = brute_force(penalized, cs);

  GroundWeightReport report;
  report.ground_energy = summary.ground_energy;
  report.all_feasible = true;
  std::set<int> weights;
  for (const auto& x : summary.ground_states) {
    weights.insert(x.weight());
    if (report.all_feasible && !feasible(cs, x)) report.all_feasible = false;
  }
  report.weights.assign(weights.begin(), weights.end());
  return report;
}

AlphaInterval find_weight_window(const QuboProblem& fixed,
                                 const ConstraintSet& cs,
                                 const EqualityConstraint& target,
                                 double precision,
                                 std::vector<std::string>* violated) {
  if (precision <= 0.0)
    throw ParameterError("find_weight_window: precision must be > 0");
  validate(cs, fixed.n);
  const int A = static_cast<int>(std::lround(target.c));
  if (violated) violated->clear();

  Searcher searcher;
  searcher.probe_fn = [&](double alpha) -> Probe {
    QuboProblem penalized = fixed;
    add_in_place(penalized, linear_equality_penalty(target, alpha));
    const ExactSummary summary = brute_force(penalized, cs);
    int wmin = std::numeric_limits<int>::max();
    int wmax = std::numeric_limits<int>::min();
    bool all_feasible = true;
    const BitString* witness = nullptr;
    for (const auto& x : summary.ground_states) {
      const int w = static_cast<int>(std::lround(constraint_value(target, x)));
      wmin = std::min(wmin, w);
      wmax = std::max(wmax, w);
      if (all_feasible && !feasible(cs, x)) {
        all_feasible = false;
        witness = &x;
      }
    }
    Probe probe;
    if (wmin == A && wmax == A) {
      if (all_feasible) {
        probe.state = ProbeState::Good;
      } else {
        probe.state = ProbeState::BadPlateau;
        probe.violated = feasibility_report(cs, *witness);
      }
    } else if (wmax < A) {
      probe.state = ProbeState::Light;
    } else if (wmin > A) {
      probe.state = ProbeState::Heavy;
    } else if (wmin < A && wmax > A) {
      probe.state = ProbeState::Span;
    } else if (wmin == A) {
      probe.state = ProbeState::EdgeLow;
    } else {
      probe.state = ProbeState::EdgeHigh;
    }
    return probe;
  };

  AlphaInterval result;
  result.target_weight = A;
  auto fail = [&](const std::vector<std::string>& labels) {
    if (violated) *violated = labels;
    result.found = false;
    result.oracle_calls = searcher.calls;
    result.doubling_calls = searcher.doubling_calls;
    return result;
  };

  // Phase 1: walk by doubling from -1 until a strength inside the window
  // shows up, or a (heavy, light) bracket around it does. The minimum target
  // weight over the ground set is non-increasing in the strength, which makes
  // every move below forced.
  double heavy_at = kNaN;  // strength known to sit below the window
  double light_at = kNaN;  // strength known to sit above the window
  double good = kNaN;
  double alpha = -1.0;
  for (;;) {
    const Probe probe = searcher.probe(alpha);
    searcher.doubling_calls = searcher.calls;
    if (probe.state == ProbeState::Good) {
      good = alpha;
      break;
    }
    if (is_bad_terminal(probe.state)) return fail(probe.violated);
    if (is_low_side(probe.state))
      heavy_at = alpha;
    else
      light_at = alpha;
    if (!std::isnan(heavy_at) && !std::isnan(light_at)) break;
    if (std::isnan(heavy_at)) {
      alpha *= 2.0;  // only light sightings so far, keep descending
      if (alpha < -kAlphaCap) return fail({});
    } else {
      alpha = alpha < 0.0 ? -alpha : alpha * 2.0;
      if (alpha > kAlphaCap) return fail({});
    }
  }

  // Phase 2a: bisect the bracket hunting for a strength inside the window.
  // Running out of precision means the window, if any, is narrower than the
  // requested resolution, which we report as absent.
  if (std::isnan(good)) {
    double lo = heavy_at;
    double hi = light_at;
    while (hi - lo > precision) {
      const double mid = 0.5 * (lo + hi);
      const Probe probe = searcher.probe(mid);
      if (probe.state == ProbeState::Good) {
        good = mid;
        heavy_at = lo;
        light_at = hi;
        break;
      }
      if (is_bad_terminal(probe.state)) return fail(probe.violated);
      if (is_low_side(probe.state))
        lo = mid;
      else
        hi = mid;
    }
    if (std::isnan(good)) return fail({});
  }

  // Phase 2b: if a side never produced a bad sighting, step outward until it
  // does or the cap is reached. A window reaching the cap is clamped there.
  double lo_good = good;
  double hi_good = good;
  bool lo_clamped = false;
  bool hi_clamped = false;
  if (std::isnan(heavy_at)) {
    double step = 1.0;
    while (std::isnan(heavy_at) && !lo_clamped) {
      const double cand = std::max(lo_good - step, -kAlphaCap);
      if (searcher.probe(cand).state == ProbeState::Good) {
        lo_good = cand;
        lo_clamped = cand <= -kAlphaCap;
        step *= 2.0;
      } else {
        heavy_at = cand;
      }
    }
  }
  if (std::isnan(light_at)) {
    double step = 1.0;
    while (std::isnan(light_at) && !hi_clamped) {
      const double cand = std::min(hi_good + step, kAlphaCap);
      if (searcher.probe(cand).state == ProbeState::Good) {
        hi_good = cand;
        hi_clamped = cand >= kAlphaCap;
        step *= 2.0;
      } else {
        light_at = cand;
      }
    }
  }

  // Phase 2c: bisect each edge down to the precision. Reported endpoints are
  // strengths that actually probed good, each within the precision of the
  // true edge.
  if (!lo_clamped) {
    double bad = heavy_at;
    while (lo_good - bad > precision) {
      const double mid = 0.5 * (lo_good + bad);
      if (searcher.probe(mid).state == ProbeState::Good)
        lo_good = mid;
      else
        bad = mid;
    }
  }
  if (!hi_clamped) {
    double bad = light_at;
    while (bad - hi_good > precision) {
      const double mid = 0.5 * (hi_good + bad);
      if (searcher.probe(mid).state == ProbeState::Good)
        hi_good = mid;
      else
        bad = mid;
    }
  }

  result.lo = lo_good;
  result.hi = hi_good;
  result.found = true;
  result.oracle_calls = searcher.calls;
  result.doubling_calls = searcher.doubling_calls;
  return result;
}

AlphaInterval find_alpha1_interval(const CMatrix& c, int A, double precision) {
  const BuiltProblem built = build_single_quarter(c, A);
  return find_weight_window(built.objective, built.constraints,
                            built.constraints.equalities.front(), precision);
}

MixedSearchResult mixed_scheme_search(const CMatrix& c, int A,
                                      const std::array<double, 2>& lambda,
                                      double alpha2, double precision) {
  const BuiltProblem built = build_two_quarter(c, A, lambda);
  QuboProblem fixed = built.objective;
  // Quarter 2 and the overlap pairs are penalized quadratically up front;
  // only the quarter 1 budget strength is searched.
  add_in_place(fixed, quadratic_equality_penalty(
                          built.constraints.equalities.at(1), alpha2));
  for (const auto& ineq : built.constraints.inequalities)
    add_in_place(fixed, pair_inequality_penalty(ineq, alpha2, fixed.n));

  MixedSearchResult result;
  result.interval =
      find_weight_window(fixed, built.constraints,
                         built.constraints.equalities.at(0), precision,
                         &result.violated);
  return result;
}

GridScanResult grid_scan_two_quarter(const CMatrix& c, int A,
                                     const std::array<double, 2>& lambda,
                                     double ineq_alpha2, const GridSpec& spec1,
                                     const GridSpec& spec2) {
  for (const GridSpec* spec : {&spec1, &spec2}) {
    if (spec->points < 1)
      throw ParameterError("grid_scan_two_quarter: points must be >= 1");
    if (spec->hi < spec->lo)
      throw ParameterError("grid_scan_two_quarter: hi < lo");
  }
  const BuiltProblem built = build_two_quarter(c, A, lambda);
  QuboProblem fixed = built.objective;
  for (const auto& ineq : built.constraints.inequalities)
    add_in_place(fixed, pair_inequality_penalty(ineq, ineq_alpha2, fixed.n));

  // The two linear budget penalties shift every state by a1*(w1-A)+a2*(w2-A),
  // a function of the weight pair alone. Minimizing per weight-pair bucket
  // once therefore answers every grid cell exactly; this is the same result a
  // per-cell exhaustive solve would produce, at a fraction of the work.
  const auto profile = weight_pair_profile(fixed, built.constraints);
  const int n_p = static_cast<int>(c.size());
  const int side = n_p + 1;

  auto axis = [](const GridSpec& spec) {
    std::vector<double> values(static_cast<size_t>(spec.points));
    for (int k = 0; k < spec.points; ++k)
      values[static_cast<size_t>(k)] =
          spec.points == 1
              ? spec.lo
              : spec.lo + (spec.hi - spec.lo) * k / (spec.points - 1);
    return values;
  };

  GridScanResult result;
  result.alpha1_q1 = axis(spec1);
  result.alpha1_q2 = axis(spec2);
  result.cells.resize(result.alpha1_q1.size() * result.alpha1_q2.size());

  for (size_t i1 = 0; i1 < result.alpha1_q1.size(); ++i1) {
    const double a1 = result.alpha1_q1[i1];
    for (size_t i2 = 0; i2 < result.alpha1_q2.size(); ++i2) {
      const double a2 = result.alpha1_q2[i2];

      double best = std::numeric_limits<double>::infinity();
      for (int w1 = 0; w1 <= n_p; ++w1)
        for (int w2 = 0; w2 <= n_p; ++w2) {
          const double v =
              profile[static_cast<size_t>(w1) * side + w2].min_value +
              a1 * (w1 - A) + a2 * (w2 - A);
          best = std::min(best, v);
        }

      GridCell cell;
      cell.energy = best;
      std::uint64_t tie_states = 0;
      bool first = true;
      bool all_ok = true;
      for (int w1 = 0; w1 <= n_p; ++w1)
        for (int w2 = 0; w2 <= n_p; ++w2) {
          const auto& bucket = profile[static_cast<size_t>(w1) * side + w2];
          const double v = bucket.min_value + a1 * (w1 - A) + a2 * (w2 - A);
          if (v > best + kTieTol) continue;
          tie_states += bucket.ties;
          if (first) {
            cell.w1 = w1;
            cell.w2 = w2;
            first = false;
          }
          if (w1 != A || w2 != A || !bucket.ties_ineq_feasible) all_ok = false;
        }
      cell.degenerate = tie_states > 1;
      cell.feasible = all_ok;
      if (cell.feasible)
        result.satisfying_cells.emplace_back(static_cast<int>(i1),
                                             static_cast<int>(i2));
      result.cells[i1 * result.alpha1_q2.size() + i2] = cell;
    }
  }
  return result;
}

TwoQuarterWindow two_quarter_window(const CMatrix& c, int A,
                                    const std::array<double, 2>& lambda,
                                    double ineq_alpha2, double r_cap) {
  if (r_cap <= 0.0)
    throw ParameterError("two_quarter_window: r_cap must be > 0");
  const BuiltProblem built = build_two_quarter(c, A, lambda);
  QuboProblem fixed = built.objective;
  for (const auto& ineq : built.constraints.inequalities)
    add_in_place(fixed, pair_inequality_penalty(ineq, ineq_alpha2, fixed.n));

  const auto profile = weight_pair_profile(fixed, built.constraints);
  const int n_p = static_cast<int>(c.size());
  const int side = n_p + 1;
  const auto& target = profile[static_cast<size_t>(A) * side + A];

  TwoQuarterWindow window;
  // States on the target weight pair shift identically with the strengths,
  // so an overlap-violating co-minimum there rules out every strength pair.
  if (!target.ties_ineq_feasible) return window;

  // A strength pair (x, y) works iff the target bucket beats every other
  // bucket: target_min < bucket_min + x*(w1-A) + y*(w2-A), i.e.
  //   (A-w1)*x + (A-w2)*y < bucket_min - target_min    for all buckets.
  // The largest circle inscribed in that open half-plane intersection has
  // radius > 0 iff the region is nonempty; its center and radius solve
  //   max r   s.t.  u*x + v*y + |(u,v)|*r <= rhs  per bucket, r <= r_cap,
  // with a generous box on (x, y) to keep the program bounded. With three
  // unknowns the optimum sits on three active rows, so enumerating row
  // triples and solving 3x3 systems finds it exactly.
  struct Row {
    double u, v, s, rhs;
  };
  std::vector<Row> rows;
  for (int w1 = 0; w1 <= n_p; ++w1)
    for (int w2 = 0; w2 <= n_p; ++w2) {
      if (w1 == A && w2 == A) continue;
      const double u = static_cast<double>(A - w1);
      const double v = static_cast<double>(A - w2);
      const double rhs =
          profile[static_cast<size_t>(w1) * side + w2].min_value -
          target.min_value;
      rows.push_back({u, v, std::sqrt(u * u + v * v), rhs});
    }
  const double box = 1000.0;
  rows.push_back({0.0, 0.0, 1.0, r_cap});
  rows.push_back({1.0, 0.0, 0.0, box});
  rows.push_back({-1.0, 0.0, 0.0, box});
  rows.push_back({0.0, 1.0, 0.0, box});
  rows.push_back({0.0, -1.0, 0.0, box});

  const size_t m = rows.size();
  double best_r = -std::numeric_limits<double>::infinity();
  double best_x = 0.0;
  double best_y = 0.0;
  for (size_t a = 0; a < m; ++a)
    for (size_t b = a + 1; b < m; ++b)
      for (size_t d = b + 1; d < m; ++d) {
        const Row& ra = rows[a];
        const Row& rb = rows[b];
        const Row& rd = rows[d];
        const double det = ra.u * (rb.v * rd.s - rb.s * rd.v) -
                           ra.v * (rb.u * rd.s - rb.s * rd.u) +
                           ra.s * (rb.u * rd.v - rb.v * rd.u);
        if (std::abs(det) < 1e-12) continue;
        const double x = (ra.rhs * (rb.v * rd.s - rb.s * rd.v) -
                          ra.v * (rb.rhs * rd.s - rb.s * rd.rhs) +
                          ra.s * (rb.rhs * rd.v - rb.v * rd.rhs)) /
                         det;
        const double y = (ra.u * (rb.rhs * rd.s - rb.s * rd.rhs) -
                          ra.rhs * (rb.u * rd.s - rb.s * rd.u) +
                          ra.s * (rb.u * rd.rhs - rb.rhs * rd.u)) /
                         det;
        const double r = (ra.u * (rb.v * rd.rhs - rb.rhs * rd.v) -
                          ra.v * (rb.u * rd.rhs - rb.rhs * rd.u) +
                          ra.rhs * (rb.u * rd.v - rb.v * rd.u)) /
                         det;
        if (r <= best_r) continue;
        bool inside = true;
        for (const Row& row : rows) {
          if (row.u * x + row.v * y + row.s * r > row.rhs + 1e-9) {
            inside = false;
            break;
          }
        }
        if (inside) {
          best_r = r;
          best_x = x;
          best_y = y;
        }
      }

  if (best_r > 0.0) {
    window.exists = true;
    window.radius = std::min(best_r, r_cap);
    window.alpha1_q1 = best_x;
    window.alpha1_q2 = best_y;
  }
  return window;
}

}  // namespace qpromo
