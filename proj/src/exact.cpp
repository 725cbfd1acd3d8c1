#include "qpromo/exact.hpp"

#include <bit>
#include <cmath>
#include <limits>

#include "qpromo/errors.hpp"

namespace qpromo {

namespace {

constexpr double kTieTol = 1e-9;

// Dense mirror of the sparse QUBO so flip deltas are cache-friendly.
struct DenseQubo {
  int n = 0;
  std::vector<double> linear;
  std::vector<double> rows;  // rows[i*n + j] = b_{i,j}, mirrored
  double offset = 0.0;
};

DenseQubo densify(const QuboProblem& p) {
  DenseQubo d;
  d.n = p.n;
  d.linear = p.linear;
  d.offset = p.offset;
  d.rows.assign(static_cast<size_t>(p.n) * static_cast<size_t>(p.n), 0.0);
  for (const auto& [key, v] : p.quadratic) {
    d.rows[static_cast<size_t>(key.first) * p.n + key.second] = v;
    d.rows[static_cast<size_t>(key.second) * p.n + key.first] = v;
  }
  return d;
}

// Exact objective value of a packed word, summed in a canonical order.
inline double value_at(const DenseQubo& d, std::uint64_t word) {
  double e = d.offset;
  std::uint64_t bits = word;
  while (bits) {
    const int i = std::countr_zero(bits);
    bits &= bits - 1;
    e += d.linear[i];
    const double* row = &d.rows[static_cast<size_t>(i) * d.n];
    std::uint64_t rest = bits;  // each unordered pair visited once
    while (rest) {
      const int j = std::countr_zero(rest);
      rest &= rest - 1;
      e += row[j];
    }
  }
  return e;
}

// Visits every word in Gray-code order with its exact energy. The single-bit
// steps keep the feasibility tracker O(1) per state; the energy is evaluated
// from scratch because carrying it by flip deltas drifts by ~1e-15 over the
// walk, enough to break exact-zero expectations downstream.
// fn(word, energy, flipped_bit) with flipped_bit = -1 for the initial word.
template <class F>
void gray_scan(const DenseQubo& d, F&& fn) {
  std::uint64_t x = 0;
  fn(std::uint64_t{0}, d.offset, -1);
  const std::uint64_t dim = 1ULL << d.n;
  for (std::uint64_t k = 1; k < dim; ++k) {
    const int i = std::countr_zero(k);
    x ^= 1ULL << i;
    fn(x, value_at(d, x), i);
  }
}

void check_capacity(const QuboProblem& p, const char* what) {
  validate(p);
  if (p.n < 1) throw ParameterError(std::string(what) + ": empty problem");
  if (p.n > 26) throw CapacityError(std::string(what) + ": n > 26");
}

// Incremental feasibility tracker: updates in O(constraints touching the
// flipped variable).
struct FeasibilityTracker {
  const ConstraintSet* cs;
  std::vector<double> eq_sums;
  std::vector<int> ineq_counts;
  std::vector<std::vector<int>> var_ineqs;  // inequality ids per variable
  int violations = 0;

  FeasibilityTracker(const ConstraintSet& set, int n) : cs(&set) {
    eq_sums.assign(set.equalities.size(), 0.0);
    ineq_counts.assign(set.inequalities.size(), 0);
    var_ineqs.assign(static_cast<size_t>(n), {});
    for (size_t k = 0; k < set.inequalities.size(); ++k) {
      var_ineqs[set.inequalities[k].i].push_back(static_cast<int>(k));
      var_ineqs[set.inequalities[k].j].push_back(static_cast<int>(k));
    }
    for (size_t k = 0; k < set.equalities.size(); ++k)
      if (!eq_ok(k)) ++violations;
  }

  bool eq_ok(size_t k) const {
    return std::abs(eq_sums[k] - cs->equalities[k].c) < 1e-9;
  }

  void flip(int i, bool now_set) {
    const double sign = now_set ? 1.0 : -1.0;
    for (size_t k = 0; k < eq_sums.size(); ++k) {
      const double mu = cs->equalities[k].mu[i];
      if (mu == 0.0) continue;
      const bool was_ok = eq_ok(k);
      eq_sums[k] += sign * mu;
      const bool is_ok = eq_ok(k);
      violations += (was_ok ? 1 : 0) - (is_ok ? 1 : 0);
    }
    for (int k : var_ineqs[i]) {
      const bool was_ok = ineq_counts[k] <= 1;
      ineq_counts[k] += now_set ? 1 : -1;
      const bool is_ok = ineq_counts[k] <= 1;
      violations += (was_ok ? 1 : 0) - (is_ok ? 1 : 0);
    }
  }

  bool feasible() const { return violations == 0; }
};

}  // namespace

ExactSummary brute_force(const QuboProblem& p, const ConstraintSet& cs) {
  check_capacity(p, "brute_force");
  validate(cs, p.n);

  const DenseQubo d = densify(p);
  const std::uint64_t dim = 1ULL << p.n;

  ExactSummary summary;
  summary.n = p.n;
  summary.feasible_mask.assign((dim + 63) / 64, 0);

  FeasibilityTracker tracker(cs, p.n);

  double min_e = std::numeric_limits<double>::infinity();
  double min_feas_e = std::numeric_limits<double>::infinity();
  // Collected with the running minimum, filtered against the final one
  // below; the running minimum can only decrease, so no tie is missed.
  std::vector<std::pair<std::uint64_t, double>> ground;
  std::vector<std::pair<std::uint64_t, double>> feas_ground;

  gray_scan(d, [&](std::uint64_t word, double e, int flipped) {
    if (flipped >= 0) tracker.flip(flipped, (word >> flipped) & 1ULL);
    if (e <= min_e + kTieTol) {
      if (e < min_e) min_e = e;
      ground.emplace_back(word, e);
    }
    if (tracker.feasible()) {
      summary.feasible_mask[word >> 6] |= 1ULL << (word & 63);
      ++summary.feasible_count;
      if (e <= min_feas_e + kTieTol) {
        if (e < min_feas_e) min_feas_e = e;
        feas_ground.emplace_back(word, e);
      }
    }
  });

  summary.ground_energy = min_e;
  for (const auto& [word, e] : ground)
    if (e <= min_e + kTieTol) summary.ground_states.emplace_back(p.n, word);
  if (summary.feasible_count > 0) {
    summary.optimal_feasible_energy = min_feas_e;
    for (const auto& [word, e] : feas_ground)
      if (e <= min_feas_e + kTieTol)
        summary.optimal_feasible_states.emplace_back(p.n, word);
  }
  return summary;
}

std::vector<WeightProfileEntry> min_objective_by_weight(const QuboProblem& p) {
  check_capacity(p, "min_objective_by_weight");
  const DenseQubo d = densify(p);

  std::vector<WeightProfileEntry> profile(static_cast<size_t>(p.n) + 1);
  for (int w = 0; w <= p.n; ++w) {
    profile[w].weight = w;
    profile[w].min_value = std::numeric_limits<double>::infinity();
  }
  gray_scan(d, [&](std::uint64_t word, double e, int) {
    const int w = std::popcount(word);
    if (e < profile[w].min_value) {
      profile[w].min_value = e;
      profile[w].argmin = BitString(p.n, word);
    }
  });
  return profile;
}

std::vector<WeightPairCell> weight_pair_profile(const QuboProblem& p,
                                                const ConstraintSet& cs) {
  check_capacity(p, "weight_pair_profile");
  validate(cs, p.n);
  if (p.n % 2 != 0)
    throw DimensionError("weight_pair_profile: problem size must be even");
  const int block = p.n / 2;
  const std::uint64_t low_mask = (1ULL << block) - 1;
  const int side = block + 1;

  const DenseQubo d = densify(p);
  std::vector<WeightPairCell> cells(static_cast<size_t>(side) * side);
  for (auto& cell : cells)
    cell.min_value = std::numeric_limits<double>::infinity();

  // Pass 1: per-cell minima.
  gray_scan(d, [&](std::uint64_t word, double e, int) {
    const int w1 = std::popcount(word & low_mask);
    const int w2 = std::popcount(word >> block);
    auto& cell = cells[static_cast<size_t>(w1) * side + w2];
    if (e < cell.min_value) cell.min_value = e;
  });

  // Pass 2: tie counts and inequality feasibility of the tied states.
  gray_scan(d, [&](std::uint64_t word, double e, int) {
    const int w1 = std::popcount(word & low_mask);
    const int w2 = std::popcount(word >> block);
    auto& cell = cells[static_cast<size_t>(w1) * side + w2];
    if (e <= cell.min_value + kTieTol) {
      ++cell.ties;
      if (cell.ties_ineq_feasible) {
        const BitString x(p.n, word);
        for (const auto& ineq : cs.inequalities)
          if (!satisfied(ineq, x)) {
            cell.ties_ineq_feasible = false;
            break;
          }
      }
    }
  });
  return cells;
}

}  // namespace qpromo
