#pragma once

#include <map>
#include <string>

#include "qpromo/constraints.hpp"
#include "qpromo/qubo.hpp"

namespace qpromo {

enum class PenaltyKind { Quadratic, Linear };

// Assigns a penalty term to every constraint label. Equalities may be
// encoded quadratically or linearly; pair inequalities are always quadratic,
// only their strength is configurable.
struct PenaltyScheme {
  struct EqualityTerm {
    PenaltyKind kind = PenaltyKind::Quadratic;
    double strength = 0.0;  // alpha2 (must be > 0) or alpha1 (any sign)
  };
  std::map<std::string, EqualityTerm> equalities;
  std::map<std::string, double> inequalities;  // label -> alpha2 > 0
};

// alpha2 * (sum_i mu_i x_i - c)^2, expanded over binary variables:
//   linear    alpha2 * mu_i * (mu_i - 2c)
//   quadratic 2 * alpha2 * mu_i * mu_j
//   offset    alpha2 * c^2
// Zero on every feasible assignment and at least alpha2 away from zero on
// integer-weighted infeasible ones. alpha2 must be positive.
QuboProblem quadratic_equality_penalty(const EqualityConstraint& eq,
                                       double alpha2);

// alpha1 * (sum_i mu_i x_i - c). Not a bound on violations by itself: it
// tilts the spectrum so that, for suitable alpha1 < 0, the penalized ground
// state picks up exactly the intended Hamming weight. In Ising variables it
// only contributes local fields -alpha1 * mu_i / 2, no couplings.
QuboProblem linear_equality_penalty(const EqualityConstraint& eq,
                                    double alpha1);

// alpha2 * x_i * x_j for x_i + x_j <= 1: a single quadratic term that is
// zero unless both variables are set. alpha2 must be positive.
QuboProblem pair_inequality_penalty(const PairInequalityConstraint& ineq,
                                    double alpha2, int n);

// base plus one penalty term per constraint. Every constraint label in cs
// must be covered by the scheme, otherwise ConfigError.
QuboProblem apply_scheme(const QuboProblem& base, const ConstraintSet& cs,
                         const PenaltyScheme& scheme);

// Scheme with the same encoding for every equality and a common strength
// for every inequality.
PenaltyScheme uniform_scheme(const ConstraintSet& cs, PenaltyKind eq_kind,
                             double eq_strength, double ineq_alpha2);

}  // namespace qpromo
