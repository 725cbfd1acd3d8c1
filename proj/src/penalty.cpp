#include "qpromo/penalty.hpp"

#include "qpromo/errors.hpp"

namespace qpromo {

QuboProblem quadratic_equality_penalty(const EqualityConstraint& eq,
                                       double alpha2) {
  if (alpha2 <= 0.0)
    throw ParameterError("quadratic_equality_penalty: alpha2 must be > 0");
  const int n = static_cast<int>(eq.mu.size());
  QuboProblem p;
  p.n = n;
  p.linear.assign(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    p.linear[i] = alpha2 * eq.mu[i] * (eq.mu[i] - 2.0 * eq.c);
  for (int i = 0; i < n; ++i) {
    if (eq.mu[i] == 0.0) continue;
    for (int j = i + 1; j < n; ++j) {
      if (eq.mu[j] == 0.0) continue;
      p.quadratic[{i, j}] = 2.0 * alpha2 * eq.mu[i] * eq.mu[j];
    }
  }
  p.offset = alpha2 * eq.c * eq.c;
  return p;
}

QuboProblem linear_equality_penalty(const EqualityConstraint& eq,
                                    double alpha1) {
  const int n = static_cast<int>(eq.mu.size());
  QuboProblem p;
  p.n = n;
  p.linear.assign(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) p.linear[i] = alpha1 * eq.mu[i];
  p.offset = -alpha1 * eq.c;
  return p;
}

QuboProblem pair_inequality_penalty(const PairInequalityConstraint& ineq,
                                    double alpha2, int n) {
  if (alpha2 <= 0.0)
    throw ParameterError("pair_inequality_penalty: alpha2 must be > 0");
  QuboProblem p;
  p.n = n;
  p.linear.assign(static_cast<size_t>(n), 0.0);
  add_quadratic(p, ineq.i, ineq.j, alpha2);
  return p;
}

QuboProblem apply_scheme(const QuboProblem& base, const ConstraintSet& cs,
                         const PenaltyScheme& scheme) {
  validate(base);
  validate(cs, base.n);
  QuboProblem out = base;
  for (const auto& eq : cs.equalities) {
    auto it = scheme.equalities.find(eq.label);
    if (it == scheme.equalities.end())
      throw ConfigError("apply_scheme: no penalty term for equality '" +
                        eq.label + "'");
    const auto& term = it->second;
    if (term.kind == PenaltyKind::Quadratic)
      add_in_place(out, quadratic_equality_penalty(eq, term.strength));
    else
      add_in_place(out, linear_equality_penalty(eq, term.strength));
  }
  for (const auto& ineq : cs.inequalities) {
    auto it = scheme.inequalities.find(ineq.label);
    if (it == scheme.inequalities.end())
      throw ConfigError("apply_scheme: no penalty term for inequality '" +
                        ineq.label + "'");
    add_in_place(out, pair_inequality_penalty(ineq, it->second, base.n));
  }
  return out;
}

PenaltyScheme uniform_scheme(const ConstraintSet& cs, PenaltyKind eq_kind,
                             double eq_strength, double ineq_alpha2) {
  PenaltyScheme scheme;
  for (const auto& eq : cs.equalities)
    scheme.equalities[eq.label] = {eq_kind, eq_strength};
  for (const auto& ineq : cs.inequalities)
    scheme.inequalities[ineq.label] = ineq_alpha2;
  return scheme;
}

}  // namespace qpromo
