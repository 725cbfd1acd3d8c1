#include "qpromo/constraints.hpp"

#include <cmath>
#include <set>
#include <string>

#include "qpromo/errors.hpp"

namespace qpromo {

namespace {

// Equality targets and weights are integer-valued in this domain, so exact
// comparison would usually work; the small tolerance keeps the check safe
// for fractional weights too.
constexpr double kEqualityTol = 1e-9;

}  // namespace

void validate(const ConstraintSet& cs, int n) {
  std::set<std::string> labels;
  for (const auto& eq : cs.equalities) {
    if (eq.label.empty())
      throw ValidationError("ConstraintSet: equality with empty label");
    if (!labels.insert(eq.label).second)
      throw ValidationError("ConstraintSet: duplicate label '" + eq.label +
                            "'");
    if (static_cast<int>(eq.mu.size()) != n)
      throw DimensionError("ConstraintSet: weight vector of '" + eq.label +
                           "' has size " + std::to_string(eq.mu.size()) +
                           ", expected " + std::to_string(n));
  }
  for (const auto& ineq : cs.inequalities) {
    if (ineq.label.empty())
      throw ValidationError("ConstraintSet: inequality with empty label");
    if (!labels.insert(ineq.label).second)
      throw ValidationError("ConstraintSet: duplicate label '" + ineq.label +
                            "'");
    if (ineq.i < 0 || ineq.j < 0 || ineq.i >= n || ineq.j >= n ||
        ineq.i == ineq.j)
      throw ParameterError("ConstraintSet: bad index pair in '" + ineq.label +
                           "'");
  }
}

double constraint_value(const EqualityConstraint& eq, const BitString& x) {
  if (static_cast<int>(eq.mu.size()) != x.n)
    throw DimensionError("constraint_value: weight vector size " +
                         std::to_string(eq.mu.size()) +
                         " does not match bitstring length " +
                         std::to_string(x.n));
  double v = 0.0;
  for (int i = 0; i < x.n; ++i)
    if (x.bit(i)) v += eq.mu[i];
  return v;
}

bool satisfied(const EqualityConstraint& eq, const BitString& x) {
  return std::abs(constraint_value(eq, x) - eq.c) < kEqualityTol;
}

bool satisfied(const PairInequalityConstraint& ineq, const BitString& x) {
  return x.bit(ineq.i) + x.bit(ineq.j) <= 1;
}

bool feasible(const ConstraintSet& cs, const BitString& x) {
  for (const auto& eq : cs.equalities)
    if (!satisfied(eq, x)) return false;
  for (const auto& ineq : cs.inequalities)
    if (!satisfied(ineq, x)) return false;
  return true;
}

std::vector<std::string> feasibility_report(const ConstraintSet& cs,
                                            const BitString& x) {
  std::vector<std::string> violated;
  for (const auto& eq : cs.equalities)
    if (!satisfied(eq, x)) violated.push_back(eq.label);
  for (const auto& ineq : cs.inequalities)
    if (!satisfied(ineq, x)) violated.push_back(ineq.label);
  return violated;
}

}  // namespace qpromo
