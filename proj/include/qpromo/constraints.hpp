#pragma once

#include <string>
#include <vector>

#include "qpromo/bits.hpp"

namespace qpromo {

// Linear equality over binary variables: sum_i mu_i x_i = c. The weight
// vector has one entry per problem variable; budget constraints use 0/1
// weights but nothing below depends on that.
struct EqualityConstraint {
  std::string label;
  std::vector<double> mu;
  double c = 0.0;
};

// x_i + x_j <= 1, i.e. the two variables may not both be promoted.
struct PairInequalityConstraint {
  std::string label;
  int i = 0;
  int j = 0;
};

struct ConstraintSet {
  std::vector<EqualityConstraint> equalities;
  std::vector<PairInequalityConstraint> inequalities;
};

// Checks labels are unique and indices/sizes fit a problem of size n.
void validate(const ConstraintSet& cs, int n);

double constraint_value(const EqualityConstraint& eq, const BitString& x);
bool satisfied(const EqualityConstraint& eq, const BitString& x);
bool satisfied(const PairInequalityConstraint& ineq, const BitString& x);
bool feasible(const ConstraintSet& cs, const BitString& x);

// Labels of every constraint that x violates, in declaration order.
std::vector<std::string> feasibility_report(const ConstraintSet& cs,
                                            const BitString& x);

}  // namespace qpromo
