#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qpromo/bits.hpp"

namespace qpromo {

// Quadratic unconstrained binary optimization problem over x in {0,1}^n:
//
//   f(x) = sum_i a_i x_i + sum_{i<j} b_{i,j} x_i x_j + offset
//
// The quadratic part is stored sparse and strictly upper triangular. The
// offset is carried explicitly so that penalized objectives report absolute
// energies rather than energies up to a constant.
struct QuboProblem {
  int n = 0;
  std::vector<double> linear;                           // a_i, size n
  std::map<std::pair<int, int>, double> quadratic;      // b_{i,j}, keys i < j
  double offset = 0.0;
};

// Throws ParameterError / DimensionError if sizes or keys are inconsistent.
void validate(const QuboProblem& p);

// Accumulates v onto b_{i,j}, normalizing the key so that i < j.
void add_quadratic(QuboProblem& p, int i, int j, double v);

// Merges `term` into `dst` (same n), adding coefficients and offsets.
void add_in_place(QuboProblem& dst, const QuboProblem& term);

double evaluate_qubo(const QuboProblem& p, const BitString& x);

// f(x) for every bitstring, indexed by the packed word. Intended for the
// statevector simulators; capped at n <= 24 to bound memory.
std::vector<double> qubo_value_table(const QuboProblem& p);

}  // namespace qpromo
