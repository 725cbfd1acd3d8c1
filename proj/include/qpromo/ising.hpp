#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qpromo/bits.hpp"
#include "qpromo/qubo.hpp"

namespace qpromo {

// Ising Hamiltonian over spins s_i in {-1,+1}:
//
//   H(s) = sum_i h_i s_i + sum_{i<j} J_{i,j} s_i s_j + constant
//
// Spins relate to binary variables through s_i = 1 - 2 x_i, i.e. x_i = 0
// maps to s_i = +1. The constant keeps energies equal to the originating
// QUBO's values for every assignment.
struct IsingModel {
  int n = 0;
  std::vector<double> fields;                        // h_i, size n
  std::map<std::pair<int, int>, double> couplings;   // J_{i,j}, keys i < j
  double constant = 0.0;
};

void validate(const IsingModel& m);

// Exact change of variables x_i = (1 - s_i) / 2:
//
//   J_{i,j} = b_{i,j} / 4
//   h_i     = -a_i / 2 - (1/4) sum_{j != i} b_{i,j}
//   const   = offset + (1/2) sum_i a_i + (1/4) sum_{i<j} b_{i,j}
IsingModel qubo_to_ising(const QuboProblem& p);

double evaluate_ising(const IsingModel& m, const BitString& x);

// Rescales the whole model (fields, couplings, constant) by 1/N with
//
//   N = max(max|J| / coupling_bound, max|h| / field_bound)
//
// so the result fits the hardware box [-coupling_bound, coupling_bound] x
// [-field_bound, field_bound]. N is applied even when it is below 1, which
// scales weak models up to the box edge; an all-zero model gets N = 1.
struct NormalizationReport {
  IsingModel model;
  double factor = 1.0;
};

NormalizationReport normalize_ising(const IsingModel& m, double coupling_bound,
                                    double field_bound);

// H(x) for every bitstring, indexed by the packed word (n <= 24).
std::vector<double> ising_energy_table(const IsingModel& m);

}  // namespace qpromo
