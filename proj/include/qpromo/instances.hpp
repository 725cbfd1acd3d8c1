#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qpromo/constraints.hpp"
#include "qpromo/qubo.hpp"

namespace qpromo {

// Dense cannibalization matrix: C[i][j] >= 0 is the fraction of product j's
// sales lost when i and j are promoted together. Zero diagonal, symmetric,
// off-diagonal entries drawn from [0.1, 1.0).
using CMatrix = std::vector<std::vector<double>>;

void validate_c_matrix(const CMatrix& c);

// Deterministic generator: mt19937_64 seeded with `seed`, upper-triangular
// entries filled row-major from 0.1 + 0.9 * u with u built from the top 53
// bits of one engine draw, then mirrored.
CMatrix generate_c_matrix(int n_products, std::uint64_t seed);

// One record of the instance corpus as stored on disk. `lambda` is present
// only for two-quarter instances.
struct InstanceRecord {
  std::string id;
  int n_products = 0;
  std::uint64_t seed = 0;
  CMatrix c;
  int budget = 0;  // promotions per quarter, the constraint target A
  std::optional<std::array<double, 2>> lambda;
};

void save_instance(const InstanceRecord& rec, const std::string& path);
InstanceRecord load_instance(const std::string& path);

struct BuiltProblem {
  QuboProblem objective;
  ConstraintSet constraints;
};

// min sum_{i<j} (C_{i,j} + C_{j,i}) x_i x_j  s.t.  sum_i x_i = A.
// The equality constraint is labeled "budget".
BuiltProblem build_single_quarter(const CMatrix& c, int A);

// Two planning quarters with per-quarter cannibalization scaled by
// lambda[q]. Variable (i, q) lives at flat index q * n_p + i. Constraints:
// one budget equality per quarter ("budget_q1", "budget_q2") and one pair
// inequality per product ("overlap_<i>") forbidding back-to-back promotion.
BuiltProblem build_two_quarter(const CMatrix& c, int A,
                               const std::array<double, 2>& lambda);

struct ManifestRow {
  std::string id;
  int n_products = 0;
  std::uint64_t seed = 0;
  std::string file;  // relative to the corpus directory
};

// manifest.csv inside the corpus directory, columns id,n_p,seed,file.
void write_manifest(const std::vector<ManifestRow>& rows,
                    const std::string& corpus_dir);
std::vector<ManifestRow> read_manifest(const std::string& corpus_dir);

// Writes count instances per size (ids "<n_p>_<k>", seed k) plus the
// manifest. Returns the manifest rows in generation order.
std::vector<ManifestRow> generate_corpus(const std::string& corpus_dir,
                                         const std::vector<int>& sizes,
                                         int count, int budget);

}  // namespace qpromo
