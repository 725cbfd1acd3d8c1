#include "qpromo/instances.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"
#include "qpromo/csv.hpp"
#include "qpromo/errors.hpp"
#include "qpromo/rng.hpp"

namespace qpromo {

namespace fs = std::filesystem;
using nlohmann::json;

void validate_c_matrix(const CMatrix& c) {
  const size_t n = c.size();
  if (n == 0) throw ValidationError("CMatrix: empty");
  for (size_t i = 0; i < n; ++i) {
    if (c[i].size() != n)
      throw DimensionError("CMatrix: row " + std::to_string(i) + " has " +
                           std::to_string(c[i].size()) + " entries, expected " +
                           std::to_string(n));
    if (c[i][i] != 0.0)
      throw ValidationError("CMatrix: nonzero diagonal at " +
                            std::to_string(i));
    for (size_t j = 0; j < n; ++j) {
      if (c[i][j] < 0.0)
        throw ValidationError("CMatrix: negative entry at (" +
                              std::to_string(i) + "," + std::to_string(j) +
                              ")");
      if (std::abs(c[i][j] - c[j][i]) > 1e-12)
        throw ValidationError("CMatrix: asymmetry at (" + std::to_string(i) +
                              "," + std::to_string(j) + ")");
      if (i != j && (c[i][j] < 0.1 || c[i][j] >= 1.0))
        throw ValidationError("CMatrix: off-diagonal entry at (" +
                              std::to_string(i) + "," + std::to_string(j) +
                              ") outside [0.1, 1.0)");
    }
  }
}

CMatrix generate_c_matrix(int n_products, std::uint64_t seed) {
  if (n_products < 2)
    throw ParameterError("generate_c_matrix: need at least 2 products");
  std::mt19937_64 rng(seed);
  CMatrix c(static_cast<size_t>(n_products),
            std::vector<double>(static_cast<size_t>(n_products), 0.0));
  for (int i = 0; i < n_products; ++i)
    for (int j = i + 1; j < n_products; ++j) {
      const double v = uniform_in(rng, 0.1, 1.0);
      c[i][j] = v;
      c[j][i] = v;
    }
  return c;
}

void save_instance(const InstanceRecord& rec, const std::string& path) {
  validate_c_matrix(rec.c);
  json doc;
  doc["id"] = rec.id;
  doc["n_products"] = rec.n_products;
  doc["seed"] = rec.seed;
  doc["c_matrix"] = rec.c;
  doc["budget_A"] = rec.budget;
  if (rec.lambda) doc["lambda"] = *rec.lambda;
  std::ofstream out(path);
  if (!out) throw ParseError("save_instance: cannot open " + path);
  out << doc.dump(1) << "\n";
}

InstanceRecord load_instance(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("load_instance: cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError("load_instance: " + path + ": " + e.what());
  }
  InstanceRecord rec;
  auto require = [&](const char* field) -> const json& {
    if (!doc.contains(field))
      throw ParseError("load_instance: " + path + ": missing field '" +
                       field + "'");
    return doc[field];
  };
  try {
    rec.id = require("id").get<std::string>();
    rec.n_products = require("n_products").get<int>();
    rec.seed = require("seed").get<std::uint64_t>();
    rec.c = require("c_matrix").get<CMatrix>();
    rec.budget = require("budget_A").get<int>();
    if (doc.contains("lambda"))
      rec.lambda = doc["lambda"].get<std::array<double, 2>>();
  } catch (const json::exception& e) {
    throw ParseError("load_instance: " + path + ": " + e.what());
  }
  if (static_cast<int>(rec.c.size()) != rec.n_products)
    throw ValidationError("load_instance: " + path +
                          ": c_matrix size does not match n_products");
  validate_c_matrix(rec.c);
  if (rec.budget < 0 || rec.budget > rec.n_products)
    throw ValidationError("load_instance: " + path + ": budget_A out of range");
  return rec;
}

BuiltProblem build_single_quarter(const CMatrix& c, int A) {
  validate_c_matrix(c);
  const int n = static_cast<int>(c.size());
  if (A < 0 || A > n)
    throw ParameterError("build_single_quarter: budget out of range");
  BuiltProblem built;
  built.objective.n = n;
  built.objective.linear.assign(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      built.objective.quadratic[{i, j}] = c[i][j] + c[j][i];

  EqualityConstraint budget;
  budget.label = "budget";
  budget.mu.assign(static_cast<size_t>(n), 1.0);
  budget.c = static_cast<double>(A);
  built.constraints.equalities.push_back(std::move(budget));
  return built;
}

BuiltProblem build_two_quarter(const CMatrix& c, int A,
                               const std::array<double, 2>& lambda) {
  validate_c_matrix(c);
  const int n_p = static_cast<int>(c.size());
  if (A < 0 || A > n_p)
    throw ParameterError("build_two_quarter: budget out of range");
  const int n = 2 * n_p;
  BuiltProblem built;
  built.objective.n = n;
  built.objective.linear.assign(static_cast<size_t>(n), 0.0);
  for (int q = 0; q < 2; ++q)
    for (int i = 0; i < n_p; ++i)
      for (int j = i + 1; j < n_p; ++j)
        built.objective.quadratic[{q * n_p + i, q * n_p + j}] =
            lambda[static_cast<size_t>(q)] * (c[i][j] + c[j][i]);

  for (int q = 0; q < 2; ++q) {
    EqualityConstraint budget;
    budget.label = "budget_q" + std::to_string(q + 1);
    budget.mu.assign(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < n_p; ++i) budget.mu[q * n_p + i] = 1.0;
    budget.c = static_cast<double>(A);
    built.constraints.equalities.push_back(std::move(budget));
  }
  for (int i = 0; i < n_p; ++i) {
    PairInequalityConstraint overlap;
    overlap.label = "overlap_" + std::to_string(i);
    overlap.i = i;
    overlap.j = n_p + i;
    built.constraints.inequalities.push_back(overlap);
  }
  return built;
}

void write_manifest(const std::vector<ManifestRow>& rows,
                    const std::string& corpus_dir) {
  CsvWriter csv(fs::path(corpus_dir) / "manifest.csv",
                {"id", "n_p", "seed", "file"});
  for (const auto& row : rows)
    csv.write_row({row.id, std::to_string(row.n_products),
                   std::to_string(row.seed), row.file});
}

std::vector<ManifestRow> read_manifest(const std::string& corpus_dir) {
  const auto path = fs::path(corpus_dir) / "manifest.csv";
  CsvTable table = read_csv(path.string());
  const std::vector<std::string> expected = {"id", "n_p", "seed", "file"};
  if (table.header != expected)
    throw ParseError("read_manifest: unexpected header in " + path.string());
  std::vector<ManifestRow> rows;
  rows.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    ManifestRow row;
    row.id = r[0];
    try {
      row.n_products = std::stoi(r[1]);
      row.seed = std::stoull(r[2]);
    } catch (const std::exception&) {
      throw ParseError("read_manifest: bad numeric field for id '" + r[0] +
                       "'");
    }
    row.file = r[3];
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ManifestRow> generate_corpus(const std::string& corpus_dir,
                                         const std::vector<int>& sizes,
                                         int count, int budget) {
  if (count < 1) throw ParameterError("generate_corpus: count must be >= 1");
  fs::create_directories(corpus_dir);
  std::vector<ManifestRow> rows;
  for (int n_p : sizes) {
    for (int k = 0; k < count; ++k) {
      InstanceRecord rec;
      rec.id = std::to_string(n_p) + "_" + std::to_string(k);
      rec.n_products = n_p;
      rec.seed = static_cast<std::uint64_t>(k);
      rec.c = generate_c_matrix(n_p, rec.seed);
      rec.budget = budget;
      const std::string file = rec.id + ".json";
      save_instance(rec, (fs::path(corpus_dir) / file).string());
      rows.push_back({rec.id, n_p, rec.seed, file});
    }
  }
  write_manifest(rows, corpus_dir);
  return rows;
}

}  // namespace qpromo
