#include "qpromo/ising.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "qpromo/errors.hpp"

namespace qpromo {

namespace {

void check_key(int n, std::pair<int, int> key, const char* what) {
  auto [i, j] = key;
  if (i < 0 || j < 0 || i >= n || j >= n)
    throw ParameterError(std::string(what) + ": index pair (" +
                         std::to_string(i) + "," + std::to_string(j) +
                         ") out of range");
  if (i >= j)
    throw ParameterError(std::string(what) + ": key (" + std::to_string(i) +
                         "," + std::to_string(j) +
                         ") must be strictly upper triangular");
}

void check_bitstring(int n, const BitString& x, const char* what) {
  if (x.n != n)
    throw DimensionError(std::string(what) + ": bitstring length " +
                         std::to_string(x.n) + " does not match model size " +
                         std::to_string(n));
}

}  // namespace

void validate(const QuboProblem& p) {
  if (p.n < 0) throw ParameterError("QuboProblem: negative n");
  if (static_cast<int>(p.linear.size()) != p.n)
    throw DimensionError("QuboProblem: linear size " +
                         std::to_string(p.linear.size()) + " != n " +
                         std::to_string(p.n));
  for (const auto& [key, v] : p.quadratic) {
    (void)v;
    check_key(p.n, key, "QuboProblem");
  }
}

void add_quadratic(QuboProblem& p, int i, int j, double v) {
  if (i == j) throw ParameterError("add_quadratic: diagonal term not allowed");
  if (i > j) std::swap(i, j);
  check_key(p.n, {i, j}, "add_quadratic");
  p.quadratic[{i, j}] += v;
}

void add_in_place(QuboProblem& dst, const QuboProblem& term) {
  if (dst.n != term.n)
    throw DimensionError("add_in_place: size mismatch " +
                         std::to_string(dst.n) + " vs " +
                         std::to_string(term.n));
  for (int i = 0; i < dst.n; ++i) dst.linear[i] += term.linear[i];
  for (const auto& [key, v] : term.quadratic) dst.quadratic[key] += v;
  dst.offset += term.offset;
}

double evaluate_qubo(const QuboProblem& p, const BitString& x) {
  check_bitstring(p.n, x, "evaluate_qubo");
  double e = p.offset;
  for (int i = 0; i < p.n; ++i)
    if (x.bit(i)) e += p.linear[i];
  for (const auto& [key, v] : p.quadratic)
    if (x.bit(key.first) && x.bit(key.second)) e += v;
  return e;
}

std::vector<double> qubo_value_table(const QuboProblem& p) {
  validate(p);
  if (p.n > 24) throw CapacityError("qubo_value_table: n > 24");
  const std::uint64_t dim = 1ULL << p.n;
  std::vector<double> table(dim);
  for (std::uint64_t w = 0; w < dim; ++w)
    table[w] = evaluate_qubo(p, BitString(p.n, w));
  return table;
}

void validate(const IsingModel& m) {
  if (m.n < 0) throw ParameterError("IsingModel: negative n");
  if (static_cast<int>(m.fields.size()) != m.n)
    throw DimensionError("IsingModel: fields size " +
                         std::to_string(m.fields.size()) + " != n " +
                         std::to_string(m.n));
  for (const auto& [key, v] : m.couplings) {
    (void)v;
    check_key(m.n, key, "IsingModel");
  }
}

IsingModel qubo_to_ising(const QuboProblem& p) {
  validate(p);
  IsingModel m;
  m.n = p.n;
  m.fields.assign(static_cast<size_t>(p.n), 0.0);
  m.constant = p.offset;
  for (int i = 0; i < p.n; ++i) {
    m.fields[i] -= p.linear[i] / 2.0;
    m.constant += p.linear[i] / 2.0;
  }
  for (const auto& [key, b] : p.quadratic) {
    auto [i, j] = key;
    m.couplings[key] += b / 4.0;
    m.fields[i] -= b / 4.0;
    m.fields[j] -= b / 4.0;
    m.constant += b / 4.0;
  }
  return m;
}

double evaluate_ising(const IsingModel& m, const BitString& x) {
  check_bitstring(m.n, x, "evaluate_ising");
  double e = m.constant;
  for (int i = 0; i < m.n; ++i) {
    const double s = x.bit(i) ? -1.0 : 1.0;
    e += m.fields[i] * s;
  }
  for (const auto& [key, j] : m.couplings) {
    const double si = x.bit(key.first) ? -1.0 : 1.0;
    const double sj = x.bit(key.second) ? -1.0 : 1.0;
    e += j * si * sj;
  }
  return e;
}

NormalizationReport normalize_ising(const IsingModel& m, double coupling_bound,
                                    double field_bound) {
  validate(m);
  if (coupling_bound <= 0.0 || field_bound <= 0.0)
    throw ParameterError("normalize_ising: bounds must be positive");
  double max_j = 0.0;
  for (const auto& [key, v] : m.couplings) {
    (void)key;
    max_j = std::max(max_j, std::abs(v));
  }
  double max_h = 0.0;
  for (double h : m.fields) max_h = std::max(max_h, std::abs(h));

  double factor = std::max(max_j / coupling_bound, max_h / field_bound);
  if (factor == 0.0) factor = 1.0;

  NormalizationReport report;
  report.factor = factor;
  report.model = m;
  for (double& h : report.model.fields) h /= factor;
  for (auto& [key, v] : report.model.couplings) {
    (void)key;
    v /= factor;
  }
  report.model.constant /= factor;
  return report;
}

std::vector<double> ising_energy_table(const IsingModel& m) {
  validate(m);
  if (m.n > 24) throw CapacityError("ising_energy_table: n > 24");
  const std::uint64_t dim = 1ULL << m.n;
  std::vector<double> table(dim);
  for (std::uint64_t w = 0; w < dim; ++w)
    table[w] = evaluate_ising(m, BitString(m.n, w));
  return table;
}

}  // namespace qpromo
