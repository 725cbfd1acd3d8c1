#include "qpromo/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qpromo/anneal.hpp"
#include "qpromo/csv.hpp"
#include "qpromo/errors.hpp"
#include "qpromo/exact.hpp"
#include "qpromo/instances.hpp"
#include "qpromo/ising.hpp"
#include "qpromo/penalty.hpp"
#include "qpromo/qaoa.hpp"
#include "qpromo/rng.hpp"
#include "qpromo/search.hpp"
#include "qpromo/statevector.hpp"

namespace fs = std::filesystem;

namespace qpromo {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= value.size()) {
    const std::size_t comma = value.find(',', start);
    const std::size_t end = comma == std::string::npos ? value.size() : comma;
    items.push_back(trim(std::string_view(value).substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return items;
}

double parse_double_or_throw(const std::string& key, const std::string& text) {
  double v = 0.0;
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(text.data(), last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw ConfigError("config key '" + key + "': expected a number, got '" +
                      text + "'");
  return v;
}

long long parse_int_or_throw(const std::string& key, const std::string& text) {
  long long v = 0;
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(text.data(), last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw ConfigError("config key '" + key + "': expected an integer, got '" +
                      text + "'");
  return v;
}

}  // namespace

KeyValues KeyValues::parse(std::istream& in) {
  KeyValues kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const std::size_t eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ParseError("config line " + std::to_string(lineno) +
                       ": expected key = value");
    const std::string key = trim(std::string_view(stripped).substr(0, eq));
    const std::string value = trim(std::string_view(stripped).substr(eq + 1));
    if (key.empty())
      throw ParseError("config line " + std::to_string(lineno) + ": empty key");
    if (!kv.values_.emplace(key, value).second)
      throw ParseError("config line " + std::to_string(lineno) +
                       ": duplicate key '" + key + "'");
  }
  return kv;
}

KeyValues KeyValues::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  return parse(in);
}

bool KeyValues::has(const std::string& key) const {
  touched_.insert(key);
  return values_.count(key) > 0;
}

std::string KeyValues::get_string(const std::string& key,
                                  const std::string& fallback) const {
  touched_.insert(key);
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second;
}

double KeyValues::get_double(const std::string& key, double fallback) const {
  touched_.insert(key);
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_double_or_throw(key, it->second);
}

long long KeyValues::get_int(const std::string& key, long long fallback) const {
  touched_.insert(key);
  const auto it = values_.find(key);
  return it == values_.end() ? fallback : parse_int_or_throw(key, it->second);
}

std::uint64_t KeyValues::get_u64(const std::string& key,
                                 std::uint64_t fallback) const {
  touched_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::uint64_t v = 0;
  const char* last = it->second.data() + it->second.size();
  const auto res = std::from_chars(it->second.data(), last, v);
  if (res.ec != std::errc() || res.ptr != last)
    throw ConfigError("config key '" + key +
                      "': expected an unsigned integer, got '" + it->second +
                      "'");
  return v;
}

bool KeyValues::get_bool(const std::string& key, bool fallback) const {
  touched_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw ConfigError("config key '" + key + "': expected true/false, got '" +
                    it->second + "'");
}

std::vector<double> KeyValues::get_doubles(
    const std::string& key, const std::vector<double>& fallback) const {
  touched_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<double> out;
  for (const auto& item : split_list(it->second))
    out.push_back(parse_double_or_throw(key, item));
  return out;
}

std::vector<int> KeyValues::get_ints(const std::string& key,
                                     const std::vector<int>& fallback) const {
  touched_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  std::vector<int> out;
  for (const auto& item : split_list(it->second))
    out.push_back(static_cast<int>(parse_int_or_throw(key, item)));
  return out;
}

std::vector<std::string> KeyValues::get_strings(
    const std::string& key, const std::vector<std::string>& fallback) const {
  touched_.insert(key);
  const auto it = values_.find(key);
  if (it == values_.end()) return fallback;
  return split_list(it->second);
}

void KeyValues::reject_unknown_keys() const {
  std::string unknown;
  for (const auto& [key, value] : values_) {
    (void)value;
    if (touched_.count(key)) continue;
    if (!unknown.empty()) unknown += ", ";
    unknown += key;
  }
  if (!unknown.empty())
    throw ConfigError("unknown config keys: " + unknown);
}

namespace {

const char* bool_str(bool v) { return v ? "true" : "false"; }

// Runs fn over every item, with up to `jobs` worker threads pulling from a
// shared counter. Results land at their item's index, so downstream writes
// happen in a canonical order no matter how the work interleaved.
template <class Item, class Fn>
auto parallel_map(const std::vector<Item>& items, int jobs, Fn fn)
    -> std::vector<decltype(fn(items.front()))> {
  using Out = decltype(fn(items.front()));
  std::vector<Out> out(items.size());
  const int workers =
      std::min<int>(jobs, static_cast<int>(items.size()));
  if (workers <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = fn(items[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int t = 0; t < workers; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= items.size()) return;
        out[i] = fn(items[i]);
      }
    });
  for (auto& th : pool) th.join();
  return out;
}

struct RunLog {
  std::vector<std::string> instances;
  std::vector<std::string> outputs;
  std::vector<std::string> skipped;
  std::vector<std::string> failures;
};

// What one instance contributes: rows for the primary CSV, rows for an
// optional secondary CSV, or a skip/failure note.
struct TaskOut {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::vector<std::string>> extra;
  std::string skipped;
  std::string error;
};

std::vector<ManifestRow> select_instances(const KeyValues& cfg,
                                          const RunPaths& paths) {
  const std::vector<ManifestRow> manifest = read_manifest(paths.corpus_dir);
  std::vector<ManifestRow> chosen;
  if (cfg.has("instances")) {
    std::map<std::string, const ManifestRow*> by_id;
    for (const auto& row : manifest) by_id[row.id] = &row;
    for (const auto& id : cfg.get_strings("instances", {})) {
      const auto it = by_id.find(id);
      if (it == by_id.end())
        throw ConfigError("instances: id '" + id +
                          "' is not in the corpus manifest");
      chosen.push_back(*it->second);
    }
  } else {
    const std::vector<int> sizes = cfg.get_ints("sizes", {});
    const long long count = cfg.get_int("count", 0);
    if (count < 0) throw ConfigError("count must be >= 0");
    std::map<int, long long> taken;
    for (const auto& row : manifest) {
      if (!sizes.empty() &&
          std::find(sizes.begin(), sizes.end(), row.n_products) == sizes.end())
        continue;
      if (count > 0 && taken[row.n_products] >= count) continue;
      ++taken[row.n_products];
      chosen.push_back(row);
    }
  }
  if (chosen.empty()) throw ConfigError("instance selection is empty");
  return chosen;
}

InstanceRecord load_for(const ManifestRow& row, const RunPaths& paths) {
  return load_instance(paths.corpus_dir + "/" + row.file);
}

// Shared driver: run the per-instance task over the selection, then write
// buffered rows in manifest order. Returns the failure count.
template <class Fn>
int for_each_instance(const std::vector<ManifestRow>& chosen,
                      const RunPaths& paths, RunLog& log, CsvWriter& main_csv,
                      CsvWriter* extra_csv, Fn task) {
  const auto outs =
      parallel_map(chosen, paths.jobs, [&](const ManifestRow& row) -> TaskOut {
        try {
          return task(row);
        } catch (const std::exception& e) {
          TaskOut out;
          out.error = row.id + ": " + e.what();
          return out;
        }
      });
  int failures = 0;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    log.instances.push_back(chosen[i].id);
    const TaskOut& out = outs[i];
    if (!out.error.empty()) {
      ++failures;
      log.failures.push_back(out.error);
      std::cerr << "error: " << out.error << "\n";
      continue;
    }
    if (!out.skipped.empty()) log.skipped.push_back(out.skipped);
    for (const auto& row : out.rows) main_csv.write_row(row);
    if (extra_csv)
      for (const auto& row : out.extra) extra_csv->write_row(row);
  }
  return failures;
}

std::array<double, 2> lambda_from(const KeyValues& cfg) {
  const std::vector<double> values = cfg.get_doubles("lambda", {1.5, 1.0});
  if (values.size() != 2)
    throw ConfigError("lambda: expected exactly two values");
  return {values[0], values[1]};
}

GridSpec grid_spec_from(const KeyValues& cfg) {
  GridSpec spec;
  spec.lo = cfg.get_double("lo", spec.lo);
  spec.hi = cfg.get_double("hi", spec.hi);
  spec.points = static_cast<int>(cfg.get_int("points", spec.points));
  if (spec.points < 1) throw ConfigError("points must be >= 1");
  if (spec.hi < spec.lo) throw ConfigError("hi must be >= lo");
  return spec;
}

std::vector<double> axis_values(const GridSpec& spec) {
  std::vector<double> values(static_cast<std::size_t>(spec.points));
  for (int k = 0; k < spec.points; ++k)
    values[static_cast<std::size_t>(k)] =
        spec.points == 1
            ? spec.lo
            : spec.lo + (spec.hi - spec.lo) * k / (spec.points - 1);
  return values;
}

// Uniform draw from a found interval, seeded per (run seed, instance id) so
// every pipeline that samples a strength for the same instance agrees.
double sample_alpha1(const AlphaInterval& interval, std::uint64_t run_seed,
                     const std::string& id) {
  std::mt19937_64 rng(derive_seed(run_seed, id));
  return uniform_in(rng, interval.lo, interval.hi);
}

double percentile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  if (v.size() == 1) return v.front();
  const double h = q * static_cast<double>(v.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(h);
  const std::size_t hi = std::min(lo + 1, v.size() - 1);
  const double frac = h - static_cast<double>(lo);
  return v[lo] + (v[hi] - v[lo]) * frac;
}

// ---------------------------------------------------------------------------
// Pipelines. Each reads its keys, rejects strays, does the work, and fills
// the run log. They return their failure count.

int pipeline_generate(const KeyValues& cfg, const RunPaths& paths,
                      RunLog& log) {
  const std::vector<int> sizes =
      cfg.get_ints("sizes", {6, 7, 8, 9, 10, 11, 12});
  const int count = static_cast<int>(cfg.get_int("count", 100));
  const int budget = static_cast<int>(cfg.get_int("budget", 3));
  cfg.reject_unknown_keys();

  const auto rows = generate_corpus(paths.corpus_dir, sizes, count, budget);
  for (const auto& row : rows) log.instances.push_back(row.id);
  log.outputs.push_back(paths.corpus_dir + "/manifest.csv");
  return 0;
}

int pipeline_profile(const KeyValues& cfg, const RunPaths& paths,
                     RunLog& log) {
  const auto chosen = select_instances(cfg, paths);
  cfg.reject_unknown_keys();

  const std::string out_path = paths.out_dir + "/weight_profile.csv";
  CsvWriter csv(out_path, {"instance_id", "n_p", "weight", "min_value"});
  log.outputs.push_back(out_path);
  return for_each_instance(
      chosen, paths, log, csv, nullptr, [&](const ManifestRow& row) {
        const InstanceRecord rec = load_for(row, paths);
        const BuiltProblem built = build_single_quarter(rec.c, rec.budget);
        TaskOut out;
        for (const auto& entry : min_objective_by_weight(built.objective))
          out.rows.push_back({rec.id, std::to_string(rec.n_products),
                              std::to_string(entry.weight),
                              format_double(entry.min_value)});
        return out;
      });
}

int pipeline_sweep_a2(const KeyValues& cfg, const RunPaths& paths,
                      RunLog& log) {
  const auto chosen = select_instances(cfg, paths);
  const std::vector<double> grid =
      cfg.get_doubles("alpha2_grid", {0.25, 0.5, 1.0, 2.0, 4.0, 8.0});
  const double t_f = cfg.get_double("t_f", 10.0);
  const bool normalize = cfg.get_bool("normalize", true);
  const double coupling_bound = cfg.get_double("coupling_bound", 1.0);
  const double field_bound = cfg.get_double("field_bound", 3.0);
  const double prob_tol = cfg.get_double("prob_tol", 5e-7);
  cfg.reject_unknown_keys();
  if (grid.empty()) throw ConfigError("alpha2_grid must be non-empty");
  for (double a2 : grid)
    if (a2 <= 0.0) throw ConfigError("alpha2_grid values must be > 0");

  const std::string out_path = paths.out_dir + "/sweep_a2.csv";
  CsvWriter csv(out_path,
                {"instance_id", "scheme", "alpha", "t_f", "steps",
                 "normalization", "p_success", "p_feasible"});
  log.outputs.push_back(out_path);
  return for_each_instance(
      chosen, paths, log, csv, nullptr, [&](const ManifestRow& row) {
        const InstanceRecord rec = load_for(row, paths);
        const BuiltProblem built = build_single_quarter(rec.c, rec.budget);
        const ExactSummary target =
            brute_force(built.objective, built.constraints);
        TaskOut out;
        for (const double alpha2 : grid) {
          const QuboProblem penalized = apply_scheme(
              built.objective, built.constraints,
              uniform_scheme(built.constraints, PenaltyKind::Quadratic, alpha2,
                             alpha2));
          IsingModel m = qubo_to_ising(penalized);
          double factor = 1.0;
          if (normalize) {
            NormalizationReport rep =
                normalize_ising(m, coupling_bound, field_bound);
            m = std::move(rep.model);
            factor = rep.factor;
          }
          const AnnealResult res =
              anneal_converged(m, AnnealSchedule::linear(t_f), prob_tol);
          const RunMetrics met = measure_metrics(res.state, target);
          out.rows.push_back({rec.id, "quadratic", format_double(alpha2),
                              format_double(t_f), std::to_string(res.steps),
                              format_double(factor),
                              format_double(met.p_success),
                              format_double(met.p_feasible)});
        }
        return out;
      });
}

int pipeline_scan_a1(const KeyValues& cfg, const RunPaths& paths,
                     RunLog& log) {
  const auto chosen = select_instances(cfg, paths);
  const GridSpec spec = grid_spec_from(cfg);
  const double precision = cfg.get_double("precision", 1e-5);
  cfg.reject_unknown_keys();

  const std::string scan_path = paths.out_dir + "/scan_a1.csv";
  const std::string interval_path = paths.out_dir + "/alpha1_intervals.csv";
  CsvWriter scan_csv(scan_path, {"instance_id", "alpha1", "w_min", "w_max",
                                 "all_feasible", "ground_energy"});
  CsvWriter interval_csv(
      interval_path, {"instance_id", "target_weight", "found", "lo", "hi",
                      "oracle_calls", "doubling_calls"});
  log.outputs.push_back(scan_path);
  log.outputs.push_back(interval_path);
  const std::vector<double> axis = axis_values(spec);
  return for_each_instance(
      chosen, paths, log, scan_csv, &interval_csv,
      [&](const ManifestRow& row) {
        const InstanceRecord rec = load_for(row, paths);
        const BuiltProblem built = build_single_quarter(rec.c, rec.budget);
        TaskOut out;
        for (const double alpha1 : axis) {
          const GroundWeightReport report =
              ground_weight(built.objective, built.constraints, alpha1);
          out.rows.push_back({rec.id, format_double(alpha1),
                              std::to_string(report.weights.front()),
                              std::to_string(report.weights.back()),
                              bool_str(report.all_feasible),
                              format_double(report.ground_energy)});
        }
        const AlphaInterval interval =
            find_alpha1_interval(rec.c, rec.budget, precision);
        const double nan = std::numeric_limits<double>::quiet_NaN();
        out.extra.push_back(
            {rec.id, std::to_string(interval.target_weight),
             bool_str(interval.found),
             format_double(interval.found ? interval.lo : nan),
             format_double(interval.found ? interval.hi : nan),
             std::to_string(interval.oracle_calls),
             std::to_string(interval.doubling_calls)});
        if (!interval.found)
          out.skipped = rec.id + ": no weight-" +
                        std::to_string(interval.target_weight) +
                        " window at precision " + format_double(precision);
        return out;
      });
}

int pipeline_grid(const KeyValues& cfg, const RunPaths& paths, RunLog& log) {
  const auto chosen = select_instances(cfg, paths);
  const std::array<double, 2> lambda_default = lambda_from(cfg);
  const double ineq_alpha2 = cfg.get_double("ineq_alpha2", 2.0);
  const GridSpec spec = grid_spec_from(cfg);
  const double r_cap = cfg.get_double("r_cap", 10.0);
  cfg.reject_unknown_keys();

  struct GridOut {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> summary;
    std::string error;
  };
  const auto outs = parallel_map(
      chosen, paths.jobs, [&](const ManifestRow& row) -> GridOut {
        GridOut out;
        try {
          const InstanceRecord rec = load_for(row, paths);
          const std::array<double, 2> lambda =
              rec.lambda ? *rec.lambda : lambda_default;
          const GridScanResult scan = grid_scan_two_quarter(
              rec.c, rec.budget, lambda, ineq_alpha2, spec, spec);
          for (std::size_t i1 = 0; i1 < scan.alpha1_q1.size(); ++i1)
            for (std::size_t i2 = 0; i2 < scan.alpha1_q2.size(); ++i2) {
              const GridCell& cell =
                  scan.cells[i1 * scan.alpha1_q2.size() + i2];
              out.cells.push_back({format_double(scan.alpha1_q1[i1]),
                                   format_double(scan.alpha1_q2[i2]),
                                   std::to_string(cell.w1),
                                   std::to_string(cell.w2),
                                   bool_str(cell.degenerate),
                                   bool_str(cell.feasible)});
            }
          const TwoQuarterWindow window = two_quarter_window(
              rec.c, rec.budget, lambda, ineq_alpha2, r_cap);
          out.summary = {rec.id,
                         std::to_string(scan.cells.size()),
                         std::to_string(scan.satisfying_cells.size()),
                         bool_str(window.exists),
                         format_double(window.radius),
                         format_double(window.alpha1_q1),
                         format_double(window.alpha1_q2)};
        } catch (const std::exception& e) {
          out.error = row.id + ": " + e.what();
        }
        return out;
      });

  const std::string summary_path = paths.out_dir + "/grid_summary.csv";
  CsvWriter summary_csv(
      summary_path, {"instance_id", "cells", "satisfying_cells",
                     "window_exists", "window_radius", "window_alpha1_q1",
                     "window_alpha1_q2"});
  log.outputs.push_back(summary_path);
  int failures = 0;
  for (std::size_t i = 0; i < chosen.size(); ++i) {
    log.instances.push_back(chosen[i].id);
    const GridOut& out = outs[i];
    if (!out.error.empty()) {
      ++failures;
      log.failures.push_back(out.error);
      std::cerr << "error: " << out.error << "\n";
      continue;
    }
    const std::string cell_path =
        paths.out_dir + "/grid_" + chosen[i].id + ".csv";
    CsvWriter cell_csv(cell_path, {"alpha1_q1", "alpha1_q2", "w1", "w2",
                                   "degenerate", "feasible"});
    for (const auto& row : out.cells) cell_csv.write_row(row);
    log.outputs.push_back(cell_path);
    summary_csv.write_row(out.summary);
  }
  return failures;
}

int pipeline_mixed(const KeyValues& cfg, const RunPaths& paths, RunLog& log) {
  const auto chosen = select_instances(cfg, paths);
  const std::array<double, 2> lambda_default = lambda_from(cfg);
  const double alpha2 = cfg.get_double("alpha2", 2.0);
  const double precision = cfg.get_double("precision", 1e-5);
  cfg.reject_unknown_keys();

  const std::string out_path = paths.out_dir + "/mixed_search.csv";
  CsvWriter csv(out_path,
                {"instance_id", "target_weight", "found", "lo", "hi",
                 "oracle_calls", "doubling_calls", "violated"});
  log.outputs.push_back(out_path);
  return for_each_instance(
      chosen, paths, log, csv, nullptr, [&](const ManifestRow& row) {
        const InstanceRecord rec = load_for(row, paths);
        const std::array<double, 2> lambda =
            rec.lambda ? *rec.lambda : lambda_default;
        const MixedSearchResult result = mixed_scheme_search(
            rec.c, rec.budget, lambda, alpha2, precision);
        std::string violated;
        for (const auto& label : result.violated) {
          if (!violated.empty()) violated += ';';
          violated += label;
        }
        const double nan = std::numeric_limits<double>::quiet_NaN();
        TaskOut out;
        out.rows.push_back(
            {rec.id, std::to_string(result.interval.target_weight),
             bool_str(result.interval.found),
             format_double(result.interval.found ? result.interval.lo : nan),
             format_double(result.interval.found ? result.interval.hi : nan),
             std::to_string(result.interval.oracle_calls),
             std::to_string(result.interval.doubling_calls), violated});
        if (!result.interval.found)
          out.skipped = rec.id + ": mixed scheme found no window" +
                        (violated.empty() ? "" : " (violates " + violated + ")");
        return out;
      });
}

int pipeline_norm_ratio(const KeyValues& cfg, const RunPaths& paths,
                        RunLog& log) {
  const auto chosen = select_instances(cfg, paths);
  const double alpha2 = cfg.get_double("alpha2", 2.0);
  const double coupling_bound = cfg.get_double("coupling_bound", 1.0);
  const double field_bound = cfg.get_double("field_bound", 3.0);
  const double precision = cfg.get_double("precision", 1e-5);
  cfg.reject_unknown_keys();

  const std::string out_path = paths.out_dir + "/norm_ratio.csv";
  CsvWriter csv(out_path, {"instance_id", "n_p", "alpha2", "n_quadratic",
                           "found", "alpha1", "n_linear"});
  log.outputs.push_back(out_path);
  return for_each_instance(
      chosen, paths, log, csv, nullptr, [&](const ManifestRow& row) {
        const InstanceRecord rec = load_for(row, paths);
        const BuiltProblem built = build_single_quarter(rec.c, rec.budget);

        const QuboProblem quad = apply_scheme(
            built.objective, built.constraints,
            uniform_scheme(built.constraints, PenaltyKind::Quadratic, alpha2,
                           alpha2));
        const double n_quadratic =
            normalize_ising(qubo_to_ising(quad), coupling_bound, field_bound)
                .factor;

        const AlphaInterval interval =
            find_alpha1_interval(rec.c, rec.budget, precision);
        double alpha1 = std::numeric_limits<double>::quiet_NaN();
        double n_linear = std::numeric_limits<double>::quiet_NaN();
        TaskOut out;
        if (interval.found) {
          alpha1 = sample_alpha1(interval, paths.seed, rec.id);
          const QuboProblem lin = apply_scheme(
              built.objective, built.constraints,
              uniform_scheme(built.constraints, PenaltyKind::Linear, alpha1,
                             alpha2));
          n_linear =
              normalize_ising(qubo_to_ising(lin), coupling_bound, field_bound)
                  .factor;
        } else {
          out.skipped = rec.id + ": no linear window, ratio row incomplete";
        }
        out.rows.push_back({rec.id, std::to_string(rec.n_products),
                            format_double(alpha2), format_double(n_quadratic),
                            bool_str(interval.found), format_double(alpha1),
                            format_double(n_linear)});
        return out;
      });
}

int pipeline_qa(const KeyValues& cfg, const RunPaths& paths, RunLog& log) {
  const auto chosen = select_instances(cfg, paths);
  const double t_f = cfg.get_double("t_f", 10.0);
  const double alpha2 = cfg.get_double("alpha2", 2.0);
  const double coupling_bound = cfg.get_double("coupling_bound", 1.0);
  const double field_bound = cfg.get_double("field_bound", 3.0);
  const double precision = cfg.get_double("precision", 1e-5);
  const double prob_tol = cfg.get_double("prob_tol", 5e-7);
  cfg.reject_unknown_keys();

  const std::string out_path = paths.out_dir + "/qa_compare.csv";
  CsvWriter csv(out_path,
                {"instance_id", "scheme", "alpha", "t_f", "steps",
                 "normalization", "p_success", "p_feasible"});
  log.outputs.push_back(out_path);
  return for_each_instance(
      chosen, paths, log, csv, nullptr, [&](const ManifestRow& row) {
        const InstanceRecord rec = load_for(row, paths);
        const BuiltProblem built = build_single_quarter(rec.c, rec.budget);
        const ExactSummary target =
            brute_force(built.objective, built.constraints);
        TaskOut out;

        const auto run_arm = [&](const char* label, PenaltyKind kind,
                                 double strength) {
          const QuboProblem penalized = apply_scheme(
              built.objective, built.constraints,
              uniform_scheme(built.constraints, kind, strength, alpha2));
          const NormalizationReport rep = normalize_ising(
              qubo_to_ising(penalized), coupling_bound, field_bound);
          const AnnealResult res = anneal_converged(
              rep.model, AnnealSchedule::linear(t_f), prob_tol);
          const RunMetrics met = measure_metrics(res.state, target);
          out.rows.push_back(
              {rec.id, label, format_double(strength), format_double(t_f),
               std::to_string(res.steps), format_double(rep.factor),
               format_double(met.p_success), format_double(met.p_feasible)});
        };

        run_arm("quadratic", PenaltyKind::Quadratic, alpha2);
        const AlphaInterval interval =
            find_alpha1_interval(rec.c, rec.budget, precision);
        if (interval.found) {
          run_arm("linear", PenaltyKind::Linear,
                  sample_alpha1(interval, paths.seed, rec.id));
        } else {
          out.skipped = rec.id + ": no linear window, linear run skipped";
        }
        return out;
      });
}

int pipeline_qaoa(const KeyValues& cfg, const RunPaths& paths, RunLog& log) {
  const auto chosen = select_instances(cfg, paths);
  const double alpha2 = cfg.get_double("alpha2", 2.0);
  const double precision = cfg.get_double("precision", 1e-5);
  QaoaRunConfig base_cfg = cfg.get_bool("benchmark", false)
                               ? QaoaRunConfig::benchmark_profile()
                               : QaoaRunConfig{};
  base_cfg.p = static_cast<int>(cfg.get_int("p", base_cfg.p));
  base_cfg.restarts =
      static_cast<int>(cfg.get_int("restarts", base_cfg.restarts));
  base_cfg.shots_optimize =
      cfg.get_int("shots_optimize", base_cfg.shots_optimize);
  base_cfg.max_iterations =
      static_cast<int>(cfg.get_int("max_iterations", base_cfg.max_iterations));
  if (cfg.has("shots_final")) {
    if (cfg.get_string("shots_final", "exact") == "exact")
      base_cfg.shots_final.reset();
    else
      base_cfg.shots_final = cfg.get_int("shots_final", 0);
  }
  cfg.reject_unknown_keys();

  const std::string out_path = paths.out_dir + "/qaoa_compare.csv";
  const std::string trace_path = paths.out_dir + "/qaoa_trace.csv";
  CsvWriter csv(out_path, {"instance_id", "scheme", "alpha", "p", "restarts",
                           "best_restart", "p_success", "p_feasible",
                           "mean_objective"});
  CsvWriter trace_csv(trace_path,
                      {"instance_id", "scheme", "restart", "iteration",
                       "evaluations", "objective_estimate"});
  log.outputs.push_back(out_path);
  log.outputs.push_back(trace_path);
  return for_each_instance(
      chosen, paths, log, csv, &trace_csv, [&](const ManifestRow& row) {
        const InstanceRecord rec = load_for(row, paths);
        const BuiltProblem built = build_single_quarter(rec.c, rec.budget);
        TaskOut out;

        const auto run_arm = [&](const char* label, PenaltyKind kind,
                                 double strength) {
          QaoaRunConfig qcfg = base_cfg;
          qcfg.rng_seed =
              derive_seed(paths.seed, rec.id + "/" + std::string(label));
          const QaoaRunResult run = run_qaoa(
              built.objective, built.constraints,
              uniform_scheme(built.constraints, kind, strength, alpha2), qcfg);
          out.rows.push_back(
              {rec.id, label, format_double(strength),
               std::to_string(qcfg.p), std::to_string(qcfg.restarts),
               std::to_string(run.detail.best_restart),
               format_double(run.metrics.p_success),
               format_double(run.metrics.p_feasible),
               format_double(run.detail.best().mean_objective)});
          for (const auto& restart : run.detail.restarts)
            for (const auto& point : restart.trace)
              out.extra.push_back({rec.id, label,
                                   std::to_string(restart.restart),
                                   std::to_string(point.iteration),
                                   std::to_string(point.evaluations),
                                   format_double(point.best_value)});
        };

        run_arm("quadratic", PenaltyKind::Quadratic, alpha2);
        const AlphaInterval interval =
            find_alpha1_interval(rec.c, rec.budget, precision);
        if (interval.found) {
          run_arm("linear", PenaltyKind::Linear,
                  sample_alpha1(interval, paths.seed, rec.id));
        } else {
          out.skipped = rec.id + ": no linear window, linear run skipped";
        }
        return out;
      });
}

int pipeline_summarize(const KeyValues& cfg, const RunPaths& paths,
                       RunLog& log) {
  const std::string input = cfg.get_string("input", "");
  cfg.reject_unknown_keys();
  if (input.empty()) throw ConfigError("summarize requires input = <csv path>");

  const CsvTable table = read_csv(input);
  const auto column = [&](const std::string& name) {
    const auto it =
        std::find(table.header.begin(), table.header.end(), name);
    if (it == table.header.end())
      throw ParseError("summarize: input lacks column '" + name + "'");
    return static_cast<std::size_t>(it - table.header.begin());
  };
  const std::size_t col_id = column("instance_id");
  const std::size_t col_scheme = column("scheme");
  const std::size_t col_ps = column("p_success");
  const std::size_t col_pf = column("p_feasible");

  struct Bucket {
    std::vector<double> p_success;
    std::vector<double> p_feasible;
  };
  std::map<std::pair<std::string, int>, Bucket> buckets;
  for (const auto& row : table.rows) {
    const std::string& id = row[col_id];
    const std::size_t underscore = id.find('_');
    if (underscore == std::string::npos)
      throw ParseError("summarize: instance id '" + id +
                       "' lacks a <n_p>_<k> shape");
    const int n_p = static_cast<int>(
        parse_int_or_throw("instance_id", id.substr(0, underscore)));
    Bucket& b = buckets[{row[col_scheme], n_p}];
    b.p_success.push_back(parse_double_or_throw("p_success", row[col_ps]));
    b.p_feasible.push_back(parse_double_or_throw("p_feasible", row[col_pf]));
  }

  const std::string out_path = paths.out_dir + "/summary.csv";
  CsvWriter csv(out_path,
                {"scheme", "n_p", "count", "p_success_median",
                 "p_success_p05", "p_success_p95", "p_feasible_median",
                 "p_feasible_p05", "p_feasible_p95"});
  for (const auto& [key, bucket] : buckets) {
    csv.write_row({key.first, std::to_string(key.second),
                   std::to_string(bucket.p_success.size()),
                   format_double(percentile(bucket.p_success, 0.5)),
                   format_double(percentile(bucket.p_success, 0.05)),
                   format_double(percentile(bucket.p_success, 0.95)),
                   format_double(percentile(bucket.p_feasible, 0.5)),
                   format_double(percentile(bucket.p_feasible, 0.05)),
                   format_double(percentile(bucket.p_feasible, 0.95))});
  }
  log.outputs.push_back(out_path);
  return 0;
}

void write_run_manifest(const std::string& kind, const KeyValues& cfg,
                        const RunPaths& paths, const RunLog& log,
                        double wall_seconds, int failures) {
  nlohmann::json doc;
  doc["experiment"] = kind;
  doc["seed"] = paths.seed;
  doc["jobs"] = paths.jobs;
  doc["corpus_dir"] = paths.corpus_dir;
  nlohmann::json conf = nlohmann::json::object();
  for (const auto& [key, value] : cfg.raw()) conf[key] = value;
  doc["config"] = conf;
  const std::string manifest_path = paths.corpus_dir + "/manifest.csv";
  doc["corpus_manifest_digest"] =
      fs::exists(manifest_path) ? file_digest(manifest_path) : "";
  doc["instances"] = log.instances;
  doc["outputs"] = log.outputs;
  doc["skipped"] = log.skipped;
  doc["failures"] = log.failures;
  doc["failure_count"] = failures;
  doc["wall_time_seconds"] = wall_seconds;

  const std::string path = paths.out_dir + "/run_manifest.json";
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write " + path);
  out << doc.dump(1) << "\n";
}

}  // namespace

int run_experiment(const std::string& kind, const KeyValues& cfg,
                   const RunPaths& paths) {
  if (paths.jobs < 1) throw ConfigError("jobs must be >= 1");
  if (cfg.has("experiment")) {
    const std::string declared = cfg.get_string("experiment", kind);
    if (declared != kind)
      throw ConfigError("config declares experiment = " + declared +
                        " but the command is " + kind);
  }
  fs::create_directories(paths.out_dir);

  const auto start = std::chrono::steady_clock::now();
  RunLog log;
  int failures = 0;
  if (kind == "generate")
    failures = pipeline_generate(cfg, paths, log);
  else if (kind == "profile")
    failures = pipeline_profile(cfg, paths, log);
  else if (kind == "sweep-a2")
    failures = pipeline_sweep_a2(cfg, paths, log);
  else if (kind == "scan-a1")
    failures = pipeline_scan_a1(cfg, paths, log);
  else if (kind == "grid")
    failures = pipeline_grid(cfg, paths, log);
  else if (kind == "mixed")
    failures = pipeline_mixed(cfg, paths, log);
  else if (kind == "norm-ratio")
    failures = pipeline_norm_ratio(cfg, paths, log);
  else if (kind == "qa")
    failures = pipeline_qa(cfg, paths, log);
  else if (kind == "qaoa")
    failures = pipeline_qaoa(cfg, paths, log);
  else if (kind == "summarize")
    failures = pipeline_summarize(cfg, paths, log);
  else
    throw ConfigError("unknown experiment kind: " + kind);

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  write_run_manifest(kind, cfg, paths, log, wall, failures);
  return failures;
}

}  // namespace qpromo
