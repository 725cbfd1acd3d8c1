#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace qpromo {

// key = value configuration text: one pair per line, '#' starts a comment,
// list values are comma separated. Accessors record which keys they read so
// a pipeline can reject anything it does not understand (catching typos like
// "alpha_2" early instead of silently using a default).
class KeyValues {
 public:
  static KeyValues parse(std::istream& in);
  static KeyValues parse_file(const std::string& path);

  bool has(const std::string& key) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long long get_int(const std::string& key, long long fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key,
                                  const std::vector<double>& fallback) const;
  std::vector<int> get_ints(const std::string& key,
                            const std::vector<int>& fallback) const;
  std::vector<std::string> get_strings(
      const std::string& key, const std::vector<std::string>& fallback) const;

  // Throws ConfigError naming every key no accessor has touched.
  void reject_unknown_keys() const;

  const std::map<std::string, std::string>& raw() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
  mutable std::set<std::string> touched_;
};

struct RunPaths {
  std::string corpus_dir = "data/corpus";
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int jobs = 1;
};

// Runs one experiment pipeline. `kind` is a CLI subcommand name: generate,
// profile, sweep-a2, scan-a1, grid, mixed, norm-ratio, qa, qaoa, summarize.
// Outputs land in paths.out_dir next to a run_manifest.json recording the
// config echo, corpus digest, instance list, skips, failures and wall time.
// Returns the number of per-instance failures (0 = clean run); configuration
// problems throw ConfigError before any work starts.
int run_experiment(const std::string& kind, const KeyValues& cfg,
                   const RunPaths& paths);

}  // namespace qpromo
