#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "qpromo/errors.hpp"
#include "qpromo/experiments.hpp"

namespace {

struct SubcommandInfo {
  const char* name;
  const char* blurb;
};

// One subcommand per pipeline; they all share the same flag set and differ
// only in which config keys they understand.
constexpr SubcommandInfo kSubcommands[] = {
    {"generate", "write the instance corpus and its manifest"},
    {"profile", "tabulate the minimum objective at each promotion count"},
    {"sweep-a2", "anneal under quadratic penalties across a strength grid"},
    {"scan-a1", "scan linear penalty strengths and locate the valid window"},
    {"grid", "map two-quarter penalty grids and their satisfying regions"},
    {"mixed", "search the mixed quadratic/linear two-quarter encoding"},
    {"norm-ratio", "compare normalization factors of the two encodings"},
    {"qa", "run the annealer under both encodings and record success rates"},
    {"qaoa", "run the circuit optimizer under both encodings"},
    {"summarize", "reduce a per-instance CSV to per-size percentiles"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Promotion planning penalty study"};
  app.require_subcommand(1);

  std::string config_path;
  qpromo::RunPaths paths;
  for (const auto& info : kSubcommands) {
    CLI::App* sub = app.add_subcommand(info.name, info.blurb);
    sub->add_option("--config", config_path, "key = value config file");
    sub->add_option("--corpus", paths.corpus_dir, "instance corpus directory")
        ->capture_default_str();
    sub->add_option("--out", paths.out_dir, "output directory")
        ->capture_default_str();
    sub->add_option("--seed", paths.seed, "run seed for sampled quantities")
        ->capture_default_str();
    sub->add_option("--jobs", paths.jobs, "worker threads")
        ->capture_default_str();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const std::string kind = app.get_subcommands().front()->get_name();
    const qpromo::KeyValues cfg = config_path.empty()
                                      ? qpromo::KeyValues{}
                                      : qpromo::KeyValues::parse_file(config_path);
    const int failures = qpromo::run_experiment(kind, cfg, paths);
    if (failures > 0) {
      std::cerr << failures << " instance(s) failed\n";
      return 1;
    }
    return 0;
  } catch (const qpromo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const qpromo::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
