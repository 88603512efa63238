#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dimerbell/json_io.hpp"

namespace dimerbell {

inline constexpr const char* kVersion = "dimerbell 0.1.0";

// Everything a subcommand needs, echoed verbatim into each output document so
// a run can be reproduced from its artifact alone.
struct RunConfig {
  std::string command;
  int n = 3;
  std::string boundary = "torus";
  std::optional<double> epsilon;
  std::optional<std::string> grid;  // "a:b:step", inclusive endpoints
  std::string solver = "auto";      // auto | dense | lanczos
  double tol = 1e-8;                // quantum solver tolerance
  int jobs = 1;                     // parallel class workers
  std::uint64_t seed = 12345;
  std::string cache_dir;            // reuse covering/class files when set
  std::string out;                  // output path; empty or "-" means stdout
  int class_id = -1;                // -1 selects all classes
  int m = 2;                        // bell-map input count
};

ordered_json config_to_json(const RunConfig& config);

// Expands "a:b:step" into an ascending inclusive grid. Throws
// std::invalid_argument on malformed specs.
std::vector<double> parse_grid(const std::string& spec);

// Runs one subcommand end to end: resolve inputs (cache-aware), compute,
// write the output document to config.out, print a human summary to stderr.
// Returns the process exit code: 0 success, 1 usage error, 2 numerical or
// resource failure.
int run_command(const RunConfig& config);

}  // namespace dimerbell
