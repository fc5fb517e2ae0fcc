#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mildsol {

/// Raised for malformed or out-of-range configuration (CLI exit code 1).
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised when a scenario runs but fails its numerical contract (exit 2).
struct NumericalFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parse and range-check a scenario configuration file; throws ConfigError
/// with an actionable message on any problem.
void validate_config_file(const std::string& config_path);

/// Run the scenario described by the JSON config, writing report.json and
/// scenario CSVs into output_dir. `output_dir`/`seed` override the config
/// when nonempty / nonnegative. Partial artifacts are removed on failure.
void run_scenario_file(const std::string& config_path,
                       const std::string& output_dir_override = "",
                       std::int64_t seed_override = -1);

}  // namespace mildsol
