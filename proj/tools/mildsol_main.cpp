#include "mildsol/scenario.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"mildsol - fractional integro-differential mild-solution "
               "scenarios"};
  app.require_subcommand(1);

  std::string run_config, out_dir;
  std::int64_t seed = -1;
  CLI::App* run = app.add_subcommand("run", "Run a scenario config");
  run->add_option("config", run_config, "scenario config JSON file")
      ->required();
  run->add_option("--out", out_dir, "output directory override");
  run->add_option("--seed", seed, "seed override for sampling-based checks");

  std::string validate_config;
  CLI::App* validate =
      app.add_subcommand("validate", "Validate a scenario config");
  validate->add_option("config", validate_config, "scenario config JSON file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (run->parsed()) {
      mildsol::run_scenario_file(run_config, out_dir, seed);
    } else {
      mildsol::validate_config_file(validate_config);
      std::cout << "config ok\n";
    }
  } catch (const mildsol::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const mildsol::NumericalFailure& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
