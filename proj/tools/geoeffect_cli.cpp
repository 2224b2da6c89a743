#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "geoeffect/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Classicality-equation experiments"};
  app.require_subcommand(1);

  std::string config, out;
  std::optional<std::uint64_t> seed;
  CLI::App* run = app.add_subcommand("run", "Run one experiment");
  run->add_option("--config", config, "Experiment JSON")->required();
  run->add_option("--out", out, "Output directory")->required();
  run->add_option("--seed", seed, "Override the config seed");

  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  sweep->add_option("--config", config, "Sweep JSON")->required();
  sweep->add_option("--out", out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const geoeffect::RunOutcome r =
      run->parsed() ? geoeffect::run_config_file(config, out, seed) : geoeffect::sweep_config_file(config, out);
  if (!r.message.empty()) std::cerr << r.message << "\n";
  if (r.manifest) {
    for (const auto& c : r.manifest->checks) {
      std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << "\n";
    }
  }
  return static_cast<int>(r.status);
}
