#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "ediffract/commands.hpp"
#include "ediffract/errors.hpp"

namespace {
constexpr int kUsage = 2;
constexpr int kNumeric = 3;
}

int main(int argc, char** argv) {
  CLI::App app{"Electron diffraction, Aharonov-Bohm and old quantum theory calculator"};
  std::string command, config_path, out_path, constants;
  double density = 0.0;
  app.add_option("command", command, "computation to run")
      ->required()
      ->check(CLI::IsMember(ediffract::command_names()));
  app.add_option("--config", config_path, "key = value configuration file")->required();
  app.add_option("--out", out_path, "CSV output path (stdout when absent)");
  app.add_option("--density", density, "quadrature samples per wavelength")
      ->check(CLI::Range(4.0, 1e6));
  app.add_option("--constants", constants, "constant set")->check(CLI::IsMember({"paper", "precise"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    auto cfg = ediffract::load_config(config_path);
    if (!constants.empty()) cfg.constant_set = constants;
    if (density > 0.0) cfg.density = density;
    auto table = ediffract::run(command, cfg);
    for (const auto& w : table.warnings) std::cerr << "warning: " << w << "\n";
    if (out_path.empty()) {
      ediffract::write_csv(std::cout, table);
    } else {
      std::ofstream out(out_path);
      if (!out) {
        std::cerr << "error: cannot write '" << out_path << "'\n";
        return kUsage;
      }
      ediffract::write_csv(out, table);
    }
  } catch (const ediffract::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const ediffract::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ediffract::Error& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return kNumeric;
  }
  return 0;
}
