// Command-line front end: loads a run config, executes it, and writes the
// resulting data file. Exit codes: 0 success, 2 config parse error,
// 3 validation error, 4 verify-mode bound violation.

#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qsbai/qsbai.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw qsbai::ConfigParseError("cannot read config file \"" + path + "\"");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Szegedy-walk simulator for best-arm identification on graphs"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "execute a run config");
  std::string config_path;
  std::optional<std::string> mode_override;
  std::optional<std::size_t> horizon_override;
  std::optional<std::uint64_t> seed_override;
  std::optional<std::string> out_override;
  run->add_option("config", config_path, "path to the config file")
      ->required();
  run->add_option("--mode", mode_override, "override mode (sweep|verify|sample)");
  run->add_option("--horizon", horizon_override, "override horizon / measurement step");
  run->add_option("--seed", seed_override, "override sampling seed");
  run->add_option("--out", out_override, "override output path");

  CLI11_PARSE(app, argc, argv);

  try {
    qsbai::RunConfig config = qsbai::parse_config(read_file(config_path));
    if (mode_override) config.mode = qsbai::parse_mode(*mode_override);
    if (horizon_override) config.horizon = *horizon_override;
    if (seed_override) config.seed = *seed_override;
    if (out_override) config.output.path = *out_override;

    qsbai::log(qsbai::LogLevel::info,
               "run mode=" + qsbai::to_string(config.mode) +
                   " graph=" + qsbai::to_string(config.graph.kind) +
                   " config=" + config_path);
    const qsbai::RunResult result = qsbai::execute(config);
    qsbai::deliver(result);
    if (result.exit_code == qsbai::kExitBoundViolated) {
      std::cerr << qsbai::error_record(result.exit_code, "bound_violated",
                                       "verify mode: bound not satisfied");
    }
    return result.exit_code;
  } catch (const qsbai::ConfigParseError& e) {
    std::cerr << qsbai::error_record(qsbai::kExitParseError, "parse", e.what());
    return qsbai::kExitParseError;
  } catch (const std::exception& e) {
    std::cerr << qsbai::error_record(qsbai::kExitValidationError, "validation",
                                     e.what());
    return qsbai::kExitValidationError;
  }
}
