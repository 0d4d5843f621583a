#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cli.hpp"

int main(int argc, char** argv) {
  using namespace loewner::cli;
  CLI::App app{"Numerical Loewner theory on the disc and the ball"};
  std::string command;
  RunManifest manifest;
  double t_max = 0, step = 0, tol = 0, horizon = 0;
  app.add_option("command", command, "flow | chain | range | check-field | extend | shape | kernel | validate")
      ->required();
  app.add_option("--input,-i", manifest.input_path, "input spec (JSON)")->required();
  app.add_option("--output,-o", manifest.output_path, "report path (default: stdout)");
  auto* t_opt = app.add_option("--t-max", t_max, "end time (flow) or beta horizon (range)");
  auto* step_opt = app.add_option("--step", step, "integrator step");
  auto* tol_opt = app.add_option("--tol", tol, "integrator tolerance (abs and rel)");
  auto* h_opt = app.add_option("--horizon", horizon, "chain horizon T");
  app.add_option("--seed", manifest.seed, "seed for sampled probes");
  app.add_option("--dump-csv", manifest.dump_csv, "write the data table to this CSV path");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kParseError;
  }
  const auto cmd = parse_command(command);
  if (!cmd) {
    std::cerr << "loewner: unknown command '" << command << "'\n";
    return kParseError;
  }
  manifest.command = *cmd;
  if (*t_opt) manifest.overrides["t_max"] = t_max;
  if (*step_opt) manifest.overrides["step"] = step;
  if (*tol_opt) manifest.overrides["tol"] = tol;
  if (*h_opt) manifest.overrides["horizon"] = horizon;
  return run(manifest);
}
