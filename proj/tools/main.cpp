#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/commands.hpp"

using namespace salpeter;
using namespace salpeter::cli;

namespace {

int fail(const std::string& code, const std::string& message, int exit_code) {
  std::cerr << dump(error_json(code, message, exit_code)) << "\n";
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound states of the generalized Hulthen potential in the Salpeter equation"};
  std::string config_path, command, out, format;
  std::optional<int> n_max, grid_points;
  std::optional<double> x_max, tolerance;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--command", command, "spectrum | wavefunction | verify | scan | count");
  app.add_option("--out", out, "output path (stdout if omitted)");
  app.add_option("--format", format, "json | csv");
  app.add_option("--n-max", n_max, "highest radial quantum number");
  app.add_option("--grid-points", grid_points, "grid points or shooting scan points");
  app.add_option("--x-max", x_max, "domain length in units of 1/alpha");
  app.add_option("--tolerance", tolerance, "finite-difference accuracy target");
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail("InvalidArgument", e.what(), kExitValidation);
  }

  RunConfig cfg;
  try {
    json j = json::object();
    if (!config_path.empty()) {
      std::ifstream f(config_path);
      if (!f) return fail("InvalidArgument", "cannot read " + config_path, kExitValidation);
      j = json::parse(f);
    }
    if (!command.empty()) j["command"] = command;
    if (!out.empty()) j["out"] = out;
    if (!format.empty()) j["format"] = format;
    if (n_max) j["n_max"] = *n_max;
    if (tolerance) j["tolerance"] = *tolerance;
    if (grid_points || x_max) {
      if (!j.contains("grid")) j["grid"] = json::object();
      if (grid_points) j["grid"]["points"] = *grid_points;
      if (x_max) j["grid"]["x_max"] = *x_max;
    }
    cfg = config_from_json(j);
  } catch (const json::exception& e) {
    return fail("InvalidArgument", e.what(), kExitValidation);
  } catch (const Error& e) {
    return fail(std::string(to_string(e.code())), e.detail(), exit_code_for(e.code()));
  }

  const Outcome o = run(cfg);
  if (!emit(cfg, o, std::cout)) return fail("InvalidArgument", "cannot write " + cfg.out, kExitFailure);
  if (o.error) std::cerr << dump(*o.error) << "\n";
  return o.exit_code;
}
