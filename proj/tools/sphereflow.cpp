#include <cstdlib>
#include <iostream>
#include <numbers>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sphereflow/commands.hpp"

int main(int argc, char** argv) {
  using namespace sphereflow;
  constexpr double pi = std::numbers::pi;

  CLI::App app{"Curve shortening flow on the unit sphere: simulation and estimate checks"};
  app.require_subcommand(1);

  std::string config;
  auto* simulate = app.add_subcommand("simulate", "run the flow from a JSON config");
  simulate->add_option("--config", config, "run configuration")->required();

  std::string curve;
  std::size_t bins = 64;
  std::string profile_out;
  auto* profile = app.add_subcommand("profile", "chord-arc profile of a curve CSV");
  profile->add_option("--curve", curve, "curve CSV with header x,y,z")->required();
  profile->add_option("--bins", bins, "number of bins over z in (0, 1/2]")->check(CLI::Range(16, 1 << 20));
  profile->add_option("--out", profile_out, "output directory (default: output root)");

  std::vector<double> a_list{0.1, 1.0, 10.0, 100.0};
  std::vector<double> L_list{pi, 2 * pi, 3 * pi, 4 * pi};
  std::string barrier_out;
  auto* barrier = app.add_subcommand("barrier-check", "grid checks of the comparison profile");
  barrier->add_option("--a", a_list, "barrier parameters")->expected(1, -1);
  barrier->add_option("--L", L_list, "curve lengths")->expected(1, -1);
  barrier->add_option("--out", barrier_out, "output directory (default: output root)");

  std::string run_dir;
  auto* verify = app.add_subcommand("verify", "re-run estimate checks over a finished run");
  verify->add_option("--run", run_dir, "run directory")->required();
  auto* report = app.add_subcommand("report", "summary table for a run");
  report->add_option("--run", run_dir, "run directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitError;
  }

  auto optional_path = [](const std::string& s) {
    return s.empty() ? std::nullopt : std::optional<std::filesystem::path>(s);
  };
  if (*simulate) return cmd_simulate(config, std::cout, std::cerr);
  if (*profile) return cmd_profile(curve, bins, optional_path(profile_out), std::cout, std::cerr);
  if (*barrier) {
    return cmd_barrier_check(a_list, L_list, optional_path(barrier_out), std::cout, std::cerr);
  }
  if (*verify) return cmd_verify(run_dir, std::cout, std::cerr);
  if (*report) return cmd_report(run_dir, std::cout, std::cerr);
  return kExitError;
}
