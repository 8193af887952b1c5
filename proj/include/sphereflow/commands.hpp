#pragma once

// Subcommands of the sphereflow tool. Each returns the process exit code:
// 0 success, 1 a check or property failed, 2 an error (reported as JSON on `err`).

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <vector>

namespace sphereflow {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 1;
inline constexpr int kExitError = 2;

/// Runs the flow described by a JSON config. Writes diagnostics.csv, checkpoints/*.csv and
/// manifest.json into the run directory while holding its lockfile.
int cmd_simulate(const std::filesystem::path& config_path, std::ostream& out, std::ostream& err);

/// Chord-arc profile of a curve CSV: <stem>_profile.csv and <stem>_profile.svg in out_dir
/// (default: output root).
int cmd_profile(const std::filesystem::path& curve_path, std::size_t n_bins,
                const std::optional<std::filesystem::path>& out_dir, std::ostream& out,
                std::ostream& err);

/// Barrier property grids, F grids and the q grid for every (a, L) pair; writes
/// barrier_check.json in out_dir (default: output root).
int cmd_barrier_check(const std::vector<double>& a_list, const std::vector<double>& L_list,
                      const std::optional<std::filesystem::path>& out_dir, std::ostream& out,
                      std::ostream& err);

/// Re-runs the applicable estimate checks over a finished run; writes verdicts.json.
int cmd_verify(const std::filesystem::path& run_dir, std::ostream& out, std::ostream& err);

/// Plain-text summary of a run and its verdicts.
int cmd_report(const std::filesystem::path& run_dir, std::ostream& out, std::ostream& err);

}  // namespace sphereflow
