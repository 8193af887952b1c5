#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "sphereflow/flow_engine.hpp"
#include "sphereflow/generators.hpp"

namespace sphereflow {

struct ParallelGen {
  double theta0 = 0.0;
  Vec3 axis{0.0, 0.0, 1.0};
};
struct GreatCircleGen {
  Vec3 axis{0.0, 0.0, 1.0};
};
struct FourierGen {
  FourierSpec spec;
};
struct FileGen {
  std::filesystem::path path;  // relative paths resolve against the config file's directory
};

using Generator = std::variant<ParallelGen, GreatCircleGen, FourierGen, FileGen>;

struct RunConfig {
  Generator generator;
  std::size_t n = 512;
  double dt = 1e-4;
  double t_max = 10.0;
  double L_floor = 0.05;
  std::optional<double> a;
  std::vector<std::string> checks;  // empty: every applicable check
  std::uint64_t seed = 0;
  std::string output_dir;           // empty: runs/<config hash>
  // Numerical knobs with engine defaults.
  double c_cfl = 1.0;
  double accuracy = 2e-3;
  std::size_t n_min = 64;
  std::size_t checkpoint_every = 100;
  std::optional<bool> symmetrize;   // defaults to the generator's antipodal flag
};

/// Names accepted in RunConfig::checks.
const std::vector<std::string>& known_checks();

/// Validates as it parses. Errors: ConfigParse.
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::filesystem::path& path);
nlohmann::json to_json(const RunConfig& config);

/// 64-bit FNV-1a of the canonical (sorted-key) JSON dump, as 16 hex digits.
std::string config_hash(const RunConfig& config);

RunParams run_params(const RunConfig& config);

/// Builds the initial curve; from_file paths resolve against base_dir.
DiscreteCurve initial_curve(const RunConfig& config, const std::filesystem::path& base_dir);

}  // namespace sphereflow
