#include "sphereflow/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "sphereflow/csv_io.hpp"
#include "sphereflow/error.hpp"

namespace sphereflow {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ConfigParse, what); }

double positive(const json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) bad(std::string(key) + " must be a number");
  const double v = j[key].get<double>();
  if (!(v > 0.0) || !std::isfinite(v)) bad(std::string(key) + " must be positive and finite");
  return v;
}

std::size_t count(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer() || j[key].get<long long>() <= 0) {
    bad(std::string(key) + " must be a positive integer");
  }
  return j[key].get<std::size_t>();
}

Vec3 axis_of(const json& g) {
  if (!g.contains("axis")) return {0.0, 0.0, 1.0};
  const json& a = g["axis"];
  if (!a.is_array() || a.size() != 3 || !std::all_of(a.begin(), a.end(), [](const json& x) {
        return x.is_number();
      })) {
    bad("axis must be an array of three numbers");
  }
  const Vec3 v{a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
  if (!(norm(v) > 0.0)) bad("axis must be nonzero");
  return v;
}

template <typename T>
std::vector<T> list_of(const json& g, const char* key) {
  if (!g.contains(key)) return {};
  if (!g[key].is_array()) bad(std::string(key) + " must be an array");
  try {
    return g[key].get<std::vector<T>>();
  } catch (const json::exception&) {
    bad(std::string(key) + " has entries of the wrong type");
  }
}

Generator parse_generator(const json& g) {
  if (!g.is_object() || !g.contains("type") || !g["type"].is_string()) {
    bad("generator must be an object with a string 'type'");
  }
  const std::string type = g["type"].get<std::string>();
  if (type == "parallel") {
    if (!g.contains("theta0")) bad("parallel needs 'theta0'");
    const double theta0 = positive(g, "theta0", 0.0);
    if (!(theta0 < std::acos(-1.0))) bad("theta0 must lie in (0, pi)");
    return ParallelGen{theta0, axis_of(g)};
  }
  if (type == "great_circle") return GreatCircleGen{axis_of(g)};
  if (type == "fourier_perturbed") {
    FourierGen f;
    f.spec.axis = axis_of(g);
    f.spec.polar_angle = positive(g, "polar_angle", f.spec.polar_angle);
    f.spec.modes = list_of<int>(g, "modes");
    f.spec.amplitudes = list_of<double>(g, "amplitudes");
    f.spec.phases = list_of<double>(g, "phases");
    if (g.contains("antipodal_symmetric")) {
      if (!g["antipodal_symmetric"].is_boolean()) bad("antipodal_symmetric must be a boolean");
      f.spec.antipodal_symmetric = g["antipodal_symmetric"].get<bool>();
    }
    if (f.spec.modes.empty()) bad("fourier_perturbed needs at least one mode");
    if (f.spec.modes.size() != f.spec.amplitudes.size()) bad("modes and amplitudes differ in length");
    if (!f.spec.phases.empty() && f.spec.phases.size() != f.spec.modes.size()) {
      bad("phases and modes differ in length");
    }
    for (int m : f.spec.modes) {
      if (m <= 0) bad("modes must be positive");
    }
    for (double a : f.spec.amplitudes) {
      if (!(a > 0.0) || !std::isfinite(a)) bad("amplitudes must be positive");
    }
    return f;
  }
  if (type == "from_file") {
    if (!g.contains("path") || !g["path"].is_string()) bad("from_file needs a string 'path'");
    return FileGen{g["path"].get<std::string>()};
  }
  bad("unknown generator type '" + type + "'");
}

json axis_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

}  // namespace

const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names{"chord_arc",       "curvature_bound", "length_sandwich",
                                              "improved_length", "tau_bracket",     "roundness",
                                              "great_circle"};
  return names;
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) bad("config must be a JSON object");
  if (!j.contains("generator")) bad("missing 'generator'");
  RunConfig c;
  c.generator = parse_generator(j["generator"]);
  c.n = count(j, "n", c.n);
  if (c.n < kMinVertices) bad("n must be at least " + std::to_string(kMinVertices));
  c.dt = positive(j, "dt", c.dt);
  c.t_max = positive(j, "t_max", c.t_max);
  c.L_floor = positive(j, "L_floor", c.L_floor);
  if (j.contains("a") && !j["a"].is_null()) c.a = positive(j, "a", 0.0);
  c.checks = list_of<std::string>(j, "checks");
  for (const auto& name : c.checks) {
    if (std::find(known_checks().begin(), known_checks().end(), name) == known_checks().end()) {
      bad("unknown check '" + name + "'");
    }
  }
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) bad("seed must be a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("output_dir")) {
    if (!j["output_dir"].is_string()) bad("output_dir must be a string");
    c.output_dir = j["output_dir"].get<std::string>();
  }
  c.c_cfl = positive(j, "c_cfl", c.c_cfl);
  c.accuracy = positive(j, "accuracy", c.accuracy);
  c.n_min = count(j, "n_min", c.n_min);
  c.checkpoint_every = count(j, "checkpoint_every", c.checkpoint_every);
  if (j.contains("symmetrize")) {
    if (!j["symmetrize"].is_boolean()) bad("symmetrize must be a boolean");
    c.symmetrize = j["symmetrize"].get<bool>();
  }
  return c;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::IO, "cannot read config " + path.string());
  json j;
  try {
    j = json::parse(is);
  } catch (const json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  return parse_config(j);
}

json to_json(const RunConfig& c) {
  json g;
  std::visit(
      [&g](const auto& gen) {
        using T = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<T, ParallelGen>) {
          g = {{"type", "parallel"}, {"theta0", gen.theta0}, {"axis", axis_json(gen.axis)}};
        } else if constexpr (std::is_same_v<T, GreatCircleGen>) {
          g = {{"type", "great_circle"}, {"axis", axis_json(gen.axis)}};
        } else if constexpr (std::is_same_v<T, FourierGen>) {
          g = {{"type", "fourier_perturbed"},
               {"axis", axis_json(gen.spec.axis)},
               {"polar_angle", gen.spec.polar_angle},
               {"modes", gen.spec.modes},
               {"amplitudes", gen.spec.amplitudes},
               {"phases", gen.spec.phases},
               {"antipodal_symmetric", gen.spec.antipodal_symmetric}};
        } else {
          g = {{"type", "from_file"}, {"path", gen.path.generic_string()}};
        }
      },
      c.generator);

  json j = {{"generator", g},
            {"n", c.n},
            {"dt", c.dt},
            {"t_max", c.t_max},
            {"L_floor", c.L_floor},
            {"checks", c.checks},
            {"seed", c.seed},
            {"output_dir", c.output_dir},
            {"c_cfl", c.c_cfl},
            {"accuracy", c.accuracy},
            {"n_min", c.n_min},
            {"checkpoint_every", c.checkpoint_every}};
  j["a"] = c.a ? json(*c.a) : json(nullptr);
  if (c.symmetrize) j["symmetrize"] = *c.symmetrize;
  return j;
}

std::string config_hash(const RunConfig& config) {
  const std::string text = to_json(config).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  std::array<char, 17> buf{};
  std::snprintf(buf.data(), buf.size(), "%016llx", static_cast<unsigned long long>(h));
  return buf.data();
}

RunParams run_params(const RunConfig& c) {
  RunParams p;
  p.dt = c.dt;
  p.t_max = c.t_max;
  p.L_floor = c.L_floor;
  p.a = c.a;
  p.c_cfl = c.c_cfl;
  p.accuracy = c.accuracy;
  p.n_min = std::min(c.n_min, c.n);
  p.checkpoint_every = c.checkpoint_every;
  const auto* fourier = std::get_if<FourierGen>(&c.generator);
  p.symmetrize = c.symmetrize.value_or(fourier != nullptr && fourier->spec.antipodal_symmetric);
  return p;
}

DiscreteCurve initial_curve(const RunConfig& c, const std::filesystem::path& base_dir) {
  return std::visit(
      [&](const auto& gen) -> DiscreteCurve {
        using T = std::decay_t<decltype(gen)>;
        if constexpr (std::is_same_v<T, ParallelGen>) {
          return make_parallel(gen.theta0, gen.axis, c.n);
        } else if constexpr (std::is_same_v<T, GreatCircleGen>) {
          return make_great_circle(gen.axis, c.n);
        } else if constexpr (std::is_same_v<T, FourierGen>) {
          return make_fourier_perturbed(gen.spec, c.n, c.seed);
        } else {
          const auto path = gen.path.is_absolute() ? gen.path : base_dir / gen.path;
          DiscreteCurve curve = read_curve_csv(path);
          if (curve.size() != c.n) curve = reparametrize_uniform(curve, c.n);
          return curve;
        }
      },
      c.generator);
}

}  // namespace sphereflow
