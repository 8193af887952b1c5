#include "sphereflow/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "sphereflow/barrier.hpp"
#include "sphereflow/chord_arc.hpp"
#include "sphereflow/config.hpp"
#include "sphereflow/csv_io.hpp"
#include "sphereflow/error.hpp"
#include "sphereflow/kernels.hpp"
#include "sphereflow/estimate_harness.hpp"
#include "sphereflow/run_store.hpp"
#include "sphereflow/svg_plot.hpp"

#ifndef SPHEREFLOW_VERSION
#define SPHEREFLOW_VERSION "unknown"
#endif

namespace sphereflow {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kPropertyGrid = 2000;
constexpr std::size_t kFPoints = 2000;
constexpr std::size_t kQGrid = 500;
constexpr double kQMax = 50.0;

const char* kManifest = "manifest.json";
const char* kDiagnostics = "diagnostics.csv";
const char* kVerdicts = "verdicts.json";

int report_error(std::ostream& err, std::string_view kind, const std::string& message) {
  err << json{{"error", kind}, {"message", message}}.dump() << '\n';
  return kExitError;
}

// Runs body, mapping library and JSON exceptions to an error JSON and exit code 2.
template <typename Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const Error& e) {
    return report_error(err, to_string(e.kind()), e.what());
  } catch (const json::exception& e) {
    return report_error(err, "ConfigParse", e.what());
  } catch (const fs::filesystem_error& e) {
    return report_error(err, "IO", e.what());
  }
}

json vec_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

// JSON has no NaN or infinity; those become null.
json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

const char* kind_name(OutcomeKind k) {
  return k == OutcomeKind::FiniteTimeShrink ? "finite_time" : "great_circle";
}

std::string checkpoint_name(std::size_t step) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "checkpoints/step_%08zu.csv", step);
  return buf;
}

json read_json(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::IO, "cannot read " + path.string());
  return json::parse(is);
}

json verdict_json(const BoundCheck& c) {
  json v = {{"check", c.name},
            {"verdict", c.pass ? "pass" : "fail"},
            {"min_margin", number(c.min_margin)},
            {"tolerance", c.tolerance},
            {"worst_step", c.worst_step}};
  if (!c.note.empty()) v["note"] = c.note;
  return v;
}

}  // namespace

int cmd_simulate(const fs::path& config_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load_config(config_path);
    const std::string hash = config_hash(cfg);
    const fs::path run_dir = resolve_run_dir(cfg.output_dir, hash);
    fs::create_directories(run_dir / "checkpoints");
    RunLock lock(run_dir);
    const std::string started = utc_timestamp();

    const DiscreteCurve initial = initial_curve(cfg, config_path.parent_path());
    RunParams params = run_params(cfg);
    const double a = cfg.a ? *cfg.a : admissible_a(initial);
    params.a = a;

    // Collected through the observer so a failing run still leaves its partial record.
    DiagnosticsSeries series;
    std::vector<Checkpoint> checkpoints;
    const StepObserver observer = [&](const FlowState& state, const DiagnosticsRecord& rec) {
      series.push_back(rec);
      if (!std::isnan(rec.min_Z)) checkpoints.push_back({state.step, state.t, state.tau, state.curve});
    };

    RunResult result;
    std::optional<Error> failure;
    try {
      result = run(initial, params, observer);
    } catch (const Error& e) {
      failure = e;
    }

    json files = json::array();
    auto record_file = [&](const std::string& rel) {
      files.push_back({{"path", rel}, {"bytes", fs::file_size(run_dir / rel)}});
    };
    write_diagnostics_csv(run_dir / kDiagnostics, series);
    record_file(kDiagnostics);
    json index = json::array();
    for (const auto& cp : checkpoints) {
      const std::string rel = checkpoint_name(cp.step);
      write_curve_csv(run_dir / rel, cp.curve);
      record_file(rel);
      index.push_back({{"file", rel}, {"step", cp.step}, {"t", cp.t}, {"tau", cp.tau}});
    }

    json outcome;
    if (failure) {
      outcome = {{"status", "error"},
                 {"error", to_string(failure->kind())},
                 {"message", failure->what()}};
    } else {
      const Outcome& o = result.outcome;
      outcome = {{"status", "completed"}, {"kind", kind_name(o.kind)}, {"fit_residual", o.fit_residual}};
      if (o.kind == OutcomeKind::FiniteTimeShrink) {
        outcome["T_est"] = o.T_est;
        outcome["z_est"] = vec_json(o.z_est);
      } else {
        outcome["axis"] = vec_json(o.axis);
      }
    }
    if (!series.empty()) {
      outcome["steps"] = series.back().step;
      outcome["final_t"] = series.back().t;
      outcome["final_L"] = series.back().L;
    }

    const json manifest = {{"config", to_json(cfg)},
                           {"config_hash", hash},
                           {"code_version", SPHEREFLOW_VERSION},
                           {"started_at", started},
                           {"finished_at", utc_timestamp()},
                           {"a", a},
                           {"outcome", outcome},
                           {"checkpoints", index},
                           {"files", files}};
    write_atomic(run_dir / kManifest, manifest.dump(2) + "\n");

    if (failure) return report_error(err, to_string(failure->kind()), failure->what());
    out << json{{"run_dir", run_dir.string()}, {"outcome", outcome}}.dump() << '\n';
    return kExitOk;
  });
}

int cmd_profile(const fs::path& curve_path, std::size_t n_bins,
                const std::optional<fs::path>& out_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const DiscreteCurve curve = read_curve_csv(curve_path);
    if (const auto hit = kernels::first_crossing(curve, ExecPolicy::parallel)) {
      throw Error(ErrorKind::NotSimple, "segments " + std::to_string(hit->first) + " and " +
                                            std::to_string(hit->second) + " cross");
    }
    const ChordArcProfile prof = profile(curve, n_bins);
    const fs::path dir = out_dir.value_or(output_root());
    fs::create_directories(dir);
    const std::string stem = curve_path.stem().string() + "_profile";
    const fs::path csv_path = dir / (stem + ".csv");
    const fs::path svg_path = dir / (stem + ".svg");
    write_profile_csv(csv_path, prof);

    const double L = curve.length();
    Series2D data{"psi (min chord)", "#1f77b4", {}, {}, true};
    double max_gap = 0.0;
    for (std::size_t k = 0; k < prof.bins(); ++k) {
      if (prof.empty(k)) continue;
      data.x.push_back(prof.z_at_min[k]);
      data.y.push_back(prof.psi[k]);
      max_gap = std::max(max_gap, std::abs(prof.psi[k] - L * phi(prof.z_at_min[k], 0.0)));
    }
    Series2D overlay{"L sin(pi z) / pi", "#d62728", {}, {}, false};
    Series2D arc{"L z (arc)", "#7f7f7f", {}, {}, false};
    for (int k = 0; k <= 200; ++k) {
      const double z = 0.5 * k / 200.0;
      overlay.x.push_back(z);
      overlay.y.push_back(L * phi(z, 0.0));
      arc.x.push_back(z);
      arc.y.push_back(L * z);
    }
    std::ofstream svg(svg_path, std::ios::binary | std::ios::trunc);
    if (!svg) throw Error(ErrorKind::IO, "cannot write " + svg_path.string());
    svg << render_svg({arc, overlay, data}, "Chord-arc profile", "normalized arc z",
                      "chord length");
    if (!svg) throw Error(ErrorKind::IO, "write failed: " + svg_path.string());

    out << json{{"csv", csv_path.string()},
                {"svg", svg_path.string()},
                {"length", L},
                {"bins", prof.bins()},
                {"empty_bins", prof.empty_bins},
                {"max_gap_to_parallel", max_gap}}
               .dump()
        << '\n';
    return kExitOk;
  });
}

int cmd_barrier_check(const std::vector<double>& a_list, const std::vector<double>& L_list,
                      const std::optional<fs::path>& out_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (a_list.empty() || L_list.empty()) {
      throw Error(ErrorKind::PreconditionViolation, "a and L lists must be nonempty");
    }
    for (double a : a_list) {
      if (!(a >= 0.0) || !std::isfinite(a)) throw Error(ErrorKind::DomainError, "a must be >= 0");
    }
    for (double L : L_list) {
      if (!(L > 0.0) || !std::isfinite(L)) throw Error(ErrorKind::DomainError, "L must be > 0");
    }

    bool all_pass = true;
    json properties = json::array();
    json f_grids = json::array();
    for (double a : a_list) {
      for (double L : L_list) {
        const bool h_applies = L * phi_max(a) <= 2.0 + 1e-12;
        const PropertyReport rep = check_properties(a, L, kPropertyGrid, h_applies);
        for (const auto& r : rep.results) {
          json p = {{"a", a},
                    {"L", L},
                    {"property", r.property},
                    {"grid", r.grid},
                    {"min_margin", number(r.min_margin)},
                    {"worst_point", r.worst_point},
                    {"holds", r.holds}};
          if (!r.note.empty()) {
            p["note"] = "PreconditionViolation: L max phi > 2, property skipped";
            p["holds"] = nullptr;
          }
          properties.push_back(p);
        }
        all_pass = all_pass && rep.all_hold();

        json f = {{"a", a}, {"L", L}};
        std::string regime;
        if (a == 0.0) {
          f["note"] = "skipped: F is defined for a > 0";
        } else if (L <= 2.0 * kPi) {
          regime = "L <= 2 pi";
        } else if (a >= a0_for_length(L)) {
          regime = "L > 2 pi, a >= a0(L)";
        } else {
          f["note"] = "skipped: a < a0(L) = " + format_double(a0_for_length(L));
        }
        if (!regime.empty()) {
          const GridScan g = scan_F(a, L, kFPoints);
          f["regime"] = regime;
          f["points"] = g.points;
          f["min_margin"] = number(g.min_margin);
          f["worst_phi"] = g.worst_x;
          f["holds"] = g.min_margin > 0.0;
          all_pass = all_pass && g.min_margin > 0.0;
        }
        f_grids.push_back(f);
      }
    }

    const GridScan qs = scan_q(kQMax, kQGrid);
    all_pass = all_pass && qs.min_margin > 0.0;
    const json report = {{"properties", properties},
                          {"F", f_grids},
                          {"q",
                           {{"x_max", kQMax},
                            {"grid", kQGrid},
                            {"min_margin", number(qs.min_margin)},
                            {"worst_point", json::array({qs.worst_x, qs.worst_y})},
                            {"holds", qs.min_margin > 0.0},
                            {"note", "X = 0 column uses the limit atan(X)/X = 1"}}},
                          {"pass", all_pass}};

    const fs::path dir = out_dir.value_or(output_root());
    fs::create_directories(dir);
    write_atomic(dir / "barrier_check.json", report.dump(2) + "\n");
    out << report.dump(2) << '\n';
    return all_pass ? kExitOk : kExitCheckFailed;
  });
}

int cmd_verify(const fs::path& run_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    for (const char* name : {kManifest, kDiagnostics}) {
      if (!fs::exists(run_dir / name)) {
        throw Error(ErrorKind::MissingArtifacts, (run_dir / name).string() + " not found");
      }
    }
    const json manifest = read_json(run_dir / kManifest);
    const json& outcome = manifest.at("outcome");
    if (outcome.at("status") != "completed") {
      throw Error(ErrorKind::PreconditionViolation, "run did not complete: " +
                                                        outcome.value("message", std::string()));
    }
    const RunConfig cfg = parse_config(manifest.at("config"));
    const double a = manifest.at("a").get<double>();
    const OutcomeKind kind = outcome.at("kind") == "finite_time" ? OutcomeKind::FiniteTimeShrink
                                                                 : OutcomeKind::GreatCircleConvergence;

    const DiagnosticsSeries series = read_diagnostics_csv(run_dir / kDiagnostics);
    std::vector<Checkpoint> checkpoints;
    for (const auto& entry : manifest.at("checkpoints")) {
      const fs::path file = run_dir / entry.at("file").get<std::string>();
      if (!fs::exists(file)) throw Error(ErrorKind::MissingArtifacts, file.string() + " not found");
      checkpoints.push_back({entry.at("step").get<std::size_t>(), entry.at("t").get<double>(),
                             entry.at("tau").get<double>(), read_curve_csv(file)});
    }
    if (checkpoints.empty()) throw Error(ErrorKind::MissingArtifacts, "no checkpoints listed");

    auto wanted = [&](const std::string& name) {
      return cfg.checks.empty() ||
             std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end();
    };

    std::vector<BoundCheck> checks;
    json summary = {{"kind", kind_name(kind)}, {"a", a}};
    if (wanted("curvature_bound")) checks.push_back(check_curvature_bound(series, a));
    if (wanted("chord_arc")) checks.push_back(check_chord_arc(checkpoints, a));
    const char* finite_only[] = {"length_sandwich", "improved_length", "tau_bracket", "roundness"};
    if (kind == OutcomeKind::FiniteTimeShrink) {
      const double T_est = estimate_extinction(series);
      const json& z = outcome.at("z_est");
      const Vec3 z_est{z[0].get<double>(), z[1].get<double>(), z[2].get<double>()};
      summary["T_est"] = T_est;
      if (wanted("length_sandwich")) checks.push_back(check_length_sandwich(series, T_est, a));
      if (wanted("improved_length")) checks.push_back(check_improved_length(series, T_est, a));
      if (wanted("tau_bracket")) checks.push_back(check_tau_bracket(series, T_est, a));
      if (wanted("roundness")) {
        const RoundnessReport r = check_roundness(checkpoints, T_est, z_est);
        summary["final_radius"] = r.final_radius;
        summary["empirical_C0"] = r.empirical_C0;
        checks.push_back(r.check);
      }
      if (!cfg.checks.empty() && wanted("great_circle")) {
        BoundCheck skipped;
        skipped.name = "great_circle";
        skipped.note = "skipped: finite-time outcome";
        checks.push_back(skipped);
      }
    } else {
      if (wanted("great_circle")) {
        const GreatCircleReport g = check_great_circle(series, kind);
        summary["final_length_error"] = g.final_length_error;
        summary["fitted_slope"] = number(g.fitted_slope);
        checks.push_back(g.check);
      }
      for (const char* name : finite_only) {
        if (cfg.checks.empty() || !wanted(name)) continue;
        BoundCheck skipped;
        skipped.name = name;
        skipped.note = "skipped: great-circle outcome";
        checks.push_back(skipped);
      }
    }

    bool all_pass = true;
    json verdicts = json::array();
    for (const auto& c : checks) {
      if (c.note.rfind("skipped", 0) == 0) {
        verdicts.push_back({{"check", c.name}, {"verdict", "skipped"}, {"note", c.note}});
        continue;
      }
      verdicts.push_back(verdict_json(c));
      all_pass = all_pass && c.pass;
    }
    const json doc = {{"run_dir", run_dir.string()},
                      {"summary", summary},
                      {"verdicts", verdicts},
                      {"pass", all_pass}};
    write_atomic(run_dir / kVerdicts, doc.dump(2) + "\n");
    out << doc.dump(2) << '\n';
    return all_pass ? kExitOk : kExitCheckFailed;
  });
}

int cmd_report(const fs::path& run_dir, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (!fs::exists(run_dir / kManifest)) {
      throw Error(ErrorKind::MissingArtifacts, (run_dir / kManifest).string() + " not found");
    }
    const json m = read_json(run_dir / kManifest);
    const json& o = m.at("outcome");
    std::ostringstream os;
    auto row = [&os](const std::string& key, const std::string& value) {
      os << std::left << std::setw(16) << key << value << '\n';
    };
    auto show = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    auto brief = [&show](const json& v) {
      if (!v.is_number_float()) return show(v);
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
      return std::string(buf);
    };
    row("run", run_dir.string());
    row("config hash", m.at("config_hash").get<std::string>());
    row("code version", m.at("code_version").get<std::string>());
    row("started", m.at("started_at").get<std::string>());
    row("finished", m.at("finished_at").get<std::string>());
    row("a", show(m.at("a")));
    row("status", show(o.at("status")));
    for (const char* key : {"kind", "T_est", "z_est", "axis", "steps", "final_t", "final_L", "error"}) {
      if (o.contains(key)) row(key, show(o.at(key)));
    }
    row("checkpoints", std::to_string(m.at("checkpoints").size()));

    if (fs::exists(run_dir / kVerdicts)) {
      const json v = read_json(run_dir / kVerdicts);
      os << '\n'
         << std::left << std::setw(18) << "check" << std::setw(10) << "verdict" << std::setw(16)
         << "min_margin" << std::setw(12) << "tolerance" << "worst_step" << '\n';
      for (const auto& c : v.at("verdicts")) {
        os << std::left << std::setw(18) << c.at("check").get<std::string>() << std::setw(10)
           << c.at("verdict").get<std::string>() << std::setw(16)
           << (c.contains("min_margin") ? brief(c.at("min_margin")) : "-") << std::setw(12)
           << (c.contains("tolerance") ? brief(c.at("tolerance")) : "-")
           << (c.contains("worst_step") ? show(c.at("worst_step")) : "-") << '\n';
      }
    } else {
      os << "\nno verdicts.json; run `sphereflow verify --run " << run_dir.string() << "`\n";
    }
    out << os.str();
    return kExitOk;
  });
}

}  // namespace sphereflow
