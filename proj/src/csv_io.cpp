#include "sphereflow/csv_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string_view>

#include "sphereflow/error.hpp"

namespace sphereflow {

namespace {

constexpr std::string_view kCurveHeader = "x,y,z";
constexpr std::string_view kProfileHeader = "z,psi,i,j";
constexpr std::string_view kDiagnosticsHeader =
    "step,t,tau,L,max_abs_kappa,min_Z,dLdt_obs,curv_margin";

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorKind::IO, "cannot write " + path.string());
  return os;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorKind::IO, "cannot read " + path.string());
  return is;
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    out.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

double parse_double(std::string_view s, const std::filesystem::path& path, std::size_t line_no) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::IO, path.string() + ":" + std::to_string(line_no) + ": bad number '" +
                                   std::string(s) + "'");
  }
  return v;
}

std::size_t parse_index(std::string_view s, const std::filesystem::path& path, std::size_t line_no) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw Error(ErrorKind::IO, path.string() + ":" + std::to_string(line_no) + ": bad integer '" +
                                   std::string(s) + "'");
  }
  return v;
}

// Reads all lines after a header that must match exactly; tolerates a trailing CR.
std::vector<std::string> body_lines(const std::filesystem::path& path, std::string_view header) {
  std::ifstream is = open_in(path);
  std::vector<std::string> lines;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      if (line != header) {
        throw Error(ErrorKind::IO, path.string() + ": expected header '" + std::string(header) + "'");
      }
      first = false;
      continue;
    }
    if (!line.empty()) lines.push_back(line);
  }
  if (first) throw Error(ErrorKind::IO, path.string() + ": empty file");
  return lines;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_curve_csv(std::ostream& os, const DiscreteCurve& curve) {
  os << kCurveHeader << '\n';
  for (const auto& p : curve.points()) {
    os << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.z) << '\n';
  }
}

void write_curve_csv(const std::filesystem::path& path, const DiscreteCurve& curve) {
  std::ofstream os = open_out(path);
  write_curve_csv(os, curve);
  if (!os) throw Error(ErrorKind::IO, "write failed: " + path.string());
}

std::vector<Vec3> read_curve_points(const std::filesystem::path& path) {
  const auto lines = body_lines(path, kCurveHeader);
  std::vector<Vec3> pts;
  pts.reserve(lines.size());
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const auto f = split(lines[k]);
    if (f.size() != 3) {
      throw Error(ErrorKind::IO, path.string() + ":" + std::to_string(k + 2) + ": expected 3 fields");
    }
    pts.push_back({parse_double(f[0], path, k + 2), parse_double(f[1], path, k + 2),
                   parse_double(f[2], path, k + 2)});
  }
  return pts;
}

DiscreteCurve read_curve_csv(const std::filesystem::path& path) {
  return make_curve(read_curve_points(path));
}

void write_profile_csv(const std::filesystem::path& path, const ChordArcProfile& prof) {
  std::ofstream os = open_out(path);
  os << kProfileHeader << '\n';
  for (std::size_t k = 0; k < prof.bins(); ++k) {
    if (prof.empty(k)) continue;
    os << format_double(prof.z_at_min[k]) << ',' << format_double(prof.psi[k]) << ','
       << prof.argmin_pairs[k].first << ',' << prof.argmin_pairs[k].second << '\n';
  }
  if (!os) throw Error(ErrorKind::IO, "write failed: " + path.string());
}

void write_diagnostics_csv(const std::filesystem::path& path, const DiagnosticsSeries& series) {
  std::ofstream os = open_out(path);
  os << kDiagnosticsHeader << '\n';
  for (const auto& r : series) {
    os << r.step << ',' << format_double(r.t) << ',' << format_double(r.tau) << ','
       << format_double(r.L) << ',' << format_double(r.max_abs_kappa) << ','
       << format_double(r.min_Z) << ',' << format_double(r.dL_dt_observed) << ','
       << format_double(r.curvature_bound_margin) << '\n';
  }
  if (!os) throw Error(ErrorKind::IO, "write failed: " + path.string());
}

DiagnosticsSeries read_diagnostics_csv(const std::filesystem::path& path) {
  const auto lines = body_lines(path, kDiagnosticsHeader);
  DiagnosticsSeries series;
  series.reserve(lines.size());
  for (std::size_t k = 0; k < lines.size(); ++k) {
    const std::size_t line_no = k + 2;
    const auto f = split(lines[k]);
    if (f.size() != 8) {
      throw Error(ErrorKind::IO, path.string() + ":" + std::to_string(line_no) + ": expected 8 fields");
    }
    DiagnosticsRecord r;
    r.step = parse_index(f[0], path, line_no);
    r.t = parse_double(f[1], path, line_no);
    r.tau = parse_double(f[2], path, line_no);
    r.L = parse_double(f[3], path, line_no);
    r.max_abs_kappa = parse_double(f[4], path, line_no);
    r.min_Z = parse_double(f[5], path, line_no);
    r.dL_dt_observed = parse_double(f[6], path, line_no);
    r.curvature_bound_margin = parse_double(f[7], path, line_no);
    series.push_back(r);
  }
  return series;
}

}  // namespace sphereflow
