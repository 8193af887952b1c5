#include "sphereflow/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sphereflow {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 55.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<Series2D>& series, const std::string& title,
                       const std::string& x_label, const std::string& y_label) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0;
  double y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (std::size_t k = 0; k < s.x.size(); ++k) {
      if (!std::isfinite(s.x[k]) || !std::isfinite(s.y[k])) continue;
      x0 = std::min(x0, s.x[k]);
      x1 = std::max(x1, s.x[k]);
      y0 = std::min(y0, s.y[k]);
      y1 = std::max(y1, s.y[k]);
    }
  }
  if (!(x1 > x0)) { x0 -= 0.5; x1 += 0.5; }
  if (!(y1 > y0)) { y0 -= 0.5; y1 += 0.5; }
  y0 = std::min(y0, 0.0);

  const double pw = kWidth - kLeft - kRight;
  const double ph = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  auto py = [&](double y) { return kTop + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << escape(title) << "</text>\n";
  os << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << pw << "\" height=\"" << ph
     << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int k = 0; k <= 5; ++k) {
    const double fx = x0 + (x1 - x0) * k / 5.0;
    const double fy = y0 + (y1 - y0) * k / 5.0;
    os << "<line x1=\"" << num(px(fx)) << "\" y1=\"" << num(kTop + ph) << "\" x2=\"" << num(px(fx))
       << "\" y2=\"" << num(kTop + ph + 5) << "\" stroke=\"black\"/>"
       << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(kTop + ph + 18)
       << "\" text-anchor=\"middle\">" << tick(fx) << "</text>\n";
    os << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(fy)) << "\" x2=\"" << kLeft
       << "\" y2=\"" << num(py(fy)) << "\" stroke=\"black\"/>"
       << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(fy) + 4)
       << "\" text-anchor=\"end\">" << tick(fy) << "</text>\n";
  }
  os << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 12)
     << "\" text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
  os << "<text transform=\"translate(16," << num(kTop + ph / 2)
     << ") rotate(-90)\" text-anchor=\"middle\">" << escape(y_label) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& sr = series[s];
    if (sr.markers) {
      os << "<g fill=\"" << sr.color << "\">\n";
      for (std::size_t k = 0; k < sr.x.size(); ++k) {
        if (!std::isfinite(sr.x[k]) || !std::isfinite(sr.y[k])) continue;
        os << "<circle cx=\"" << num(px(sr.x[k])) << "\" cy=\"" << num(py(sr.y[k]))
           << "\" r=\"1.5\"/>\n";
      }
      os << "</g>\n";
    } else {
      os << "<polyline fill=\"none\" stroke=\"" << sr.color << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t k = 0; k < sr.x.size(); ++k) {
        if (!std::isfinite(sr.x[k]) || !std::isfinite(sr.y[k])) continue;
        os << num(px(sr.x[k])) << ',' << num(py(sr.y[k])) << ' ';
      }
      os << "\"/>\n";
    }
    const double ly = kTop + 16.0 + 16.0 * static_cast<double>(s);
    os << "<rect x=\"" << num(kLeft + 12) << "\" y=\"" << num(ly - 8) << "\" width=\"12\" height=\"4\" fill=\""
       << sr.color << "\"/><text x=\"" << num(kLeft + 30) << "\" y=\"" << num(ly - 2) << "\">"
       << escape(sr.label) << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace sphereflow
