#pragma once

#include <string>
#include <vector>

namespace sphereflow {

struct Series2D {
  std::string label;
  std::string color;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;  // dots instead of a polyline
};

/// Minimal standalone SVG line chart with axes, tick labels and a legend.
std::string render_svg(const std::vector<Series2D>& series, const std::string& title,
                       const std::string& x_label, const std::string& y_label);

}  // namespace sphereflow
