#pragma once

#include <string>
#include <utility>
#include <vector>

namespace graphtest {

struct SvgSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, power)
};

// Static SVG 1.1 power plot: one polyline per series, y fixed to [0, 1],
// optional log2 x axis (for d = 2^i sweeps). No external dependencies.
std::string render_power_svg(const std::string& title, const std::string& x_label,
                             bool log2_x, const std::vector<SvgSeries>& series);

}  // namespace graphtest
