#include "graphtest/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace graphtest {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", x);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

}  // namespace

std::string render_power_svg(const std::string& title, const std::string& x_label,
                             bool log2_x, const std::vector<SvgSeries>& series) {
  const double W = 640, H = 480;
  const double L = 70, R = 150, T = 40, B = 50;  // margins (legend on the right)
  const double pw = W - L - R, ph = H - T - B;

  double xmin = 0.0, xmax = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (auto [x, y] : s.points) {
      (void)y;
      const double xv = log2_x ? std::log2(x) : x;
      if (first) {
        xmin = xmax = xv;
        first = false;
      } else {
        xmin = std::min(xmin, xv);
        xmax = std::max(xmax, xv);
      }
    }
  }
  if (xmax <= xmin) xmax = xmin + 1.0;
  const auto px = [&](double x) {
    const double xv = log2_x ? std::log2(x) : x;
    return L + (xv - xmin) / (xmax - xmin) * pw;
  };
  const auto py = [&](double y) { return T + (1.0 - y) * ph; };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + num(W) +
         "\" height=\"" + num(H) + "\" viewBox=\"0 0 " + num(W) + " " + num(H) + "\">\n";
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += "<text x=\"" + num(L + pw / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\" "
         "font-family=\"sans-serif\">" + title + "</text>\n";

  // axes box + y grid at 0, .25, .5, .75, 1
  svg += "<rect x=\"" + num(L) + "\" y=\"" + num(T) + "\" width=\"" + num(pw) + "\" height=\"" +
         num(ph) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double y = i * 0.25;
    svg += "<line x1=\"" + num(L) + "\" y1=\"" + num(py(y)) + "\" x2=\"" + num(L + pw) +
           "\" y2=\"" + num(py(y)) + "\" stroke=\"#dddddd\"/>\n";
    svg += "<text x=\"" + num(L - 8) + "\" y=\"" + num(py(y) + 4) +
           "\" text-anchor=\"end\" font-size=\"11\" font-family=\"sans-serif\">" + num(y) +
           "</text>\n";
  }
  svg += "<text x=\"18\" y=\"" + num(T + ph / 2) + "\" font-size=\"12\" text-anchor=\"middle\" "
         "font-family=\"sans-serif\" transform=\"rotate(-90 18 " + num(T + ph / 2) +
         ")\">power</text>\n";

  // x ticks on the first series' grid
  if (!series.empty()) {
    for (auto [x, y] : series.front().points) {
      (void)y;
      svg += "<line x1=\"" + num(px(x)) + "\" y1=\"" + num(T + ph) + "\" x2=\"" + num(px(x)) +
             "\" y2=\"" + num(T + ph + 4) + "\" stroke=\"black\"/>\n";
      svg += "<text x=\"" + num(px(x)) + "\" y=\"" + num(T + ph + 16) +
             "\" text-anchor=\"middle\" font-size=\"10\" font-family=\"sans-serif\">" + num(x) +
             "</text>\n";
    }
  }
  svg += "<text x=\"" + num(L + pw / 2) + "\" y=\"" + num(H - 12) +
         "\" text-anchor=\"middle\" font-size=\"12\" font-family=\"sans-serif\">" + x_label +
         (log2_x ? " (log2 scale)" : "") + "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const char* color = kPalette[s % 8];
    std::string pts;
    for (auto [x, y] : series[s].points) {
      if (!pts.empty()) pts += " ";
      pts += num(px(x)) + "," + num(py(y));
    }
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
           "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    for (auto [x, y] : series[s].points) {
      svg += "<circle cx=\"" + num(px(x)) + "\" cy=\"" + num(py(y)) + "\" r=\"2.5\" fill=\"" +
             color + "\"/>\n";
    }
    const double ly = T + 14 + 16 * static_cast<double>(s);
    svg += "<line x1=\"" + num(L + pw + 10) + "\" y1=\"" + num(ly - 4) + "\" x2=\"" +
           num(L + pw + 30) + "\" y2=\"" + num(ly - 4) + "\" stroke=\"" + color +
           "\" stroke-width=\"2\"/>\n";
    svg += "<text x=\"" + num(L + pw + 35) + "\" y=\"" + num(ly) +
           "\" font-size=\"11\" font-family=\"sans-serif\">" + series[s].label + "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace graphtest
