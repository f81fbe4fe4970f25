#pragma once
// Minimal SVG line plots: axes with a few ticks, one polyline per series,
// a legend. Nothing else.

#include <string>
#include <vector>

namespace ipm1d::io {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_y = false;  // non-positive and non-finite points are skipped
};

std::string render_svg(const PlotSpec& spec, const std::vector<PlotSeries>& series);
void write_svg(const std::string& path, const PlotSpec& spec, const std::vector<PlotSeries>& series);

}  // namespace ipm1d::io
