#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace aeinterp::cli {

struct ScatterSeries {
  std::string label;
  std::string color;
  double radius = 2.0;
  std::vector<double> xs;
  std::vector<double> ys;
};

/// Standalone SVG scatter plot with labeled axes, ticks and a legend.
void write_scatter_svg(std::ostream& out, std::span<const ScatterSeries> series,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label);

}  // namespace aeinterp::cli
