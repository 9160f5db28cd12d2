#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>

namespace aeinterp::cli {

namespace {

constexpr double kWidth = 1200.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 80.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string num(double v) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << v;
  return s.str();
}

std::string tick_label(double v) {
  std::ostringstream s;
  s << std::setprecision(6) << v;
  return s.str();
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void include(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi == lo) {
      lo -= 0.5;
      hi += 0.5;
    }
    const double pad = 0.03 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
};

}  // namespace

void write_scatter_svg(std::ostream& out, std::span<const ScatterSeries> series,
                       const std::string& title, const std::string& x_label,
                       const std::string& y_label) {
  Range xr;
  Range yr;
  for (const auto& s : series) {
    for (double x : s.xs) xr.include(x);
    for (double y : s.ys) yr.include(y);
  }
  xr.finish();
  yr.finish();
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  const auto py = [&](double y) { return kTop + (yr.hi - y) / (yr.hi - yr.lo) * plot_h; };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\" font-family=\"sans-serif\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\" "
      << "font-size=\"16\">" << escape(title) << "</text>\n";
  out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
      << num(plot_w) << "\" height=\"" << num(plot_h)
      << "\" fill=\"none\" stroke=\"black\"/>\n";

  constexpr int kTicks = 5;
  for (int i = 0; i <= kTicks; ++i) {
    const double fx = xr.lo + (xr.hi - xr.lo) * i / kTicks;
    const double fy = yr.lo + (yr.hi - yr.lo) * i / kTicks;
    out << "<line x1=\"" << num(px(fx)) << "\" y1=\"" << num(kTop + plot_h)
        << "\" x2=\"" << num(px(fx)) << "\" y2=\"" << num(kTop + plot_h + 5)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(px(fx)) << "\" y=\"" << num(kTop + plot_h + 20)
        << "\" text-anchor=\"middle\" font-size=\"11\">" << tick_label(fx)
        << "</text>\n";
    out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(fy))
        << "\" x2=\"" << num(kLeft) << "\" y2=\"" << num(py(fy))
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(fy) + 4)
        << "\" text-anchor=\"end\" font-size=\"11\">" << tick_label(fy)
        << "</text>\n";
  }
  out << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 12)
      << "\" text-anchor=\"middle\" font-size=\"14\">" << escape(x_label)
      << "</text>\n";
  out << "<text x=\"18\" y=\"" << num(kTop + plot_h / 2)
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 18 "
      << num(kTop + plot_h / 2) << ")\">" << escape(y_label) << "</text>\n";

  for (const auto& s : series) {
    out << "<g fill=\"" << escape(s.color) << "\" fill-opacity=\"0.7\">\n";
    const std::size_t n = std::min(s.xs.size(), s.ys.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite(s.xs[i]) || !std::isfinite(s.ys[i])) continue;
      out << "<circle cx=\"" << num(px(s.xs[i])) << "\" cy=\"" << num(py(s.ys[i]))
          << "\" r=\"" << num(s.radius) << "\"/>\n";
    }
    out << "</g>\n";
  }

  double legend_y = kTop + 16;
  for (const auto& s : series) {
    out << "<circle cx=\"" << num(kLeft + 16) << "\" cy=\"" << num(legend_y - 4)
        << "\" r=\"5\" fill=\"" << escape(s.color) << "\"/>\n";
    out << "<text x=\"" << num(kLeft + 28) << "\" y=\"" << num(legend_y)
        << "\" font-size=\"13\">" << escape(s.label) << "</text>\n";
    legend_y += 18;
  }
  out << "</svg>\n";
}

}  // namespace aeinterp::cli
