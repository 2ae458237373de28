#include "envc/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace envc {

namespace {

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(6);
  ss << v;
  return ss.str();
}

}  // namespace

void write_contour_svg(const std::vector<SvgCurve>& curves, const std::string& path,
                       const std::string& x_label, const std::string& y_label) {
  if (curves.empty()) throw std::invalid_argument("write_contour_svg: no curves");
  double x_min = 1e300, x_max = -1e300, y_min = 1e300, y_max = -1e300;
  for (const auto& c : curves) {
    if (!c.polygon) continue;
    for (const Vec2& v : c.polygon->vertices()) {
      x_min = std::min(x_min, v.x);
      x_max = std::max(x_max, v.x);
      y_min = std::min(y_min, v.y);
      y_max = std::max(y_max, v.y);
    }
  }
  if (!(x_max > x_min) || !(y_max > y_min)) {
    throw std::invalid_argument("write_contour_svg: degenerate extent");
  }
  const double pad_x = 0.08 * (x_max - x_min);
  const double pad_y = 0.08 * (y_max - y_min);
  x_min -= pad_x;
  x_max += pad_x;
  y_min -= pad_y;
  y_max += pad_y;

  const double W = 640, H = 480, m = 56;
  auto sx = [&](double x) { return m + (x - x_min) / (x_max - x_min) * (W - 2 * m); };
  auto sy = [&](double y) { return H - m - (y - y_min) / (y_max - y_min) * (H - 2 * m); };

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\""
      << H << "\" viewBox=\"0 0 " << W << " " << H << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << m << "\" y1=\"" << H - m << "\" x2=\"" << W - m
      << "\" y2=\"" << H - m << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << m << "\" y1=\"" << H - m << "\" x2=\"" << m << "\" y2=\""
      << m << "\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 5; ++i) {
    const double x = x_min + (x_max - x_min) * i / 5.0;
    const double y = y_min + (y_max - y_min) * i / 5.0;
    out << "<text x=\"" << sx(x) << "\" y=\"" << H - m + 18
        << "\" font-size=\"11\" text-anchor=\"middle\">" << fmt(x) << "</text>\n";
    out << "<text x=\"" << m - 6 << "\" y=\"" << sy(y) + 4
        << "\" font-size=\"11\" text-anchor=\"end\">" << fmt(y) << "</text>\n";
  }
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 12
      << "\" font-size=\"13\" text-anchor=\"middle\">" << x_label << "</text>\n";
  out << "<text x=\"16\" y=\"" << H / 2
      << "\" font-size=\"13\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
      << H / 2 << ")\">" << y_label << "</text>\n";

  double legend_y = m + 6;
  for (const auto& c : curves) {
    if (!c.polygon) continue;
    out << "<polygon fill=\"none\" stroke=\"" << c.color << "\" stroke-width=\"1.5\" points=\"";
    for (const Vec2& v : c.polygon->vertices()) {
      out << fmt(sx(v.x)) << ',' << fmt(sy(v.y)) << ' ';
    }
    out << "\"/>\n";
    if (!c.label.empty()) {
      out << "<line x1=\"" << W - m - 150 << "\" y1=\"" << legend_y << "\" x2=\""
          << W - m - 120 << "\" y2=\"" << legend_y << "\" stroke=\"" << c.color
          << "\" stroke-width=\"1.5\"/>\n"
          << "<text x=\"" << W - m - 112 << "\" y=\"" << legend_y + 4
          << "\" font-size=\"12\">" << c.label << "</text>\n";
      legend_y += 18;
    }
  }
  out << "</svg>\n";
}

}  // namespace envc
