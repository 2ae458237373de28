#pragma once

#include <string>
#include <vector>

#include "envc/geometry.hpp"

namespace envc {

struct SvgCurve {
  const Polygon* polygon = nullptr;
  std::string label;
  std::string color = "black";
};

/// Writes an overlay of up to three contour polygons with axes labelled wave
/// period (s) against significant wave height (m).
void write_contour_svg(const std::vector<SvgCurve>& curves, const std::string& path,
                       const std::string& x_label = "wave period [s]",
                       const std::string& y_label = "significant wave height [m]");

}  // namespace envc
