#pragma once

#include <string>
#include <vector>

#include "envc/calibration.hpp"
#include "envc/contour.hpp"
#include "envc/geometry.hpp"

namespace envc {

/// Shortest round-trip decimal form; keeps repeated runs byte-identical.
std::string format_double(double v);

void write_support_grid_csv(const SupportGrid& grid, const std::string& path);

/// Reads `angle_rad,threshold`; angles must be the uniform grid 2*pi*i/n
/// starting at 0 (strictly increasing by construction).
SupportGrid read_support_grid_csv(const std::string& path);

void write_polygon_csv(const Polygon& poly, const std::string& path);
Polygon read_polygon_csv(const std::string& path);

/// `angle_rad,c_value,std_err,n_paths,censored_frac`, one row per direction.
void write_estimates_csv(const SupportGrid& grid,
                         const std::vector<EstimateWithError>& diagnostics,
                         const std::string& path);

void write_metocean_csv(const MetOceanSeries& series, const std::string& path);

/// Reads `t_hours,hs_m,tz_s`.  Malformed, non-finite, non-positive, or
/// non-increasing rows are skipped and counted.  Throws on a missing file or
/// wrong header.
MetOceanSeries read_metocean_csv(const std::string& path);

void write_path_csv(const PathSample& path_sample, const std::string& path);

}  // namespace envc
