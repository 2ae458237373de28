#pragma once

#include <array>
#include <functional>
#include <optional>

#include "envc/hitting.hpp"

namespace envc {

enum class Construction { kHalfspaceIntersection, kConvexHull };

struct ContourResult {
  SupportGrid grid;
  std::vector<EstimateWithError> diagnostics;  // per direction
  std::optional<Polygon> polygon;              // absent when degenerate
  Construction construction = Construction::kHalfspaceIntersection;
  bool proper = false;
  bool degenerate = false;
  double properness_tol = 0.0;
  double max_support_violation = 0.0;  // hull route: max_i (C_i - support_i)+
};

struct BuildOptions {
  int n_dirs = 180;
  long n_paths = 10000;
  int threads = 0;
  /// Properness tolerance; <= 0 selects 3 pooled standard errors.
  double properness_tol = -1.0;
  /// Horizon cap for return-period targets; <= 0 selects 20 * t_r.
  double horizon_cap_hours = -1.0;
};

/// Estimates the direction-to-threshold grid for the target, then assembles
/// the contour: the half-space intersection when the grid is proper at the
/// noise-scaled tolerance, the convex-hull construction otherwise.
ContourResult build_contour(const PathSimulator& sim, const ContourTarget& target,
                            const BuildOptions& options = {});

struct ThreeCaseResult {
  // Indexed frozen-end, true-trend, frozen-start.
  std::array<ContourResult, 3> cases;
  std::vector<double> gap_end_minus_start;  // per direction
  std::vector<double> gap_end_minus_true;
  std::vector<double> gap_true_minus_start;
  int argmax_gap_direction = 0;
};

/// The trend experiment: the same quantile target evaluated with the scale
/// trend frozen at the horizon end, followed truly, and frozen at the start,
/// under common random numbers so the gaps isolate the trend effect.
ThreeCaseResult three_case_experiment(const SeaStateModel& model, double dt_hours,
                                      const ContourTarget& target,
                                      std::uint64_t seed,
                                      const BuildOptions& options = {});

/// Deterministic design point: the response maximiser over the contour
/// vertices and edge midpoints; ties resolve to the lowest vertex index.
std::pair<Vec2, double> design_point(const ContourResult& result,
                                     const std::function<double(Vec2)>& response);

}  // namespace envc
