#include "envc/contour.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace envc {

namespace {

double pooled_std_error(const std::vector<EstimateWithError>& diag) {
  double s = 0.0;
  long n = 0;
  for (const auto& d : diag) {
    if (std::isfinite(d.std_error)) {
      s += d.std_error;
      ++n;
    }
  }
  return n > 0 ? s / static_cast<double>(n) : 0.0;
}

ContourResult assemble(SupportGrid grid, std::vector<EstimateWithError> diag,
                       double tol_request) {
  ContourResult res{std::move(grid), std::move(diag), std::nullopt,
                    Construction::kHalfspaceIntersection, false, false, 0.0, 0.0};
  double tol = tol_request;
  if (tol <= 0.0) tol = 3.0 * pooled_std_error(res.diagnostics);
  tol = std::max(tol, 1e-9 * res.grid.scale());
  res.properness_tol = tol;

  // An empty intersection (possible at low quantiles, where C(u) + C(-u) can
  // go negative) simply means no proper contour exists; the hull route below
  // still yields a valid one.
  bool proper = false;
  try {
    proper = is_proper(res.grid, tol);
  } catch (const std::runtime_error&) {
  }
  if (proper) {
    res.construction = Construction::kHalfspaceIntersection;
    res.proper = true;
    res.polygon = halfspace_intersection(res.grid);
    return res;
  }

  res.construction = Construction::kConvexHull;
  res.proper = false;
  try {
    res.polygon = hull_contour(res.grid);
    for (int i = 0; i < res.grid.n_dirs(); ++i) {
      const double s = support_function(*res.polygon, res.grid.direction(i));
      res.max_support_violation =
          std::max(res.max_support_violation, res.grid.threshold(i) - s);
    }
  } catch (const std::runtime_error&) {
    res.degenerate = true;  // all hull points collapsed
  }
  return res;
}

}  // namespace

ContourResult build_contour(const PathSimulator& sim, const ContourTarget& target,
                            const BuildOptions& options) {
  if (target.kind == ContourTarget::Kind::kQuantile) {
    CqResult cq = estimate_cq(sim, options.n_dirs, target.t_s_hours, target.q_s,
                              options.n_paths, options.threads);
    return assemble(std::move(cq.grid), std::move(cq.diagnostics),
                    options.properness_tol);
  }

  const double cap = options.horizon_cap_hours > 0.0 ? options.horizon_cap_hours
                                                     : 20.0 * target.t_r_hours;
  std::vector<double> thresholds(static_cast<std::size_t>(options.n_dirs));
  std::vector<EstimateWithError> diag(static_cast<std::size_t>(options.n_dirs));
  for (int i = 0; i < options.n_dirs; ++i) {
    const UnitVector u(kTwoPi * i / options.n_dirs);
    diag[static_cast<std::size_t>(i)] = estimate_ct(
        sim, u, target.t_r_hours, options.n_paths, cap, options.threads);
    thresholds[static_cast<std::size_t>(i)] = diag[static_cast<std::size_t>(i)].value;
  }
  return assemble(SupportGrid(std::move(thresholds)), std::move(diag),
                  options.properness_tol);
}

ThreeCaseResult three_case_experiment(const SeaStateModel& model, double dt_hours,
                                      const ContourTarget& target,
                                      std::uint64_t seed,
                                      const BuildOptions& options) {
  if (target.kind != ContourTarget::Kind::kQuantile) {
    throw std::invalid_argument("three_case_experiment: quantile targets only");
  }
  const TrendMode modes[3] = {TrendMode::kFrozenEnd, TrendMode::kTrueTrend,
                              TrendMode::kFrozenStart};
  ThreeCaseResult out{{ContourResult{SupportGrid({0, 0, 0}), {}, std::nullopt},
                       ContourResult{SupportGrid({0, 0, 0}), {}, std::nullopt},
                       ContourResult{SupportGrid({0, 0, 0}), {}, std::nullopt}},
                      {},
                      {},
                      {},
                      0};
  for (int c = 0; c < 3; ++c) {
    // Identical seed for all three cases: common random numbers.
    SeaStateSimulator sim(model, dt_hours, target.t_s_hours, modes[c], seed);
    out.cases[static_cast<std::size_t>(c)] = build_contour(sim, target, options);
  }

  const int n = options.n_dirs;
  out.gap_end_minus_start.resize(static_cast<std::size_t>(n));
  out.gap_end_minus_true.resize(static_cast<std::size_t>(n));
  out.gap_true_minus_start.resize(static_cast<std::size_t>(n));
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double e = out.cases[0].grid.threshold(i);
    const double t = out.cases[1].grid.threshold(i);
    const double s = out.cases[2].grid.threshold(i);
    out.gap_end_minus_start[static_cast<std::size_t>(i)] = e - s;
    out.gap_end_minus_true[static_cast<std::size_t>(i)] = e - t;
    out.gap_true_minus_start[static_cast<std::size_t>(i)] = t - s;
    if (e - s > best) {
      best = e - s;
      out.argmax_gap_direction = i;
    }
  }
  return out;
}

std::pair<Vec2, double> design_point(const ContourResult& result,
                                     const std::function<double(Vec2)>& response) {
  if (!result.polygon) {
    throw std::invalid_argument("design_point: degenerate contour");
  }
  const auto& verts = result.polygon->vertices();
  Vec2 best_point = verts.front();
  double best_value = -std::numeric_limits<double>::infinity();
  const std::size_t n = verts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double v = response(verts[i]);
    if (v > best_value) {
      best_value = v;
      best_point = verts[i];
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 mid = 0.5 * (verts[i] + verts[(i + 1) % n]);
    const double v = response(mid);
    if (v > best_value) {
      best_value = v;
      best_point = mid;
    }
  }
  return {best_point, best_value};
}

}  // namespace envc
