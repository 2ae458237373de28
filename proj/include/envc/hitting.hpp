#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "envc/geometry.hpp"
#include "envc/simulators.hpp"
#include "envc/timegrid.hpp"

namespace envc {

/// Contour target: either survive past t_s with probability q_s, or keep the
/// mean exceedence time of every tangent half-space at least t_r.
struct ContourTarget {
  enum class Kind { kQuantile, kReturnPeriod };

  Kind kind = Kind::kQuantile;
  double t_s_hours = 0.0;
  double q_s = 0.0;
  double t_r_hours = 0.0;

  static ContourTarget quantile(double t_s_hours, double q_s);
  static ContourTarget return_period(double t_r_hours);
};

struct EstimateWithError {
  double value = 0.0;
  double std_error = 0.0;
  long n_paths = 0;
  double censored_frac = 0.0;
  bool warning = false;
};

/// Running supremum of the projection <V, u> over the steps whose intervals
/// intersect [0, t): with V_t = W_floor(t/dt) this is the max of the first
/// ceil(t/dt) values, matching the i.i.d. count t/dt at grid-aligned t.
/// Throws when t exceeds the path horizon.
double sup_projection(const PathSample& path, const UnitVector& u, double t_hours);

/// Exact online prefilter for path supports over many directions: a point
/// strictly inside the inscribed polygon of the running eight-direction
/// extremes cannot be a hull vertex, so it can never set a support value.
class SupCollector {
 public:
  SupCollector();
  void reset();
  void add(Vec2 p);
  long count() const { return count_; }

  /// Convex hull of the surviving points (superset of the true hull vertices).
  std::vector<Vec2> hull() const;

 private:
  std::vector<Vec2> survivors_;
  Vec2 anchor_[8];
  double best_[8];
  long count_ = 0;
};

struct CqResult {
  SupportGrid grid;
  std::vector<EstimateWithError> diagnostics;  // one per direction
};

/// C_Q on arbitrary directions: simulates n_paths paths once, shares them
/// across directions, and takes the lower q_s order-statistic quantile
/// (1-based index ceil(q n)) of the phi samples per direction.  Standard
/// errors follow binomial order-statistic asymptotics with the density
/// estimated from order-statistic spacings.
std::vector<EstimateWithError> estimate_cq_directions(
    const PathSimulator& sim, const std::vector<Vec2>& directions,
    double t_s_hours, double q_s, long n_paths, int threads = 0);

/// C_Q on the uniform angular grid.
CqResult estimate_cq(const PathSimulator& sim, int n_dirs, double t_s_hours,
                     double q_s, long n_paths, int threads = 0);

/// Raw phi^u_{t_s} samples for one direction, path index order.
std::vector<double> sup_samples(const PathSimulator& sim, Vec2 direction,
                                double t_s_hours, long n_paths, int threads = 0);

/// C_T for one direction: bisects b -> mean hitting time of the half-space
/// {<u,v> >= b} against t_r on one shared path set (common random numbers,
/// so the mean is a monotone step function of b).  Paths that never exceed b
/// within horizon_cap contribute horizon_cap, biasing the mean downwards;
/// the censored fraction is reported and flags a warning above 50%.
EstimateWithError estimate_ct(const PathSimulator& sim, const UnitVector& u,
                              double t_r_hours, long n_paths,
                              double horizon_cap_hours, int threads = 0);

struct IidEquivalences {
  double t_r_hours = 0.0;
  double t_s_hours = 0.0;
  double q_s = 0.0;
};

/// Classical i.i.d. correspondences t_r = t_s = dt/p_e, q_s = (1-p_e)^(1/p_e).
IidEquivalences iid_equivalences(double p_e, double dt_hours);

/// C_e(u) = Phi^-1(1 - p_e) for the standard Gaussian i.i.d. model.
double gaussian_ce(double p_e);

}  // namespace envc
