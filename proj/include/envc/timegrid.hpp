#pragma once

#include <stdexcept>
#include <vector>

#include "envc/geometry.hpp"

namespace envc {

/// Hours per year used for unit conversion throughout (Julian year).
inline constexpr double kDefaultYearHours = 8766.0;

inline double years_to_hours(double years, double year_hours = kDefaultYearHours) {
  return years * year_hours;
}

/// Discrete simulation grid: n_steps intervals of dt hours starting at t0
/// hours after the model reference time.  Step k summarises
/// [t0 + k dt, t0 + (k+1) dt); the horizon is t0 + n_steps * dt.
struct TimeGrid {
  double dt_hours = 3.0;
  long n_steps = 1;
  double t0_hours = 0.0;

  TimeGrid(double dt, long steps, double t0 = 0.0)
      : dt_hours(dt), n_steps(steps), t0_hours(t0) {
    if (!(dt_hours > 0.0) || n_steps < 1) {
      throw std::invalid_argument("TimeGrid: dt must be > 0 and n_steps >= 1");
    }
  }

  double step_time(long k) const { return t0_hours + k * dt_hours; }
  double horizon() const { return t0_hours + n_steps * dt_hours; }
};

/// One simulated path; scalar models embed values as (v, 0).
struct PathSample {
  TimeGrid grid;
  std::vector<Vec2> values;
};

}  // namespace envc
