#pragma once

namespace envc {

/// Mean first-passage time of the standardised Ornstein-Uhlenbeck process,
/// started at 0, through the level b.  theta is the mean-reversion rate in
/// 1/hours; the result is in hours.  Evaluated through adaptive quadrature of
/// the error-function integral for b >= 0 and through the gamma-function
/// series for b < 0.
double ou_mean_exit_time(double b, double theta);

/// Series form (1/2theta) * sum_i (sqrt(2) b)^i Gamma(i/2) / i!, summed to a
/// machine-precision tail.  Exposed as the independent cross-check of the
/// integral route.
double ou_mean_exit_time_series(double b, double theta);

/// Quadrature form of the same quantity, valid for b >= 0.
double ou_mean_exit_time_integral(double b, double theta);

/// log of ou_mean_exit_time for b >= 0; stays finite far beyond the overflow
/// point of the plain value.
double ou_mean_exit_time_log(double b, double theta);

/// Contour radius for a return-period target: inverts ou_mean_exit_time by
/// bisection to relative tolerance 1e-11.
double ou_ct_radius(double t_r_hours, double theta);

struct OuIidCrossing {
  double radius = 0.0;        // radius R at which the two methods agree
  double t_r_exact = 0.0;     // common return period at the crossing, hours
  double t_r_approx = 0.0;    // sqrt(2 pi dt / theta) * exp(1/(2 theta dt))
};

/// Return period at which the OU contour radius overtakes the i.i.d. one:
/// solves dt / (1 - Phi(R)) = T(R) on R in (0, 40], taking the upper
/// crossing.  Throws std::runtime_error("no crossing") when the curves do not
/// meet in the bracket.
OuIidCrossing ou_iid_crossing(double theta, double dt_hours);

}  // namespace envc
