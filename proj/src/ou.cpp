#include "envc/ou.hpp"

#include <cmath>
#include <stdexcept>

#include "envc/mathutil.hpp"

namespace envc {

namespace {

// Scaled integrand mass S(b) = int_0^b (1 + erf(t/sqrt2)) exp((t^2-b^2)/2) dt.
// The scaling keeps the integrand in [0, 2] so the quadrature never
// overflows; T(b) = sqrt(pi/2)/theta * exp(b^2/2) * S(b).
double scaled_exit_mass(double b) {
  if (b <= 0.0) return 0.0;
  return integrate_adaptive(
      [b](double t) {
        return (1.0 + std::erf(t / std::sqrt(2.0))) *
               std::exp(0.5 * (t * t - b * b));
      },
      0.0, b, 1e-13);
}

}  // namespace

double ou_mean_exit_time_integral(double b, double theta) {
  if (!(theta > 0.0)) throw std::domain_error("ou: theta must be positive");
  if (b < 0.0) {
    throw std::domain_error("ou_mean_exit_time_integral: b must be >= 0");
  }
  return std::sqrt(kPi / 2.0) / theta * std::exp(0.5 * b * b) * scaled_exit_mass(b);
}

double ou_mean_exit_time_log(double b, double theta) {
  if (!(theta > 0.0)) throw std::domain_error("ou: theta must be positive");
  if (!(b > 0.0)) {
    throw std::domain_error("ou_mean_exit_time_log: b must be > 0");
  }
  return 0.5 * std::log(kPi / 2.0) - std::log(theta) + 0.5 * b * b +
         std::log(scaled_exit_mass(b));
}

double ou_mean_exit_time_series(double b, double theta) {
  if (!(theta > 0.0)) throw std::domain_error("ou: theta must be positive");
  if (b == 0.0) return 0.0;
  const double z = std::sqrt(2.0) * b;
  // term_i = z^i Gamma(i/2) / i!, accumulated by the recurrence
  // term_{i+2} = term_i * z^2 * (i/2) / ((i+1)(i+2)) within each parity class.
  double sum = 0.0;
  double term = z * std::tgamma(0.5);         // i = 1
  double term_even = 0.5 * z * z;             // i = 2: z^2 Gamma(1)/2!
  for (int i = 1; i < 100000; i += 2) {
    sum += term + term_even;
    const double tail = std::abs(term) + std::abs(term_even);
    if (tail < 1e-17 * std::max(std::abs(sum), 1.0)) break;
    term *= z * z * (0.5 * i) / ((i + 1.0) * (i + 2.0));
    term_even *= z * z * (0.5 * (i + 1.0)) / ((i + 2.0) * (i + 3.0));
  }
  return sum / (2.0 * theta);
}

double ou_mean_exit_time(double b, double theta) {
  if (!(theta > 0.0)) throw std::domain_error("ou: theta must be positive");
  if (b < 0.0) return ou_mean_exit_time_series(b, theta);
  return ou_mean_exit_time_integral(b, theta);
}

double ou_ct_radius(double t_r_hours, double theta) {
  if (!(t_r_hours > 0.0)) throw std::domain_error("ou_ct_radius: t_r must be > 0");
  const double log_target = std::log(t_r_hours);
  // T is increasing in b; bracket the radius before bisecting in log space.
  double hi = 1.0;
  while (ou_mean_exit_time_log(hi, theta) < log_target) {
    hi *= 2.0;
    if (hi > 1e3) throw std::runtime_error("ou_ct_radius: radius bracket failed");
  }
  double lo = 0.0;
  const double r = bisect_root(
      [&](double b) {
        return (b <= 0.0 ? -std::numeric_limits<double>::infinity()
                         : ou_mean_exit_time_log(b, theta)) -
               log_target;
      },
      lo, hi, 1e-11 * hi);
  return r;
}

OuIidCrossing ou_iid_crossing(double theta, double dt_hours) {
  if (!(theta > 0.0 && dt_hours > 0.0)) {
    throw std::domain_error("ou_iid_crossing: theta and dt must be positive");
  }
  OuIidCrossing out;
  out.t_r_approx =
      std::sqrt(kTwoPi * dt_hours / theta) * std::exp(1.0 / (2.0 * theta * dt_hours));

  // g(R) = log(dt / (1-Phi(R))) - log T(R); positive where the i.i.d. method
  // needs the longer return period at radius R.  Scan downwards from R = 40
  // so the root found is the upper crossing.
  auto g = [&](double r) {
    return std::log(dt_hours) - normal_sf_log(r) - ou_mean_exit_time_log(r, theta);
  };
  const double r_max = 40.0;
  const double step = 0.05;
  double hi = r_max;
  double ghi = g(hi);
  double lo = hi;
  bool bracketed = false;
  while (lo > step) {
    lo = hi - step;
    const double glo = g(lo);
    if ((glo > 0.0) != (ghi > 0.0)) {
      bracketed = true;
      break;
    }
    hi = lo;
    ghi = glo;
  }
  if (!bracketed) throw std::runtime_error("no crossing");
  out.radius = bisect_root(g, lo, hi, 1e-12 * hi);
  out.t_r_exact = dt_hours / normal_sf(out.radius);
  return out;
}

}  // namespace envc
