#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "envc/mathutil.hpp"

namespace envc {

/// Truncated Fourier series on the unit circle of year phase.  Quantities
/// that must stay positive store the series of their logarithm.
struct PeriodicFourier {
  double a0 = 0.0;
  std::vector<double> a;  // cosine coefficients, harmonic j = index + 1
  std::vector<double> b;  // sine coefficients
  bool log_domain = false;

  static PeriodicFourier constant(double value, bool log_dom = false) {
    PeriodicFourier f;
    f.log_domain = log_dom;
    f.a0 = log_dom ? std::log(value) : value;
    return f;
  }

  int order() const { return static_cast<int>(a.size()); }

  double raw(double phase) const {
    double s = a0;
    const double w = kTwoPi * phase;
    for (std::size_t j = 0; j < a.size(); ++j) {
      s += a[j] * std::cos(w * (j + 1)) + b[j] * std::sin(w * (j + 1));
    }
    return s;
  }

  double operator()(double phase) const {
    const double r = raw(phase);
    return log_domain ? std::exp(r) : r;
  }

  /// Annual mean of the raw series (exact: the constant coefficient).
  double raw_mean() const { return a0; }
};

/// Least-squares projection of samples (phase_i, y_i) onto a Fourier basis of
/// the given order.  Used both directly and to re-express derived curves.
PeriodicFourier fit_fourier(const std::vector<double>& phases,
                            const std::vector<double>& values, int order,
                            bool log_domain = false);

/// Continuous piecewise-linear function of a scalar (wave height h).
/// Extrapolates linearly with the end-segment slopes.
struct PiecewiseLinear {
  std::vector<double> knots;   // strictly increasing
  std::vector<double> values;  // same length

  static PiecewiseLinear constant(double v) {
    return {{0.0, 1.0}, {v, v}};
  }

  double operator()(double x) const {
    const std::size_t n = knots.size();
    if (n == 0) throw std::logic_error("PiecewiseLinear: empty");
    if (n == 1) return values[0];
    std::size_t hi = 1;
    if (x >= knots[n - 1]) {
      hi = n - 1;
    } else if (x > knots[0]) {
      // branchless-ish binary search keeps this cheap in sampling loops
      std::size_t lo = 0, up = n - 1;
      while (up - lo > 1) {
        const std::size_t mid = (lo + up) / 2;
        (knots[mid] <= x ? lo : up) = mid;
      }
      hi = up;
    }
    const double t = (x - knots[hi - 1]) / (knots[hi] - knots[hi - 1]);
    return values[hi - 1] + t * (values[hi] - values[hi - 1]);
  }
};

}  // namespace envc
