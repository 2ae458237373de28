#pragma once

#include <cstdint>
#include <functional>

namespace envc {

// Euler-Mascheroni constant.
inline constexpr double kEulerGamma = 0.57721566490153286060651209;

// E[log X] for X ~ chi-squared with one degree of freedom: psi(1/2) + log 2.
inline constexpr double kLogChi2Moment1 = -1.2703628454614782;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 6.28318530717958647692;

/// Standard normal CDF, accurate in both tails.
double normal_cdf(double x);

/// Standard normal survival function 1 - Phi(x).
double normal_sf(double x);

/// log(1 - Phi(x)); usable far beyond the underflow point of normal_sf.
double normal_sf_log(double x);

/// Standard normal quantile. Acklam's rational approximation polished by one
/// Halley step; absolute error below 1e-13 across (0, 1).
double normal_quantile(double p);

/// Weibull moment ratio Gamma(1+1/k)^2 / Gamma(1+2/k); increasing in k.
double weibull_moment_ratio(double k);

/// Inverts weibull_moment_ratio by bisection on k in [k_lo, k_hi].
double invert_weibull_moment_ratio(double ratio, double k_lo = 0.05,
                                   double k_hi = 200.0);

/// Adaptive Simpson quadrature of f over [a, b] to relative tolerance rel_tol.
double integrate_adaptive(const std::function<double(double)>& f, double a,
                          double b, double rel_tol = 1e-12);

/// Root of f on [lo, hi] by bisection; f(lo) and f(hi) must differ in sign.
/// Stops when the bracket width falls below xtol (absolute).
double bisect_root(const std::function<double(double)>& f, double lo,
                   double hi, double xtol);

}  // namespace envc
