#include "envc/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "envc/linalg.hpp"
#include "envc/mathutil.hpp"
#include "envc/rng.hpp"
#include "envc/simulators.hpp"

namespace envc {

double floor_two_significant(double x) {
  if (!(x > 0.0)) throw std::domain_error("floor_two_significant: x must be > 0");
  const double unit = std::pow(10.0, std::floor(std::log10(x)) - 1.0);
  return std::floor(x / unit) * unit;
}

namespace {

void fourier_row(double phase, int order, std::vector<double>& row) {
  row[0] = 1.0;
  const double w = kTwoPi * phase;
  for (int j = 1; j <= order; ++j) {
    row[static_cast<std::size_t>(2 * j - 1)] = std::cos(w * j);
    row[static_cast<std::size_t>(2 * j)] = std::sin(w * j);
  }
}

SymMatrix fourier_curvature_penalty(int order) {
  SymMatrix p(1 + 2 * order);
  for (int j = 1; j <= order; ++j) {
    const double w = std::pow(static_cast<double>(j), 4.0);
    p.at(2 * j - 1, 2 * j - 1) = w;
    p.at(2 * j, 2 * j) = w;
  }
  return p;
}

SymMatrix second_difference_penalty(int n) {
  SymMatrix p(n);
  for (int i = 1; i + 1 < n; ++i) {
    const int idx[3] = {i - 1, i, i + 1};
    const double coef[3] = {1.0, -2.0, 1.0};
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b <= a; ++b) {
        p.add_sym(idx[a], idx[b], coef[a] * coef[b]);
      }
    }
  }
  return p;
}

// Penalised least squares with the smoothing parameter picked by GCV on a
// fixed logarithmic grid.  RSS comes from the accumulated cross products, so
// no second pass over the data is needed.
std::vector<double> gcv_solve(const SymMatrix& xtx, const std::vector<double>& xty,
                              double yty, long n, const SymMatrix& penalty) {
  const int p = xtx.size();
  double trace_x = 0.0, trace_p = 0.0;
  for (int i = 0; i < p; ++i) {
    trace_x += xtx.at(i, i);
    trace_p += penalty.at(i, i);
  }
  const double lam_unit = trace_p > 0.0 ? trace_x / trace_p : 1.0;

  std::vector<double> best;
  double best_gcv = std::numeric_limits<double>::infinity();
  for (int g = -8; g <= 2; ++g) {
    const double lambda = std::pow(10.0, g) * lam_unit;
    PenalizedFit fit;
    try {
      fit = solve_penalized_with_edf(xtx, xty, lambda, &penalty);
    } catch (const std::runtime_error&) {
      continue;
    }
    double quad = 0.0;
    for (int i = 0; i < p; ++i) {
      double xi = 0.0;
      for (int j = 0; j < p; ++j) xi += xtx.at(i, j) * fit.beta[static_cast<std::size_t>(j)];
      quad += fit.beta[static_cast<std::size_t>(i)] * (xi - 2.0 * xty[static_cast<std::size_t>(i)]);
    }
    const double rss = std::max(0.0, yty + quad);
    const double denom = std::max(1.0, static_cast<double>(n) - fit.edf);
    const double gcv = static_cast<double>(n) * rss / (denom * denom);
    if (gcv < best_gcv) {
      best_gcv = gcv;
      best = std::move(fit.beta);
    }
  }
  if (best.empty()) throw std::runtime_error("smoother fit failed");
  return best;
}

PeriodicFourier beta_to_fourier(const std::vector<double>& beta, int order) {
  PeriodicFourier f;
  f.a0 = beta[0];
  f.a.resize(static_cast<std::size_t>(order));
  f.b.resize(static_cast<std::size_t>(order));
  for (int j = 1; j <= order; ++j) {
    f.a[static_cast<std::size_t>(j - 1)] = beta[static_cast<std::size_t>(2 * j - 1)];
    f.b[static_cast<std::size_t>(j - 1)] = beta[static_cast<std::size_t>(2 * j)];
  }
  return f;
}

/// One periodic smoother pass: penalised Fourier regression of y on phase.
PeriodicFourier periodic_smoother(const std::vector<double>& phases,
                                  const std::vector<double>& ys, int order) {
  const int p = 1 + 2 * order;
  SymMatrix xtx(p);
  std::vector<double> xty(static_cast<std::size_t>(p), 0.0);
  std::vector<double> row(static_cast<std::size_t>(p));
  double yty = 0.0;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    fourier_row(phases[i], order, row);
    accumulate_normal_eq(xtx, xty, row, ys[i]);
    yty += ys[i] * ys[i];
  }
  const SymMatrix penalty = fourier_curvature_penalty(order);
  return beta_to_fourier(
      gcv_solve(xtx, xty, yty, static_cast<long>(phases.size()), penalty), order);
}

std::vector<double> quantile_knots(std::vector<double> xs, int count) {
  std::sort(xs.begin(), xs.end());
  std::vector<double> knots;
  knots.reserve(static_cast<std::size_t>(count));
  const std::size_t n = xs.size();
  for (int i = 0; i < count; ++i) {
    const double q = static_cast<double>(i) / (count - 1);
    const std::size_t idx = std::min<std::size_t>(
        n - 1, static_cast<std::size_t>(q * static_cast<double>(n - 1) + 0.5));
    const double v = xs[idx];
    if (knots.empty() || v > knots.back() + 1e-12 * (std::abs(v) + 1.0)) {
      knots.push_back(v);
    }
  }
  if (knots.size() < 2) {
    knots = {xs.front(), xs.front() + 1.0};
  }
  return knots;
}

struct HatBasis {
  std::vector<double> knots;

  int size() const { return static_cast<int>(knots.size()); }

  // Two adjacent weights per evaluation point (clamped linear extension).
  void weights(double x, int& j0, double& w0, double& w1) const {
    const int n = size();
    int hi = n - 1;
    if (x <= knots[0]) {
      hi = 1;
    } else if (x < knots[static_cast<std::size_t>(n - 1)]) {
      int lo = 0;
      int up = n - 1;
      while (up - lo > 1) {
        const int mid = (lo + up) / 2;
        (knots[static_cast<std::size_t>(mid)] <= x ? lo : up) = mid;
      }
      hi = up;
    }
    const double t = (x - knots[static_cast<std::size_t>(hi - 1)]) /
                     (knots[static_cast<std::size_t>(hi)] - knots[static_cast<std::size_t>(hi - 1)]);
    j0 = hi - 1;
    w0 = 1.0 - t;
    w1 = t;
  }
};

/// Penalised piecewise-linear smoother of y on x: hat-function basis on
/// data-quantile knots with a second-difference penalty, GCV-selected.
PiecewiseLinear pl_smoother(const std::vector<double>& xs, const std::vector<double>& ys,
                            int knot_count) {
  HatBasis basis{quantile_knots(xs, knot_count)};
  const int p = basis.size();
  SymMatrix xtx(p);
  std::vector<double> xty(static_cast<std::size_t>(p), 0.0);
  double yty = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    int j0;
    double w0, w1;
    basis.weights(xs[i], j0, w0, w1);
    const double y = ys[i];
    xty[static_cast<std::size_t>(j0)] += w0 * y;
    xty[static_cast<std::size_t>(j0 + 1)] += w1 * y;
    xtx.add_sym(j0, j0, w0 * w0);
    xtx.add_sym(j0 + 1, j0 + 1, w1 * w1);
    xtx.add_sym(j0 + 1, j0, w0 * w1);
    yty += y * y;
  }
  const SymMatrix penalty = second_difference_penalty(p);
  std::vector<double> beta =
      gcv_solve(xtx, xty, yty, static_cast<long>(xs.size()), penalty);
  return PiecewiseLinear{std::move(basis.knots), std::move(beta)};
}

struct AdditiveFit {
  PeriodicFourier periodic;
  PiecewiseLinear in_h;  // mean-zero over the data rows
};

/// Backfit y ~ periodic(phase) + f(h) with the identifiability gauge: f is
/// centred over the empirical h-distribution, intercepts live in the
/// periodic part.
AdditiveFit backfit_additive(const std::vector<double>& phases,
                             const std::vector<double>& hs,
                             const std::vector<double>& ys, int order,
                             int knot_count, int iterations = 8) {
  const std::size_t n = ys.size();
  AdditiveFit fit;
  fit.in_h = PiecewiseLinear::constant(0.0);
  std::vector<double> partial(n);
  for (int it = 0; it < iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) partial[i] = ys[i] - fit.in_h(hs[i]);
    fit.periodic = periodic_smoother(phases, partial, order);
    for (std::size_t i = 0; i < n; ++i) partial[i] = ys[i] - fit.periodic.raw(phases[i]);
    fit.in_h = pl_smoother(hs, partial, knot_count);
    double mean_f = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean_f += fit.in_h(hs[i]);
    mean_f /= static_cast<double>(n);
    for (double& v : fit.in_h.values) v -= mean_f;
    fit.periodic.a0 += mean_f;
  }
  return fit;
}

double wrap_phase(double t_hours, double year_hours) {
  double p = std::fmod(t_hours / year_hours, 1.0);
  return p < 0.0 ? p + 1.0 : p;
}

}  // namespace

WeibullFitResult fit_weibull(const MetOceanSeries& series,
                             const CalibrationOptions& options) {
  if (series.rows.empty() || series.span_hours() < 2.0 * options.year_hours) {
    throw std::invalid_argument("insufficient data: need at least two years");
  }
  const double t_ref = series.t_ref_hours();
  const std::size_t n = series.rows.size();

  WeibullFitResult out;
  double min_h = std::numeric_limits<double>::infinity();
  for (const auto& r : series.rows) min_h = std::min(min_h, r.hs_m);
  out.loc_m = floor_two_significant(min_h);

  // Linear trend of the excess height over years since the reference.
  std::vector<double> tau_years(n), phases(n), excess(n);
  double st = 0.0, st2 = 0.0, sy = 0.0, sty = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double tau = (series.rows[i].t_hours - t_ref) / options.year_hours;
    tau_years[i] = tau;
    phases[i] = wrap_phase(series.rows[i].t_hours - t_ref, options.year_hours);
    excess[i] = series.rows[i].hs_m - out.loc_m;
    st += tau;
    st2 += tau * tau;
    sy += excess[i];
    sty += tau * excess[i];
  }
  const double nn = static_cast<double>(n);
  const double det = nn * st2 - st * st;
  if (det <= 0.0) throw std::runtime_error("degenerate time axis");
  out.c2_m_per_year = (nn * sty - st * sy) / det;
  out.c1_m = (sy - out.c2_m_per_year * st) / nn;

  // Seasonal shape from the scale-free moment ratio of the conditional
  // first and second moments of the excess.
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) sq[i] = excess[i] * excess[i];
  const PeriodicFourier m1 = periodic_smoother(phases, excess, options.n_harmonics);
  const PeriodicFourier m2 = periodic_smoother(phases, sq, options.n_harmonics);

  const int grid_n = 720;
  std::vector<double> grid_phase(grid_n), k_raw(grid_n);
  for (int g = 0; g < grid_n; ++g) {
    const double p = static_cast<double>(g) / grid_n;
    grid_phase[static_cast<std::size_t>(g)] = p;
    const double a = m1.raw(p);
    const double b = m2.raw(p);
    if (!(a > 0.0) || !(b > 0.0)) throw std::domain_error("moment ratio infeasible");
    k_raw[static_cast<std::size_t>(g)] = invert_weibull_moment_ratio(a * a / b);
  }
  PeriodicFourier k_fit = fit_fourier(grid_phase, k_raw, options.n_harmonics);
  out.k_ratio = k_fit.a0;
  if (!(out.k_ratio > 0.0)) throw std::runtime_error("shape fit non-positive");
  out.k_prime = k_fit;
  out.k_prime.a0 = 1.0;
  for (auto& c : out.k_prime.a) c /= out.k_ratio;
  for (auto& c : out.k_prime.b) c /= out.k_ratio;

  // Seasonal scale: regression of log of the normalised k'-th moment.  The
  // fitted quantity has Weibull shape k_ratio exactly, so the log-domain
  // regression is unbiased after the Gumbel-type mean correction.
  const double lg_corr = std::lgamma(1.0 + 1.0 / out.k_ratio);
  const double c_bias = -kEulerGamma / out.k_ratio - lg_corr;
  std::vector<double> lphase, ly;
  lphase.reserve(n);
  ly.reserve(n);
  long dropped = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (excess[i] <= 0.0) {
      ++dropped;
      continue;
    }
    const double trend = out.c1_m + out.c2_m_per_year * tau_years[i];
    if (!(trend > 0.0)) throw std::runtime_error("non-positive trend-adjusted values");
    const double kp = out.k_prime(phases[i]);
    lphase.push_back(phases[i]);
    ly.push_back(kp * (std::log(excess[i]) - std::log(trend)) - lg_corr);
  }
  const PeriodicFourier s_fit = periodic_smoother(lphase, ly, options.n_harmonics);
  std::vector<double> log_l_vals(grid_n);
  for (int g = 0; g < grid_n; ++g) {
    const double p = grid_phase[static_cast<std::size_t>(g)];
    log_l_vals[static_cast<std::size_t>(g)] = (s_fit.raw(p) - c_bias) / out.k_prime(p);
  }
  out.log_l = fit_fourier(grid_phase, log_l_vals, options.n_harmonics);
  out.log_l.log_domain = true;
  out.rows_used = static_cast<long>(n) - dropped;
  return out;
}

LognormalFitResult fit_lognormal(const MetOceanSeries& series,
                                 const WeibullFitResult& /*weibull_fit*/,
                                 const CalibrationOptions& options) {
  if (series.rows.size() < 1000) {
    throw std::invalid_argument("insufficient data");
  }
  const double t_ref = series.t_ref_hours();
  const std::size_t n = series.rows.size();
  std::vector<double> phases(n), hs(n), y(n);
  for (std::size_t i = 0; i < n; ++i) {
    phases[i] = wrap_phase(series.rows[i].t_hours - t_ref, options.year_hours);
    hs[i] = series.rows[i].hs_m;
    y[i] = std::log(series.rows[i].tz_s);
  }

  LognormalFitResult out;
  const AdditiveFit mean_fit =
      backfit_additive(phases, hs, y, options.n_harmonics, options.f_knots);
  out.m = mean_fit.periodic;
  out.f_mu = mean_fit.in_h;

  // sigma decomposition: E[log r^2] = L + log s^2(t) + log f_sigma^2(h).
  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = y[i] - out.m.raw(phases[i]) - out.f_mu(hs[i]);
    z[i] = std::log(std::max(r * r, 1e-300)) - kLogChi2Moment1;
  }
  const AdditiveFit var_fit =
      backfit_additive(phases, hs, z, options.n_harmonics, options.f_knots);
  out.log_s = var_fit.periodic;  // currently log s^2
  out.log_s.a0 *= 0.5;
  for (auto& c : out.log_s.a) c *= 0.5;
  for (auto& c : out.log_s.b) c *= 0.5;
  out.log_s.log_domain = true;
  out.log_f_sigma2 = var_fit.in_h;

  // Rescale s so the standardised residuals have unit variance.
  double sum = 0.0, sum2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sig = out.log_s(phases[i]) * std::exp(0.5 * out.log_f_sigma2(hs[i]));
    const double std_res = (y[i] - out.m.raw(phases[i]) - out.f_mu(hs[i])) / sig;
    sum += std_res;
    sum2 += std_res * std_res;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = sum2 / static_cast<double>(n) - mean * mean;
  out.log_s.a0 += 0.5 * std::log(var);
  out.residual_variance = 1.0;
  out.rows_used = static_cast<long>(n);
  return out;
}

SeaStateModel assemble_model(const WeibullFitResult& w, const LognormalFitResult& p,
                             double year_hours) {
  SeaStateModel model;
  model.loc_m = w.loc_m;
  model.c1_m = w.c1_m;
  model.c2_m_per_year = w.c2_m_per_year;
  model.k_prime = w.k_prime;
  model.k_ratio = w.k_ratio;
  model.log_l = w.log_l;
  model.m = p.m;
  model.f_mu = p.f_mu;
  model.log_s = p.log_s;
  model.log_f_sigma2 = p.log_f_sigma2;
  model.year_hours = year_hours;
  return model;
}

SeaStateModel calibrate(const MetOceanSeries& series, const CalibrationOptions& options) {
  const WeibullFitResult w = fit_weibull(series, options);
  const LognormalFitResult p = fit_lognormal(series, w, options);
  return assemble_model(w, p, options.year_hours);
}

MetOceanSeries generate_synthetic(const SeaStateModel& model, double years,
                                  std::uint64_t seed) {
  if (!(years > 0.0)) throw std::invalid_argument("generate_synthetic: years must be > 0");
  const long n = std::llround(years * model.year_hours);
  const double t0 = -static_cast<double>(n - 1);
  SeaStateSimulator sim(model, 1.0, 0.0, TrendMode::kTrueTrend, seed, t0);
  std::vector<Vec2> values;
  sim.sample_path(0, n, values);
  MetOceanSeries series;
  series.rows.resize(static_cast<std::size_t>(n));
  for (long i = 0; i < n; ++i) {
    const Vec2 v = values[static_cast<std::size_t>(i)];
    series.rows[static_cast<std::size_t>(i)] = {static_cast<double>(i), v.y, v.x};
  }
  return series;
}

}  // namespace envc
