#pragma once

#include <iosfwd>
#include <string>

#include "envc/periodic.hpp"
#include "envc/timegrid.hpp"

namespace envc {

/// How the linear trend of the Weibull scale enters a simulation.
enum class TrendMode {
  kFrozenEnd,    // scale fixed at the end of the simulation horizon
  kTrueTrend,    // scale follows the fitted trend through time
  kFrozenStart,  // scale fixed at the reference time
};

const char* to_string(TrendMode mode);
TrendMode trend_mode_from_string(const std::string& name);

/// Non-stationary joint model of (P, H): significant wave height H follows a
/// 3-parameter Weibull law with seasonal shape and trending seasonal scale,
/// wave period P is conditionally log-normal given H.  Time zero is the
/// calibration reference (the end of the fitted record).
struct SeaStateModel {
  // H_t ~ loc + Weibull(scale lambda_t, shape k_t)
  double loc_m = 0.0;
  double c1_m = 1.0;            // trend intercept of the scale, metres
  double c2_m_per_year = 0.0;   // trend slope, metres per year
  PeriodicFourier log_l;        // seasonal scale l = exp(log_l), mean ~ 1
  PeriodicFourier k_prime;      // normalised shape, annual mean exactly 1
  double k_ratio = 1.0;         // raw/normalised shape ratio: k_t = k_ratio * k'
  // log(P_t) | H_t = h ~ Normal(m + f_mu(h), (s * f_sigma(h))^2), P in seconds
  PeriodicFourier m;             // seasonal mean of log period
  PiecewiseLinear f_mu = PiecewiseLinear::constant(0.0);
  PeriodicFourier log_s;         // s = exp(log_s)
  PiecewiseLinear log_f_sigma2 = PiecewiseLinear::constant(0.0);
  double year_hours = kDefaultYearHours;

  double phase(double t_hours) const {
    double p = std::fmod(t_hours / year_hours, 1.0);
    return p < 0.0 ? p + 1.0 : p;
  }

  double trend(double t_hours) const {
    return c1_m + c2_m_per_year * (t_hours / year_hours);
  }

  double trend_for_mode(double t_hours, TrendMode mode, double horizon_hours) const {
    switch (mode) {
      case TrendMode::kFrozenEnd: return trend(horizon_hours);
      case TrendMode::kTrueTrend: return trend(t_hours);
      case TrendMode::kFrozenStart: return c1_m;
    }
    return c1_m;
  }

  double scale_lambda(double t_hours, TrendMode mode, double horizon_hours) const {
    return trend_for_mode(t_hours, mode, horizon_hours) * log_l(phase(t_hours));
  }

  double shape_k(double t_hours) const { return k_ratio * k_prime(phase(t_hours)); }

  double sigma(double t_hours, double h) const {
    return log_s(phase(t_hours)) * std::exp(0.5 * log_f_sigma2(h));
  }

  double mu(double t_hours, double h) const { return m.raw(phase(t_hours)) + f_mu(h); }

  /// Exact marginal quantile of H at time t under the true trend.
  double h_quantile(double t_hours, double q) const;

  /// Throws when the model is unusable over [t0, horizon]: non-positive
  /// shape, seasonal scale, or a trend that drives the scale non-positive.
  void validate(double t0_hours, double horizon_hours, TrendMode mode) const;
};

/// JSON (de)serialisation; the schema is documented in docs/model-schema.md.
std::string sea_state_to_json(const SeaStateModel& model);
SeaStateModel sea_state_from_json(const std::string& json_text);
void save_sea_state(const SeaStateModel& model, const std::string& path);
SeaStateModel load_sea_state(const std::string& path);

/// Built-in demonstration model: a North-Atlantic-like wave climate with a
/// gentle warming trend and mild seasonality.  Used by the synthetic
/// generator and the round-trip experiments.
SeaStateModel demo_model();

}  // namespace envc
