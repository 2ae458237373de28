#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "envc/sea_state.hpp"

namespace envc {

struct MetOceanRow {
  double t_hours = 0.0;  // hours since the series' own epoch
  double hs_m = 0.0;     // significant wave height
  double tz_s = 0.0;     // wave period
};

/// Hourly (possibly gappy) record of significant wave height and wave
/// period.  Timestamps are strictly increasing; offending rows are dropped
/// at ingestion and counted.
struct MetOceanSeries {
  std::vector<MetOceanRow> rows;
  long skipped_rows = 0;

  double span_hours() const {
    return rows.empty() ? 0.0 : rows.back().t_hours - rows.front().t_hours;
  }
  /// Reference epoch of the fitted model: the end of the record.
  double t_ref_hours() const { return rows.empty() ? 0.0 : rows.back().t_hours; }
};

struct WeibullFitResult {
  double loc_m = 0.0;
  double c1_m = 0.0;
  double c2_m_per_year = 0.0;
  PeriodicFourier k_prime;  // annual mean exactly 1
  double k_ratio = 1.0;     // raw shape = k_ratio * k_prime
  PeriodicFourier log_l;
  long rows_used = 0;
};

struct LognormalFitResult {
  PeriodicFourier m;
  PiecewiseLinear f_mu;
  PeriodicFourier log_s;
  PiecewiseLinear log_f_sigma2;
  double residual_variance = 0.0;  // of standardised residuals, 1 after scaling
  long rows_used = 0;
};

struct CalibrationOptions {
  int n_harmonics = 3;
  int f_knots = 21;  // knot count for the wave-height smooths
  double year_hours = kDefaultYearHours;
};

/// Marginal Weibull calibration of H: location from the sample minimum
/// (floored to 2 significant digits), linear trend by least squares, seasonal
/// shape from the moment-ratio identity, seasonal scale from the normalised
/// k'-th moment display.
WeibullFitResult fit_weibull(const MetOceanSeries& series,
                             const CalibrationOptions& options = {});

/// Conditional log-normal calibration of P: additive backfit of log period on
/// a seasonal term and a wave-height term, then the same decomposition for
/// the log squared residuals with the chi-squared log-moment offset, and a
/// final variance rescale of s.
LognormalFitResult fit_lognormal(const MetOceanSeries& series,
                                 const WeibullFitResult& weibull_fit,
                                 const CalibrationOptions& options = {});

SeaStateModel assemble_model(const WeibullFitResult& weibull,
                             const LognormalFitResult& lognormal,
                             double year_hours = kDefaultYearHours);

/// Full pipeline: fit both parts and assemble the model (time zero at the end
/// of the record).
SeaStateModel calibrate(const MetOceanSeries& series,
                        const CalibrationOptions& options = {});

/// Hourly synthetic record drawn from the model over the given number of
/// years, ending at the model's reference time.  Stands in for reanalysis
/// data in round trips and demos.
MetOceanSeries generate_synthetic(const SeaStateModel& model, double years,
                                  std::uint64_t seed);

/// Rounds down to two significant decimal digits (0.3764 -> 0.37).
double floor_two_significant(double x);

}  // namespace envc
