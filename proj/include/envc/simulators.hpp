#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "envc/rng.hpp"
#include "envc/sea_state.hpp"
#include "envc/timegrid.hpp"

namespace envc {

/// Generator of discrete-time environmental paths.  A simulator is an
/// immutable configuration plus a master seed; paths are drawn on independent
/// streams indexed by the caller, so concurrent generation is deterministic
/// regardless of scheduling.  Two simulators built from the same
/// configuration and seed produce identical paths.
class PathSimulator {
 public:
  virtual ~PathSimulator() = default;

  virtual int dimension() const = 0;
  virtual bool is_stationary() const = 0;
  virtual double dt_hours() const = 0;
  virtual double t0_hours() const = 0;
  virtual std::uint64_t seed() const = 0;

  /// Fills out with n_steps values for the given stream index.
  virtual void sample_path(std::uint64_t stream, long n_steps,
                           std::vector<Vec2>& out) const = 0;

  /// Median of <u, V> at the first step; seeds root-find brackets.
  virtual double median_projection(Vec2 u) const = 0;

  PathSample sample(std::uint64_t stream, long n_steps) const {
    PathSample p{TimeGrid(dt_hours(), n_steps, t0_hours()), {}};
    sample_path(stream, n_steps, p.values);
    return p;
  }
};

/// 1-D sequence of independent standard normals (the classical i.i.d. model).
class IidGaussianSimulator final : public PathSimulator {
 public:
  IidGaussianSimulator(double dt, std::uint64_t seed, double t0 = 0.0)
      : dt_(dt), t0_(t0), seed_(seed) {}

  int dimension() const override { return 1; }
  bool is_stationary() const override { return true; }
  double dt_hours() const override { return dt_; }
  double t0_hours() const override { return t0_; }
  std::uint64_t seed() const override { return seed_; }
  void sample_path(std::uint64_t stream, long n_steps,
                   std::vector<Vec2>& out) const override;
  double median_projection(Vec2) const override { return 0.0; }

 private:
  double dt_;
  double t0_;
  std::uint64_t seed_;
};

/// 2-D rotationally symmetric standard Gaussian steps.
class IidGaussian2dSimulator final : public PathSimulator {
 public:
  IidGaussian2dSimulator(double dt, std::uint64_t seed, double t0 = 0.0)
      : dt_(dt), t0_(t0), seed_(seed) {}

  int dimension() const override { return 2; }
  bool is_stationary() const override { return true; }
  double dt_hours() const override { return dt_; }
  double t0_hours() const override { return t0_; }
  std::uint64_t seed() const override { return seed_; }
  void sample_path(std::uint64_t stream, long n_steps,
                   std::vector<Vec2>& out) const override;
  double median_projection(Vec2) const override { return 0.0; }

 private:
  double dt_;
  double t0_;
  std::uint64_t seed_;
};

/// Standardised Ornstein-Uhlenbeck process sampled by exact discretisation:
/// V_{n+1} = exp(-theta dt) V_n + sqrt(1 - exp(-2 theta dt)) Z_n, V_0 = 0.
class OuSimulator final : public PathSimulator {
 public:
  OuSimulator(double dt, double theta, std::uint64_t seed, double t0 = 0.0);

  int dimension() const override { return 1; }
  bool is_stationary() const override { return true; }
  double dt_hours() const override { return dt_; }
  double t0_hours() const override { return t0_; }
  std::uint64_t seed() const override { return seed_; }
  void sample_path(std::uint64_t stream, long n_steps,
                   std::vector<Vec2>& out) const override;
  double median_projection(Vec2) const override { return 0.0; }
  double theta() const { return theta_; }

 private:
  double dt_;
  double t0_;
  double theta_;
  double decay_;
  double noise_;
  std::uint64_t seed_;
};

/// Degenerate simulator emitting one constant point; exercises collapse
/// handling in the estimators and the contour builder.
class ConstantSimulator final : public PathSimulator {
 public:
  ConstantSimulator(Vec2 value, double dt, std::uint64_t seed, double t0 = 0.0)
      : value_(value), dt_(dt), t0_(t0), seed_(seed) {}

  int dimension() const override { return 2; }
  bool is_stationary() const override { return true; }
  double dt_hours() const override { return dt_; }
  double t0_hours() const override { return t0_; }
  std::uint64_t seed() const override { return seed_; }
  void sample_path(std::uint64_t, long n_steps, std::vector<Vec2>& out) const override {
    out.assign(static_cast<std::size_t>(n_steps), value_);
  }
  double median_projection(Vec2 u) const override { return dot(u, value_); }

 private:
  Vec2 value_;
  double dt_;
  double t0_;
  std::uint64_t seed_;
};

/// Independent (non-identically distributed) steps of the sea-state model:
/// V_t = (P, H) with W_n = V_{n dt} in distribution.  Seasonal tables are
/// precomputed when the year holds an integral number of steps.
class SeaStateSimulator final : public PathSimulator {
 public:
  SeaStateSimulator(SeaStateModel model, double dt, double horizon_hours,
                    TrendMode mode, std::uint64_t seed, double t0 = 0.0);

  int dimension() const override { return 2; }
  bool is_stationary() const override {
    return model_.c2_m_per_year == 0.0 || mode_ != TrendMode::kTrueTrend;
  }
  double dt_hours() const override { return dt_; }
  double t0_hours() const override { return t0_; }
  std::uint64_t seed() const override { return seed_; }
  void sample_path(std::uint64_t stream, long n_steps,
                   std::vector<Vec2>& out) const override;
  double median_projection(Vec2 u) const override;

  const SeaStateModel& model() const { return model_; }
  TrendMode trend_mode() const { return mode_; }

  /// Draws the step value at absolute time t from the supplied rng.
  Vec2 draw_step(double t_hours, StreamRng& rng) const;

  struct PhaseRow {
    double l = 1.0;
    double inv_k = 1.0;
    double m = 0.0;
    double s = 1.0;
  };

 private:
  PhaseRow phase_row(double t_hours) const;

  SeaStateModel model_;
  double dt_;
  double t0_;
  double horizon_;
  TrendMode mode_;
  std::uint64_t seed_;
  std::vector<PhaseRow> table_;  // per step-in-year when cached
  long steps_per_year_ = 0;
};

/// Convenience one-path wrappers mirroring the module operations.
PathSample simulate_iid_gaussian(const TimeGrid& grid, std::uint64_t seed);
PathSample simulate_ou(const TimeGrid& grid, double theta, std::uint64_t seed);
PathSample simulate_seastate(const SeaStateModel& model, const TimeGrid& grid,
                             TrendMode mode, std::uint64_t seed);

/// Quantile of <u, V_t>: exact Weibull quantile on the H axis, Monte-Carlo
/// from 10^4 draws otherwise.
double marginal_quantile_projection(const SeaStateModel& model, double t_hours,
                                    const UnitVector& u, double q,
                                    std::uint64_t seed = 0x5eed);

}  // namespace envc
