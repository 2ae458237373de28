#include "envc/simulators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace envc {

void IidGaussianSimulator::sample_path(std::uint64_t stream, long n_steps,
                                       std::vector<Vec2>& out) const {
  StreamRng rng(seed_, stream);
  out.resize(static_cast<std::size_t>(n_steps));
  for (auto& v : out) v = {rng.normal(), 0.0};
}

void IidGaussian2dSimulator::sample_path(std::uint64_t stream, long n_steps,
                                         std::vector<Vec2>& out) const {
  StreamRng rng(seed_, stream);
  out.resize(static_cast<std::size_t>(n_steps));
  for (auto& v : out) {
    v.x = rng.normal();
    v.y = rng.normal();
  }
}

OuSimulator::OuSimulator(double dt, double theta, std::uint64_t seed, double t0)
    : dt_(dt), t0_(t0), theta_(theta), seed_(seed) {
  if (!(theta > 0.0)) throw std::invalid_argument("OuSimulator: theta must be > 0");
  decay_ = std::exp(-theta * dt);
  noise_ = std::sqrt(-std::expm1(-2.0 * theta * dt));
}

void OuSimulator::sample_path(std::uint64_t stream, long n_steps,
                              std::vector<Vec2>& out) const {
  StreamRng rng(seed_, stream);
  out.resize(static_cast<std::size_t>(n_steps));
  double v = 0.0;  // V_0 = 0
  for (auto& p : out) {
    p = {v, 0.0};
    v = decay_ * v + noise_ * rng.normal();
  }
}

SeaStateSimulator::SeaStateSimulator(SeaStateModel model, double dt,
                                     double horizon_hours, TrendMode mode,
                                     std::uint64_t seed, double t0)
    : model_(std::move(model)),
      dt_(dt),
      t0_(t0),
      horizon_(horizon_hours),
      mode_(mode),
      seed_(seed) {
  if (!(dt > 0.0)) throw std::invalid_argument("SeaStateSimulator: dt must be > 0");
  model_.validate(t0, horizon_hours, mode);

  // Seasonal quantities repeat exactly every steps-per-year steps along the
  // grid, whatever t0 is; cache one year of rows keyed by step offset.
  const double steps = model_.year_hours / dt_;
  if (std::abs(steps - std::round(steps)) < 1e-9 && steps < 4.0e6) {
    steps_per_year_ = static_cast<long>(std::round(steps));
    table_.resize(static_cast<std::size_t>(steps_per_year_));
    for (long i = 0; i < steps_per_year_; ++i) {
      table_[static_cast<std::size_t>(i)] = phase_row(t0_ + i * dt_);
    }
  }
}

SeaStateSimulator::PhaseRow SeaStateSimulator::phase_row(double t_hours) const {
  const double phase = model_.phase(t_hours);
  return {model_.log_l(phase), 1.0 / model_.shape_k(t_hours), model_.m.raw(phase),
          model_.log_s(phase)};
}

namespace {

inline Vec2 draw_from_row(const SeaStateModel& model, double lambda,
                          const SeaStateSimulator::PhaseRow& row, StreamRng& rng) {
  if (!(lambda > 0.0)) throw std::runtime_error("trend drives scale non-positive");
  const double e = rng.exponential();
  const double h =
      model.loc_m + lambda * (row.inv_k == 1.0 ? e : std::pow(e, row.inv_k));
  const double mu = row.m + model.f_mu(h);
  const double sig = row.s * std::exp(0.5 * model.log_f_sigma2(h));
  const double p = std::exp(mu + sig * rng.normal());
  return {p, h};
}

}  // namespace

Vec2 SeaStateSimulator::draw_step(double t_hours, StreamRng& rng) const {
  const PhaseRow row = phase_row(t_hours);
  const double lambda = model_.trend_for_mode(t_hours, mode_, horizon_) * row.l;
  return draw_from_row(model_, lambda, row, rng);
}

void SeaStateSimulator::sample_path(std::uint64_t stream, long n_steps,
                                    std::vector<Vec2>& out) const {
  StreamRng rng(seed_, stream);
  out.resize(static_cast<std::size_t>(n_steps));
  for (long k = 0; k < n_steps; ++k) {
    const double t = t0_ + k * dt_;
    const PhaseRow& row =
        steps_per_year_ > 0 ? table_[static_cast<std::size_t>(k % steps_per_year_)]
                            : phase_row(t);
    const double lambda = model_.trend_for_mode(t, mode_, horizon_) * row.l;
    out[static_cast<std::size_t>(k)] = draw_from_row(model_, lambda, row, rng);
  }
}

double SeaStateSimulator::median_projection(Vec2 u) const {
  // No closed form for a general direction: median of 1001 step-0 draws on a
  // reserved stream far outside the path-index range.
  StreamRng rng(seed_, 0xC0FFEEull << 32);
  std::vector<double> proj(1001);
  for (double& v : proj) v = dot(u, draw_step(t0_, rng));
  std::nth_element(proj.begin(), proj.begin() + 500, proj.end());
  return proj[500];
}

PathSample simulate_iid_gaussian(const TimeGrid& grid, std::uint64_t seed) {
  return IidGaussianSimulator(grid.dt_hours, seed, grid.t0_hours).sample(0, grid.n_steps);
}

PathSample simulate_ou(const TimeGrid& grid, double theta, std::uint64_t seed) {
  return OuSimulator(grid.dt_hours, theta, seed, grid.t0_hours).sample(0, grid.n_steps);
}

PathSample simulate_seastate(const SeaStateModel& model, const TimeGrid& grid,
                             TrendMode mode, std::uint64_t seed) {
  return SeaStateSimulator(model, grid.dt_hours, grid.horizon(), mode, seed,
                           grid.t0_hours)
      .sample(0, grid.n_steps);
}

double marginal_quantile_projection(const SeaStateModel& model, double t_hours,
                                    const UnitVector& u, double q,
                                    std::uint64_t seed) {
  if (q < 0.0 || q >= 1.0) {
    throw std::domain_error("marginal_quantile_projection: q must lie in [0,1)");
  }
  const Vec2 uv = u.vec();
  if (std::abs(uv.x) < 1e-12 && uv.y > 0.0) {
    return model.h_quantile(t_hours, q);
  }
  const long n = 10000;
  SeaStateSimulator sim(model, 1.0, t_hours + 1.0, TrendMode::kTrueTrend, seed, t_hours);
  StreamRng rng(seed, 1);
  std::vector<double> proj(n);
  for (double& v : proj) v = dot(uv, sim.draw_step(t_hours, rng));
  std::sort(proj.begin(), proj.end());
  const long idx = std::clamp<long>(static_cast<long>(std::ceil(q * n)), 1, n);
  return proj[static_cast<std::size_t>(idx - 1)];
}

}  // namespace envc
