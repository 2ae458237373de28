#include "envc/hitting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "envc/parallel.hpp"

namespace envc {

ContourTarget ContourTarget::quantile(double t_s_hours, double q_s) {
  if (!(t_s_hours > 0.0) || !(q_s > 0.0 && q_s < 1.0)) {
    throw std::invalid_argument("quantile target: need t_s > 0 and q_s in (0,1)");
  }
  ContourTarget t;
  t.kind = Kind::kQuantile;
  t.t_s_hours = t_s_hours;
  t.q_s = q_s;
  return t;
}

ContourTarget ContourTarget::return_period(double t_r_hours) {
  if (!(t_r_hours > 0.0)) {
    throw std::invalid_argument("return-period target: need t_r > 0");
  }
  ContourTarget t;
  t.kind = Kind::kReturnPeriod;
  t.t_r_hours = t_r_hours;
  return t;
}

namespace {

long included_steps(double t_hours, double dt, long n_available) {
  // Intervals [k dt, (k+1) dt) intersecting [0, t).
  long n = static_cast<long>(std::ceil(t_hours / dt - 1e-9));
  return std::clamp<long>(n, 1, n_available);
}

}  // namespace

double sup_projection(const PathSample& path, const UnitVector& u, double t_hours) {
  const long n_steps = static_cast<long>(path.values.size());
  const double dt = path.grid.dt_hours;
  if (t_hours > n_steps * dt * (1.0 + 1e-12) || n_steps == 0) {
    throw std::out_of_range("sup_projection: t exceeds path horizon");
  }
  const long n = included_steps(t_hours, dt, n_steps);
  const Vec2 uv = u.vec();
  double best = -std::numeric_limits<double>::infinity();
  for (long k = 0; k < n; ++k) {
    best = std::max(best, dot(uv, path.values[static_cast<std::size_t>(k)]));
  }
  return best;
}

SupCollector::SupCollector() { reset(); }

void SupCollector::reset() {
  survivors_.clear();
  count_ = 0;
  for (int k = 0; k < 8; ++k) best_[k] = -std::numeric_limits<double>::infinity();
}

namespace {

constexpr double kR2 = 0.70710678118654752440;
constexpr Vec2 kOctant[8] = {{1, 0},  {kR2, kR2},   {0, 1},  {-kR2, kR2},
                             {-1, 0}, {-kR2, -kR2}, {0, -1}, {kR2, -kR2}};

}  // namespace

void SupCollector::add(Vec2 p) {
  ++count_;
  bool improved = false;
  for (int k = 0; k < 8; ++k) {
    const double s = dot(kOctant[k], p);
    if (s > best_[k]) {
      best_[k] = s;
      anchor_[k] = p;
      improved = true;
    }
  }
  if (!improved) {
    // Distinct anchors in direction order form a CCW convex cycle; a point
    // on or inside it lies in the hull of earlier points and cannot carry
    // any support value.
    Vec2 poly[8];
    int m = 0;
    for (int k = 0; k < 8; ++k) {
      const Vec2 a = anchor_[k];
      if (m == 0 || a.x != poly[m - 1].x || a.y != poly[m - 1].y) poly[m++] = a;
    }
    while (m > 1 && poly[0].x == poly[m - 1].x && poly[0].y == poly[m - 1].y) --m;
    if (m >= 3) {
      bool inside = true;
      for (int k = 0; k < m; ++k) {
        const Vec2 a = poly[k];
        const Vec2 b = poly[(k + 1) % m];
        if (cross(b - a, p - a) < 0.0) {
          inside = false;
          break;
        }
      }
      if (inside) return;
    }
  }
  survivors_.push_back(p);
  if (survivors_.size() > 8192) {
    // Re-filter against the current anchors; hull vertices always survive.
    std::vector<Vec2> kept(std::begin(anchor_), std::end(anchor_));
    for (const Vec2& q : survivors_) {
      bool inside = true;
      for (int k = 0; k < 8; ++k) {
        const Vec2 a = anchor_[k];
        const Vec2 b = anchor_[(k + 1) % 8];
        const double c = cross(b - a, q - a);
        if (c < 0.0) {
          inside = false;
          break;
        }
      }
      if (!inside) kept.push_back(q);
    }
    survivors_ = std::move(kept);
  }
}

std::vector<Vec2> SupCollector::hull() const { return convex_hull(survivors_); }

namespace {

struct QuantileStats {
  double value = 0.0;
  double std_error = 0.0;
};

// Lower q quantile as the order statistic at 1-based index ceil(q n), with a
// spacing-based density estimate for the asymptotic standard error.
QuantileStats lower_quantile(std::vector<double>& sorted, double q) {
  std::sort(sorted.begin(), sorted.end());
  const long n = static_cast<long>(sorted.size());
  const long r = std::clamp<long>(static_cast<long>(std::ceil(q * n)), 1, n);
  QuantileStats out;
  out.value = sorted[static_cast<std::size_t>(r - 1)];
  const long m = std::max<long>(1, std::lround(0.5 * std::sqrt(static_cast<double>(n))));
  const long lo = std::max<long>(1, r - m);
  const long hi = std::min<long>(n, r + m);
  const double spacing = sorted[static_cast<std::size_t>(hi - 1)] -
                         sorted[static_cast<std::size_t>(lo - 1)];
  if (hi > lo && spacing > 0.0) {
    const double density = (static_cast<double>(hi - lo) / n) / spacing;
    out.std_error = std::sqrt(q * (1.0 - q) / n) / density;
  }
  return out;
}

}  // namespace

std::vector<EstimateWithError> estimate_cq_directions(
    const PathSimulator& sim, const std::vector<Vec2>& directions,
    double t_s_hours, double q_s, long n_paths, int threads) {
  if (n_paths < 100) throw std::invalid_argument("insufficient paths");
  if (!(q_s > 0.0 && q_s < 1.0)) throw std::invalid_argument("q_s must lie in (0,1)");
  if (!(t_s_hours > 0.0)) throw std::invalid_argument("t_s must be positive");
  const long n_steps = included_steps(t_s_hours, sim.dt_hours(),
                                      std::numeric_limits<long>::max());

  const std::size_t n_dirs = directions.size();
  std::vector<std::vector<double>> phi(n_dirs);
  for (auto& v : phi) v.resize(static_cast<std::size_t>(n_paths));

  parallel_for(n_paths, threads, [&](long begin, long end) {
    std::vector<Vec2> buf;
    SupCollector collector;
    for (long p = begin; p < end; ++p) {
      sim.sample_path(static_cast<std::uint64_t>(p), n_steps, buf);
      collector.reset();
      for (const Vec2& v : buf) collector.add(v);
      const std::vector<Vec2> hull = collector.hull();
      for (std::size_t d = 0; d < n_dirs; ++d) {
        phi[d][static_cast<std::size_t>(p)] =
            support_function(std::span<const Vec2>(hull), directions[d]);
      }
    }
  });

  std::vector<EstimateWithError> out(n_dirs);
  for (std::size_t d = 0; d < n_dirs; ++d) {
    const QuantileStats qs = lower_quantile(phi[d], q_s);
    out[d] = {qs.value, qs.std_error, n_paths, 0.0, false};
  }
  return out;
}

CqResult estimate_cq(const PathSimulator& sim, int n_dirs, double t_s_hours,
                     double q_s, long n_paths, int threads) {
  if (n_dirs < 3) throw std::invalid_argument("estimate_cq: need n_dirs >= 3");
  std::vector<Vec2> dirs(static_cast<std::size_t>(n_dirs));
  for (int i = 0; i < n_dirs; ++i) {
    const double a = kTwoPi * i / n_dirs;
    dirs[static_cast<std::size_t>(i)] = {std::cos(a), std::sin(a)};
  }
  std::vector<EstimateWithError> diag =
      estimate_cq_directions(sim, dirs, t_s_hours, q_s, n_paths, threads);
  std::vector<double> thresholds(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) thresholds[i] = diag[i].value;
  return {SupportGrid(std::move(thresholds)), std::move(diag)};
}

std::vector<double> sup_samples(const PathSimulator& sim, Vec2 direction,
                                double t_s_hours, long n_paths, int threads) {
  const long n_steps = included_steps(t_s_hours, sim.dt_hours(),
                                      std::numeric_limits<long>::max());
  std::vector<double> out(static_cast<std::size_t>(n_paths));
  parallel_for(n_paths, threads, [&](long begin, long end) {
    std::vector<Vec2> buf;
    for (long p = begin; p < end; ++p) {
      sim.sample_path(static_cast<std::uint64_t>(p), n_steps, buf);
      double best = -std::numeric_limits<double>::infinity();
      for (const Vec2& v : buf) best = std::max(best, dot(direction, v));
      out[static_cast<std::size_t>(p)] = best;
    }
  });
  return out;
}

namespace {

// Strictly increasing running-max records of one path's projection; the
// hitting time of {<u,v> >= b} is dt * (1 + first step whose record >= b),
// the end of the interval in which the exceedence occurs.
struct PathRecords {
  std::vector<double> values;
  std::vector<int> steps;
};

struct HitStats {
  double mean = 0.0;
  double sd = 0.0;
  double censored_frac = 0.0;
};

HitStats hitting_stats(const std::vector<PathRecords>& records, double b,
                       double dt, double cap_time) {
  double sum = 0.0, sum2 = 0.0;
  long censored = 0;
  for (const PathRecords& rec : records) {
    double tau;
    const auto it = std::lower_bound(rec.values.begin(), rec.values.end(), b);
    if (it == rec.values.end()) {
      tau = cap_time;
      ++censored;
    } else {
      tau = dt * (1.0 + rec.steps[static_cast<std::size_t>(it - rec.values.begin())]);
    }
    sum += tau;
    sum2 += tau * tau;
  }
  const double n = static_cast<double>(records.size());
  HitStats st;
  st.mean = sum / n;
  st.sd = std::sqrt(std::max(0.0, sum2 / n - st.mean * st.mean));
  st.censored_frac = static_cast<double>(censored) / n;
  return st;
}

}  // namespace

EstimateWithError estimate_ct(const PathSimulator& sim, const UnitVector& u,
                              double t_r_hours, long n_paths,
                              double horizon_cap_hours, int threads) {
  if (n_paths < 100) throw std::invalid_argument("insufficient paths");
  if (!(t_r_hours > 0.0)) throw std::invalid_argument("t_r must be positive");
  if (horizon_cap_hours < t_r_hours) {
    throw std::invalid_argument("estimate_ct: horizon_cap must cover t_r");
  }
  const double dt = sim.dt_hours();
  const long n_cap = included_steps(horizon_cap_hours, dt,
                                    std::numeric_limits<long>::max());
  const double cap_time = n_cap * dt;
  const Vec2 uv = u.vec();

  std::vector<PathRecords> records(static_cast<std::size_t>(n_paths));
  parallel_for(n_paths, threads, [&](long begin, long end) {
    std::vector<Vec2> buf;
    for (long p = begin; p < end; ++p) {
      sim.sample_path(static_cast<std::uint64_t>(p), n_cap, buf);
      PathRecords& rec = records[static_cast<std::size_t>(p)];
      double running = -std::numeric_limits<double>::infinity();
      for (long k = 0; k < n_cap; ++k) {
        const double proj = dot(uv, buf[static_cast<std::size_t>(k)]);
        if (proj > running) {
          running = proj;
          rec.values.push_back(proj);
          rec.steps.push_back(static_cast<int>(k));
        }
      }
    }
  });

  auto mean_at = [&](double b) { return hitting_stats(records, b, dt, cap_time).mean; };

  EstimateWithError out;
  out.n_paths = n_paths;

  // Bracket: start at the marginal median projection, expand geometrically.
  double b_lo = sim.median_projection(uv);
  double step = std::max(1.0, std::abs(b_lo));
  if (mean_at(b_lo) >= t_r_hours) {
    bool found = false;
    double s = step;
    for (int i = 0; i < 60; ++i) {
      if (mean_at(b_lo - s) < t_r_hours) {
        b_lo -= s;
        found = true;
        break;
      }
      s *= 2.0;
    }
    if (!found) {
      // Target at or below one step: the exact threshold recedes to -inf.
      const HitStats st = hitting_stats(records, b_lo, dt, cap_time);
      out.value = b_lo;
      out.std_error = 0.0;
      out.censored_frac = st.censored_frac;
      out.warning = true;
      return out;
    }
  }
  double b_hi = b_lo + step;
  {
    int doublings = 0;
    while (mean_at(b_hi) < t_r_hours) {
      step *= 2.0;
      b_hi += step;
      if (++doublings > 60) throw std::runtime_error("target beyond horizon");
    }
  }

  const double width0 = b_hi - b_lo;
  while (b_hi - b_lo > 1e-3 * width0) {
    const double mid = 0.5 * (b_lo + b_hi);
    (mean_at(mid) < t_r_hours ? b_lo : b_hi) = mid;
  }
  const double b_star = 0.5 * (b_lo + b_hi);

  const HitStats st = hitting_stats(records, b_star, dt, cap_time);
  out.value = b_star;
  out.censored_frac = st.censored_frac;
  out.warning = st.censored_frac > 0.5;
  const double h = std::max(5e-3 * width0, 1e-9 * std::max(1.0, std::abs(b_star)));
  const double slope =
      (mean_at(b_star + h) - mean_at(b_star - h)) / (2.0 * h);
  const double se_mean = st.sd / std::sqrt(static_cast<double>(n_paths));
  out.std_error = slope > 0.0 ? se_mean / slope
                              : std::numeric_limits<double>::infinity();
  return out;
}

IidEquivalences iid_equivalences(double p_e, double dt_hours) {
  if (!(p_e > 0.0 && p_e < 1.0)) {
    throw std::domain_error("iid_equivalences: p_e must lie in (0,1)");
  }
  IidEquivalences eq;
  eq.t_r_hours = dt_hours / p_e;
  eq.t_s_hours = dt_hours / p_e;
  eq.q_s = std::exp(std::log1p(-p_e) / p_e);
  return eq;
}

double gaussian_ce(double p_e) {
  if (!(p_e > 0.0 && p_e < 1.0)) {
    throw std::domain_error("gaussian_ce: p_e must lie in (0,1)");
  }
  // Reflected form keeps full precision in the upper tail.
  return -normal_quantile(p_e);
}

}  // namespace envc
