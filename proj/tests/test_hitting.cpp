#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "envc/hitting.hpp"
#include "envc/ou.hpp"

using namespace envc;

TEST_CASE("sup projection on small paths") {
  PathSample p{TimeGrid(1.0, 3), {{1, 0}, {0, 2}, {-1, 1}}};
  CHECK(sup_projection(p, UnitVector(kPi / 2), 3.0) == doctest::Approx(2.0));
  CHECK(sup_projection(p, UnitVector(0.0), 3.0) == doctest::Approx(1.0));
  PathSample c{TimeGrid(1.0, 5), std::vector<Vec2>(5, Vec2{0.6, -0.8})};
  for (double a = 0.0; a < kTwoPi; a += 0.7) {
    CHECK(sup_projection(c, UnitVector(a), 5.0) ==
          doctest::Approx(dot(UnitVector(a).vec(), {0.6, -0.8})));
  }
  CHECK_THROWS(sup_projection(p, UnitVector(0.0), 3.5));
}

TEST_CASE("sup projection is pathwise monotone in the horizon") {
  const PathSample p = simulate_iid_gaussian(TimeGrid(1.0, 200), 5);
  for (double t = 1.0; t <= 200.0; t += 1.0) {
    CHECK(sup_projection(p, UnitVector(0.0), t) >=
          sup_projection(p, UnitVector(0.0), t - 1.0 + 1e-12) - 1e-15);
  }
}

TEST_CASE("sup collector reproduces brute-force supports exactly") {
  std::mt19937 rng(321);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> drift(-0.01, 0.01);
  for (int trial = 0; trial < 20; ++trial) {
    SupCollector collector;
    std::vector<Vec2> pts(3000);
    const double dx = drift(rng), dy = drift(rng);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      pts[i] = {g(rng) + dx * static_cast<double>(i), g(rng) + dy * static_cast<double>(i)};
      collector.add(pts[i]);
    }
    const std::vector<Vec2> hull = collector.hull();
    for (int d = 0; d < 32; ++d) {
      const Vec2 u = UnitVector(kTwoPi * d / 32 + 0.01).vec();
      double brute = -1e300;
      for (const Vec2& p : pts) brute = std::max(brute, dot(u, p));
      CHECK(support_function(std::span<const Vec2>(hull), u) ==
            doctest::Approx(brute).epsilon(1e-13));
    }
  }
}

TEST_CASE("estimate_cq recovers the closed-form iid gaussian threshold") {
  IidGaussianSimulator sim(1.0, 11);
  const IidEquivalences eq = iid_equivalences(0.05, 1.0);
  CHECK(eq.t_s_hours == doctest::Approx(20.0));
  // Oracle: P(max of 20 iid normals <= b) = Phi(b)^20, so the q_s quantile of
  // phi sits at Phi^-1(0.95).
  const auto est = estimate_cq_directions(sim, {{1.0, 0.0}}, eq.t_s_hours, eq.q_s,
                                          20000, 2);
  const double truth = gaussian_ce(0.05);
  CHECK(std::abs(est[0].value - truth) < 4.0 * est[0].std_error);
  CHECK(est[0].std_error > 0.0);
  CHECK(est[0].std_error < 0.02);
}

TEST_CASE("estimate_cq boundary conventions") {
  IidGaussianSimulator sim(1.0, 3);
  // q -> 1: the estimate is the largest sample.
  const auto top = estimate_cq_directions(sim, {{1.0, 0.0}}, 10.0, 0.9999, 500, 1);
  const std::vector<double> phis = sup_samples(sim, {1.0, 0.0}, 10.0, 500, 1);
  CHECK(top[0].value == *std::max_element(phis.begin(), phis.end()));

  // Degenerate simulator: the quantile is the projection, exactly, at any q.
  ConstantSimulator cs({1.5, -2.0}, 1.0, 9);
  for (double q : {0.1, 0.5, 0.9}) {
    const auto est = estimate_cq_directions(cs, {{0.0, 1.0}}, 5.0, q, 200, 1);
    CHECK(est[0].value == -2.0);
    CHECK(est[0].std_error == 0.0);
  }

  CHECK_THROWS_WITH((void)estimate_cq_directions(sim, {{1.0, 0.0}}, 10.0, 0.5, 50, 1),
                    "insufficient paths");
}

TEST_CASE("estimate_ct recovers the geometric-hitting closed form") {
  IidGaussianSimulator sim(1.0, 17);
  const auto est = estimate_ct(sim, UnitVector(0.0), 20.0, 20000, 400.0, 2);
  const double truth = gaussian_ce(0.05);
  CHECK(std::abs(est.value - truth) < 4.0 * est.std_error);
  CHECK(est.censored_frac < 1e-3);
  CHECK_FALSE(est.warning);
}

TEST_CASE("estimate_ct boundary: one-step target returns the bracket edge") {
  IidGaussianSimulator sim(1.0, 23);
  const auto est = estimate_ct(sim, UnitVector(0.0), 1.0, 1000, 100.0, 1);
  CHECK(est.warning);
  CHECK(est.value <= 0.0);  // at or below the median projection
}

TEST_CASE("estimate_ct against the analytic OU inverse") {
  const double theta = 1.0;
  const double t_r = ou_mean_exit_time(1.0, theta);
  OuSimulator sim(2e-4, theta, 5);
  const auto est = estimate_ct(sim, UnitVector(0.0), t_r, 1500, 12.0 * t_r, 2);
  CHECK(std::abs(est.value - 1.0) < 3.0 * est.std_error);
}

TEST_CASE("iid geometric oracle for mean and survival probability") {
  const double p_e = 0.05;
  const double b = gaussian_ce(p_e);
  IidGaussianSimulator sim(1.0, 131);

  // mean hitting time within 4 standard errors of dt/p
  const long n = 20000;
  std::vector<double> taus(n);
  long survived = 0;
  std::vector<Vec2> buf;
  const long horizon = 400;
  for (long i = 0; i < n; ++i) {
    sim.sample_path(static_cast<std::uint64_t>(i), horizon, buf);
    long hit = horizon;
    for (long k = 0; k < horizon; ++k) {
      if (buf[static_cast<std::size_t>(k)].x >= b) {
        hit = k;
        break;
      }
    }
    taus[static_cast<std::size_t>(i)] = static_cast<double>(hit + 1);
    survived += (hit + 1) > 20;  // tau > t_s = dt/p
  }
  double mean = 0.0, var = 0.0;
  for (double t : taus) mean += t;
  mean /= static_cast<double>(n);
  for (double t : taus) var += (t - mean) * (t - mean);
  var /= static_cast<double>(n);
  const double se_mean = std::sqrt(var / n);
  CHECK(std::abs(mean - 1.0 / p_e) < 4.0 * se_mean);

  const double q = std::exp(std::log1p(-p_e) / p_e);  // (1-p)^(1/p)
  const double frac = static_cast<double>(survived) / n;
  const double se_frac = std::sqrt(q * (1.0 - q) / n);
  CHECK(std::abs(frac - q) < 4.0 * se_frac);
}

TEST_CASE("iid equivalences") {
  const IidEquivalences a = iid_equivalences(0.5, 1.0);
  CHECK(a.t_r_hours == doctest::Approx(2.0));
  CHECK(a.t_s_hours == doctest::Approx(2.0));
  CHECK(a.q_s == doctest::Approx(0.25).epsilon(1e-14));

  CHECK(iid_equivalences(1e-9, 1.0).q_s ==
        doctest::Approx(std::exp(-1.0)).epsilon(1e-8));

  const double p_e = 3.0 / (200.0 * 8760.0);
  CHECK(p_e == doctest::Approx(1.7123e-6).epsilon(1e-4));
  CHECK(iid_equivalences(p_e, 3.0).t_r_hours == doctest::Approx(1752000.0));
}

TEST_CASE("gaussian C_e") {
  CHECK(gaussian_ce(0.5) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(gaussian_ce(0.05) == doctest::Approx(1.6448536269514722).epsilon(1e-12));
  const double x = gaussian_ce(1.7123e-6);
  CHECK(std::abs(x - 4.645) < 0.005);
  CHECK(normal_sf(x) == doctest::Approx(1.7123e-6).epsilon(1e-9));
}

TEST_CASE("empirical survival is monotone in the threshold") {
  IidGaussianSimulator sim(1.0, 41);
  const std::vector<double> phis = sup_samples(sim, {1.0, 0.0}, 50.0, 2000, 2);
  // fraction{phi <= b} = 1 - F_hat^u_b(t_s) is non-decreasing in b
  double last = -1.0;
  for (double b = -1.0; b <= 4.0; b += 0.25) {
    double frac = 0.0;
    for (double phi : phis) frac += (phi <= b);
    CHECK(frac >= last);
    last = frac;
  }
}

TEST_CASE("estimate_cq is monotone in q_s and t_s") {
  IidGaussianSimulator sim(1.0, 53);
  double prev = -1e300;
  for (double q : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    const auto est = estimate_cq_directions(sim, {{1.0, 0.0}}, 30.0, q, 2000, 2);
    CHECK(est[0].value >= prev);
    prev = est[0].value;
  }
  prev = -1e300;
  for (double t : {5.0, 10.0, 20.0, 40.0}) {
    const auto est = estimate_cq_directions(sim, {{1.0, 0.0}}, t, 0.5, 2000, 2);
    CHECK(est[0].value >= prev);  // same paths, pathwise-monotone sup
    prev = est[0].value;
  }
}

TEST_CASE("half-space nesting holds pathwise") {
  const PathSample p = simulate_iid_gaussian(TimeGrid(1.0, 500), 67);
  auto hit_index = [&](double b) {
    for (std::size_t k = 0; k < p.values.size(); ++k) {
      if (p.values[k].x >= b) return static_cast<long>(k);
    }
    return static_cast<long>(p.values.size());
  };
  for (double b = -2.0; b < 3.0; b += 0.1) {
    CHECK(hit_index(b) <= hit_index(b + 0.1));
  }
}

TEST_CASE("estimate_ct is monotone in t_r") {
  IidGaussianSimulator sim(1.0, 71);
  double prev = -1e300;
  for (double t_r : {5.0, 10.0, 20.0, 40.0, 80.0}) {
    const auto est = estimate_ct(sim, UnitVector(0.0), t_r, 2000, 1600.0, 2);
    CHECK(est.value >= prev - 1e-9);
    prev = est.value;
  }
}

TEST_CASE("OU symmetry: thresholds agree on opposite directions") {
  OuSimulator sim(0.5, 1.0, 83);
  const auto est = estimate_cq_directions(sim, {{1.0, 0.0}, {-1.0, 0.0}}, 200.0,
                                          0.5, 4000, 2);
  const double joint = std::hypot(est[0].std_error, est[1].std_error);
  CHECK(std::abs(est[0].value - est[1].value) < 4.0 * joint);
}
