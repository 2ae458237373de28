#include "envc/sea_state.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace envc {

const char* to_string(TrendMode mode) {
  switch (mode) {
    case TrendMode::kFrozenEnd: return "frozen-end";
    case TrendMode::kTrueTrend: return "true";
    case TrendMode::kFrozenStart: return "frozen-start";
  }
  return "?";
}

TrendMode trend_mode_from_string(const std::string& name) {
  if (name == "frozen-end" || name == "frozen_end") return TrendMode::kFrozenEnd;
  if (name == "true" || name == "true-trend" || name == "true_trend") {
    return TrendMode::kTrueTrend;
  }
  if (name == "frozen-start" || name == "frozen_start") return TrendMode::kFrozenStart;
  throw std::invalid_argument("unknown trend mode: " + name);
}

double SeaStateModel::h_quantile(double t_hours, double q) const {
  if (q < 0.0 || q >= 1.0) {
    throw std::domain_error("h_quantile: q must lie in [0,1)");
  }
  const double lambda = trend(t_hours) * log_l(phase(t_hours));
  const double k = shape_k(t_hours);
  return loc_m + lambda * std::pow(-std::log1p(-q), 1.0 / k);
}

void SeaStateModel::validate(double t0_hours, double horizon_hours, TrendMode mode) const {
  if (!(year_hours > 0.0)) throw std::invalid_argument("sea state: year_hours <= 0");
  if (!(k_ratio > 0.0)) throw std::invalid_argument("sea state: shape ratio <= 0");
  const int probes = 512;
  for (int i = 0; i <= probes; ++i) {
    const double t = t0_hours + (horizon_hours - t0_hours) * i / probes;
    if (!(scale_lambda(t, mode, horizon_hours) > 0.0)) {
      throw std::runtime_error("trend drives scale non-positive");
    }
    if (!(shape_k(t) > 0.0)) throw std::runtime_error("sea state: shape non-positive");
    if (!(log_s(phase(t)) > 0.0)) throw std::runtime_error("sea state: sigma non-positive");
  }
}

namespace {

using nlohmann::json;

json fourier_to_json(const PeriodicFourier& f) {
  return json{{"a0", f.a0}, {"a", f.a}, {"b", f.b}, {"log_domain", f.log_domain}};
}

PeriodicFourier fourier_from_json(const json& j) {
  PeriodicFourier f;
  f.a0 = j.at("a0").get<double>();
  f.a = j.at("a").get<std::vector<double>>();
  f.b = j.at("b").get<std::vector<double>>();
  f.log_domain = j.value("log_domain", false);
  if (f.a.size() != f.b.size()) {
    throw std::runtime_error("model json: cosine/sine coefficient count mismatch");
  }
  return f;
}

json pl_to_json(const PiecewiseLinear& f) {
  return json{{"h", f.knots}, {"v", f.values}};
}

PiecewiseLinear pl_from_json(const json& j) {
  PiecewiseLinear f;
  f.knots = j.at("h").get<std::vector<double>>();
  f.values = j.at("v").get<std::vector<double>>();
  if (f.knots.size() != f.values.size() || f.knots.empty()) {
    throw std::runtime_error("model json: bad piecewise-linear table");
  }
  for (std::size_t i = 1; i < f.knots.size(); ++i) {
    if (!(f.knots[i] > f.knots[i - 1])) {
      throw std::runtime_error("model json: knots not increasing");
    }
  }
  return f;
}

}  // namespace

std::string sea_state_to_json(const SeaStateModel& m) {
  json j;
  j["year_hours"] = m.year_hours;
  j["weibull"] = {{"loc_m", m.loc_m},
                  {"c1_m", m.c1_m},
                  {"c2_m_per_year", m.c2_m_per_year},
                  {"k_ratio", m.k_ratio},
                  {"k_prime", fourier_to_json(m.k_prime)},
                  {"log_l", fourier_to_json(m.log_l)}};
  j["lognormal"] = {{"m", fourier_to_json(m.m)},
                    {"f_mu", pl_to_json(m.f_mu)},
                    {"log_s", fourier_to_json(m.log_s)},
                    {"log_f_sigma2", pl_to_json(m.log_f_sigma2)}};
  return j.dump(2);
}

SeaStateModel sea_state_from_json(const std::string& text) {
  json j = json::parse(text);
  SeaStateModel m;
  m.year_hours = j.value("year_hours", kDefaultYearHours);
  const json& w = j.at("weibull");
  m.loc_m = w.at("loc_m").get<double>();
  m.c1_m = w.at("c1_m").get<double>();
  m.c2_m_per_year = w.at("c2_m_per_year").get<double>();
  m.k_ratio = w.at("k_ratio").get<double>();
  m.k_prime = fourier_from_json(w.at("k_prime"));
  m.log_l = fourier_from_json(w.at("log_l"));
  m.log_l.log_domain = true;
  const json& p = j.at("lognormal");
  m.m = fourier_from_json(p.at("m"));
  m.f_mu = pl_from_json(p.at("f_mu"));
  m.log_s = fourier_from_json(p.at("log_s"));
  m.log_s.log_domain = true;
  m.log_f_sigma2 = pl_from_json(p.at("log_f_sigma2"));
  return m;
}

void save_sea_state(const SeaStateModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << sea_state_to_json(model) << "\n";
}

SeaStateModel load_sea_state(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model json: " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return sea_state_from_json(ss.str());
}

SeaStateModel demo_model() {
  SeaStateModel m;
  m.loc_m = 0.37;
  m.c1_m = 2.5;
  m.c2_m_per_year = 4.0e-3;

  m.log_l.log_domain = true;
  m.log_l.a0 = 0.0;
  m.log_l.a = {0.10, 0.0, 0.0};
  m.log_l.b = {0.04, 0.0, 0.0};

  m.k_ratio = 1.25;
  m.k_prime.a0 = 1.0;
  m.k_prime.a = {0.08, 0.0, 0.0};
  m.k_prime.b = {-0.03, 0.0, 0.0};

  m.m.a0 = 1.90;
  m.m.a = {0.05, 0.0, 0.0};
  m.m.b = {0.02, 0.0, 0.0};

  // Gentle rise of the mean log-period with wave height, mean-zero in h.
  m.f_mu.knots = {0.4, 2.0, 4.0, 7.0, 12.0};
  m.f_mu.values = {-0.12, -0.04, 0.03, 0.10, 0.18};

  m.log_s.log_domain = true;
  m.log_s.a0 = std::log(0.17);
  m.log_s.a = {0.05, 0.0, 0.0};
  m.log_s.b = {0.0, 0.0, 0.0};

  m.log_f_sigma2.knots = {0.4, 2.0, 4.0, 7.0, 12.0};
  m.log_f_sigma2.values = {0.20, 0.08, -0.05, -0.15, -0.25};

  m.year_hours = kDefaultYearHours;
  return m;
}

}  // namespace envc
