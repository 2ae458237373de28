// Command-line front end: calibration, simulation, contour construction and
// the OU-versus-iid radius study, wired for reproducible scripted runs.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "envc/calibration.hpp"
#include "envc/contour.hpp"
#include "envc/csv.hpp"
#include "envc/ou.hpp"
#include "envc/svg.hpp"

namespace {

using namespace envc;

double parse_duration_hours(const std::string& text, double year_hours) {
  if (text.empty()) throw CLI::ValidationError("duration", "empty duration");
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (end == text.c_str()) {
    throw CLI::ValidationError("duration", "cannot parse '" + text + "'");
  }
  std::string suffix(end);
  if (suffix.empty() || suffix == "h") return v;
  if (suffix == "d") return v * 24.0;
  if (suffix == "y") return v * year_hours;
  throw CLI::ValidationError("duration", "unknown unit '" + suffix + "' (use h, d, y)");
}

void write_config_echo(const CLI::App* sub, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << sub->config_to_str(true, false);
  std::cout << "config echo: " << path << "\n";
}

struct ContourFiles {
  std::string grid, estimates, polygon, diag;
};

ContourFiles write_contour_result(const ContourResult& res, const std::string& prefix) {
  ContourFiles files{prefix + "_grid.csv", prefix + "_estimates.csv",
                     prefix + "_polygon.csv", prefix + "_diagnostics.json"};
  write_support_grid_csv(res.grid, files.grid);
  write_estimates_csv(res.grid, res.diagnostics, files.estimates);
  if (res.polygon) {
    write_polygon_csv(*res.polygon, files.polygon);
  } else {
    std::ofstream out(files.polygon);
    out << "x,y\n";
  }
  nlohmann::json diag;
  diag["construction"] = res.construction == Construction::kHalfspaceIntersection
                             ? "halfspace-intersection"
                             : "convex-hull";
  diag["proper"] = res.proper;
  diag["degenerate"] = res.degenerate;
  diag["properness_tol"] = res.properness_tol;
  diag["max_support_violation"] = res.max_support_violation;
  diag["n_dirs"] = res.grid.n_dirs();
  double max_se = 0.0, max_cens = 0.0;
  for (const auto& d : res.diagnostics) {
    if (std::isfinite(d.std_error)) max_se = std::max(max_se, d.std_error);
    max_cens = std::max(max_cens, d.censored_frac);
  }
  diag["max_std_error"] = max_se;
  diag["max_censored_frac"] = max_cens;
  std::ofstream out(files.diag);
  out << diag.dump(2) << "\n";
  return files;
}

int cmd_synth(const std::string& model_path, const std::string& out_csv, double years,
              std::uint64_t seed, double year_hours, const CLI::App* sub) {
  SeaStateModel model =
      model_path.empty() ? demo_model() : load_sea_state(model_path);
  model.year_hours = year_hours;
  const MetOceanSeries series = generate_synthetic(model, years, seed);
  write_metocean_csv(series, out_csv);
  std::cout << "wrote " << series.rows.size() << " hourly rows to " << out_csv << "\n";
  write_config_echo(sub, out_csv + ".config.toml");
  return 0;
}

int cmd_calibrate(const std::string& input_csv, const std::string& out_json,
                  int harmonics, int knots, double year_hours, const CLI::App* sub) {
  const MetOceanSeries series = read_metocean_csv(input_csv);
  if (series.skipped_rows > 0) {
    std::cout << "warning: skipped " << series.skipped_rows << " malformed rows\n";
  }
  CalibrationOptions opt;
  opt.n_harmonics = harmonics;
  opt.f_knots = knots;
  opt.year_hours = year_hours;
  const WeibullFitResult w = fit_weibull(series, opt);
  const LognormalFitResult p = fit_lognormal(series, w, opt);
  save_sea_state(assemble_model(w, p, year_hours), out_json);

  std::printf("fit summary\n");
  std::printf("  rows used            %ld (skipped %ld)\n",
              static_cast<long>(series.rows.size()), series.skipped_rows);
  std::printf("  location theta       %.4g m\n", w.loc_m);
  std::printf("  trend c1             %.6g m\n", w.c1_m);
  std::printf("  trend c2             %.6g m/y\n", w.c2_m_per_year);
  std::printf("  shape ratio k/k'     %.6g\n", w.k_ratio);
  std::printf("  residual variance    %.9f\n", p.residual_variance);
  std::printf("  model json           %s\n", out_json.c_str());
  write_config_echo(sub, out_json + ".config.toml");
  return 0;
}

int cmd_simulate(const std::string& model_path, const std::string& out_csv, long steps,
                 const std::string& dt_text, const std::string& trend,
                 std::uint64_t seed, double year_hours, const CLI::App* sub) {
  SeaStateModel model =
      model_path.empty() ? demo_model() : load_sea_state(model_path);
  model.year_hours = year_hours;
  const double dt = parse_duration_hours(dt_text, year_hours);
  const TimeGrid grid(dt, steps);
  const PathSample path =
      simulate_seastate(model, grid, trend_mode_from_string(trend), seed);
  std::ofstream out(out_csv);
  if (!out) throw std::runtime_error("cannot open for writing: " + out_csv);
  out << "t_hours,p_s,h_m\n";
  for (std::size_t k = 0; k < path.values.size(); ++k) {
    out << format_double(path.grid.step_time(static_cast<long>(k))) << ','
        << format_double(path.values[k].x) << ',' << format_double(path.values[k].y)
        << '\n';
  }
  std::cout << "wrote " << steps << " steps to " << out_csv << "\n";
  write_config_echo(sub, out_csv + ".config.toml");
  return 0;
}

// Assembles a contour from an already-estimated grid CSV; no simulation.
int cmd_contour_from_grid(const std::string& grid_csv, const std::string& prefix,
                          double tol, bool svg, const CLI::App* sub) {
  const SupportGrid grid = read_support_grid_csv(grid_csv);
  std::vector<EstimateWithError> diag(static_cast<std::size_t>(grid.n_dirs()));
  for (auto& d : diag) d.n_paths = 0;
  ContourResult res{grid, std::move(diag), std::nullopt,
                    Construction::kHalfspaceIntersection, false, false, 0.0, 0.0};
  const double use_tol = tol > 0.0 ? tol : 1e-6 * grid.scale();
  res.properness_tol = use_tol;
  if (is_proper(grid, use_tol)) {
    res.proper = true;
    res.polygon = halfspace_intersection(grid);
  } else {
    res.construction = Construction::kConvexHull;
    try {
      res.polygon = hull_contour(grid);
      for (int i = 0; i < grid.n_dirs(); ++i) {
        const double s = support_function(*res.polygon, grid.direction(i));
        res.max_support_violation =
            std::max(res.max_support_violation, grid.threshold(i) - s);
      }
    } catch (const std::runtime_error&) {
      res.degenerate = true;
    }
  }
  const auto files = write_contour_result(res, prefix);
  std::cout << "construction: "
            << (res.proper ? "halfspace-intersection (proper)" : "convex-hull (valid)")
            << (res.degenerate ? " [degenerate]" : "") << "\n"
            << "polygon " << files.polygon << "\n";
  if (svg && res.polygon) {
    write_contour_svg({{&*res.polygon, "contour", "black"}}, prefix + ".svg");
  }
  write_config_echo(sub, prefix + "_config.toml");
  return 0;
}

int cmd_contour(const std::string& model_path, const std::string& prefix,
                const std::string& ts_text, double q_s, const std::string& tr_text,
                const std::string& dt_text, long n_paths, int n_dirs,
                std::uint64_t seed, const std::string& trend, double tol,
                int threads, bool three_cases, bool svg, double year_hours,
                const CLI::App* sub) {
  SeaStateModel model =
      model_path.empty() ? demo_model() : load_sea_state(model_path);
  model.year_hours = year_hours;
  const double dt = parse_duration_hours(dt_text, year_hours);

  ContourTarget target = ContourTarget::quantile(1.0, 0.5);
  if (!tr_text.empty()) {
    target = ContourTarget::return_period(parse_duration_hours(tr_text, year_hours));
  } else {
    target = ContourTarget::quantile(parse_duration_hours(ts_text, year_hours), q_s);
  }

  BuildOptions opt;
  opt.n_dirs = n_dirs;
  opt.n_paths = n_paths;
  opt.threads = threads;
  opt.properness_tol = tol;

  if (three_cases) {
    if (target.kind != ContourTarget::Kind::kQuantile) {
      throw std::invalid_argument("--three-cases needs a quantile target");
    }
    const ThreeCaseResult r = three_case_experiment(model, dt, target, seed, opt);
    const char* names[3] = {"case1_frozen_end", "case2_true", "case3_frozen_start"};
    const char* colors[3] = {"blue", "black", "red"};
    std::vector<SvgCurve> curves;
    for (int c = 0; c < 3; ++c) {
      const auto files = write_contour_result(r.cases[static_cast<std::size_t>(c)],
                                              prefix + "_" + names[c]);
      std::cout << names[c] << ": grid " << files.grid << ", polygon "
                << files.polygon << "\n";
      if (r.cases[static_cast<std::size_t>(c)].polygon) {
        curves.push_back(
            {&*r.cases[static_cast<std::size_t>(c)].polygon, names[c], colors[c]});
      }
    }
    const std::string gaps_path = prefix + "_gaps.csv";
    std::ofstream gaps(gaps_path);
    gaps << "angle_rad,gap_end_minus_start,gap_end_minus_true,gap_true_minus_start\n";
    for (int i = 0; i < n_dirs; ++i) {
      gaps << format_double(kTwoPi * i / n_dirs) << ','
           << format_double(r.gap_end_minus_start[static_cast<std::size_t>(i)]) << ','
           << format_double(r.gap_end_minus_true[static_cast<std::size_t>(i)]) << ','
           << format_double(r.gap_true_minus_start[static_cast<std::size_t>(i)])
           << '\n';
    }
    gaps.close();
    const int im = r.argmax_gap_direction;
    std::printf("max C_Q gap (end - start): %.4f at angle %.4f rad\n",
                r.gap_end_minus_start[static_cast<std::size_t>(im)],
                kTwoPi * im / n_dirs);
    if (svg && !curves.empty()) write_contour_svg(curves, prefix + ".svg");
    write_config_echo(sub, prefix + "_config.toml");
    return 0;
  }

  SeaStateSimulator sim(model, dt,
                        target.kind == ContourTarget::Kind::kQuantile
                            ? target.t_s_hours
                            : 20.0 * target.t_r_hours,
                        trend_mode_from_string(trend), seed);
  const ContourResult res = build_contour(sim, target, opt);
  const auto files = write_contour_result(res, prefix);
  std::cout << "construction: "
            << (res.construction == Construction::kHalfspaceIntersection
                    ? "halfspace-intersection (proper)"
                    : "convex-hull (valid)")
            << (res.degenerate ? " [degenerate]" : "") << "\n"
            << "grid " << files.grid << "\npolygon " << files.polygon << "\n";
  if (svg && res.polygon) {
    write_contour_svg({{&*res.polygon, "contour", "black"}}, prefix + ".svg");
  }
  write_config_echo(sub, prefix + "_config.toml");
  return 0;
}

int cmd_ou_study(double theta, const std::string& dt_text, const std::string& tr_min,
                 const std::string& tr_max, int points, const std::string& out_csv,
                 double year_hours, const CLI::App* sub) {
  const double dt = parse_duration_hours(dt_text, year_hours);
  const double lo = parse_duration_hours(tr_min, year_hours);
  const double hi = parse_duration_hours(tr_max, year_hours);
  if (!(hi > lo) || points < 2) {
    throw std::invalid_argument("ou-study: need tr-max > tr-min and points >= 2");
  }
  std::ofstream out(out_csv);
  if (!out) throw std::runtime_error("cannot open for writing: " + out_csv);
  out << "t_r_hours,t_r_years,radius_ou,radius_iid\n";
  for (int i = 0; i < points; ++i) {
    const double t_r = lo * std::pow(hi / lo, static_cast<double>(i) / (points - 1));
    const double r_ou = ou_ct_radius(t_r, theta);
    const double r_iid = gaussian_ce(dt / t_r);
    out << format_double(t_r) << ',' << format_double(t_r / year_hours) << ','
        << format_double(r_ou) << ',' << format_double(r_iid) << '\n';
  }
  out.close();
  try {
    const OuIidCrossing cr = ou_iid_crossing(theta, dt);
    std::printf("crossing: R = %.4f, exact t_r* = %.6g h (%.1f y), "
                "approx t_r* = %.6g h (%.1f y)\n",
                cr.radius, cr.t_r_exact, cr.t_r_exact / year_hours, cr.t_r_approx,
                cr.t_r_approx / year_hours);
  } catch (const std::runtime_error&) {
    std::printf("crossing: none in radius bracket (0, 40]\n");
  }
  std::cout << "wrote " << points << " rows to " << out_csv << "\n";
  write_config_echo(sub, out_csv + ".config.toml");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convex environmental contours for non-stationary processes"};
  app.require_subcommand(1);
  app.fallthrough();  // accept --config / --year-hours after the subcommand

  double year_hours = kDefaultYearHours;
  app.add_option("--year-hours", year_hours, "Hours per year for y suffixes")
      ->capture_default_str();
  app.set_config("--config", "", "Load options from the echo of a previous run");

  auto* synth = app.add_subcommand("synth", "Generate a synthetic hourly metocean CSV");
  std::string synth_model, synth_out = "synthetic.csv";
  double synth_years = 60.0;
  std::uint64_t synth_seed = 1;
  synth->add_option("--model", synth_model, "Model JSON (default: built-in demo)");
  synth->add_option("-o,--output", synth_out, "Output CSV")->capture_default_str();
  synth->add_option("--years", synth_years, "Record length in years")->capture_default_str();
  synth->add_option("--seed", synth_seed, "Master seed")->capture_default_str();

  auto* cal = app.add_subcommand("calibrate", "Fit the sea-state model from a CSV");
  std::string cal_in, cal_out = "model.json";
  int cal_harmonics = 3, cal_knots = 21;
  cal->add_option("input", cal_in, "Input CSV (t_hours,hs_m,tz_s)")->required();
  cal->add_option("-o,--output", cal_out, "Output model JSON")->capture_default_str();
  cal->add_option("--harmonics", cal_harmonics, "Fourier harmonics")->capture_default_str();
  cal->add_option("--knots", cal_knots, "Knots for wave-height smooths")->capture_default_str();

  auto* simc = app.add_subcommand("simulate", "Sample one path of the model");
  std::string sim_model, sim_out = "path.csv", sim_dt = "3h", sim_trend = "true";
  long sim_steps = 1000;
  std::uint64_t sim_seed = 1;
  simc->add_option("--model", sim_model, "Model JSON (default: built-in demo)");
  simc->add_option("-o,--output", sim_out, "Output CSV")->capture_default_str();
  simc->add_option("--steps", sim_steps, "Number of steps")->capture_default_str();
  simc->add_option("--dt", sim_dt, "Step length (h/d/y suffix)")->capture_default_str();
  simc->add_option("--trend-mode", sim_trend, "frozen-end | true | frozen-start")
      ->capture_default_str();
  simc->add_option("--seed", sim_seed, "Master seed")->capture_default_str();

  auto* con = app.add_subcommand("contour", "Estimate C and build the contour");
  std::string con_model, con_prefix = "contour", con_ts = "50y", con_tr, con_dt = "3h",
              con_trend = "true";
  double con_qs = 0.36787944117144233, con_tol = -1.0;
  long con_paths = 10000;
  int con_dirs = 180, con_threads = 0;
  std::uint64_t con_seed = 1;
  bool con_three = false, con_svg = false;
  std::string con_grid;
  con->add_option("--model", con_model, "Model JSON (default: built-in demo)");
  con->add_option("--grid", con_grid, "Assemble from a stored grid CSV (no simulation)");
  con->add_option("-o,--output", con_prefix, "Output file prefix")->capture_default_str();
  con->add_option("--t-s", con_ts, "Survival time (quantile target)")->capture_default_str();
  con->add_option("--q-s", con_qs, "Survival probability")->capture_default_str();
  con->add_option("--t-r", con_tr, "Return period target (overrides --t-s)");
  con->add_option("--dt", con_dt, "Step length")->capture_default_str();
  con->add_option("--n-paths", con_paths, "Simulated paths")->capture_default_str();
  con->add_option("--n-dirs", con_dirs, "Grid directions")->capture_default_str();
  con->add_option("--seed", con_seed, "Master seed")->capture_default_str();
  con->add_option("--trend-mode", con_trend, "frozen-end | true | frozen-start")
      ->capture_default_str();
  con->add_option("--tol", con_tol, "Properness tolerance (<=0: 3 pooled SE)")
      ->capture_default_str();
  con->add_option("--threads", con_threads, "Worker threads (0 = hardware)")
      ->capture_default_str();
  con->add_flag("--three-cases", con_three, "Run the frozen/true trend experiment");
  con->add_flag("--svg", con_svg, "Write an SVG overlay");

  auto* ou = app.add_subcommand("ou-study", "OU vs i.i.d. contour radii");
  double ou_theta = 0.016;
  std::string ou_dt = "3h", ou_lo = "1y", ou_hi = "500y", ou_out = "ou_study.csv";
  int ou_points = 60;
  ou->add_option("--theta", ou_theta, "Mean reversion rate (1/h)")->capture_default_str();
  ou->add_option("--dt", ou_dt, "i.i.d. step length")->capture_default_str();
  ou->add_option("--tr-min", ou_lo, "Smallest return period")->capture_default_str();
  ou->add_option("--tr-max", ou_hi, "Largest return period")->capture_default_str();
  ou->add_option("--points", ou_points, "Rows in the radius table")->capture_default_str();
  ou->add_option("-o,--output", ou_out, "Output CSV")->capture_default_str();

  try {
    app.parse(argc, argv);
    if (synth->parsed()) {
      return cmd_synth(synth_model, synth_out, synth_years, synth_seed, year_hours, &app);
    }
    if (cal->parsed()) {
      return cmd_calibrate(cal_in, cal_out, cal_harmonics, cal_knots, year_hours, &app);
    }
    if (simc->parsed()) {
      return cmd_simulate(sim_model, sim_out, sim_steps, sim_dt, sim_trend, sim_seed,
                          year_hours, &app);
    }
    if (con->parsed()) {
      if (!con_grid.empty()) {
        return cmd_contour_from_grid(con_grid, con_prefix, con_tol, con_svg, &app);
      }
      return cmd_contour(con_model, con_prefix, con_ts, con_qs, con_tr, con_dt,
                         con_paths, con_dirs, con_seed, con_trend, con_tol,
                         con_threads, con_three, con_svg, year_hours, &app);
    }
    if (ou->parsed()) {
      return cmd_ou_study(ou_theta, ou_dt, ou_lo, ou_hi, ou_points, ou_out,
                          year_hours, &app);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
