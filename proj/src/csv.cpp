#include "envc/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace envc {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Trim to the shortest representation that round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char probe[40];
    std::snprintf(probe, sizeof(probe), "%.*g", prec, v);
    if (std::strtod(probe, nullptr) == v) return probe;
  }
  return buf;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open: " + path);
  return in;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

bool parse_fields(const std::string& line, std::vector<double>& vals, std::size_t count) {
  const std::vector<std::string> parts = split_csv(line);
  if (parts.size() != count) return false;
  vals.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    char* end = nullptr;
    vals[i] = std::strtod(parts[i].c_str(), &end);
    if (end == parts[i].c_str() || *end != '\0') return false;
  }
  return true;
}

void expect_header(std::ifstream& in, const std::string& path, const std::string& want) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument(path + ": insufficient data");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != want) {
    throw std::invalid_argument(path + ": expected header '" + want + "'");
  }
}

}  // namespace

void write_support_grid_csv(const SupportGrid& grid, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "angle_rad,threshold\n";
  for (int i = 0; i < grid.n_dirs(); ++i) {
    out << format_double(grid.angle(i)) << ',' << format_double(grid.threshold(i)) << '\n';
  }
}

SupportGrid read_support_grid_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  expect_header(in, path, "angle_rad,threshold");
  std::vector<double> angles, thresholds;
  std::string line;
  std::vector<double> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!parse_fields(line, vals, 2)) {
      throw std::invalid_argument(path + ": malformed row '" + line + "'");
    }
    angles.push_back(vals[0]);
    thresholds.push_back(vals[1]);
  }
  const int n = static_cast<int>(angles.size());
  if (n < 3) throw std::invalid_argument(path + ": need at least 3 directions");
  for (int i = 0; i < n; ++i) {
    const double want = kTwoPi * i / n;
    if (std::abs(angles[static_cast<std::size_t>(i)] - want) > 1e-9) {
      throw std::invalid_argument(path + ": angles must form the uniform grid 2*pi*i/n");
    }
  }
  return SupportGrid(std::move(thresholds));
}

void write_polygon_csv(const Polygon& poly, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "x,y\n";
  for (const Vec2& v : poly.vertices()) {
    out << format_double(v.x) << ',' << format_double(v.y) << '\n';
  }
}

Polygon read_polygon_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  expect_header(in, path, "x,y");
  std::vector<Vec2> verts;
  std::string line;
  std::vector<double> vals;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!parse_fields(line, vals, 2)) {
      throw std::invalid_argument(path + ": malformed row '" + line + "'");
    }
    verts.push_back({vals[0], vals[1]});
  }
  return Polygon::from_vertices(std::move(verts));
}

void write_estimates_csv(const SupportGrid& grid,
                         const std::vector<EstimateWithError>& diagnostics,
                         const std::string& path) {
  std::ofstream out = open_out(path);
  out << "angle_rad,c_value,std_err,n_paths,censored_frac\n";
  for (int i = 0; i < grid.n_dirs(); ++i) {
    const auto& d = diagnostics[static_cast<std::size_t>(i)];
    out << format_double(grid.angle(i)) << ',' << format_double(grid.threshold(i))
        << ',' << format_double(d.std_error) << ',' << d.n_paths << ','
        << format_double(d.censored_frac) << '\n';
  }
}

void write_metocean_csv(const MetOceanSeries& series, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "t_hours,hs_m,tz_s\n";
  for (const auto& r : series.rows) {
    out << format_double(r.t_hours) << ',' << format_double(r.hs_m) << ','
        << format_double(r.tz_s) << '\n';
  }
}

MetOceanSeries read_metocean_csv(const std::string& path) {
  std::ifstream in = open_in(path);
  expect_header(in, path, "t_hours,hs_m,tz_s");
  MetOceanSeries series;
  std::string line;
  std::vector<double> vals;
  double last_t = -std::numeric_limits<double>::infinity();
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (!parse_fields(line, vals, 3) || !std::isfinite(vals[0]) ||
        !std::isfinite(vals[1]) || !std::isfinite(vals[2]) || vals[1] <= 0.0 ||
        vals[2] <= 0.0 || vals[0] <= last_t) {
      ++series.skipped_rows;
      continue;
    }
    last_t = vals[0];
    series.rows.push_back({vals[0], vals[1], vals[2]});
  }
  return series;
}

void write_path_csv(const PathSample& path_sample, const std::string& path) {
  std::ofstream out = open_out(path);
  out << "t_hours,x,y\n";
  for (std::size_t k = 0; k < path_sample.values.size(); ++k) {
    out << format_double(path_sample.grid.step_time(static_cast<long>(k))) << ','
        << format_double(path_sample.values[k].x) << ','
        << format_double(path_sample.values[k].y) << '\n';
  }
}

}  // namespace envc
