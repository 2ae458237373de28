#include "envc/geometry.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <deque>
#include <optional>

namespace envc {

UnitVector::UnitVector(double angle_rad) {
  if (!std::isfinite(angle_rad)) {
    throw std::invalid_argument("UnitVector: non-finite angle");
  }
  angle_ = std::fmod(angle_rad, kTwoPi);
  if (angle_ < 0.0) angle_ += kTwoPi;
}

UnitVector UnitVector::from_vec(Vec2 v) {
  const double n = norm(v);
  if (!(n > 0.0)) {
    throw std::invalid_argument("UnitVector: zero vector");
  }
  double a = std::atan2(v.y, v.x);
  if (a < 0.0) a += kTwoPi;
  return UnitVector(a);
}

SupportGrid::SupportGrid(std::vector<double> thresholds)
    : thresholds_(std::move(thresholds)) {
  if (thresholds_.size() < 3) {
    throw std::invalid_argument("SupportGrid: need at least 3 directions");
  }
  double m = 0.0;
  for (double c : thresholds_) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("SupportGrid: non-finite threshold");
    }
    m = std::max(m, std::abs(c));
  }
  scale_ = std::max(m, 1e-30);
}

Polygon Polygon::from_vertices(std::vector<Vec2> vertices) {
  if (vertices.size() < 3) {
    throw std::invalid_argument("degenerate polygon");
  }
  double scale = 0.0;
  for (const Vec2& v : vertices) {
    scale = std::max({scale, std::abs(v.x), std::abs(v.y)});
  }
  scale = std::max(scale, 1e-30);

  const int n = static_cast<int>(vertices.size());
  for (int i = 0; i < n; ++i) {
    const Vec2& a = vertices[i];
    const Vec2& b = vertices[(i + 1) % n];
    const Vec2& c = vertices[(i + 2) % n];
    if (norm(b - a) <= 1e-12 * scale) {
      throw std::invalid_argument("Polygon: coincident consecutive vertices");
    }
    if (cross(b - a, c - b) < -1e-9 * scale * scale) {
      throw std::invalid_argument("Polygon: vertices not convex CCW");
    }
  }
  Polygon p;
  p.vertices_ = std::move(vertices);
  p.scale_ = scale;
  return p;
}

double support_function(const Polygon& poly, const UnitVector& u) {
  return support_function(std::span<const Vec2>(poly.vertices()), u.vec());
}

double support_function(std::span<const Vec2> points, Vec2 u) {
  if (points.empty()) {
    throw std::invalid_argument("degenerate polygon");
  }
  double best = -std::numeric_limits<double>::infinity();
  for (const Vec2& p : points) best = std::max(best, dot(u, p));
  return best;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  const int n = static_cast<int>(pts.size());
  if (n < 3) return pts;

  double scale = 0.0;
  for (const Vec2& p : pts) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  const double eps = 1e-12 * std::max(scale, 1e-30) * std::max(scale, 1e-30);

  std::vector<Vec2> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= eps) --k;
    hull[k++] = pts[i];
  }
  const int lower = k + 1;
  for (int i = n - 2; i >= 0; --i) {  // upper chain
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= eps) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

namespace {

struct Line {
  Vec2 u;    // outward normal
  double c;  // threshold: feasible side is <u, v> <= c
  double t;  // direction angle of travel (normal angle + pi/2)
};

Vec2 line_intersection(const Line& a, const Line& b) {
  const double det = cross(a.u, b.u);
  return {(a.c * b.u.y - b.c * a.u.y) / det, (a.u.x * b.c - b.u.x * a.c) / det};
}

bool feasible(const Line& l, Vec2 p, double eps) { return dot(l.u, p) <= l.c + eps; }

enum class CutStatus { Ok, Degenerate, Infeasible };

struct CutResult {
  CutStatus status = CutStatus::Infeasible;
  std::vector<Vec2> vertices;
};

// Sorted half-plane intersection with a deque; the uniform angular grid
// already provides the angle ordering after a rotation to (-pi, pi].
CutResult cut_halfplanes(const SupportGrid& grid, double inflate) {
  const int n = grid.n_dirs();
  const double scale = grid.scale();
  const double eps = 1e-12 * scale;

  std::vector<Line> lines(n);
  for (int i = 0; i < n; ++i) {
    const Vec2 u = grid.direction_vec(i);
    double t = grid.angle(i) + 0.5 * kPi;
    if (t >= kPi) t -= kTwoPi;
    lines[i] = {u, grid.threshold(i) + inflate, t};
  }
  std::sort(lines.begin(), lines.end(),
            [](const Line& a, const Line& b) { return a.t < b.t; });

  std::deque<Line> dq;
  for (const Line& l : lines) {
    while (dq.size() >= 2 &&
           !feasible(l, line_intersection(dq[dq.size() - 1], dq[dq.size() - 2]), eps)) {
      dq.pop_back();
    }
    while (dq.size() >= 2 && !feasible(l, line_intersection(dq[0], dq[1]), eps)) {
      dq.pop_front();
    }
    dq.push_back(l);
  }
  while (dq.size() > 2 &&
         !feasible(dq[0], line_intersection(dq[dq.size() - 1], dq[dq.size() - 2]), eps)) {
    dq.pop_back();
  }
  while (dq.size() > 2 && !feasible(dq[dq.size() - 1], line_intersection(dq[0], dq[1]), eps)) {
    dq.pop_front();
  }

  CutResult res;
  if (dq.size() < 3) {
    res.status = CutStatus::Infeasible;
    return res;
  }

  std::vector<Vec2> verts;
  verts.reserve(dq.size());
  double vscale = scale;
  for (std::size_t i = 0; i < dq.size(); ++i) {
    const Vec2 v = line_intersection(dq[i], dq[(i + 1) % dq.size()]);
    verts.push_back(v);
    vscale = std::max({vscale, std::abs(v.x), std::abs(v.y)});
  }

  // Merge vertices that coincide within tolerance; the relevant scale is the
  // vertex magnitude, which can exceed the threshold scale on spiky cells.
  std::vector<Vec2> merged;
  for (const Vec2& v : verts) {
    if (merged.empty() || norm(v - merged.back()) > 1e-11 * vscale) merged.push_back(v);
  }
  while (merged.size() > 1 && norm(merged.front() - merged.back()) <= 1e-11 * vscale) {
    merged.pop_back();
  }

  double area2 = 0.0;
  for (std::size_t i = 0; i < merged.size(); ++i) {
    area2 += cross(merged[i], merged[(i + 1) % merged.size()]);
  }
  if (merged.size() < 3 || area2 <= 1e-18 * scale * scale) {
    res.status = CutStatus::Degenerate;
    return res;
  }

  // An empty intersection can survive the deque passes as an inverted cell;
  // genuine vertices satisfy every constraint.
  double worst = 0.0;
  for (const Vec2& v : merged) {
    for (const Line& l : lines) worst = std::max(worst, dot(l.u, v) - l.c);
  }
  if (worst > 1e-9 * scale) {
    res.status = CutStatus::Infeasible;
    return res;
  }
  res.status = CutStatus::Ok;
  res.vertices = std::move(merged);
  return res;
}

// Distinguishes an empty intersection from one that is merely flat: inflating
// every threshold a little turns a flat intersection solid but leaves a
// strictly empty one empty.
CutResult cut_classified(const SupportGrid& grid) {
  CutResult res = cut_halfplanes(grid, 0.0);
  if (res.status != CutStatus::Infeasible) return res;
  CutResult inflated = cut_halfplanes(grid, 1e-7 * grid.scale());
  if (inflated.status == CutStatus::Ok) {
    res.status = CutStatus::Degenerate;
  }
  return res;
}

}  // namespace

Polygon halfspace_intersection(const SupportGrid& grid) {
  CutResult res = cut_classified(grid);
  if (res.status == CutStatus::Infeasible) {
    throw std::runtime_error("infeasible thresholds");
  }
  if (res.status == CutStatus::Degenerate) {
    throw std::runtime_error("degenerate intersection");
  }
  return Polygon::from_vertices(std::move(res.vertices));
}

Vec2 default_hull_center(const SupportGrid& grid) {
  const int n = grid.n_dirs();
  if (n % 4 == 0) {
    const int q = n / 4;
    return {0.5 * (grid.threshold(0) - grid.threshold(2 * q)),
            0.5 * (grid.threshold(q) - grid.threshold(3 * q))};
  }
  // Least-squares fit of C(u) ~ r + <u, x>; with uniform directions the
  // normal equations reduce to x = (2/n) * sum C_i u_i.
  Vec2 x{0.0, 0.0};
  for (int i = 0; i < n; ++i) {
    x = x + grid.threshold(i) * grid.direction_vec(i);
  }
  return (2.0 / n) * x;
}

Polygon hull_contour(const SupportGrid& grid, Vec2 center) {
  const int n = grid.n_dirs();
  std::vector<Vec2> pts;
  pts.reserve(n);
  for (int i = 0; i < n; ++i) {
    const Vec2 u = grid.direction_vec(i);
    const double reach = std::max(0.0, grid.threshold(i) - dot(u, center));
    pts.push_back(center + reach * u);
  }
  std::vector<Vec2> hull = convex_hull(std::move(pts));

  // Nearly coincident neighbours (clamped points around the centre) would
  // fail polygon validation; merge them first.
  double vscale = 1e-30;
  for (const Vec2& v : hull) vscale = std::max({vscale, std::abs(v.x), std::abs(v.y)});
  std::vector<Vec2> merged;
  for (const Vec2& v : hull) {
    if (merged.empty() || norm(v - merged.back()) > 1e-11 * vscale) merged.push_back(v);
  }
  while (merged.size() > 1 && norm(merged.front() - merged.back()) <= 1e-11 * vscale) {
    merged.pop_back();
  }
  if (merged.size() < 3) {
    throw std::runtime_error("degenerate hull");
  }
  return Polygon::from_vertices(std::move(merged));
}

Polygon hull_contour(const SupportGrid& grid) {
  return hull_contour(grid, default_hull_center(grid));
}

bool is_valid(const Polygon& poly, const SupportGrid& grid, double tol) {
  if (tol < 0.0) tol = 1e-9 * grid.scale();
  for (int i = 0; i < grid.n_dirs(); ++i) {
    if (support_function(poly, grid.direction(i)) < grid.threshold(i) - tol) {
      return false;
    }
  }
  return true;
}

bool is_proper(const SupportGrid& grid, double tol) {
  if (tol < 0.0) tol = 1e-6 * grid.scale();
  CutResult res = cut_classified(grid);
  if (res.status == CutStatus::Infeasible) {
    throw std::runtime_error("infeasible thresholds");
  }
  if (res.status == CutStatus::Degenerate) {
    // A flat body has no representable contour polygon at this resolution.
    return false;
  }
  for (int i = 0; i < grid.n_dirs(); ++i) {
    const double s = support_function(std::span<const Vec2>(res.vertices),
                                      grid.direction_vec(i));
    if (std::abs(s - grid.threshold(i)) > tol) return false;
  }
  return true;
}

}  // namespace envc
