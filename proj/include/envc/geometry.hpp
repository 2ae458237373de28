#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

#include "envc/mathutil.hpp"

namespace envc {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Direction on the unit circle, stored as an angle in [0, 2*pi).
class UnitVector {
 public:
  explicit UnitVector(double angle_rad);
  static UnitVector from_vec(Vec2 v);

  double angle() const { return angle_; }
  Vec2 vec() const { return {std::cos(angle_), std::sin(angle_)}; }

 private:
  double angle_;
};

/// Direction-to-threshold function u -> C(u) sampled on the uniform angular
/// grid u_i = 2*pi*i/n.  Houses estimated C_Q, C_T or analytic C_e values.
class SupportGrid {
 public:
  explicit SupportGrid(std::vector<double> thresholds);

  int n_dirs() const { return static_cast<int>(thresholds_.size()); }
  double threshold(int i) const { return thresholds_[i]; }
  const std::vector<double>& thresholds() const { return thresholds_; }
  double angle(int i) const { return kTwoPi * i / n_dirs(); }
  UnitVector direction(int i) const { return UnitVector(angle(i)); }
  Vec2 direction_vec(int i) const { return direction(i).vec(); }

  /// max |C(u_i)|, floored away from zero; reference scale for tolerances.
  double scale() const { return scale_; }

 private:
  std::vector<double> thresholds_;
  double scale_;
};

/// Closed convex polygon, vertices counter-clockwise.
class Polygon {
 public:
  /// Validates convexity (cross products >= -1e-9 * scale) and that no two
  /// consecutive vertices coincide within 1e-12 * scale.
  static Polygon from_vertices(std::vector<Vec2> vertices);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  int size() const { return static_cast<int>(vertices_.size()); }
  double scale() const { return scale_; }

 private:
  Polygon() = default;
  std::vector<Vec2> vertices_;
  double scale_ = 1.0;
};

/// B(poly, u) = max over vertices of <u, v>.
double support_function(const Polygon& poly, const UnitVector& u);

/// Support of a raw point set (equals the support of its convex hull).
double support_function(std::span<const Vec2> points, Vec2 u);

/// Convex hull by monotone chain, counter-clockwise, collinear points
/// dropped.  Degenerate inputs yield fewer than three points.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

/// Intersection of the half-spaces <u_i, v> <= C(u_i).  Throws
/// std::runtime_error("infeasible thresholds") when empty and
/// std::runtime_error("degenerate intersection") when the interior is empty.
Polygon halfspace_intersection(const SupportGrid& grid);

/// Centre used by hull_contour when none is supplied: the least-squares
/// offset-circle centre; coincides with the componentwise midpoint of the
/// axis-direction thresholds when the axes lie on the grid.
Vec2 default_hull_center(const SupportGrid& grid);

/// Closure of conv{ center + u_i * (C(u_i) - <u_i, center>)^+ }.  Valid by
/// construction: support >= C at every grid direction.  Throws
/// std::runtime_error("degenerate hull") when the points collapse.
Polygon hull_contour(const SupportGrid& grid, Vec2 center);
Polygon hull_contour(const SupportGrid& grid);

/// True iff support_function(poly, u_i) >= C(u_i) - tol for all i.
/// tol < 0 selects the default 1e-9 * grid.scale().
bool is_valid(const Polygon& poly, const SupportGrid& grid, double tol = -1.0);

/// True iff the half-space intersection exists, is non-degenerate, and its
/// support matches C within tol at every grid direction; i.e. C is the
/// support function of a convex body at this resolution.  tol < 0 selects
/// 1e-6 * grid.scale().  Propagates the infeasible-thresholds error.
bool is_proper(const SupportGrid& grid, double tol = -1.0);

}  // namespace envc
