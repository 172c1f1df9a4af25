#pragma once

// Inversive-geometry kernel: points, generalized circles (circles and lines),
// intersection classification and orientation-preserving Moebius maps.

#include <array>
#include <complex>
#include <vector>

namespace crep::geom {

using Complex = std::complex<double>;

/// Global relative tolerance. Initialized to 1e-9; the CLI overrides it from
/// CREP_EPS. Comparisons scale it by the local geometric magnitude.
double eps();
void set_eps(double value);

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

Point operator+(Point a, Point b);
Point operator-(Point a, Point b);
Point operator*(double s, Point a);
double dot(Point a, Point b);
double cross(Point a, Point b);
double norm(Point a);
double distance(Point a, Point b);

/// A point of the extended plane: either finite or the point at infinity.
class ExtendedPoint {
 public:
  ExtendedPoint() = default;
  ExtendedPoint(Point p) : p_(p) {}  // NOLINT(google-explicit-constructor)
  static ExtendedPoint infinity() {
    ExtendedPoint e;
    e.infinite_ = true;
    return e;
  }
  bool is_infinite() const { return infinite_; }
  /// Undefined for the point at infinity.
  Point point() const { return p_; }

 private:
  Point p_{};
  bool infinite_ = false;
};

/// A circle (center, radius) or a line a*x + b*y = c with a unit normal.
class GeneralizedCircle {
 public:
  enum class Kind { Circle, Line };

  static GeneralizedCircle circle(Point center, double radius);
  /// Normalizes (a, b) to unit length and fixes a canonical sign.
  static GeneralizedCircle line(double a, double b, double c);

  Kind kind() const { return kind_; }
  bool is_circle() const { return kind_ == Kind::Circle; }
  bool is_line() const { return kind_ == Kind::Line; }

  Point center() const { return center_; }
  double radius() const { return radius_; }

  Point normal() const { return {a_, b_}; }
  double offset() const { return c_; }
  /// Unit direction of increasing abscissa along a line: (b, -a).
  Point direction() const { return {b_, -a_}; }

  /// Point at parameter `s`: angle for circles, arclength for lines (from the
  /// foot of the perpendicular from the origin).
  Point at(double s) const;
  /// Signed distance for lines, distance-to-circle minus radius for circles.
  double signed_distance(Point p) const;
  /// Characteristic length used to scale tolerances.
  double scale() const;

 private:
  Kind kind_ = Kind::Circle;
  Point center_{};
  double radius_ = 1.0;
  double a_ = 0.0, b_ = 1.0, c_ = 0.0;
};

enum class IntersectionTag { DisjointOutside, DisjointNested, Touching, Crossing };

struct IntersectionClass {
  IntersectionTag tag = IntersectionTag::DisjointOutside;
  // Touching: one point. Crossing: two points.
  std::vector<ExtendedPoint> points;

  bool disjoint() const {
    return tag == IntersectionTag::DisjointOutside || tag == IntersectionTag::DisjointNested;
  }
};

IntersectionClass classify_intersection(const GeneralizedCircle& c1, const GeneralizedCircle& c2,
                                        double tol = eps());

GeneralizedCircle circle_through_points(Point p1, Point p2, Point p3, double tol = eps());

/// z -> (a z + b) / (c z + d), ad - bc != 0.
class MobiusMap {
 public:
  MobiusMap() = default;
  MobiusMap(Complex a, Complex b, Complex c, Complex d);

  static MobiusMap identity() { return {}; }

  const std::array<Complex, 4>& coefficients() const { return k_; }
  Complex determinant() const { return k_[0] * k_[3] - k_[1] * k_[2]; }
  /// The pre-image of infinity; the point at infinity when c == 0.
  ExtendedPoint pole() const;

  MobiusMap inverse() const;
  /// (this ∘ other)(z) = this(other(z)).
  MobiusMap compose(const MobiusMap& other) const;

 private:
  std::array<Complex, 4> k_{Complex{1.0}, Complex{0.0}, Complex{0.0}, Complex{1.0}};
};

enum class Side { Above, Below };

/// Circle of radius r tangent to the x-axis at (t, 0), on the given side.
struct AxisTangentCircle {
  double t = 0.0;
  double r = 1.0;
  Side side = Side::Above;

  friend bool operator==(const AxisTangentCircle&, const AxisTangentCircle&) = default;
};

GeneralizedCircle axis_tangent_to_circle(const AxisTangentCircle& c);

MobiusMap mobius_to_infinity(Point p);
ExtendedPoint mobius_apply_point(const MobiusMap& m, const ExtendedPoint& p);
GeneralizedCircle mobius_apply_gcircle(const MobiusMap& m, const GeneralizedCircle& c,
                                       double tol = eps());

}  // namespace crep::geom
