#include "crep/geom.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>

#include "crep/error.hpp"

namespace crep::geom {

namespace {

std::atomic<double> g_eps{1e-9};

Complex to_complex(Point p) { return {p.x, p.y}; }
Point to_point(Complex z) { return {z.real(), z.imag()}; }

// Circle through three points known not to be collinear.
GeneralizedCircle fit_circle(Point p1, Point p2, Point p3) {
  const Point b = p2 - p1;
  const Point c = p3 - p1;
  const double d = 2.0 * cross(b, c);
  const double bb = dot(b, b);
  const double cc = dot(c, c);
  const Point u{(c.y * bb - b.y * cc) / d, (b.x * cc - c.x * bb) / d};
  return GeneralizedCircle::circle(p1 + u, norm(u));
}

// Line through the farthest-apart pair of (nearly) collinear points.
GeneralizedCircle fit_line(Point p1, Point p2, Point p3) {
  std::array<std::pair<Point, Point>, 3> pairs{{{p1, p2}, {p1, p3}, {p2, p3}}};
  auto best = std::max_element(pairs.begin(), pairs.end(), [](const auto& x, const auto& y) {
    return distance(x.first, x.second) < distance(y.first, y.second);
  });
  const Point dir = best->second - best->first;
  const double len = norm(dir);
  const Point n{-dir.y / len, dir.x / len};
  const Point centroid = (1.0 / 3.0) * (p1 + p2 + p3);
  return GeneralizedCircle::line(n.x, n.y, dot(n, centroid));
}

ExtendedPoint apply(const MobiusMap& m, Point p) { return mobius_apply_point(m, ExtendedPoint{p}); }

}  // namespace

double eps() { return g_eps.load(std::memory_order_relaxed); }
void set_eps(double value) { g_eps.store(value, std::memory_order_relaxed); }

Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
double norm(Point a) { return std::hypot(a.x, a.y); }
double distance(Point a, Point b) { return norm(a - b); }

GeneralizedCircle GeneralizedCircle::circle(Point center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(Errc::NonpositiveRadius, "circle radius must be positive and finite");
  }
  GeneralizedCircle g;
  g.kind_ = Kind::Circle;
  g.center_ = center;
  g.radius_ = radius;
  return g;
}

GeneralizedCircle GeneralizedCircle::line(double a, double b, double c) {
  const double len = std::hypot(a, b);
  if (!(len > 0.0)) throw Error(Errc::DegeneratePoints, "line normal must be nonzero");
  a /= len;
  b /= len;
  c /= len;
  if (a < -1e-12 || (std::abs(a) <= 1e-12 && b < 0.0)) {
    a = -a;
    b = -b;
    c = -c;
  }
  GeneralizedCircle g;
  g.kind_ = Kind::Line;
  g.a_ = a;
  g.b_ = b;
  g.c_ = c;
  return g;
}

Point GeneralizedCircle::at(double s) const {
  if (is_circle()) return center_ + radius_ * Point{std::cos(s), std::sin(s)};
  return c_ * normal() + s * direction();
}

double GeneralizedCircle::signed_distance(Point p) const {
  if (is_circle()) return distance(p, center_) - radius_;
  return dot(normal(), p) - c_;
}

double GeneralizedCircle::scale() const {
  return is_circle() ? radius_ : std::max(1.0, std::abs(c_));
}

IntersectionClass classify_intersection(const GeneralizedCircle& c1, const GeneralizedCircle& c2,
                                        double tol) {
  IntersectionClass out;
  if (c1.is_circle() && c2.is_circle()) {
    const double r1 = c1.radius();
    const double r2 = c2.radius();
    const Point delta = c2.center() - c1.center();
    const double d = norm(delta);
    const double scale = std::max({r1, r2, d});
    const double slack = tol * scale;
    if (d <= slack && std::abs(r1 - r2) <= slack) {
      throw Error(Errc::CoincidentCircles, "circles coincide");
    }
    if (std::abs(d - (r1 + r2)) <= slack) {
      out.tag = IntersectionTag::Touching;
      out.points.emplace_back(c1.center() + (r1 / d) * delta);
      return out;
    }
    if (d > slack && std::abs(d - std::abs(r1 - r2)) <= slack) {
      out.tag = IntersectionTag::Touching;
      const bool first_bigger = r1 >= r2;
      const Point big = first_bigger ? c1.center() : c2.center();
      const Point toward = first_bigger ? delta : -1.0 * delta;
      out.points.emplace_back(big + (std::max(r1, r2) / d) * toward);
      return out;
    }
    if (d > r1 + r2) {
      out.tag = IntersectionTag::DisjointOutside;
      return out;
    }
    if (d < std::abs(r1 - r2)) {
      out.tag = IntersectionTag::DisjointNested;
      return out;
    }
    const Point u = (1.0 / d) * delta;
    const Point perp{-u.y, u.x};
    const double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
    const double h = std::sqrt(std::max(0.0, r1 * r1 - a * a));
    const Point foot = c1.center() + a * u;
    out.tag = IntersectionTag::Crossing;
    out.points.emplace_back(foot + h * perp);
    out.points.emplace_back(foot - h * perp);
    return out;
  }

  if (c1.is_line() && c2.is_line()) {
    const Point n1 = c1.normal();
    const Point n2 = c2.normal();
    const double det = cross(n1, n2);
    if (std::abs(det) <= tol) {
      const double s = dot(n1, n2) > 0.0 ? 1.0 : -1.0;
      const double scale = std::max({1.0, std::abs(c1.offset()), std::abs(c2.offset())});
      if (std::abs(c1.offset() - s * c2.offset()) <= tol * scale) {
        throw Error(Errc::CoincidentCircles, "lines coincide");
      }
      // Parallel lines are tangent at infinity.
      out.tag = IntersectionTag::Touching;
      out.points.push_back(ExtendedPoint::infinity());
      return out;
    }
    const Point p{(c1.offset() * n2.y - c2.offset() * n1.y) / det,
                  (n1.x * c2.offset() - n2.x * c1.offset()) / det};
    out.tag = IntersectionTag::Crossing;
    out.points.emplace_back(p);
    out.points.push_back(ExtendedPoint::infinity());
    return out;
  }

  const GeneralizedCircle& circ = c1.is_circle() ? c1 : c2;
  const GeneralizedCircle& line = c1.is_circle() ? c2 : c1;
  const double r = circ.radius();
  const double delta = line.signed_distance(circ.center());
  const double scale = std::max(r, std::abs(delta));
  const Point foot = circ.center() - delta * line.normal();
  if (std::abs(std::abs(delta) - r) <= tol * scale) {
    out.tag = IntersectionTag::Touching;
    out.points.emplace_back(foot);
    return out;
  }
  if (std::abs(delta) > r) {
    out.tag = IntersectionTag::DisjointOutside;
    return out;
  }
  const double h = std::sqrt(r * r - delta * delta);
  out.tag = IntersectionTag::Crossing;
  out.points.emplace_back(foot + h * line.direction());
  out.points.emplace_back(foot - h * line.direction());
  return out;
}

GeneralizedCircle circle_through_points(Point p1, Point p2, Point p3, double tol) {
  const double scale = std::max({distance(p1, p2), distance(p1, p3), distance(p2, p3)});
  const double slack = tol * scale;
  if (scale == 0.0 || distance(p1, p2) <= slack || distance(p1, p3) <= slack ||
      distance(p2, p3) <= slack) {
    throw Error(Errc::DegeneratePoints, "circle_through_points needs three distinct points");
  }
  if (std::abs(cross(p2 - p1, p3 - p1)) <= tol * scale * scale) return fit_line(p1, p2, p3);
  return fit_circle(p1, p2, p3);
}

MobiusMap::MobiusMap(Complex a, Complex b, Complex c, Complex d) : k_{a, b, c, d} {
  if (std::abs(determinant()) == 0.0) {
    throw Error(Errc::DegeneratePoints, "Moebius map must have nonzero determinant");
  }
}

ExtendedPoint MobiusMap::pole() const {
  if (k_[2] == Complex{0.0}) return ExtendedPoint::infinity();
  return to_point(-k_[3] / k_[2]);
}

MobiusMap MobiusMap::inverse() const { return {k_[3], -k_[1], -k_[2], k_[0]}; }

MobiusMap MobiusMap::compose(const MobiusMap& o) const {
  const auto& q = o.k_;
  return {k_[0] * q[0] + k_[1] * q[2], k_[0] * q[1] + k_[1] * q[3],
          k_[2] * q[0] + k_[3] * q[2], k_[2] * q[1] + k_[3] * q[3]};
}

MobiusMap mobius_to_infinity(Point p) {
  return {Complex{0.0}, Complex{1.0}, Complex{1.0}, -to_complex(p)};
}

ExtendedPoint mobius_apply_point(const MobiusMap& m, const ExtendedPoint& p) {
  const auto& [a, b, c, d] = m.coefficients();
  if (p.is_infinite()) {
    if (c == Complex{0.0}) return ExtendedPoint::infinity();
    return to_point(a / c);
  }
  const Complex z = to_complex(p.point());
  const Complex den = c * z + d;
  if (std::abs(den) <= 1e-14 * (std::abs(c) * std::abs(z) + std::abs(d))) {
    return ExtendedPoint::infinity();
  }
  return to_point((a * z + b) / den);
}

GeneralizedCircle mobius_apply_gcircle(const MobiusMap& m, const GeneralizedCircle& c, double tol) {
  constexpr double pi = std::numbers::pi;
  const ExtendedPoint pole = m.pole();

  if (c.is_circle()) {
    const bool through_pole =
        !pole.is_infinite() && std::abs(c.signed_distance(pole.point())) <= tol * c.radius();
    double base = 0.0;
    if (!pole.is_infinite()) {
      const Point rel = pole.point() - c.center();
      if (norm(rel) > 0.0) base = std::atan2(rel.y, rel.x);
    }
    if (through_pole) {
      const Point q1 = apply(m, c.at(base + pi / 2)).point();
      const Point q2 = apply(m, c.at(base + pi)).point();
      const Point q3 = apply(m, c.at(base + 3 * pi / 2)).point();
      return fit_line(q1, q2, q3);
    }
    // Samples stay at least pi/3 away from the pole's direction.
    const Point q1 = apply(m, c.at(base + pi / 3)).point();
    const Point q2 = apply(m, c.at(base + pi)).point();
    const Point q3 = apply(m, c.at(base + 5 * pi / 3)).point();
    if (cross(q2 - q1, q3 - q1) == 0.0) return fit_line(q1, q2, q3);
    return fit_circle(q1, q2, q3);
  }

  // Line input.
  const auto& [a, b, cc, d] = m.coefficients();
  if (cc == Complex{0.0}) {
    const Point q1 = apply(m, c.at(-1.0)).point();
    const Point q2 = apply(m, c.at(0.0)).point();
    const Point q3 = apply(m, c.at(1.0)).point();
    return fit_line(q1, q2, q3);
  }
  const Point p = pole.point();
  const double pole_offset = std::abs(c.signed_distance(p));
  const double s_pole = dot(p, c.direction());
  if (pole_offset <= tol * std::max(1.0, norm(p))) {
    const double step = std::max(1.0, norm(p));
    const Point q1 = apply(m, c.at(s_pole + step)).point();
    const Point q2 = apply(m, c.at(s_pole - step)).point();
    const Point q3 = apply(m, c.at(s_pole + 2 * step)).point();
    return fit_line(q1, q2, q3);
  }
  const Point q1 = to_point(a / cc);
  const Point q2 = apply(m, c.at(s_pole - pole_offset)).point();
  const Point q3 = apply(m, c.at(s_pole + pole_offset)).point();
  return fit_circle(q1, q2, q3);
}

GeneralizedCircle axis_tangent_to_circle(const AxisTangentCircle& c) {
  if (!(c.r > 0.0)) throw Error(Errc::NonpositiveRadius, "axis-tangent circle needs r > 0");
  const double sign = c.side == Side::Above ? 1.0 : -1.0;
  return GeneralizedCircle::circle({c.t, sign * c.r}, c.r);
}

}  // namespace crep::geom
