#include "filling/hyp3.hpp"

#include <algorithm>
#include <cmath>

#include "filling/error.hpp"
#include "filling/tolerance.hpp"

namespace filling::hyp3 {

namespace {

Complex canonical_direction(Complex d) {
  d /= std::abs(d);
  if (std::abs(d.imag()) <= 1e-15)
    d = Complex(d.real() >= 0 ? 1.0 : -1.0, 0.0);
  if (d.imag() < 0 || (d.imag() == 0 && d.real() < 0))
    d = -d;
  return d;
}

// Positive outside (or left of a line), negative inside (right of a line).
double signed_side(const GeodesicPlane& plane, Complex z) {
  if (plane.is_line()) {
    const Line& l = plane.as_line();
    return (std::conj(l.direction) * (z - l.point)).imag();
  }
  const Circle& c = plane.as_circle();
  return std::abs(z - c.center) - c.radius;
}

bool near_zero(Complex z) { return std::abs(z) <= tol::kDeterminant; }

} // namespace

BoundaryPoint BoundaryPoint::finite(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    fail(ErrorCode::InvalidArgument, "boundary point must have finite coordinates");
  BoundaryPoint p;
  p.z_ = z;
  return p;
}

double chordal_distance(const BoundaryPoint& p, const BoundaryPoint& q) {
  if (p.is_infinity() && q.is_infinity())
    return 0.0;
  if (p.is_infinity() || q.is_infinity()) {
    Complex z = p.is_infinity() ? q.value() : p.value();
    return 2.0 / std::sqrt(1.0 + std::norm(z));
  }
  Complex z = p.value(), w = q.value();
  return 2.0 * std::abs(z - w) / std::sqrt((1.0 + std::norm(z)) * (1.0 + std::norm(w)));
}

MobiusMap::MobiusMap(Complex a, Complex b, Complex c, Complex d) {
  Complex det = a * d - b * c;
  if (std::abs(det) <= tol::kDeterminant)
    fail(ErrorCode::DegenerateInput, "Moebius matrix is singular");
  Complex s = std::sqrt(det);
  a_ = a / s;
  b_ = b / s;
  c_ = c / s;
  d_ = d / s;
  for (Complex e : {a_, b_, c_, d_}) {
    if (near_zero(e))
      continue;
    bool flip = e.real() < 0 || (e.real() == 0 && e.imag() < 0);
    if (flip) {
      a_ = -a_;
      b_ = -b_;
      c_ = -c_;
      d_ = -d_;
    }
    break;
  }
}

bool MobiusMap::approx_equal(const MobiusMap& o, double tol) const {
  auto close = [tol](const MobiusMap& x, const MobiusMap& y, double sign) {
    return std::abs(x.a_ - sign * y.a_) <= tol && std::abs(x.b_ - sign * y.b_) <= tol &&
           std::abs(x.c_ - sign * y.c_) <= tol && std::abs(x.d_ - sign * y.d_) <= tol;
  };
  // Sign choice can differ when the leading entry sits on the imaginary axis.
  return close(*this, o, 1.0) || close(*this, o, -1.0);
}

GeodesicPlane GeodesicPlane::circle(Complex center, double radius) {
  if (!(radius > 0) || !std::isfinite(radius))
    fail(ErrorCode::InvalidArgument, "circle radius must be positive");
  return GeodesicPlane(Circle{center, radius});
}

GeodesicPlane GeodesicPlane::line(Complex point, Complex direction) {
  if (std::abs(direction) == 0)
    fail(ErrorCode::InvalidArgument, "line direction must be nonzero");
  Complex d = canonical_direction(direction);
  Complex foot = point - d * (std::conj(d) * point).real();
  return GeodesicPlane(Line{foot, d});
}

bool GeodesicPlane::approx_equal(const GeodesicPlane& o, double tol) const {
  if (is_line() != o.is_line())
    return false;
  if (is_line()) {
    const Line &x = as_line(), &y = o.as_line();
    bool same_dir = std::abs(x.direction - y.direction) <= tol ||
                    std::abs(x.direction + y.direction) <= tol;
    return same_dir && std::abs(x.point - y.point) <= tol;
  }
  const Circle &x = as_circle(), &y = o.as_circle();
  return std::abs(x.center - y.center) <= tol && std::abs(x.radius - y.radius) <= tol;
}

GeodesicLine::GeodesicLine(BoundaryPoint u, BoundaryPoint v) : u_(u), v_(v) {
  if (chordal_distance(u, v) <= tol::kIncidence)
    fail(ErrorCode::DegenerateInput, "geodesic endpoints coincide");
}

UhsPoint make_uhs_point(Complex z, double t) {
  if (!(t > 0) || !std::isfinite(t) || !std::isfinite(z.real()) || !std::isfinite(z.imag()))
    fail(ErrorCode::InvalidArgument, "upper half-space point needs finite z and t > 0");
  return UhsPoint{z, t};
}

BoundaryPoint mobius_apply(const MobiusMap& g, const BoundaryPoint& p) {
  if (p.is_infinity()) {
    if (g.c() == Complex(0.0, 0.0))
      return BoundaryPoint::infinity();
    return BoundaryPoint::finite(g.a() / g.c());
  }
  Complex z = p.value();
  Complex den = g.c() * z + g.d();
  if (den == Complex(0.0, 0.0))
    return BoundaryPoint::infinity();
  return BoundaryPoint::finite((g.a() * z + g.b()) / den);
}

UhsPoint mobius_apply(const MobiusMap& g, const UhsPoint& x) {
  Complex w = g.c() * x.z + g.d();
  double t2 = x.t * x.t;
  double den = std::norm(w) + std::norm(g.c()) * t2;
  Complex z = ((g.a() * x.z + g.b()) * std::conj(w) + g.a() * std::conj(g.c()) * t2) / den;
  return UhsPoint{z, x.t / den};
}

MobiusMap mobius_compose(const MobiusMap& g, const MobiusMap& h) {
  return MobiusMap(g.a() * h.a() + g.b() * h.c(), g.a() * h.b() + g.b() * h.d(),
                   g.c() * h.a() + g.d() * h.c(), g.c() * h.b() + g.d() * h.d());
}

GeodesicPlane mobius_apply(const MobiusMap& g, const GeodesicPlane& plane) {
  if (plane.is_line()) {
    const Line& l = plane.as_line();
    return plane_through(mobius_apply(g, BoundaryPoint(l.point)),
                         mobius_apply(g, BoundaryPoint(l.point + l.direction)),
                         mobius_apply(g, BoundaryPoint::infinity()));
  }
  const Circle& c = plane.as_circle();
  return plane_through(mobius_apply(g, BoundaryPoint(c.center + c.radius)),
                       mobius_apply(g, BoundaryPoint(c.center + Complex(0, c.radius))),
                       mobius_apply(g, BoundaryPoint(c.center - c.radius)));
}

GeodesicPlane plane_through(const BoundaryPoint& p1, const BoundaryPoint& p2,
                            const BoundaryPoint& p3) {
  if (chordal_distance(p1, p2) <= tol::kIncidence || chordal_distance(p1, p3) <= tol::kIncidence ||
      chordal_distance(p2, p3) <= tol::kIncidence)
    fail(ErrorCode::DegenerateInput, "plane_through needs three distinct boundary points");

  if (p1.is_infinity())
    return GeodesicPlane::line(p2.value(), p3.value() - p2.value());
  if (p2.is_infinity())
    return GeodesicPlane::line(p1.value(), p3.value() - p1.value());
  if (p3.is_infinity())
    return GeodesicPlane::line(p1.value(), p2.value() - p1.value());

  Complex z1 = p1.value();
  Complex b = p2.value() - z1, c = p3.value() - z1;
  double cross = (std::conj(b) * c).imag();
  if (std::abs(cross) <= tol::kIncidence * std::abs(b) * std::abs(c))
    return GeodesicPlane::line(z1, b);
  Complex offset = (std::norm(b) * c - std::norm(c) * b) / Complex(0.0, 2.0 * cross);
  return GeodesicPlane::circle(z1 + offset, std::abs(offset));
}

bool on_circle(const GeodesicPlane& plane, const BoundaryPoint& p) {
  if (p.is_infinity())
    return plane.is_line();
  Complex z = p.value();
  if (plane.is_line()) {
    double scale = std::max(1.0, std::abs(z - plane.as_line().point));
    return std::abs(signed_side(plane, z)) <= tol::kIncidence * scale;
  }
  double scale = std::max(1.0, std::abs(z));
  return std::abs(signed_side(plane, z)) <= tol::kIncidence * scale;
}

bool separates(const GeodesicPlane& plane, const BoundaryPoint& p, const BoundaryPoint& q) {
  if (on_circle(plane, p) || on_circle(plane, q))
    fail(ErrorCode::OnCircle, "point lies on the plane's boundary circle");
  // inf is outside every circle (and on every line, excluded above).
  auto side = [&](const BoundaryPoint& x) {
    return x.is_infinity() ? true : signed_side(plane, x.value()) > 0;
  };
  return side(p) != side(q);
}

namespace {

UhsPoint transverse_point(const GeodesicPlane& plane, const GeodesicLine& g) {
  const BoundaryPoint* fin = &g.first();
  const BoundaryPoint* other = &g.second();
  if (fin->is_infinity())
    std::swap(fin, other);

  if (other->is_infinity()) {
    // Vertical ray over w. A line plane would contain inf, so this is a circle.
    const Circle& c = plane.as_circle();
    Complex w = fin->value();
    double h2 = c.radius * c.radius - std::norm(w - c.center);
    return UhsPoint{w, std::sqrt(std::max(h2, 0.0))};
  }

  Complex u = fin->value(), v = other->value();
  Complex m = 0.5 * (u + v);
  double rho = 0.5 * std::abs(v - u);
  Complex e = (v - u) / std::abs(v - u);
  double x;
  if (plane.is_line()) {
    const Line& l = plane.as_line();
    x = -(std::conj(l.direction) * (m - l.point)).imag() /
        (rho * (std::conj(l.direction) * e).imag());
  } else {
    const Circle& c = plane.as_circle();
    x = (c.radius * c.radius - std::norm(m - c.center) - rho * rho) /
        (2.0 * rho * (std::conj(e) * (m - c.center)).real());
  }
  x = std::clamp(x, -1.0, 1.0);
  return UhsPoint{m + rho * x * e, rho * std::sqrt(1.0 - x * x)};
}

} // namespace

Classification classify_plane_geodesic(const GeodesicPlane& plane, const GeodesicLine& geodesic) {
  bool on1 = on_circle(plane, geodesic.first());
  bool on2 = on_circle(plane, geodesic.second());
  if (on1 && on2)
    return Contained{};
  if (on1 || on2)
    return Asymptotic{};
  if (separates(plane, geodesic.first(), geodesic.second()))
    return Transverse{transverse_point(plane, geodesic)};
  return Disjoint{};
}

const char* classification_name(const Classification& c) {
  struct Names {
    const char* operator()(const Transverse&) const { return "Transverse"; }
    const char* operator()(const Contained&) const { return "Contained"; }
    const char* operator()(const Asymptotic&) const { return "Asymptotic"; }
    const char* operator()(const Disjoint&) const { return "Disjoint"; }
  };
  return std::visit(Names{}, c);
}

double hyp_distance(const UhsPoint& p, const UhsPoint& q) {
  double dz2 = std::norm(p.z - q.z);
  double dt = p.t - q.t;
  return 2.0 * std::asinh(std::sqrt(dz2 + dt * dt) / (2.0 * std::sqrt(p.t * q.t)));
}

GeodesicPlane bisector_plane(const UhsPoint& p, const UhsPoint& q) {
  if (hyp_distance(p, q) <= tol::kIncidence)
    fail(ErrorCode::CoincidentPoints, "bisector of coincident points");
  double k = q.t - p.t;
  if (std::abs(k) <= 1e-12 * std::max(p.t, q.t)) {
    Complex dz = q.z - p.z;
    return GeodesicPlane::line(0.5 * (p.z + q.z), Complex(0.0, 1.0) * dz);
  }
  Complex center = (q.t * p.z - p.t * q.z) / k;
  double r2 = p.t * q.t * (std::norm(p.z - q.z) + k * k) / (k * k);
  return GeodesicPlane::circle(center, std::sqrt(r2));
}

double plane_residual(const GeodesicPlane& plane, const UhsPoint& x) {
  if (plane.is_line())
    return signed_side(plane, x.z);
  const Circle& c = plane.as_circle();
  return std::sqrt(std::norm(x.z - c.center) + x.t * x.t) - c.radius;
}

GeodesicLine geodesic_through(const UhsPoint& p, const UhsPoint& q) {
  if (hyp_distance(p, q) <= tol::kIncidence)
    fail(ErrorCode::CoincidentPoints, "geodesic through coincident points");
  double len = std::abs(q.z - p.z);
  if (len <= 1e-14 * std::max({1.0, std::abs(p.z), p.t, q.t}))
    return GeodesicLine(BoundaryPoint(p.z), BoundaryPoint::infinity());
  Complex e = (q.z - p.z) / len;
  double a = (len * len + q.t * q.t - p.t * p.t) / (2.0 * len);
  Complex m = p.z + a * e;
  double rho = std::hypot(a, p.t);
  return GeodesicLine(BoundaryPoint(m - rho * e), BoundaryPoint(m + rho * e));
}

double distance_to_geodesic(const GeodesicLine& geodesic, const UhsPoint& x) {
  // Send the geodesic to the vertical axis over 0.
  const BoundaryPoint& u = geodesic.first();
  const BoundaryPoint& v = geodesic.second();
  MobiusMap g = MobiusMap::identity();
  if (u.is_infinity())
    g = MobiusMap(1.0, -v.value(), 0.0, 1.0);
  else if (v.is_infinity())
    g = MobiusMap(1.0, -u.value(), 0.0, 1.0);
  else
    g = MobiusMap(1.0, -u.value(), 1.0, -v.value());
  UhsPoint y = mobius_apply(g, x);
  return std::asinh(std::abs(y.z) / y.t);
}

} // namespace filling::hyp3
