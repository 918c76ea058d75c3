#pragma once

// Upper half-space model of hyperbolic 3-space. Boundary points live on the
// Riemann sphere C u {inf}; geodesic planes are hemispheres over circles or
// vertical half-planes over lines; geodesics are semicircles or vertical rays.

#include <complex>
#include <optional>
#include <variant>

namespace filling::hyp3 {

using Complex = std::complex<double>;

class BoundaryPoint {
public:
  static BoundaryPoint infinity() { return BoundaryPoint(); }
  static BoundaryPoint finite(Complex z);

  BoundaryPoint(Complex z) : BoundaryPoint(finite(z)) {}  // NOLINT: implicit by intent
  BoundaryPoint(double x) : BoundaryPoint(finite(Complex(x, 0.0))) {}  // NOLINT

  bool is_infinity() const { return !z_.has_value(); }
  // Precondition: !is_infinity().
  Complex value() const { return *z_; }

private:
  BoundaryPoint() = default;
  std::optional<Complex> z_;
};

// Chordal distance on the Riemann sphere of diameter 2 (distance to inf is
// 2 / sqrt(1 + |z|^2)).
double chordal_distance(const BoundaryPoint& p, const BoundaryPoint& q);

/// Element of PSL(2, C), kept normalized to det 1 with the first entry whose
/// modulus exceeds the determinant tolerance having nonnegative real part.
class MobiusMap {
public:
  MobiusMap(Complex a, Complex b, Complex c, Complex d);

  static MobiusMap identity() { return MobiusMap(1.0, 0.0, 0.0, 1.0); }

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Complex c() const { return c_; }
  Complex d() const { return d_; }

  MobiusMap inverse() const { return MobiusMap(d_, -b_, -c_, a_); }

  // Entrywise comparison after normalization, so maps equal up to +-I compare
  // equal.
  bool approx_equal(const MobiusMap& other, double tol = 1e-9) const;

private:
  Complex a_, b_, c_, d_;
};

struct Circle {
  Complex center;
  double radius;
};

// A circle through infinity. The direction is canonical: unit modulus, with
// positive imaginary part or (imaginary part zero and) positive real part. The
// point is the foot of the perpendicular from the origin.
struct Line {
  Complex point;
  Complex direction;
};

class GeodesicPlane {
public:
  static GeodesicPlane circle(Complex center, double radius);
  static GeodesicPlane line(Complex point, Complex direction);

  bool is_line() const { return std::holds_alternative<Line>(shape_); }
  const Circle& as_circle() const { return std::get<Circle>(shape_); }
  const Line& as_line() const { return std::get<Line>(shape_); }

  bool approx_equal(const GeodesicPlane& other, double tol = 1e-9) const;

private:
  explicit GeodesicPlane(std::variant<Circle, Line> s) : shape_(s) {}
  std::variant<Circle, Line> shape_;
};

class GeodesicLine {
public:
  GeodesicLine(BoundaryPoint u, BoundaryPoint v);

  const BoundaryPoint& first() const { return u_; }
  const BoundaryPoint& second() const { return v_; }

private:
  BoundaryPoint u_, v_;
};

struct UhsPoint {
  Complex z;
  double t;  // height, > 0
};

UhsPoint make_uhs_point(Complex z, double t);

BoundaryPoint mobius_apply(const MobiusMap& g, const BoundaryPoint& p);
// Poincare extension to the interior (quaternion formula).
UhsPoint mobius_apply(const MobiusMap& g, const UhsPoint& x);
MobiusMap mobius_compose(const MobiusMap& g, const MobiusMap& h);

// Image of a plane, obtained by transporting three points of its circle.
GeodesicPlane mobius_apply(const MobiusMap& g, const GeodesicPlane& plane);

GeodesicPlane plane_through(const BoundaryPoint& p1, const BoundaryPoint& p2,
                            const BoundaryPoint& p3);

bool on_circle(const GeodesicPlane& plane, const BoundaryPoint& p);

bool separates(const GeodesicPlane& plane, const BoundaryPoint& p,
               const BoundaryPoint& q);

struct Transverse {
  UhsPoint intersection;
};
struct Contained {};
struct Asymptotic {};
struct Disjoint {};

using Classification = std::variant<Transverse, Contained, Asymptotic, Disjoint>;

Classification classify_plane_geodesic(const GeodesicPlane& plane,
                                       const GeodesicLine& geodesic);

const char* classification_name(const Classification& c);

double hyp_distance(const UhsPoint& p, const UhsPoint& q);

GeodesicPlane bisector_plane(const UhsPoint& p, const UhsPoint& q);

// Residual of the defining equation of the plane at an interior point: zero
// iff the point lies on the hemisphere / vertical half-plane.
double plane_residual(const GeodesicPlane& plane, const UhsPoint& x);

// Complete geodesic through two distinct interior points, as its endpoints.
GeodesicLine geodesic_through(const UhsPoint& p, const UhsPoint& q);

// Distance from an interior point to the geodesic (zero iff on it).
double distance_to_geodesic(const GeodesicLine& geodesic, const UhsPoint& x);

} // namespace filling::hyp3
