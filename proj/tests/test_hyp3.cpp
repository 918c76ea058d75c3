#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "filling/error.hpp"
#include "filling/hyp3.hpp"

using namespace filling;
using namespace filling::hyp3;

namespace {

bool same_point(const BoundaryPoint& a, const BoundaryPoint& b, double tol = 1e-9) {
  return chordal_distance(a, b) <= tol;
}

struct Gen {
  std::mt19937_64 rng{20240611};
  double uni(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
  Complex cplx(double s = 2.0) { return {uni(-s, s), uni(-s, s)}; }
  MobiusMap mobius() {
    for (;;) {
      Complex a = cplx(), b = cplx(), c = cplx(), d = cplx();
      if (std::abs(a * d - b * c) > 0.2)
        return MobiusMap(a, b, c, d);
    }
  }
  GeodesicPlane plane() {
    if (uni(0, 1) < 0.2)
      return GeodesicPlane::line(cplx(), std::polar(1.0, uni(0, 6.3)));
    return GeodesicPlane::circle(cplx(), uni(0.2, 3.0));
  }
  UhsPoint interior() { return make_uhs_point(cplx(), uni(0.2, 3.0)); }
};

// Signed offset of a boundary point from the plane's circle, for choosing
// test points that are clearly off it.
double clearance(const GeodesicPlane& p, Complex z) {
  if (p.is_line())
    return std::abs((std::conj(p.as_line().direction) * (z - p.as_line().point)).imag());
  return std::abs(std::abs(z - p.as_circle().center) - p.as_circle().radius);
}

UhsPoint point_on_plane(const GeodesicPlane& p, Gen& g) {
  if (p.is_line()) {
    const Line& l = p.as_line();
    return make_uhs_point(l.point + g.uni(-3, 3) * l.direction, g.uni(0.1, 3.0));
  }
  const Circle& c = p.as_circle();
  double theta = g.uni(0.05, 1.5), phi = g.uni(0, 6.3);
  return make_uhs_point(c.center + c.radius * std::sin(theta) * std::polar(1.0, phi),
                        c.radius * std::cos(theta));
}

} // namespace

TEST_CASE("mobius_apply examples") {
  CHECK(same_point(mobius_apply(MobiusMap::identity(), BoundaryPoint(Complex(3, 4))), Complex(3, 4)));
  MobiusMap inv(0.0, -1.0, 1.0, 0.0);
  CHECK(same_point(mobius_apply(inv, BoundaryPoint(2.0)), BoundaryPoint(-0.5)));
  CHECK(mobius_apply(inv, BoundaryPoint(0.0)).is_infinity());
  CHECK(same_point(mobius_apply(inv, BoundaryPoint::infinity()), BoundaryPoint(0.0)));
}

TEST_CASE("mobius maps are normalized and compared up to sign") {
  MobiusMap g(2.0, 0.0, 0.0, 2.0);
  CHECK(g.approx_equal(MobiusMap::identity()));
  MobiusMap h(Complex(0, 2), 1.0, 3.0, Complex(1, 1));
  CHECK(std::abs(h.a() * h.d() - h.b() * h.c() - 1.0) <= 1e-9);
  CHECK_THROWS_AS(MobiusMap(1.0, 2.0, 2.0, 4.0), Error);
}

TEST_CASE("mobius_compose examples") {
  Gen gen;
  MobiusMap g = gen.mobius();
  CHECK(mobius_compose(g, MobiusMap::identity()).approx_equal(g));
  MobiusMap inv(0.0, -1.0, 1.0, 0.0);
  CHECK(mobius_compose(inv, inv).approx_equal(MobiusMap::identity()));
  CHECK(mobius_compose(g, g.inverse()).approx_equal(MobiusMap::identity(), 1e-8));
}

TEST_CASE("composition is a homomorphism on the boundary") {
  Gen gen;
  for (int trial = 0; trial < 1000; ++trial) {
    MobiusMap g = gen.mobius(), h = gen.mobius();
    BoundaryPoint p = trial % 50 == 0 ? BoundaryPoint::infinity() : BoundaryPoint(gen.cplx(3.0));
    CHECK(chordal_distance(mobius_apply(mobius_compose(g, h), p), mobius_apply(g, mobius_apply(h, p))) <
          1e-8);
  }
}

TEST_CASE("plane_through examples") {
  CHECK(plane_through(1.0, Complex(0, 1), -1.0).approx_equal(GeodesicPlane::circle(0.0, 1.0)));
  auto real_axis = plane_through(0.0, 1.0, BoundaryPoint::infinity());
  REQUIRE(real_axis.is_line());
  CHECK(real_axis.approx_equal(GeodesicPlane::line(0.0, 1.0)));
  CHECK(plane_through(0.0, 2.0, Complex(1, 1)).approx_equal(GeodesicPlane::circle(1.0, 1.0)));
  CHECK_THROWS_AS(plane_through(1.0, 1.0, 2.0), Error);
}

TEST_CASE("lines are canonical") {
  auto a = GeodesicPlane::line(Complex(5, 0), Complex(0, -3));
  auto b = GeodesicPlane::line(Complex(5, 7), Complex(0, 1));
  CHECK(a.approx_equal(b));
  CHECK(std::abs(a.as_line().direction - Complex(0, 1)) < 1e-12);
  CHECK(std::abs(a.as_line().point - Complex(5, 0)) < 1e-12);
  CHECK_THROWS_AS(GeodesicPlane::line(0.0, 0.0), Error);
  CHECK_THROWS_AS(GeodesicPlane::circle(0.0, -1.0), Error);
}

TEST_CASE("separates examples") {
  auto unit = GeodesicPlane::circle(0.0, 1.0);
  CHECK(separates(unit, 0.0, BoundaryPoint::infinity()));
  CHECK_FALSE(separates(unit, 2.0, 3.0));
  CHECK(separates(GeodesicPlane::line(0.0, 1.0), Complex(0, 1), Complex(0, -1)));
  try {
    separates(unit, 1.0, 0.0);
    FAIL("expected OnCircle");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OnCircle);
  }
  CHECK_THROWS_AS(separates(GeodesicPlane::line(0.0, 1.0), BoundaryPoint::infinity(), 0.5), Error);
}

TEST_CASE("separation is mobius invariant") {
  Gen gen;
  int checked = 0;
  while (checked < 1000) {
    GeodesicPlane plane = gen.plane();
    Complex p = gen.cplx(3.0), q = gen.cplx(3.0);
    if (clearance(plane, p) < 1e-3 || clearance(plane, q) < 1e-3)
      continue;
    MobiusMap g = gen.mobius();
    CHECK(separates(plane, p, q) ==
          separates(mobius_apply(g, plane), mobius_apply(g, BoundaryPoint(p)), mobius_apply(g, BoundaryPoint(q))));
    ++checked;
  }
}

TEST_CASE("classify examples") {
  auto unit = GeodesicPlane::circle(0.0, 1.0);
  auto c = classify_plane_geodesic(unit, GeodesicLine(0.0, BoundaryPoint::infinity()));
  REQUIRE(std::holds_alternative<Transverse>(c));
  auto x = std::get<Transverse>(c).intersection;
  CHECK(std::abs(x.z) < 1e-12);
  CHECK(x.t == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::holds_alternative<Contained>(classify_plane_geodesic(unit, GeodesicLine(1.0, -1.0))));
  CHECK(std::holds_alternative<Disjoint>(classify_plane_geodesic(unit, GeodesicLine(2.0, 3.0))));
  CHECK(std::holds_alternative<Asymptotic>(classify_plane_geodesic(unit, GeodesicLine(1.0, 3.0))));
  CHECK(std::string(classification_name(c)) == "Transverse");
  CHECK_THROWS_AS(GeodesicLine(1.0, 1.0), Error);
}

TEST_CASE("classification is exhaustive and matches separation") {
  Gen gen;
  for (int trial = 0; trial < 10000; ++trial) {
    GeodesicPlane plane = gen.plane();
    // Some endpoints are placed on the circle to reach every case.
    auto endpoint = [&](int mode) -> BoundaryPoint {
      if (mode == 0 && plane.is_line())
        return BoundaryPoint::infinity();
      if (mode == 0 || mode == 1) {
        if (plane.is_line())
          return plane.as_line().point + gen.uni(-2, 2) * plane.as_line().direction;
        return plane.as_circle().center + plane.as_circle().radius * std::polar(1.0, gen.uni(0, 6.3));
      }
      return gen.cplx(3.0);
    };
    int mu = trial % 5, mv = (trial / 5) % 5;
    BoundaryPoint u = endpoint(mu), v = endpoint(mv);
    if (chordal_distance(u, v) <= 1e-6)
      continue;
    bool on_u = on_circle(plane, u), on_v = on_circle(plane, v);
    auto c = classify_plane_geodesic(plane, GeodesicLine(u, v));
    if (on_u && on_v) {
      CHECK(std::holds_alternative<Contained>(c));
    } else if (on_u || on_v) {
      CHECK(std::holds_alternative<Asymptotic>(c));
    } else {
      bool sep = separates(plane, u, v);
      CHECK(std::holds_alternative<Transverse>(c) == sep);
      CHECK(std::holds_alternative<Disjoint>(c) == !sep);
    }
  }
}

TEST_CASE("transverse intersections lie on the plane and the geodesic") {
  Gen gen;
  int seen = 0;
  for (int trial = 0; trial < 3000; ++trial) {
    GeodesicPlane plane = gen.plane();
    BoundaryPoint u = gen.cplx(3.0);
    BoundaryPoint v = trial % 7 == 0 ? BoundaryPoint::infinity() : BoundaryPoint(gen.cplx(3.0));
    if (chordal_distance(u, v) < 1e-3)
      continue;
    GeodesicLine g(u, v);
    auto c = classify_plane_geodesic(plane, g);
    if (auto* t = std::get_if<Transverse>(&c)) {
      ++seen;
      CHECK(std::abs(plane_residual(plane, t->intersection)) < 1e-8);
      CHECK(distance_to_geodesic(g, t->intersection) < 1e-8);
    }
  }
  CHECK(seen > 300);
}

TEST_CASE("classification is mobius invariant") {
  Gen gen;
  for (int trial = 0; trial < 1000; ++trial) {
    GeodesicPlane plane = gen.plane();
    Complex u = gen.cplx(3.0), v = gen.cplx(3.0);
    if (clearance(plane, u) < 1e-3 || clearance(plane, v) < 1e-3 || std::abs(u - v) < 1e-3)
      continue;
    MobiusMap g = gen.mobius();
    auto before = classify_plane_geodesic(plane, GeodesicLine(u, v));
    auto after = classify_plane_geodesic(mobius_apply(g, plane),
                                         GeodesicLine(mobius_apply(g, BoundaryPoint(u)), mobius_apply(g, BoundaryPoint(v))));
    CHECK(before.index() == after.index());
  }
}

TEST_CASE("interior mobius action is an isometry") {
  Gen gen;
  for (int trial = 0; trial < 500; ++trial) {
    MobiusMap g = gen.mobius();
    UhsPoint p = gen.interior(), q = gen.interior();
    double d = hyp_distance(p, q);
    CHECK(hyp_distance(mobius_apply(g, p), mobius_apply(g, q)) == doctest::Approx(d).epsilon(1e-8));
  }
}

TEST_CASE("hyp_distance examples") {
  CHECK(hyp_distance(make_uhs_point(0.0, 1.0), make_uhs_point(0.0, std::exp(1.0))) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(hyp_distance(make_uhs_point(0.0, 1.0), make_uhs_point(0.0, 1.0)) == 0.0);
  CHECK(hyp_distance(make_uhs_point(1.0, 1.0), make_uhs_point(0.0, 1.0)) ==
        doctest::Approx(0.9624236501192069).epsilon(1e-14));
  CHECK_THROWS_AS(make_uhs_point(0.0, 0.0), Error);
}

TEST_CASE("hyp_distance is a metric on samples") {
  Gen gen;
  for (int trial = 0; trial < 1000; ++trial) {
    UhsPoint a = gen.interior(), b = gen.interior(), c = gen.interior();
    CHECK(hyp_distance(a, b) == doctest::Approx(hyp_distance(b, a)).epsilon(1e-14));
    CHECK(hyp_distance(a, c) <= hyp_distance(a, b) + hyp_distance(b, c) + 1e-12);
  }
}

TEST_CASE("bisector examples") {
  auto b = bisector_plane(make_uhs_point(0.0, 1.0), make_uhs_point(0.0, 4.0));
  CHECK(b.approx_equal(GeodesicPlane::circle(0.0, 2.0)));
  auto v = bisector_plane(make_uhs_point(0.0, 1.0), make_uhs_point(2.0, 1.0));
  REQUIRE(v.is_line());
  CHECK(v.approx_equal(GeodesicPlane::line(1.0, Complex(0, 1))));
  try {
    bisector_plane(make_uhs_point(0.0, 1.0), make_uhs_point(0.0, 1.0 + 1e-12));
    FAIL("expected CoincidentPoints");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CoincidentPoints);
  }
}

TEST_CASE("bisector is symmetric and equidistant") {
  Gen gen;
  for (int trial = 0; trial < 200; ++trial) {
    UhsPoint p = gen.interior(), q = gen.interior();
    if (trial % 4 == 0)
      q.t = p.t;
    auto b = bisector_plane(p, q);
    CHECK(b.approx_equal(bisector_plane(q, p), 1e-8));
    for (int i = 0; i < 20; ++i) {
      UhsPoint x = point_on_plane(b, gen);
      CHECK(std::abs(hyp_distance(x, p) - hyp_distance(x, q)) < 1e-8);
    }
  }
}
