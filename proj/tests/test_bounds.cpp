#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "filling/bounds.hpp"
#include "filling/error.hpp"

using namespace filling;
using namespace filling::bounds;

namespace {

constexpr double kPi = std::numbers::pi;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

// Reference values below were evaluated with 40-digit arithmetic.

TEST_CASE("ball volume and area reference values") {
  CHECK(ball_volume(0) == 0.0);
  CHECK(sphere_area(0) == 0.0);
  CHECK(rel(ball_volume(1.0), 5.110932705708289) < 1e-14);
  CHECK(rel(sphere_area(1.0), 17.355387381771437) < 1e-14);
  CHECK(std::abs(sphere_area(1.0) - 4 * kPi * std::sinh(1.0) * std::sinh(1.0)) < 1e-10);
  CHECK(rel(ball_volume(0.0026), 7.362227617657251e-8) < 1e-12);
  CHECK(rel(ball_volume(0.013), 9.203083138618532e-6) < 1e-12);
  CHECK(rel(ball_volume(1e-5), 4.188790204870167e-15) < 1e-13);
  CHECK(rel(ball_volume(0.3), 0.11515062440466477) < 1e-13);
  CHECK(rel(ball_volume(10.0), 762095644.0065737) < 1e-13);
}

TEST_CASE("ball volume is continuous across its evaluation regimes") {
  for (double r : {1e-4, 0.5}) {
    double below = ball_volume(std::nextafter(r, 0.0)), at = ball_volume(r);
    CHECK(rel(below, at) < 1e-12);
  }
}

TEST_CASE("volume derivative is the sphere area") {
  for (int i = 1; i <= 50; ++i) {
    double r = 0.1 * i, h = 1e-5 * r;
    double fd = (ball_volume(r + h) - ball_volume(r - h)) / (2 * h);
    CAPTURE(r);
    CHECK(rel(fd, sphere_area(r)) < 1e-6);
  }
}

TEST_CASE("isoperimetric gap") {
  for (int i = 1; i <= 1000; ++i) {
    double r = 0.01 * i;
    CHECK(sphere_area(r) - 2 * ball_volume(r) >= 0.0);
  }
  CHECK(sphere_area(1e-4) - 2 * ball_volume(1e-4) < 2e-7);
  CHECK(sphere_area(1e-4) - 2 * ball_volume(1e-4) > 0.0);
}

TEST_CASE("radius for volume") {
  CHECK(rel(radius_for_volume(1.0), 0.6054030456066830) < 1e-12);
  CHECK(std::abs(radius_for_volume(ball_volume(2.0)) - 2.0) < 1e-12);
  for (int i = 0; i <= 200; ++i) {
    double r = 1e-3 * std::pow(1e4, i / 200.0);
    CHECK(std::abs(radius_for_volume(ball_volume(r)) - r) < 1e-9);
    double v = ball_volume(r);
    CHECK(rel(ball_volume(radius_for_volume(v)), v) < 1e-10);
  }
  CHECK(code_of([] { radius_for_volume(0.0); }) == ErrorCode::NonpositiveVolume);
  CHECK(code_of([] { radius_for_volume(-2.0); }) == ErrorCode::NonpositiveVolume);
}

TEST_CASE("filling area bound") {
  auto one = filling_area_bound(1.0);
  CHECK(one.bound == 1.0);
  CHECK(rel(one.radius, 0.6054030456066830) < 1e-12);
  CHECK(one.twice_ball_volume == 2.0);
  CHECK(one.sphere_area >= one.twice_ball_volume);
  auto ten = filling_area_bound(10.0);
  CHECK(rel(ten.radius, 1.212630237417378) < 1e-12);
  CHECK(rel(ten.sphere_area, 29.510955306494172) < 1e-11);
  CHECK(ten.sphere_area >= 20.0);
  CHECK(filling_area_bound(1e-12).bound == 1e-12);
  CHECK(filling_area_bound(1e-12).radius < 1e-3);
}

TEST_CASE("rank constant") {
  double c = rank_constant();
  CHECK(rel(c, 1697910775.8446106) < 1e-10);
  CHECK(c < 1.698e9);
  CHECK(rank_constant(0.0104) == c);
  double exact = rank_constant(1e-3), approx = rank_constant_asymptotic(1e-3);
  CHECK(rel(exact, 1909859866187.3722) < 1e-10);
  CHECK(rel(approx, 1909859317102.744) < 1e-12);
  CHECK(std::abs(exact - approx) / exact < 1e-3);
  CHECK(std::abs((exact - approx) / exact - 2.875e-7) < 1e-9);
  CHECK(code_of([] { rank_constant(0.0); }) == ErrorCode::NonpositiveEpsilon);
  CHECK(code_of([] { rank_constant_asymptotic(-1.0); }) == ErrorCode::NonpositiveEpsilon);
}

TEST_CASE("rank constant scales as the inverse cube") {
  for (double eps : {1e-4, 3e-4, 1e-3}) {
    double ratio = rank_constant(eps) / rank_constant(2 * eps);
    CHECK(ratio == doctest::Approx(8.0).epsilon(1e-4));
  }
}

TEST_CASE("plane ball area") {
  CHECK(plane_ball_area(0) == 0.0);
  CHECK(rel(plane_ball_area(1.0), 17.355387381771437) < 1e-14);
  double last = -1;
  for (int i = 0; i <= 500; ++i) {
    double d = 0.02 * i;
    CHECK(plane_ball_area(d) == sphere_area(d));
    CHECK(plane_ball_area(d) > last);
    last = plane_ball_area(d);
  }
  CHECK(code_of([] { plane_ball_area(-0.1); }) == ErrorCode::NegativeRadius);
  CHECK(code_of([] { ball_volume(-0.1); }) == ErrorCode::NegativeRadius);
  CHECK(code_of([] { sphere_area(-0.1); }) == ErrorCode::NegativeRadius);
}

TEST_CASE("curvature conversions") {
  CHECK(qf_from_curvature(0.0) == 1.0);
  CHECK(qf_from_curvature(0.5) == 3.0);
  double last = 0;
  for (int i = 0; i < 1000; ++i) {
    double l = i / 1000.0;
    CHECK(qf_from_curvature(l) > last);
    last = qf_from_curvature(l);
  }
  CHECK(qf_from_curvature(1 - 1e-9) > 1e9);
  CHECK(code_of([] { qf_from_curvature(1.0); }) == ErrorCode::LambdaOutOfRange);
  CHECK(code_of([] { qf_from_curvature(-0.1); }) == ErrorCode::LambdaOutOfRange);
  for (double c : {0.1, 1.0, 7.5})
    for (int i = 0; i <= 100; ++i) {
      double eps = 0.05 * i;
      CHECK(curvature_bound(eps, c) <= c * eps);
      CHECK(curvature_bound(eps, c) == doctest::Approx(c * std::log(1 + eps)));
    }
  CHECK(curvature_bound(0.0, 2.0) == 0.0);
  CHECK(code_of([] { curvature_bound(-0.1, 1.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { curvature_bound(0.1, 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("surface and disk formulas") {
  auto g2 = surface_formulas(2);
  CHECK(g2.area == doctest::Approx(4 * kPi));
  CHECK(g2.filling_length == doctest::Approx(2 * kPi));
  CHECK(surface_formulas(5).area == doctest::Approx(16 * kPi));
  CHECK(code_of([] { surface_formulas(1); }) == ErrorCode::GenusTooSmall);
  auto zero = disk2d(0.0);
  CHECK(zero.area == 0.0);
  CHECK(zero.perimeter == 0.0);
  for (int i = 1; i <= 1000; ++i) {
    double r = 0.01 * i;
    auto d = disk2d(r);
    CHECK(d.area <= d.perimeter);
    CHECK(d.area == doctest::Approx(2 * kPi * (std::cosh(r) - 1)).epsilon(1e-12));
    CHECK(d.perimeter == doctest::Approx(2 * kPi * std::sinh(r)).epsilon(1e-12));
  }
  CHECK(code_of([] { disk2d(-1.0); }) == ErrorCode::NegativeRadius);
}

TEST_CASE("ball geometry record") {
  auto b = ball_geometry(1.5);
  CHECK(b.r == 1.5);
  CHECK(b.volume == ball_volume(1.5));
  CHECK(b.boundary_area == sphere_area(1.5));
  CHECK(b.boundary_area >= 2 * b.volume);
}
