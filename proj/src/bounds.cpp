#include "filling/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/roots.hpp>

#include "filling/error.hpp"

namespace filling::bounds {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSeriesCutoff = 1e-4;
constexpr double kClosedFormCutoff = 0.5;

void check_radius(double r) {
  if (!(r >= 0))
    fail(ErrorCode::NegativeRadius, "radius must be nonnegative");
}

// sinh x - x for 0 <= x < 1.
double sinh_minus_identity(double x) {
  double x2 = x * x;
  double term = x * x2 / 6.0;
  double sum = 0;
  for (int k = 1; term > std::numeric_limits<double>::epsilon() * 1e-3 * sum; ++k) {
    sum += term;
    term *= x2 / ((2.0 * k + 2.0) * (2.0 * k + 3.0));
  }
  return sum;
}

} // namespace

double ball_volume(double r) {
  check_radius(r);
  if (r < kSeriesCutoff) {
    double r2 = r * r;
    return 4.0 * kPi * r * r2 * (1.0 / 3.0 + r2 * (1.0 / 15.0 + r2 * (2.0 / 315.0)));
  }
  if (r < kClosedFormCutoff)
    return kPi * sinh_minus_identity(2.0 * r);
  return 0.5 * kPi * (std::exp(2.0 * r) - std::exp(-2.0 * r) - 4.0 * r);
}

double sphere_area(double r) {
  check_radius(r);
  double s = std::sinh(r);
  return 4.0 * kPi * s * s;
}

BallGeometry ball_geometry(double r) { return {r, ball_volume(r), sphere_area(r)}; }

double radius_for_volume(double volume) {
  if (!(volume > 0))
    fail(ErrorCode::NonpositiveVolume, "volume must be positive");
  if (!std::isfinite(volume))
    fail(ErrorCode::InvalidArgument, "volume must be finite");
  double hi = 1.0;
  while (ball_volume(hi) < volume)
    hi *= 2.0;
  auto f = [volume](double r) { return ball_volume(r) - volume; };
  auto [lo, up] = boost::math::tools::bisect(f, 0.0, hi, boost::math::tools::eps_tolerance<double>(52));
  return 0.5 * (lo + up);
}

FillingAreaBound filling_area_bound(double manifold_volume) {
  double r = radius_for_volume(manifold_volume);
  return {manifold_volume, r, sphere_area(r), 2.0 * manifold_volume};
}

double rank_constant(double epsilon) {
  if (!(epsilon > 0))
    fail(ErrorCode::NonpositiveEpsilon, "Margulis constant must be positive");
  double small = ball_volume(0.25 * epsilon);
  return ball_volume(1.25 * epsilon) / (small * small);
}

double rank_constant_asymptotic(double epsilon) {
  if (!(epsilon > 0))
    fail(ErrorCode::NonpositiveEpsilon, "Margulis constant must be positive");
  return 3.0 / (4.0 * kPi) * std::pow(1.25, 3) / std::pow(0.25, 6) / std::pow(epsilon, 3);
}

double plane_ball_area(double d) {
  check_radius(d);
  double s = std::sinh(d);
  return 4.0 * kPi * s * s;
}

double qf_from_curvature(double lambda0) {
  if (!(lambda0 >= 0 && lambda0 < 1))
    fail(ErrorCode::LambdaOutOfRange, "principal curvature bound must lie in [0, 1)");
  return (1.0 + lambda0) / (1.0 - lambda0);
}

double curvature_bound(double epsilon, double constant) {
  if (!(epsilon >= 0))
    fail(ErrorCode::InvalidArgument, "epsilon must be nonnegative");
  if (!(constant > 0))
    fail(ErrorCode::InvalidArgument, "constant must be positive");
  return constant * std::log1p(epsilon);
}

SurfaceFormulas surface_formulas(int genus) {
  if (genus < 2)
    fail(ErrorCode::GenusTooSmall, "genus must be at least 2");
  return {4.0 * kPi * (genus - 1), 2.0 * kPi * (genus - 1)};
}

Disk2d disk2d(double r) {
  check_radius(r);
  double half = std::sinh(0.5 * r);
  return {4.0 * kPi * half * half, 2.0 * kPi * std::sinh(r)};
}

} // namespace filling::bounds
