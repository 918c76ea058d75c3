#pragma once

// Closed-form volume, area and rank bounds for hyperbolic 3-manifolds and
// the hyperbolic-plane formulas behind them.

namespace filling::bounds {

// Meyerhoff's lower bound for the Margulis constant of hyperbolic 3-manifolds.
inline constexpr double kMeyerhoffEpsilon = 0.104 / 10;

// Volume of a hyperbolic ball, pi/2 (e^2r - e^-2r - 4r), evaluated without
// cancellation for small r. Throws NegativeRadius.
double ball_volume(double r);

// Area of the boundary sphere, pi (e^2r + e^-2r - 2) = 4 pi sinh^2 r.
double sphere_area(double r);

struct BallGeometry {
  double r;
  double volume;
  double boundary_area;
};

BallGeometry ball_geometry(double r);

// Inverse of ball_volume by bisection. Throws NonpositiveVolume.
double radius_for_volume(double volume);

// Lower bound for the area of a filling surface, with the comparison ball's
// quantities.
struct FillingAreaBound {
  double bound;              // Vol(M)
  double radius;             // ball with volume Vol(M)
  double sphere_area;        // its boundary area
  double twice_ball_volume;  // 2 Vol(M)
};

FillingAreaBound filling_area_bound(double manifold_volume);

// V(1.25 eps) / V(0.25 eps)^2: rank(pi_1 M) <= this constant times Vol(M).
// Throws NonpositiveEpsilon.
double rank_constant(double epsilon = kMeyerhoffEpsilon);

// Leading term of rank_constant as eps -> 0.
double rank_constant_asymptotic(double epsilon);

// Upper bound 4 pi sinh^2 d for the area of a geodesic plane inside a ball of
// radius d. Throws NegativeRadius.
double plane_ball_area(double d);

// (1 + lambda0) / (1 - lambda0). Throws LambdaOutOfRange unless 0 <= lambda0 < 1.
double qf_from_curvature(double lambda0);

// C log(1 + eps). Throws InvalidArgument for eps < 0 or C <= 0.
double curvature_bound(double epsilon, double constant);

struct SurfaceFormulas {
  double area;            // 4 pi (g - 1)
  double filling_length;  // 2 pi (g - 1)
};

// Throws GenusTooSmall for g < 2.
SurfaceFormulas surface_formulas(int genus);

struct Disk2d {
  double area;       // 2 pi (cosh r - 1)
  double perimeter;  // 2 pi sinh r
};

// Throws NegativeRadius.
Disk2d disk2d(double r);

} // namespace filling::bounds
