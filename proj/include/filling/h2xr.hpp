#pragma once

// Regular hyperbolic 4g-gons in the Poincare disk and slanted annuli in the
// prism O x [0,1] over them. A vertical fiber over a point of O meets a
// slanted sheet exactly once when the point lies in the sheet's footprint, so
// covering O by footprints obstructs every vertical fiber.

#include <complex>
#include <cstdint>
#include <vector>

#include <json.hpp>

namespace filling::h2xr {

using Complex = std::complex<double>;

struct HypPolygon {
  int sides;
  double vertex_angle;
  double circumradius;           // hyperbolic
  std::vector<Complex> vertices; // counterclockwise, vertex 0 on the positive real axis
};

// Regular polygon with the given interior angle; the circumradius comes from
// cosh R = cot(pi/k) cot(angle/2). Requires (k - 2) pi > k * angle.
HypPolygon build_regular_polygon(int sides, double vertex_angle);

// The 4g-gon with vertex angle 2 pi / 4g whose side pairing gives a genus-g
// surface. Throws GenusTooSmall for g < 2.
HypPolygon build_polygon(int genus);

double disk_distance(Complex a, Complex b);

// Interior angle at vertex i measured by moving the vertex to the origin,
// where the two sides become straight segments.
double measured_vertex_angle(const HypPolygon& poly, int i);

// Closed polygon membership with chord tolerance.
bool contains(const HypPolygon& poly, Complex z);
bool on_boundary(const HypPolygon& poly, Complex z);

Complex rotate(const HypPolygon& poly, Complex z, int steps);

// Midpoint of side j (from vertex j to vertex j + 1).
Complex side_midpoint(const HypPolygon& poly, int j);

// One parallelogram of a slanted annulus. The annulus lies over the geodesic
// chord p -> q (both on the polygon boundary); sheet 0 is the half next to p,
// sheet 1 the half next to q. Its footprint is the set of points within
// half_width of that half-chord, and its height above a point at signed
// distance n from the chord is 1/2 + slope * n.
struct AnnulusFamily {
  Complex p;
  Complex q;
  double half_width;
  double slope;
  int sheet;
};

// Fermi coordinates of z relative to the chord: u is arclength from p along
// the chord, n the signed distance from it.
struct ChordCoordinates {
  double u;
  double n;
  double length;  // chord length
};
ChordCoordinates chord_coordinates(const AnnulusFamily& f, Complex z);

double footprint_distance(const AnnulusFamily& f, Complex z);
bool in_footprint(const AnnulusFamily& f, Complex z);
double sheet_height(const AnnulusFamily& f, Complex z);

// Chord from vertex 0 to vertex `skip`, sheet 0, slope 1 / (2 half_width).
AnnulusFamily diagonal_seed(const HypPolygon& poly, int skip, double half_width);

// The octagon's seed: diagonal from vertex 0 to vertex 3 with half-width 0.8.
// For other 4g-gons the skip is round(3k/8) with the same half-width.
AnnulusFamily standard_seed(const HypPolygon& poly);

// Orbit of the seed under rotation by 2 pi / k, with both parallelograms of
// each annulus. Deduplicated by footprint. Throws FootprintOutsidePolygon
// unless both chord endpoints lie on the polygon boundary.
std::vector<AnnulusFamily> annulus_orbit(const HypPolygon& poly, const AnnulusFamily& seed);

struct SampleRecord {
  Complex z;
  bool covered;
  int family;  // first covering family, -1 if none
};

struct CoverageReport {
  bool covered;
  std::int64_t samples;
  std::int64_t uncovered;
  double uncovered_fraction;
  std::vector<SampleRecord> records;  // filled only when requested
};

inline constexpr std::int64_t kMinSamples = 10000;

// Uniform samples (by hyperbolic area) of the polygon; sample i depends only
// on (seed, i).
Complex sample_point(const HypPolygon& poly, std::uint64_t seed, std::uint64_t index);

CoverageReport fiber_obstruction_check(const HypPolygon& poly,
                                       const std::vector<AnnulusFamily>& families,
                                       std::int64_t samples, std::uint64_t seed = 0,
                                       bool keep_records = false);

CoverageReport fiber_obstruction_check_serial(const HypPolygon& poly,
                                              const std::vector<AnnulusFamily>& families,
                                              std::int64_t samples, std::uint64_t seed = 0,
                                              bool keep_records = false);

struct GeodesicCrossingReport {
  std::int64_t trials;
  std::int64_t failures;  // geodesics that met no sheet within the length budget
};

// Random non-vertical geodesics of the product metric in the quotient (the
// 4g-gon with opposite sides paired, the prism's ends identified), each
// followed for horizontal length max_length and checked for crossing a
// sheet. Statistical evidence only: failures are counted, not excluded.
GeodesicCrossingReport non_vertical_crossing_check(const HypPolygon& poly,
                                                   const std::vector<AnnulusFamily>& families,
                                                   std::int64_t trials, std::uint64_t seed = 0,
                                                   double max_length = 50.0);

nlohmann::json to_json(const HypPolygon& poly, int genus);
nlohmann::json to_json(const AnnulusFamily& f);
AnnulusFamily annulus_from_json(const nlohmann::json& j);

} // namespace filling::h2xr
