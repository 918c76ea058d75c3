#include "filling/h2xr.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "filling/error.hpp"
#include "filling/rng.hpp"
#include "filling/tolerance.hpp"

namespace filling::h2xr {

namespace {

constexpr double kPi = std::numbers::pi;

// Geodesic through vertices j and j+1: a circle orthogonal to the unit circle
// whose center lies on the bisecting ray of the side.
struct SideCircle {
  Complex center;
  double radius;
};

SideCircle side_circle(const HypPolygon& poly, int j) {
  const int k = poly.sides;
  double re = std::abs(poly.vertices[0]);
  double dist = (re * re + 1.0) / (2.0 * re * std::cos(kPi / k));
  Complex dir = std::polar(1.0, 2.0 * kPi * (j + 0.5) / k);
  return {dist * dir, std::sqrt(dist * dist - 1.0)};
}

// Disk automorphism sending a to 0.
Complex to_origin(Complex a, Complex z) { return (z - a) / (1.0 - std::conj(a) * z); }

void check_family(const HypPolygon& poly, const AnnulusFamily& f) {
  if (!on_boundary(poly, f.p) || !on_boundary(poly, f.q))
    fail(ErrorCode::FootprintOutsidePolygon, "annulus chord endpoints must lie on the polygon boundary");
  if (std::abs(f.p - f.q) <= tol::kChord)
    fail(ErrorCode::FootprintOutsidePolygon, "annulus chord endpoints coincide");
  if (!(f.half_width > 0))
    fail(ErrorCode::InvalidArgument, "annulus half-width must be positive");
  if (f.slope == 0 || !std::isfinite(f.slope))
    fail(ErrorCode::InvalidArgument, "annulus slope must be nonzero");
  if (f.sheet != 0 && f.sheet != 1)
    fail(ErrorCode::InvalidArgument, "annulus sheet must be 0 or 1");
}

} // namespace

HypPolygon build_regular_polygon(int sides, double vertex_angle) {
  if (sides < 3)
    fail(ErrorCode::InvalidArgument, "polygon needs at least 3 sides");
  if (!(vertex_angle > 0) || vertex_angle * sides >= (sides - 2) * kPi)
    fail(ErrorCode::InvalidArgument, "vertex angle too large for a hyperbolic polygon");
  double cosh_r = 1.0 / (std::tan(kPi / sides) * std::tan(0.5 * vertex_angle));
  HypPolygon poly{sides, vertex_angle, std::acosh(cosh_r), {}};
  double re = std::tanh(0.5 * poly.circumradius);
  for (int j = 0; j < sides; ++j)
    poly.vertices.push_back(std::polar(re, 2.0 * kPi * j / sides));
  return poly;
}

HypPolygon build_polygon(int genus) {
  if (genus < 2)
    fail(ErrorCode::GenusTooSmall, "genus must be at least 2");
  const int k = 4 * genus;
  return build_regular_polygon(k, 2.0 * kPi / k);
}

double disk_distance(Complex a, Complex b) {
  double num = 2.0 * std::norm(a - b);
  double den = (1.0 - std::norm(a)) * (1.0 - std::norm(b));
  return std::acosh(1.0 + num / den);
}

double measured_vertex_angle(const HypPolygon& poly, int i) {
  const int k = poly.sides;
  Complex v = poly.vertices[((i % k) + k) % k];
  Complex a = to_origin(v, poly.vertices[((i - 1) % k + k) % k]);
  Complex b = to_origin(v, poly.vertices[(i + 1) % k]);
  return std::abs(std::arg(b / a));
}

bool contains(const HypPolygon& poly, Complex z) {
  if (std::abs(z) >= 1.0)
    return false;
  for (int j = 0; j < poly.sides; ++j) {
    SideCircle s = side_circle(poly, j);
    if (std::abs(z - s.center) < s.radius - tol::kChord)
      return false;
  }
  return true;
}

bool on_boundary(const HypPolygon& poly, Complex z) {
  if (!contains(poly, z))
    return false;
  for (int j = 0; j < poly.sides; ++j) {
    SideCircle s = side_circle(poly, j);
    if (std::abs(std::abs(z - s.center) - s.radius) <= tol::kChord)
      return true;
  }
  return false;
}

Complex rotate(const HypPolygon& poly, Complex z, int steps) {
  return z * std::polar(1.0, 2.0 * kPi * steps / poly.sides);
}

Complex side_midpoint(const HypPolygon& poly, int j) {
  SideCircle s = side_circle(poly, j);
  double d = std::abs(s.center);
  return (d - s.radius) * (s.center / d);
}

ChordCoordinates chord_coordinates(const AnnulusFamily& f, Complex z) {
  Complex q = to_origin(f.p, f.q);
  Complex turn = std::conj(q) / std::abs(q);
  Complex x = to_origin(f.p, z) * turn;
  // Cayley map: the real diameter becomes the positive imaginary axis, with
  // arclength from 0 equal to log |w|.
  Complex w = Complex(0.0, 1.0) * (1.0 + x) / (1.0 - x);
  return {std::log(std::abs(w)), std::asinh(w.real() / w.imag()), 2.0 * std::atanh(std::abs(q))};
}

double footprint_distance(const AnnulusFamily& f, Complex z) {
  ChordCoordinates c = chord_coordinates(f, z);
  double lo = f.sheet == 0 ? 0.0 : 0.5 * c.length;
  double hi = f.sheet == 0 ? 0.5 * c.length : c.length;
  if (c.u >= lo && c.u <= hi)
    return std::abs(c.n);
  double along = c.u < lo ? lo - c.u : c.u - hi;
  return std::acosh(std::cosh(c.n) * std::cosh(along));
}

bool in_footprint(const AnnulusFamily& f, Complex z) { return footprint_distance(f, z) <= f.half_width; }

double sheet_height(const AnnulusFamily& f, Complex z) { return 0.5 + f.slope * chord_coordinates(f, z).n; }

AnnulusFamily diagonal_seed(const HypPolygon& poly, int skip, double half_width) {
  if (skip <= 0 || skip >= poly.sides)
    fail(ErrorCode::InvalidArgument, "diagonal skip must be in [1, k)");
  if (!(half_width > 0))
    fail(ErrorCode::InvalidArgument, "annulus half-width must be positive");
  return AnnulusFamily{poly.vertices[0], poly.vertices[skip], half_width, 0.5 / half_width, 0};
}

AnnulusFamily standard_seed(const HypPolygon& poly) {
  int skip = static_cast<int>(std::lround(3.0 * poly.sides / 8.0));
  return diagonal_seed(poly, skip, 0.8);
}

std::vector<AnnulusFamily> annulus_orbit(const HypPolygon& poly, const AnnulusFamily& seed) {
  check_family(poly, seed);
  std::vector<AnnulusFamily> out;
  auto same = [](const AnnulusFamily& a, const AnnulusFamily& b) {
    Complex ao = a.sheet == 0 ? a.p : a.q, ai = a.sheet == 0 ? a.q : a.p;
    Complex bo = b.sheet == 0 ? b.p : b.q, bi = b.sheet == 0 ? b.q : b.p;
    return std::abs(ao - bo) <= tol::kChord && std::abs(ai - bi) <= tol::kChord;
  };
  for (int j = 0; j < poly.sides; ++j)
    for (int sheet : {seed.sheet, 1 - seed.sheet}) {
      AnnulusFamily f{rotate(poly, seed.p, j), rotate(poly, seed.q, j), seed.half_width, seed.slope, sheet};
      if (std::none_of(out.begin(), out.end(), [&](const AnnulusFamily& g) { return same(f, g); }))
        out.push_back(f);
    }
  return out;
}

Complex sample_point(const HypPolygon& poly, std::uint64_t seed, std::uint64_t index) {
  CounterRng rng(seed, index);
  const double cosh_r = std::cosh(poly.circumradius);
  for (std::uint64_t attempt = 0; attempt < 4096; ++attempt) {
    double rho = std::acosh(1.0 + rng.uniform(2 * attempt) * (cosh_r - 1.0));
    Complex z = std::polar(std::tanh(0.5 * rho), 2.0 * kPi * rng.uniform(2 * attempt + 1));
    if (contains(poly, z))
      return z;
  }
  return Complex(0.0, 0.0);
}

namespace {

SampleRecord classify_sample(const HypPolygon& poly, const std::vector<AnnulusFamily>& families,
                             std::uint64_t seed, std::uint64_t i) {
  Complex z = sample_point(poly, seed, i);
  for (std::size_t f = 0; f < families.size(); ++f)
    if (in_footprint(families[f], z))
      return {z, true, static_cast<int>(f)};
  return {z, false, -1};
}

void check_samples(const HypPolygon& poly, const std::vector<AnnulusFamily>& families,
                   std::int64_t samples) {
  if (samples < kMinSamples)
    fail(ErrorCode::InvalidArgument, "fiber check needs at least " + std::to_string(kMinSamples) + " samples");
  for (const auto& f : families)
    check_family(poly, f);
}

CoverageReport finish(std::int64_t samples, std::int64_t uncovered, std::vector<SampleRecord> records) {
  CoverageReport r;
  r.samples = samples;
  r.uncovered = uncovered;
  r.uncovered_fraction = static_cast<double>(uncovered) / static_cast<double>(samples);
  r.covered = uncovered == 0;
  r.records = std::move(records);
  return r;
}

} // namespace

CoverageReport fiber_obstruction_check_serial(const HypPolygon& poly,
                                              const std::vector<AnnulusFamily>& families,
                                              std::int64_t samples, std::uint64_t seed,
                                              bool keep_records) {
  check_samples(poly, families, samples);
  std::vector<SampleRecord> records;
  std::int64_t uncovered = 0;
  for (std::int64_t i = 0; i < samples; ++i) {
    SampleRecord rec = classify_sample(poly, families, seed, static_cast<std::uint64_t>(i));
    uncovered += rec.covered ? 0 : 1;
    if (keep_records)
      records.push_back(rec);
  }
  return finish(samples, uncovered, std::move(records));
}

CoverageReport fiber_obstruction_check(const HypPolygon& poly,
                                       const std::vector<AnnulusFamily>& families,
                                       std::int64_t samples, std::uint64_t seed, bool keep_records) {
  check_samples(poly, families, samples);
  std::vector<SampleRecord> records(keep_records ? static_cast<std::size_t>(samples) : 0);
  std::int64_t uncovered = 0;
#pragma omp parallel for schedule(static) reduction(+ : uncovered)
  for (std::int64_t i = 0; i < samples; ++i) {
    SampleRecord rec = classify_sample(poly, families, seed, static_cast<std::uint64_t>(i));
    uncovered += rec.covered ? 0 : 1;
    if (keep_records)
      records[static_cast<std::size_t>(i)] = rec;
  }
  return finish(samples, uncovered, std::move(records));
}

namespace {

// Unit-speed geodesic in the disk: position and Euclidean unit direction.
struct DiskRay {
  Complex z;
  Complex dir;
};

// Moves distance `step` along the geodesic.
DiskRay advance(const DiskRay& r, double step) {
  Complex w = std::tanh(0.5 * step) * r.dir;
  Complex den = 1.0 + std::conj(r.z) * w;
  Complex deriv = (1.0 - std::norm(r.z)) / (den * den);
  return {(w + r.z) / den, r.dir * deriv / std::abs(deriv)};
}

// Translation along the diameter through the midpoint of side j carrying
// side j onto the opposite side.
DiskRay pair_side(const HypPolygon& poly, int j, const DiskRay& r) {
  Complex axis = side_midpoint(poly, j);
  double a = -std::tanh(2.0 * std::atanh(std::abs(axis)));
  Complex turn = axis / std::abs(axis);
  Complex u = r.z / turn;
  Complex den = 1.0 + a * u;
  Complex deriv = (1.0 - a * a) / (den * den);
  return {turn * (u + a) / den, r.dir * deriv / std::abs(deriv)};
}

int exit_side(const HypPolygon& poly, Complex z) {
  for (int j = 0; j < poly.sides; ++j) {
    SideCircle s = side_circle(poly, j);
    if (std::abs(z - s.center) < s.radius)
      return j;
  }
  return -1;
}

bool crosses_sheet(const HypPolygon& poly, const std::vector<AnnulusFamily>& families,
                   std::uint64_t seed, std::uint64_t trial, double max_length) {
  constexpr double kStep = 0.02;
  CounterRng rng(seed ^ 0x5bd1e995ULL, trial);
  DiskRay ray{sample_point(poly, seed, trial), std::polar(1.0, 2.0 * kPi * rng.uniform(0))};
  double climb = std::tan(kPi * (rng.uniform(1) - 0.5));
  double h = rng.uniform(2);

  std::vector<double> level(families.size());
  std::vector<char> inside(families.size(), 0);
  for (double travelled = 0; travelled < max_length; travelled += kStep) {
    for (std::size_t f = 0; f < families.size(); ++f) {
      bool in = in_footprint(families[f], ray.z);
      double lv = in ? std::floor(h - sheet_height(families[f], ray.z)) : 0.0;
      if (in && inside[f] && lv != level[f])
        return true;
      inside[f] = in;
      level[f] = lv;
    }
    ray = advance(ray, kStep);
    h += climb * kStep;
    bool moved = false;
    for (int hop = 0; hop < 4 && !contains(poly, ray.z); ++hop) {
      int j = exit_side(poly, ray.z);
      if (j < 0)
        break;
      ray = pair_side(poly, j, ray);
      moved = true;
    }
    if (moved)
      std::fill(inside.begin(), inside.end(), 0);
  }
  return false;
}

} // namespace

GeodesicCrossingReport non_vertical_crossing_check(const HypPolygon& poly,
                                                   const std::vector<AnnulusFamily>& families,
                                                   std::int64_t trials, std::uint64_t seed,
                                                   double max_length) {
  for (const auto& f : families)
    check_family(poly, f);
  if (trials <= 0)
    fail(ErrorCode::InvalidArgument, "trials must be positive");
  if (!(max_length > 0))
    fail(ErrorCode::InvalidArgument, "length budget must be positive");
  std::int64_t failures = 0;
#pragma omp parallel for schedule(dynamic, 64) reduction(+ : failures)
  for (std::int64_t t = 0; t < trials; ++t)
    failures += crosses_sheet(poly, families, seed, static_cast<std::uint64_t>(t), max_length) ? 0 : 1;
  return {trials, failures};
}

nlohmann::json to_json(const HypPolygon& poly, int genus) {
  nlohmann::json verts = nlohmann::json::array();
  for (Complex v : poly.vertices)
    verts.push_back({v.real(), v.imag()});
  return {{"schema", 1},
          {"kind", "h2xr_polygon"},
          {"genus", genus},
          {"sides", poly.sides},
          {"vertex_angle", poly.vertex_angle},
          {"circumradius", poly.circumradius},
          {"vertices", verts}};
}

nlohmann::json to_json(const AnnulusFamily& f) {
  return {{"p", {f.p.real(), f.p.imag()}},
          {"q", {f.q.real(), f.q.imag()}},
          {"half_width", f.half_width},
          {"slope", f.slope},
          {"sheet", f.sheet}};
}

AnnulusFamily annulus_from_json(const nlohmann::json& j) {
  auto pt = [&](const char* key) {
    if (!j.contains(key) || !j.at(key).is_array() || j.at(key).size() != 2)
      fail(ErrorCode::ParseError, std::string("annulus family needs point '") + key + "'");
    return Complex(j.at(key)[0].get<double>(), j.at(key)[1].get<double>());
  };
  if (!j.contains("half_width") || !j.contains("slope"))
    fail(ErrorCode::ParseError, "annulus family needs half_width and slope");
  return AnnulusFamily{pt("p"), pt("q"), j.at("half_width").get<double>(), j.at("slope").get<double>(),
                       j.value("sheet", 0)};
}

} // namespace filling::h2xr
