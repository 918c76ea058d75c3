#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "filling/error.hpp"
#include "filling/h2xr.hpp"

using namespace filling;
using namespace filling::h2xr;

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

double pseudo_distance(Complex a, Complex b) {
  return 2.0 * std::atanh(std::abs((a - b) / (1.0 - std::conj(a) * b)));
}

// Point at fraction t along the geodesic segment a -> b.
Complex along(Complex a, Complex b, double t) {
  Complex q = (b - a) / (1.0 - std::conj(a) * b);
  double len = 2.0 * std::atanh(std::abs(q));
  Complex x = std::tanh(0.5 * t * len) * q / std::abs(q);
  return (x + a) / (1.0 + std::conj(a) * x);
}

std::vector<AnnulusFamily> octagon_families(const HypPolygon& oct) {
  return annulus_orbit(oct, standard_seed(oct));
}

bool same_family(const AnnulusFamily& a, const AnnulusFamily& b) {
  return a.sheet == b.sheet && std::abs(a.p - b.p) < 1e-9 && std::abs(a.q - b.q) < 1e-9;
}

// Footprints as unordered (outer end, inner end) pairs.
bool same_footprint(const AnnulusFamily& a, const AnnulusFamily& b) {
  Complex ao = a.sheet == 0 ? a.p : a.q, ai = a.sheet == 0 ? a.q : a.p;
  Complex bo = b.sheet == 0 ? b.p : b.q, bi = b.sheet == 0 ? b.q : b.p;
  return std::abs(ao - bo) < 1e-9 && std::abs(ai - bi) < 1e-9;
}

} // namespace

TEST_CASE("octagon geometry") {
  HypPolygon oct = build_polygon(2);
  CHECK(oct.sides == 8);
  CHECK(oct.vertex_angle == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(oct.circumradius == doctest::Approx(2.448452447678076).epsilon(1e-13));
  double sum = 0;
  for (int i = 0; i < 8; ++i) {
    double a = measured_vertex_angle(oct, i);
    CHECK(std::abs(a - kPi / 4) < 1e-9);
    sum += a;
    CHECK(std::abs(pseudo_distance(0.0, oct.vertices[i]) - oct.circumradius) < 1e-9);
  }
  CHECK(std::abs(sum - 2 * kPi) < 1e-8);
}

TEST_CASE("twelve-gon geometry") {
  HypPolygon p = build_polygon(3);
  CHECK(p.sides == 12);
  CHECK(p.vertex_angle == doctest::Approx(kPi / 6).epsilon(1e-15));
  CHECK(p.circumradius == doctest::Approx(3.325771782117242).epsilon(1e-13));
  double sum = 0;
  for (int i = 0; i < 12; ++i)
    sum += measured_vertex_angle(p, i);
  CHECK(std::abs(sum - 2 * kPi) < 1e-8);
}

TEST_CASE("inradius matches the side midpoints") {
  HypPolygon oct = build_polygon(2);
  for (int j = 0; j < 8; ++j) {
    Complex m = side_midpoint(oct, j);
    CHECK(std::abs(pseudo_distance(0.0, m) - 1.528570919480998) < 1e-9);
    CHECK(std::abs(pseudo_distance(m, oct.vertices[j]) - pseudo_distance(m, oct.vertices[(j + 1) % 8])) < 1e-9);
    CHECK(on_boundary(oct, m));
  }
}

TEST_CASE("polygon construction errors") {
  CHECK(code_of([] { build_polygon(1); }) == ErrorCode::GenusTooSmall);
  CHECK(code_of([] { build_polygon(0); }) == ErrorCode::GenusTooSmall);
  CHECK(code_of([] { build_regular_polygon(4, kPi / 2); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { build_regular_polygon(2, 0.1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("polygons are rotation invariant") {
  for (int g : {2, 3, 4}) {
    HypPolygon p = build_polygon(g);
    for (int steps : {1, 3}) {
      for (const Complex& v : p.vertices) {
        Complex w = rotate(p, v, steps);
        double best = 1;
        for (const Complex& u : p.vertices)
          best = std::min(best, std::abs(u - w));
        CHECK(best < 1e-9);
      }
    }
  }
}

TEST_CASE("disk distance agrees with the pseudo-hyperbolic form") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> r(0.0, 0.97), t(0.0, 2 * kPi);
  for (int i = 0; i < 2000; ++i) {
    Complex a = std::polar(r(rng), t(rng)), b = std::polar(r(rng), t(rng)), c = std::polar(r(rng), t(rng));
    CHECK(disk_distance(a, b) == doctest::Approx(pseudo_distance(a, b)).epsilon(1e-9));
    CHECK(disk_distance(a, b) == doctest::Approx(disk_distance(b, a)).epsilon(1e-12));
    CHECK(disk_distance(a, c) <= disk_distance(a, b) + disk_distance(b, c) + 1e-9);
  }
  CHECK(disk_distance(0.3, 0.3) == 0.0);
}

TEST_CASE("polygon membership") {
  HypPolygon oct = build_polygon(2);
  CHECK(contains(oct, 0.0));
  CHECK(contains(oct, oct.vertices[2]));
  CHECK(on_boundary(oct, oct.vertices[5]));
  CHECK_FALSE(on_boundary(oct, 0.0));
  CHECK_FALSE(contains(oct, 0.99));
  CHECK_FALSE(contains(oct, std::polar(0.9, kPi / 8)));
  for (int j = 0; j < 8; ++j) {
    CHECK(contains(oct, 0.999 * side_midpoint(oct, j)));
    CHECK_FALSE(contains(oct, 1.01 * side_midpoint(oct, j)));
  }
}

TEST_CASE("chord coordinates") {
  HypPolygon oct = build_polygon(2);
  AnnulusFamily f = standard_seed(oct);
  CHECK(std::abs(f.p - oct.vertices[0]) < 1e-12);
  CHECK(std::abs(f.q - oct.vertices[3]) < 1e-12);
  CHECK(f.half_width == 0.8);
  CHECK(f.slope == doctest::Approx(1.0 / 1.6));
  CHECK(f.sheet == 0);
  double len = pseudo_distance(f.p, f.q);
  for (double t : {0.1, 0.25, 0.5, 0.9}) {
    ChordCoordinates c = chord_coordinates(f, along(f.p, f.q, t));
    CHECK(c.length == doctest::Approx(len).epsilon(1e-9));
    CHECK(c.u == doctest::Approx(t * len).epsilon(1e-9));
    CHECK(std::abs(c.n) < 1e-9);
  }
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> r(0.0, 0.9), t(0.0, 2 * kPi);
  for (int i = 0; i < 500; ++i) {
    Complex z = std::polar(r(rng), t(rng));
    ChordCoordinates c = chord_coordinates(f, z);
    if (c.u < 0.02 * c.length || c.u > 0.98 * c.length)
      continue;
    // distance to the segment, measured directly
    double best = INFINITY;
    for (int s = 0; s <= 4000; ++s)
      best = std::min(best, pseudo_distance(z, along(f.p, f.q, s / 4000.0)));
    CHECK(std::abs(std::abs(c.n) - best) < 1e-4);
  }
}

TEST_CASE("footprint distance is the distance to the half chord") {
  HypPolygon oct = build_polygon(2);
  auto fams = octagon_families(oct);
  for (int i = 0; i < 300; ++i) {
    const AnnulusFamily& f = fams[i % fams.size()];
    Complex z = sample_point(oct, 77, i);
    double t0 = f.sheet == 0 ? 0.0 : 0.5;
    double best = INFINITY;
    for (int s = 0; s <= 2000; ++s)
      best = std::min(best, pseudo_distance(z, along(f.p, f.q, t0 + 0.5 * s / 2000.0)));
    CHECK(std::abs(footprint_distance(f, z) - best) < 1e-4);
  }
}

TEST_CASE("sheets stay inside the prism over their footprints") {
  HypPolygon oct = build_polygon(2);
  for (const auto& f : octagon_families(oct))
    for (int i = 0; i < 500; ++i) {
      Complex z = sample_point(oct, 3, i);
      if (!in_footprint(f, z))
        continue;
      double h = sheet_height(f, z);
      CHECK(h >= -1e-12);
      CHECK(h <= 1.0 + 1e-12);
    }
  AnnulusFamily f = standard_seed(oct);
  CHECK(sheet_height(f, along(f.p, f.q, 0.3)) == doctest::Approx(0.5));
}

TEST_CASE("octagon orbit has sixteen families") {
  HypPolygon oct = build_polygon(2);
  auto fams = octagon_families(oct);
  CHECK(fams.size() == 16);
  for (const auto& f : fams) {
    AnnulusFamily g = f;
    g.p = rotate(oct, f.p, 1);
    g.q = rotate(oct, f.q, 1);
    CHECK(std::any_of(fams.begin(), fams.end(), [&](const AnnulusFamily& h) { return same_footprint(g, h); }));
  }
  for (int g : {3, 4}) {
    HypPolygon p = build_polygon(g);
    CHECK(annulus_orbit(p, standard_seed(p)).size() == static_cast<std::size_t>(2 * p.sides));
  }
}

TEST_CASE("orbit sizes divide twice the side count") {
  HypPolygon oct = build_polygon(2);
  for (int skip = 1; skip <= 7; ++skip) {
    auto orbit = annulus_orbit(oct, diagonal_seed(oct, skip, 0.3));
    CAPTURE(skip);
    CHECK(16 % orbit.size() == 0);
  }
  // The diameter through opposite vertices is carried to itself by the half turn.
  AnnulusFamily diameter = diagonal_seed(oct, 4, 0.3);
  auto orbit = annulus_orbit(oct, diameter);
  CHECK(orbit.size() == 8);
}

TEST_CASE("midpoint chord gives eight distinct footprints") {
  HypPolygon oct = build_polygon(2);
  AnnulusFamily seed{side_midpoint(oct, 1), side_midpoint(oct, 4), 0.5, 1.0, 0};
  std::vector<std::pair<Complex, Complex>> chords;
  for (int j = 0; j < 8; ++j) {
    Complex a = rotate(oct, seed.p, j), b = rotate(oct, seed.q, j);
    bool seen = std::any_of(chords.begin(), chords.end(), [&](const auto& c) {
      return (std::abs(c.first - a) < 1e-9 && std::abs(c.second - b) < 1e-9) ||
             (std::abs(c.first - b) < 1e-9 && std::abs(c.second - a) < 1e-9);
    });
    if (!seen)
      chords.push_back({a, b});
  }
  CHECK(chords.size() == 8);
  CHECK(annulus_orbit(oct, seed).size() == 16);
}

TEST_CASE("seeds off the boundary are rejected") {
  HypPolygon oct = build_polygon(2);
  AnnulusFamily inner{0.1, oct.vertices[3], 0.8, 0.625, 0};
  CHECK(code_of([&] { annulus_orbit(oct, inner); }) == ErrorCode::FootprintOutsidePolygon);
  AnnulusFamily bad = standard_seed(oct);
  bad.half_width = -1;
  CHECK(code_of([&] { annulus_orbit(oct, bad); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("sixteen families obstruct every vertical fiber") {
  HypPolygon oct = build_polygon(2);
  auto fams = octagon_families(oct);
  auto rep = fiber_obstruction_check(oct, fams, 100000);
  CHECK(rep.covered);
  CHECK(rep.samples == 100000);
  CHECK(rep.uncovered == 0);
  CHECK(rep.uncovered_fraction == 0.0);
  for (int g : {3, 4}) {
    HypPolygon p = build_polygon(g);
    CHECK(fiber_obstruction_check(p, annulus_orbit(p, standard_seed(p)), 20000).covered);
  }
}

TEST_CASE("polar grid over the octagon is covered") {
  HypPolygon oct = build_polygon(2);
  auto fams = octagon_families(oct);
  int points = 0, missed = 0;
  for (int i = 0; i <= 300; ++i)
    for (int j = 0; j < 360; ++j) {
      Complex z = std::polar(std::tanh(0.5 * oct.circumradius) * i / 300.0, 2 * kPi * j / 360.0);
      if (!contains(oct, z))
        continue;
      ++points;
      missed += std::none_of(fams.begin(), fams.end(), [&](const AnnulusFamily& f) { return in_footprint(f, z); });
    }
  CHECK(points > 50000);
  CHECK(missed == 0);
}

TEST_CASE("coverage failures") {
  HypPolygon oct = build_polygon(2);
  auto empty = fiber_obstruction_check(oct, {}, 10000);
  CHECK_FALSE(empty.covered);
  CHECK(empty.uncovered_fraction == 1.0);
  auto one = fiber_obstruction_check(oct, {standard_seed(oct)}, 20000);
  CHECK_FALSE(one.covered);
  CHECK(one.uncovered_fraction > 0.1);
  CHECK(one.uncovered_fraction < 1.0);
  CHECK(code_of([&] { fiber_obstruction_check(oct, {}, 9999); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("coverage is monotone in families") {
  HypPolygon oct = build_polygon(2);
  auto fams = octagon_families(oct);
  std::vector<AnnulusFamily> some;
  std::int64_t last = 20001;
  bool was = false;
  for (const auto& f : fams) {
    some.push_back(f);
    auto rep = fiber_obstruction_check(oct, some, 20000, 4);
    CHECK(rep.uncovered <= last);
    CHECK((!was || rep.covered));
    last = rep.uncovered;
    was = rep.covered;
  }
  CHECK(was);
}

TEST_CASE("sampling is deterministic and parallel matches serial") {
  HypPolygon oct = build_polygon(2);
  auto fams = octagon_families(oct);
  fams.resize(6);
  auto a = fiber_obstruction_check(oct, fams, 12000, 21, true);
  auto b = fiber_obstruction_check_serial(oct, fams, 12000, 21, true);
  CHECK(a.uncovered == b.uncovered);
  REQUIRE(a.records.size() == b.records.size());
  bool same = true;
  for (std::size_t i = 0; i < a.records.size(); ++i)
    same = same && a.records[i].z == b.records[i].z && a.records[i].family == b.records[i].family &&
           a.records[i].covered == b.records[i].covered;
  CHECK(same);
  for (int i = 0; i < 1000; ++i) {
    Complex z = sample_point(oct, 8, i);
    CHECK(z == sample_point(oct, 8, i));
    CHECK(contains(oct, z));
  }
}

TEST_CASE("sampling is uniform in hyperbolic area") {
  // Mass inside hyperbolic radius 1 against its share of the octagon's area.
  HypPolygon oct = build_polygon(2);
  const double octagon_area = 4 * kPi;
  const double disk_area = 4 * kPi * std::sinh(0.5) * std::sinh(0.5);
  int inside = 0;
  const int n = 40000;
  for (int i = 0; i < n; ++i)
    inside += pseudo_distance(0.0, sample_point(oct, 1, i)) < 1.0;
  double expected = disk_area / octagon_area;
  CHECK(std::abs(inside / double(n) - expected) < 5 * std::sqrt(expected * (1 - expected) / n));
}

TEST_CASE("non-vertical geodesics cross a sheet") {
  HypPolygon oct = build_polygon(2);
  auto fams = octagon_families(oct);
  auto rep = non_vertical_crossing_check(oct, fams, 10000, 1);
  CHECK(rep.trials == 10000);
  CHECK(rep.failures == 0);
  auto none = non_vertical_crossing_check(oct, {}, 200, 1);
  CHECK(none.failures == 200);
}

TEST_CASE("json round trip") {
  HypPolygon oct = build_polygon(2);
  for (const auto& f : octagon_families(oct)) {
    AnnulusFamily g = annulus_from_json(nlohmann::json::parse(to_json(f).dump()));
    CHECK(same_family(f, g));
    CHECK(g.half_width == f.half_width);
    CHECK(g.slope == f.slope);
  }
  auto j = to_json(oct, 2);
  CHECK(j["kind"] == "h2xr_polygon");
  CHECK(j["genus"] == 2);
  CHECK(code_of([] { annulus_from_json(nlohmann::json::parse("{\"p\": 1}")); }) == ErrorCode::ParseError);
}
