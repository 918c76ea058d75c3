#include "filling/gmeasure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/quadrature/gauss.hpp>

#include "filling/error.hpp"
#include "filling/rng.hpp"
#include "filling/tolerance.hpp"

namespace filling::gmeasure {

namespace {

constexpr double kPi = std::numbers::pi;

double norm3(const Vec3& v) { return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]); }
double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 to_double(const flat3::RVec3& v) {
  return {boost::rational_cast<double>(v[0]), boost::rational_cast<double>(v[1]),
          boost::rational_cast<double>(v[2])};
}

} // namespace

double fiber_volume(double scale) {
  if (!(scale > 0) || !std::isfinite(scale))
    fail(ErrorCode::InvalidArgument, "fiber metric scale must be positive");
  // The projective plane is a hemisphere with its boundary identified.
  auto ring = [](double theta) { return 2.0 * kPi * std::sin(theta); };
  return scale * boost::math::quadrature::gauss<double, 30>::integrate(ring, 0.0, 0.5 * kPi);
}

TransversalMeasure transversal_measure(const TransversalSet& set) {
  if (!(set.segment_length >= 0) || !std::isfinite(set.segment_length))
    fail(ErrorCode::InvalidArgument, "segment length must be nonnegative");
  if (!(set.injectivity_radius > 0))
    fail(ErrorCode::InvalidArgument, "injectivity radius must be positive");
  double bound = std::min(2.0 * set.injectivity_radius, set.segment_length);
  double shortened = set.segment_length > 2.0 * set.injectivity_radius ? 2.0 * set.injectivity_radius
                                                                       : set.segment_length;
  return {bound, shortened * kUnitFiberVolume};
}

double normalize_measure(double measure, double bundle_volume) {
  if (!(bundle_volume > 0))
    fail(ErrorCode::InvalidArgument, "bundle volume must be positive");
  return measure / bundle_volume;
}

namespace {

struct SegmentFrame {
  hyp3::MobiusMap to_axis;    // geodesic -> vertical axis over 0
  hyp3::MobiusMap from_axis;
  hyp3::GeodesicLine geodesic;
  double log_lo, log_hi;      // log heights of the endpoints on the axis
};

SegmentFrame frame_segment(const hyp3::UhsPoint& a, const hyp3::UhsPoint& b, std::int64_t trials) {
  if (trials < kMinTransversalityTrials)
    fail(ErrorCode::InvalidArgument,
         "transversality sampling needs at least " + std::to_string(kMinTransversalityTrials) + " trials");
  if (hyp3::hyp_distance(a, b) <= tol::kIncidence)
    fail(ErrorCode::DegenerateSegment, "segment endpoints coincide");
  hyp3::GeodesicLine g = hyp3::geodesic_through(a, b);
  const auto& u = g.first();
  const auto& v = g.second();
  hyp3::MobiusMap m = hyp3::MobiusMap::identity();
  if (u.is_infinity())
    m = hyp3::MobiusMap(0.0, 1.0, 1.0, -v.value());
  else if (v.is_infinity())
    m = hyp3::MobiusMap(1.0, -u.value(), 0.0, 1.0);
  else
    m = hyp3::MobiusMap(1.0, -u.value(), 1.0, -v.value());
  double la = std::log(hyp3::mobius_apply(m, a).t);
  double lb = std::log(hyp3::mobius_apply(m, b).t);
  return {m, m.inverse(), g, std::min(la, lb), std::max(la, lb)};
}

bool transverse_trial(const SegmentFrame& f, std::uint64_t seed, std::uint64_t trial) {
  CounterRng rng(seed, trial);
  double h = std::exp(f.log_lo + rng.uniform(0) * (f.log_hi - f.log_lo));
  // Uniform normal on S^2, rejecting the band of planes containing the
  // vertical tangent.
  double nt = 0, phi = 0;
  for (std::uint64_t lane = 1;; lane += 2) {
    nt = 2.0 * rng.uniform(lane) - 1.0;
    phi = 2.0 * kPi * rng.uniform(lane + 1);
    if (std::abs(nt) > tol::kEquatorCap)
      break;
  }
  double nh = std::sqrt(1.0 - nt * nt);
  hyp3::Complex horizontal = std::polar(nh, phi);
  // Sphere through (0, h) with normal n there, centered on the boundary.
  double rho = h / nt;
  auto plane = hyp3::GeodesicPlane::circle(-rho * horizontal, std::abs(rho));
  auto image = hyp3::mobius_apply(f.from_axis, plane);
  return std::holds_alternative<hyp3::Transverse>(hyp3::classify_plane_geodesic(image, f.geodesic));
}

} // namespace

double transversality_sample_serial(const hyp3::UhsPoint& a, const hyp3::UhsPoint& b,
                                    std::int64_t trials, std::uint64_t seed) {
  SegmentFrame f = frame_segment(a, b, trials);
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < trials; ++i)
    hits += transverse_trial(f, seed, static_cast<std::uint64_t>(i)) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(trials);
}

double transversality_sample(const hyp3::UhsPoint& a, const hyp3::UhsPoint& b, std::int64_t trials,
                             std::uint64_t seed) {
  SegmentFrame f = frame_segment(a, b, trials);
  std::int64_t hits = 0;
#pragma omp parallel for schedule(static) reduction(+ : hits)
  for (std::int64_t i = 0; i < trials; ++i)
    hits += transverse_trial(f, seed, static_cast<std::uint64_t>(i)) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(trials);
}

FiberSet FiberSet::all() { return FiberSet(Kind::All, {}, 0.0); }

FiberSet FiberSet::normals(std::vector<Vec3> directions) {
  for (const auto& d : directions)
    if (!(norm3(d) > 0))
      fail(ErrorCode::ZeroNormal, "fiber direction must be nonzero");
  return FiberSet(Kind::Normals, std::move(directions), 0.0);
}

FiberSet FiberSet::cap(Vec3 axis, double angle) {
  if (!(norm3(axis) > 0))
    fail(ErrorCode::ZeroNormal, "cap axis must be nonzero");
  if (!(angle >= 0) || angle > 0.5 * kPi)
    fail(ErrorCode::InvalidArgument, "cap angle must lie in [0, pi/2]");
  return FiberSet(Kind::Cap, {axis}, angle);
}

bool FiberSet::contains(const Vec3& normal) const {
  double len = norm3(normal);
  switch (kind_) {
    case Kind::All:
      return true;
    case Kind::Normals:
      return std::any_of(dirs_.begin(), dirs_.end(), [&](const Vec3& d) {
        return std::abs(dot3(d, normal)) >= (1.0 - 1e-12) * norm3(d) * len;
      });
    case Kind::Cap:
      return std::abs(dot3(dirs_[0], normal)) >= (std::cos(angle_) - 1e-12) * norm3(dirs_[0]) * len;
  }
  return false;
}

double FiberSet::fiber_measure() const {
  switch (kind_) {
    case Kind::All: return 1.0;
    case Kind::Normals: return 0.0;
    case Kind::Cap: return 1.0 - std::cos(angle_);
  }
  return 0.0;
}

namespace {

void check_box(const Box& box) {
  for (int k = 0; k < 3; ++k)
    if (!(box.lo[k] >= 0 && box.lo[k] <= box.hi[k] && box.hi[k] <= 1))
      fail(ErrorCode::InvalidArgument, "box must satisfy 0 <= lo <= hi <= 1");
}

// Area of {x : n . x = c} inside the closed box, as the convex polygon cut
// from the box.
double slice_area(const Vec3& n, double c, const Box& box) {
  std::vector<Vec3> pts;
  for (int axis = 0; axis < 3; ++axis) {
    int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
    if (n[axis] == 0)
      continue;
    for (double p1 : {box.lo[a1], box.hi[a1]})
      for (double p2 : {box.lo[a2], box.hi[a2]}) {
        double x = (c - n[a1] * p1 - n[a2] * p2) / n[axis];
        if (x < box.lo[axis] - 1e-15 || x > box.hi[axis] + 1e-15)
          continue;
        Vec3 p{};
        p[axis] = std::clamp(x, box.lo[axis], box.hi[axis]);
        p[a1] = p1;
        p[a2] = p2;
        pts.push_back(p);
      }
  }
  if (pts.size() < 3)
    return 0.0;
  Vec3 centroid{0, 0, 0};
  for (const auto& p : pts)
    for (int k = 0; k < 3; ++k)
      centroid[k] += p[k] / static_cast<double>(pts.size());
  // In-plane basis.
  double len = norm3(n);
  Vec3 unit{n[0] / len, n[1] / len, n[2] / len};
  Vec3 seed = std::abs(unit[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  Vec3 e1{unit[1] * seed[2] - unit[2] * seed[1], unit[2] * seed[0] - unit[0] * seed[2],
          unit[0] * seed[1] - unit[1] * seed[0]};
  double l1 = norm3(e1);
  for (auto& x : e1)
    x /= l1;
  Vec3 e2{unit[1] * e1[2] - unit[2] * e1[1], unit[2] * e1[0] - unit[0] * e1[2],
          unit[0] * e1[1] - unit[1] * e1[0]};
  std::vector<std::pair<double, double>> uv;
  for (const auto& p : pts) {
    Vec3 d{p[0] - centroid[0], p[1] - centroid[1], p[2] - centroid[2]};
    uv.emplace_back(dot3(d, e1), dot3(d, e2));
  }
  std::sort(uv.begin(), uv.end(), [](const auto& a, const auto& b) {
    return std::atan2(a.second, a.first) < std::atan2(b.second, b.first);
  });
  double twice = 0;
  for (std::size_t i = 0; i < uv.size(); ++i) {
    const auto& p = uv[i];
    const auto& q = uv[(i + 1) % uv.size()];
    twice += p.first * q.second - p.second * q.first;
  }
  return 0.5 * std::abs(twice);
}

// Area of the periodic family inside the half-open box.
double family_area(const flat3::EuclideanPlaneFamily& f, const Box& box) {
  Vec3 n = to_double(f.normal);
  double period = boost::rational_cast<double>(f.period);
  int axis = -1, nonzero = 0;
  for (int k = 0; k < 3; ++k)
    if (n[k] != 0) {
      ++nonzero;
      axis = k;
    }

  double lo = 0, hi = 0;
  for (int k = 0; k < 3; ++k) {
    lo += std::min(n[k] * box.lo[k], n[k] * box.hi[k]);
    hi += std::max(n[k] * box.lo[k], n[k] * box.hi[k]);
  }
  double area = 0;
  for (const auto& offset : f.offsets) {
    double c0 = boost::rational_cast<double>(offset);
    for (double k = std::ceil((lo - c0) / period); c0 + k * period <= hi; k += 1.0) {
      double c = c0 + k * period;
      if (nonzero == 1) {
        double x = c / n[axis];
        if (x < box.lo[axis] || x >= box.hi[axis])
          continue;
        int a1 = (axis + 1) % 3, a2 = (axis + 2) % 3;
        area += (box.hi[a1] - box.lo[a1]) * (box.hi[a2] - box.lo[a2]);
      } else {
        area += slice_area(n, c, box);
      }
    }
  }
  return area;
}

bool is_unit_cubic(const flat3::RMat3& gram) {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (gram[i][j] != flat3::Rational(i == j ? 1 : 0))
        return false;
  return true;
}

} // namespace

InducedMeasure InducedMeasure::from_surface(const flat3::SurfaceSpec& surface) {
  if (surface.families.empty())
    fail(ErrorCode::EmptyInput, "surface has no plane families");
  if (!is_unit_cubic(flat3::make_manifold(surface.manifold).gram))
    fail(ErrorCode::InvalidArgument, "induced measures need the unit cubic lattice");
  double total = 0;
  for (const auto& f : surface.families)
    total += norm3(to_double(f.normal)) * static_cast<double>(f.offsets.size()) /
             boost::rational_cast<double>(f.period);
  return {surface, total};
}

double mu_S_box(const InducedMeasure& mu, const Box& box, const FiberSet& fibers) {
  check_box(box);
  double area = 0;
  for (const auto& f : mu.surface.families)
    if (fibers.contains(to_double(f.normal)))
      area += family_area(f, box);
  return area / mu.total_area;
}

double uniform_measure(const Box& box, const FiberSet& fibers) {
  check_box(box);
  return (box.hi[0] - box.lo[0]) * (box.hi[1] - box.lo[1]) * (box.hi[2] - box.lo[2]) *
         fibers.fiber_measure();
}

std::vector<DiscrepancyRow> equidistribution_demo(const std::vector<flat3::RVec3>& normals,
                                                  const std::vector<TestSet>& tests) {
  if (normals.empty())
    fail(ErrorCode::EmptyInput, "no normals given");
  if (tests.empty())
    fail(ErrorCode::EmptyInput, "no test sets given");
  std::vector<InducedMeasure> tori;
  for (std::size_t i = 0; i < normals.size(); ++i) {
    flat3::Rational scale;
    flat3::RVec3 canon = flat3::canonical_normal(normals[i], &scale);
    if (boost::abs(scale) != flat3::Rational(1))
      fail(ErrorCode::InvalidArgument, "demo normals must be primitive integer vectors");
    for (std::size_t j = 0; j < i; ++j)
      if (tori[j].surface.families[0].normal == canon)
        fail(ErrorCode::InvalidArgument, "demo normals must be pairwise non-parallel");
    auto family = flat3::EuclideanPlaneFamily::make(canon, {flat3::Rational(0)});
    tori.push_back(InducedMeasure::from_surface({flat3::ManifoldId::M1, canon, 0, {family}}));
  }

  std::vector<double> sums(tests.size(), 0.0);
  std::vector<DiscrepancyRow> rows;
  for (std::size_t k = 0; k < tori.size(); ++k) {
    double worst = 0;
    for (std::size_t t = 0; t < tests.size(); ++t) {
      sums[t] += mu_S_box(tori[k], tests[t].box, tests[t].fibers);
      double avg = sums[t] / static_cast<double>(k + 1);
      worst = std::max(worst, std::abs(avg - uniform_measure(tests[t].box, tests[t].fibers)));
    }
    rows.push_back({k + 1, worst});
  }
  return rows;
}

} // namespace filling::gmeasure
