#pragma once

// Measures on the Grassmann bundle of tangent 2-planes. Each fiber is a
// projective plane carrying a multiple of the round metric; the bundle
// measure along a curve is fiber volume times length.

#include <array>
#include <cstdint>
#include <numbers>
#include <vector>

#include "filling/flat3.hpp"
#include "filling/hyp3.hpp"

namespace filling::gmeasure {

using Vec3 = std::array<double, 3>;

// Metric scale that gives each fiber total volume 1.
inline constexpr double kUnitFiberScale = 0.5 / std::numbers::pi;
inline constexpr double kUnitFiberVolume = 1.0;

// Area of the projective plane under scale times the curvature-1 metric, by
// quadrature over a hemisphere. Throws InvalidArgument for scale <= 0.
double fiber_volume(double scale);

struct TransversalSet {
  double segment_length;      // >= 0
  double injectivity_radius;  // > 0
};

struct TransversalMeasure {
  double lower_bound;  // min(2 inj, length)
  double proof_value;  // shortened length times unit fiber volume
};

TransversalMeasure transversal_measure(const TransversalSet& set);

// Divides a bundle measure by the total bundle volume. Throws InvalidArgument
// unless bundle_volume > 0.
double normalize_measure(double measure, double bundle_volume);

inline constexpr std::int64_t kMinTransversalityTrials = 10000;

// Samples (point of the segment by arclength, unit plane normal on S^2 off the
// cap |<n, tangent>| <= 1e-6), builds the geodesic plane through the point
// with that normal, and classifies it against the segment's geodesic.
// Returns the transverse fraction. Throws DegenerateSegment for coincident
// endpoints and InvalidArgument for too few trials.
double transversality_sample(const hyp3::UhsPoint& a, const hyp3::UhsPoint& b,
                             std::int64_t trials, std::uint64_t seed = 0);
double transversality_sample_serial(const hyp3::UhsPoint& a, const hyp3::UhsPoint& b,
                                    std::int64_t trials, std::uint64_t seed = 0);

// A set of fiber points, i.e. unoriented plane normals.
class FiberSet {
public:
  static FiberSet all();
  static FiberSet normals(std::vector<Vec3> directions);
  // Normals within `angle` (radians) of the axis, as unoriented lines.
  static FiberSet cap(Vec3 axis, double angle);

  bool contains(const Vec3& normal) const;
  // Fraction of the fiber (unit volume) occupied by the set.
  double fiber_measure() const;

private:
  enum class Kind { All, Normals, Cap };
  FiberSet(Kind k, std::vector<Vec3> dirs, double angle)
      : kind_(k), dirs_(std::move(dirs)), angle_(angle) {}
  Kind kind_;
  std::vector<Vec3> dirs_;
  double angle_;
};

// Half-open axis box [lo, hi) inside the fundamental cube [0, 1]^3.
struct Box {
  Vec3 lo;
  Vec3 hi;
};

inline constexpr Box kUnitBox{{0, 0, 0}, {1, 1, 1}};

// Normalized area measure of a union of plane families in the unit cubic
// torus. Throws InvalidArgument for a non-cubic lattice, EmptyInput for no
// families.
struct InducedMeasure {
  flat3::SurfaceSpec surface;
  double total_area;

  static InducedMeasure from_surface(const flat3::SurfaceSpec& surface);
};

// Area of the planes over the box whose normals lie in the fiber set, divided
// by the total area.
double mu_S_box(const InducedMeasure& mu, const Box& box, const FiberSet& fibers);

// Volume of the box times the fiber measure.
double uniform_measure(const Box& box, const FiberSet& fibers);

struct TestSet {
  Box box;
  FiberSet fibers;
};

struct DiscrepancyRow {
  std::size_t prefix;
  double discrepancy;
};

// For each prefix of the normal list, the largest deviation over the test
// sets between the averaged single-plane tori measures and the uniform
// measure. Throws EmptyInput for no normals or no test sets, InvalidArgument
// for non-primitive or parallel normals.
std::vector<DiscrepancyRow> equidistribution_demo(const std::vector<flat3::RVec3>& normals,
                                                  const std::vector<TestSet>& tests);

} // namespace filling::gmeasure
