#pragma once

// Closed orientable flat 3-manifolds as Bieberbach groups, and periodic
// families of planes in their universal cover.
//
// Everything is expressed in lattice (fractional) coordinates: the lattice is
// Z^3, isometries act as x -> R x + t with R an integer matrix, and a plane is
// {x : h . x = c} for a covector h. In these coordinates the hexagonal
// rotations are integer matrices, so all group and rank computations are
// exact over Q. The lattice metric is kept separately as a Gram matrix.

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace filling::flat3 {

using Rational = boost::rational<std::int64_t>;
using RVec3 = std::array<Rational, 3>;
using RMat3 = std::array<RVec3, 3>;  // row-major

enum class ManifoldId { M1, M2, M3, M4, M5, M6, HexTorus };

std::string_view manifold_name(ManifoldId id);
ManifoldId parse_manifold_id(std::string_view name);

// x -> rotation * x + translation
struct Isometry {
  RMat3 rotation;
  RVec3 translation;
};

struct FlatManifold {
  ManifoldId id;
  RMat3 gram;  // inner products of the lattice basis vectors
  std::vector<Isometry> generators;
};

// The standard presentations:
//   M1  cube, no generators            M2  1/2 twist about the z axis
//   M3  1/4 twist                      M4  hexagonal prism, 1/3 twist
//   M5  hexagonal prism, 1/6 twist     M6  Hantzsche-Wendt
//   HexTorus  hexagonal lattice, no generators
FlatManifold make_manifold(ManifoldId id);

// Representatives of the group modulo the lattice (translations reduced into
// [0,1)^3), identity first. Throws InvalidArgument if a generator is not a
// lattice-preserving orientation-preserving isometry or the closure is not
// finite.
std::vector<Isometry> coset_representatives(const FlatManifold& m);

std::size_t point_group_order(const FlatManifold& m);

struct EuclideanPlaneFamily {
  RVec3 normal;                  // primitive integer covector, first nonzero entry > 0
  Rational period;               // > 0, in units of normal . x
  std::vector<Rational> offsets; // sorted, distinct, in [0, period)

  // Canonicalizes the normal (rescaling offsets and period with it) and
  // reduces offsets. Throws ZeroNormal, InvalidArgument on period <= 0.
  static EuclideanPlaneFamily make(const RVec3& normal, std::vector<Rational> offsets,
                                   Rational period = Rational(1));

  friend bool operator==(const EuclideanPlaneFamily&, const EuclideanPlaneFamily&) = default;
};

struct SurfaceSpec {
  ManifoldId manifold;
  RVec3 seed_normal;
  Rational seed_offset;
  std::vector<EuclideanPlaneFamily> families;
};

// Primitive integer representative of the line through v, first nonzero > 0.
// Returns the rescaling factor through `scale` when non-null.
RVec3 canonical_normal(const RVec3& v, Rational* scale = nullptr);

// Orbit of the plane {normal . x = offset} under the manifold's group; planes
// with equal canonical normals are merged into one family. Sorted by normal.
std::vector<EuclideanPlaneFamily> orbit_families(const FlatManifold& m, const RVec3& normal,
                                                 Rational offset);

// Whether the families are mapped to themselves by every generator.
bool is_invariant(const FlatManifold& m, const std::vector<EuclideanPlaneFamily>& families);

int normal_rank(const std::vector<EuclideanPlaneFamily>& families);

bool filling_flat(const std::vector<EuclideanPlaneFamily>& families);

struct EscapingGeodesic {
  RVec3 direction;   // primitive integer vector with normal . direction = 0 for every family
  RVec3 basepoint;
  double clearance;  // min over families of |normal . x - nearest plane| / |normal|
};

std::optional<EscapingGeodesic> find_escaping_geodesic(
    const std::vector<EuclideanPlaneFamily>& families);

struct CellReport {
  int resolution;
  std::int64_t cell_count;
  std::int64_t wrapping_cells;
  bool all_contractible;
};

// Flood fill of the resolution^3 grid on the torus R^3 / Z^3. Grid points
// within half a grid step of a plane are removed; components of the rest are
// the cells. A cell wraps when two of its points are joined through paths
// whose lifts differ by a nonzero lattice vector.
CellReport complement_cells(const FlatManifold& m,
                            const std::vector<EuclideanPlaneFamily>& families, int resolution);

// Reference single-threaded kernel; same preconditions and result.
CellReport complement_cells_serial(const FlatManifold& m,
                                   const std::vector<EuclideanPlaneFamily>& families,
                                   int resolution);

inline constexpr int kDefaultResolution = 64;
inline constexpr int kMaxResolution = 256;

// Starts at `resolution` and doubles on ResolutionTooLow up to kMaxResolution.
CellReport complement_cells_auto(const FlatManifold& m,
                                 const std::vector<EuclideanPlaneFamily>& families,
                                 int resolution = kDefaultResolution);

std::optional<SurfaceSpec> construct_filling(ManifoldId id);

} // namespace filling::flat3
