#include "filling/flat3.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "filling/error.hpp"

namespace filling::flat3 {

namespace {

using boost::rational_cast;

Rational floor_of(const Rational& r) {
  std::int64_t n = r.numerator(), d = r.denominator();  // d > 0
  std::int64_t q = n / d;
  if (n % d != 0 && n < 0)
    --q;
  return Rational(q);
}

Rational mod(const Rational& r, const Rational& period) {
  return r - period * floor_of(r / period);
}

RMat3 mat(std::initializer_list<std::initializer_list<int>> rows) {
  RMat3 m{};
  int i = 0;
  for (const auto& row : rows) {
    int j = 0;
    for (int v : row)
      m[i][j++] = Rational(v);
    ++i;
  }
  return m;
}

RMat3 identity() { return mat({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}); }

RMat3 multiply(const RMat3& a, const RMat3& b) {
  RMat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        c[i][j] += a[i][k] * b[k][j];
  return c;
}

RVec3 mat_apply(const RMat3& a, const RVec3& v) {
  RVec3 r{};
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k)
      r[i] += a[i][k] * v[k];
  return r;
}

RMat3 transpose(const RMat3& a) {
  RMat3 t{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      t[i][j] = a[j][i];
  return t;
}

Rational determinant(const RMat3& a) {
  return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
         a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
         a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

RMat3 inverse(const RMat3& a) {
  Rational det = determinant(a);
  RMat3 inv{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      inv[i][j] = (a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0]) / det;
    }
  return inv;
}

Rational dot(const RVec3& a, const RVec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

RVec3 cross(const RVec3& a, const RVec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

bool is_zero(const RVec3& v) { return v[0] == Rational(0) && v[1] == Rational(0) && v[2] == Rational(0); }

bool is_integer(const RMat3& m) {
  for (const auto& row : m)
    for (const auto& e : row)
      if (e.denominator() != 1)
        return false;
  return true;
}

RVec3 reduce_translation(const RVec3& t) {
  return {mod(t[0], Rational(1)), mod(t[1], Rational(1)), mod(t[2], Rational(1))};
}

Isometry compose(const Isometry& a, const Isometry& b) {
  // (a o b)(x) = Ra (Rb x + tb) + ta
  RVec3 t = mat_apply(a.rotation, b.translation);
  for (int i = 0; i < 3; ++i)
    t[i] += a.translation[i];
  return Isometry{multiply(a.rotation, b.rotation), t};
}

// Image of the plane {h . x = c} under x -> R x + t is {h' . y = c'} with
// h' = R^{-T} h and c' = c + h' . t.
std::pair<RVec3, Rational> transform_plane(const Isometry& g, const RVec3& h, const Rational& c) {
  RVec3 image = mat_apply(transpose(inverse(g.rotation)), h);
  return {image, c + dot(image, g.translation)};
}

double euclid_norm(const RVec3& v) {
  double s = 0;
  for (const auto& e : v) {
    double x = rational_cast<double>(e);
    s += x * x;
  }
  return std::sqrt(s);
}

} // namespace

std::string_view manifold_name(ManifoldId id) {
  switch (id) {
    case ManifoldId::M1: return "M1";
    case ManifoldId::M2: return "M2";
    case ManifoldId::M3: return "M3";
    case ManifoldId::M4: return "M4";
    case ManifoldId::M5: return "M5";
    case ManifoldId::M6: return "M6";
    case ManifoldId::HexTorus: return "HexTorus";
  }
  return "?";
}

ManifoldId parse_manifold_id(std::string_view name) {
  for (ManifoldId id : {ManifoldId::M1, ManifoldId::M2, ManifoldId::M3, ManifoldId::M4,
                        ManifoldId::M5, ManifoldId::M6, ManifoldId::HexTorus})
    if (manifold_name(id) == name)
      return id;
  fail(ErrorCode::ParseError, "unknown manifold id '" + std::string(name) + "'");
}

FlatManifold make_manifold(ManifoldId id) {
  const RMat3 cube = identity();
  // Basis (1,0,0), (1/2, sqrt(3)/2, 0), (0,0,1).
  RMat3 hex = identity();
  hex[0][1] = hex[1][0] = Rational(1, 2);

  // Rotations about the third axis, written in lattice coordinates.
  const RMat3 half = mat({{-1, 0, 0}, {0, -1, 0}, {0, 0, 1}});
  const RMat3 quarter = mat({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}});
  const RMat3 hex60 = mat({{0, -1, 0}, {1, 1, 0}, {0, 0, 1}});
  const RMat3 hex120 = multiply(hex60, hex60);

  auto z_shift = [](Rational s) { return RVec3{Rational(0), Rational(0), s}; };

  switch (id) {
    case ManifoldId::M1:
      return {id, cube, {}};
    case ManifoldId::M2:
      return {id, cube, {Isometry{half, z_shift(Rational(1, 2))}}};
    case ManifoldId::M3:
      return {id, cube, {Isometry{quarter, z_shift(Rational(1, 4))}}};
    case ManifoldId::M4:
      return {id, hex, {Isometry{hex120, z_shift(Rational(1, 3))}}};
    case ManifoldId::M5:
      return {id, hex, {Isometry{hex60, z_shift(Rational(1, 6))}}};
    case ManifoldId::M6: {
      const Rational h(1, 2), z(0);
      return {id,
              cube,
              {Isometry{mat({{1, 0, 0}, {0, -1, 0}, {0, 0, -1}}), {h, h, z}},
               Isometry{mat({{-1, 0, 0}, {0, 1, 0}, {0, 0, -1}}), {z, h, h}}}};
    }
    case ManifoldId::HexTorus:
      return {id, hex, {}};
  }
  fail(ErrorCode::InvalidArgument, "unknown manifold id");
}

std::vector<Isometry> coset_representatives(const FlatManifold& m) {
  if (determinant(m.gram) <= 0)
    fail(ErrorCode::InvalidArgument, "Gram matrix must be positive definite");
  for (const Isometry& g : m.generators) {
    if (!is_integer(g.rotation))
      fail(ErrorCode::InvalidArgument, "rotation does not preserve the lattice");
    if (determinant(g.rotation) != Rational(1))
      fail(ErrorCode::InvalidArgument, "rotation must have determinant +1");
    if (multiply(transpose(g.rotation), multiply(m.gram, g.rotation)) != m.gram)
      fail(ErrorCode::InvalidArgument, "rotation is not orthogonal for the lattice metric");
  }

  constexpr std::size_t kMaxOrder = 48;
  std::vector<Isometry> reps{Isometry{identity(), RVec3{}}};
  for (std::size_t i = 0; i < reps.size(); ++i) {
    for (const Isometry& g : m.generators) {
      Isometry next = compose(g, reps[i]);
      next.translation = reduce_translation(next.translation);
      bool seen = std::any_of(reps.begin(), reps.end(), [&](const Isometry& r) {
        return r.rotation == next.rotation && r.translation == next.translation;
      });
      if (seen)
        continue;
      if (std::any_of(reps.begin(), reps.end(),
                      [&](const Isometry& r) { return r.rotation == next.rotation; }))
        fail(ErrorCode::InvalidArgument,
             "group contains a pure translation outside the lattice");
      reps.push_back(next);
      if (reps.size() > kMaxOrder)
        fail(ErrorCode::InvalidArgument, "point group is not finite");
    }
  }
  return reps;
}

std::size_t point_group_order(const FlatManifold& m) { return coset_representatives(m).size(); }

RVec3 canonical_normal(const RVec3& v, Rational* scale) {
  if (is_zero(v))
    fail(ErrorCode::ZeroNormal, "plane normal must be nonzero");
  std::int64_t l = 1;
  for (const auto& e : v)
    l = std::lcm(l, e.denominator());
  std::int64_t g = 0;
  for (const auto& e : v)
    g = std::gcd(g, (e * l).numerator());
  Rational f(l, g);
  for (const auto& e : v) {
    if (e == Rational(0))
      continue;
    if (e < 0)
      f = -f;
    break;
  }
  if (scale)
    *scale = f;
  return {v[0] * f, v[1] * f, v[2] * f};
}

EuclideanPlaneFamily EuclideanPlaneFamily::make(const RVec3& normal, std::vector<Rational> offsets,
                                                Rational period) {
  if (period <= 0)
    fail(ErrorCode::InvalidArgument, "family period must be positive");
  Rational f;
  EuclideanPlaneFamily fam;
  fam.normal = canonical_normal(normal, &f);
  fam.period = period * boost::abs(f);
  for (auto& c : offsets)
    c = mod(c * f, fam.period);
  std::sort(offsets.begin(), offsets.end());
  offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
  fam.offsets = std::move(offsets);
  return fam;
}

namespace {

std::vector<EuclideanPlaneFamily> merge_planes(
    const std::vector<std::pair<RVec3, Rational>>& planes) {
  // Each plane h.x = c spawns the lattice-periodic family h.x in c + gZ, g the
  // content of h; after canonicalization g = 1.
  std::map<RVec3, std::vector<Rational>> grouped;
  for (const auto& [h, c] : planes) {
    Rational f;
    RVec3 n = canonical_normal(h, &f);
    grouped[n].push_back(c * f);
  }
  std::vector<EuclideanPlaneFamily> out;
  for (auto& [n, offs] : grouped)
    out.push_back(EuclideanPlaneFamily::make(n, offs, Rational(1)));
  return out;
}

} // namespace

std::vector<EuclideanPlaneFamily> orbit_families(const FlatManifold& m, const RVec3& normal,
                                                 Rational offset) {
  if (is_zero(normal))
    fail(ErrorCode::ZeroNormal, "plane normal must be nonzero");
  std::vector<std::pair<RVec3, Rational>> planes;
  for (const Isometry& g : coset_representatives(m))
    planes.push_back(transform_plane(g, normal, offset));
  return merge_planes(planes);
}

bool is_invariant(const FlatManifold& m, const std::vector<EuclideanPlaneFamily>& families) {
  std::vector<Isometry> gens = m.generators;
  // Lattice translations are implicit only for period-1 families.
  for (int i = 0; i < 3; ++i) {
    RVec3 t{};
    t[i] = 1;
    gens.push_back(Isometry{identity(), t});
  }
  auto contains = [&](const RVec3& h, const Rational& c) {
    Rational f;
    RVec3 n = canonical_normal(h, &f);
    for (const auto& fam : families) {
      if (fam.normal != n)
        continue;
      Rational v = mod(c * f, fam.period);
      if (std::binary_search(fam.offsets.begin(), fam.offsets.end(), v))
        return true;
    }
    return false;
  };
  for (const Isometry& g : gens)
    for (const auto& fam : families)
      for (const auto& c : fam.offsets) {
        auto [h, c2] = transform_plane(g, fam.normal, c);
        if (!contains(h, c2))
          return false;
      }
  return true;
}

int normal_rank(const std::vector<EuclideanPlaneFamily>& families) {
  std::vector<RVec3> rows;
  for (const auto& f : families)
    rows.push_back(f.normal);
  int rank = 0;
  for (int col = 0; col < 3 && rank < static_cast<int>(rows.size()); ++col) {
    auto pivot = std::find_if(rows.begin() + rank, rows.end(),
                              [col](const RVec3& r) { return r[col] != Rational(0); });
    if (pivot == rows.end())
      continue;
    std::iter_swap(rows.begin() + rank, pivot);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      Rational factor = rows[i][col] / rows[rank][col];
      for (int j = 0; j < 3; ++j)
        rows[i][j] -= factor * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

bool filling_flat(const std::vector<EuclideanPlaneFamily>& families) {
  if (families.empty())
    fail(ErrorCode::EmptyInput, "no plane families given");
  return normal_rank(families) == 3;
}

std::optional<EscapingGeodesic> find_escaping_geodesic(
    const std::vector<EuclideanPlaneFamily>& families) {
  if (families.empty())
    fail(ErrorCode::EmptyInput, "no plane families given");
  int rank = normal_rank(families);
  if (rank == 3)
    return std::nullopt;

  RVec3 direction{};
  const RVec3& h0 = families.front().normal;
  if (rank == 1) {
    for (int i = 0; i < 3 && is_zero(direction); ++i) {
      RVec3 e{};
      e[i] = 1;
      direction = cross(h0, e);
    }
  } else {
    for (const auto& f : families) {
      direction = cross(h0, f.normal);
      if (!is_zero(direction))
        break;
    }
  }
  direction = canonical_normal(direction);

  // Search small rational points until one avoids every plane exactly.
  for (std::int64_t q : {7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    RVec3 x{Rational(1, q), Rational(1, q * q), Rational(1, q * q * q)};
    double clearance = INFINITY;
    for (const auto& f : families) {
      Rational v = mod(dot(f.normal, x), f.period);
      for (const auto& c : f.offsets) {
        Rational d = boost::abs(v - c);
        d = std::min(d, f.period - d);
        clearance = std::min(clearance, rational_cast<double>(d) / euclid_norm(f.normal));
      }
    }
    if (clearance > 0)
      return EscapingGeodesic{direction, x, clearance};
  }
  fail(ErrorCode::InvalidArgument, "no plane-avoiding basepoint found");
}

CellReport complement_cells_auto(const FlatManifold& m,
                                 const std::vector<EuclideanPlaneFamily>& families,
                                 int resolution) {
  for (;;) {
    try {
      return complement_cells(m, families, resolution);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::ResolutionTooLow || resolution * 2 > kMaxResolution)
        throw;
      resolution *= 2;
    }
  }
}

std::optional<SurfaceSpec> construct_filling(ManifoldId id) {
  RVec3 seed;
  switch (id) {
    case ManifoldId::M1:
    case ManifoldId::M2:
    case ManifoldId::HexTorus:
      return std::nullopt;
    case ManifoldId::M3:
      // diagonal of the front face, running along the y axis
      seed = {Rational(1), Rational(0), Rational(1)};
      break;
    case ManifoldId::M4:
    case ManifoldId::M5:
      // slanted annulus over a diagonal of the hexagon
      seed = {Rational(1), Rational(0), Rational(1)};
      break;
    case ManifoldId::M6:
      seed = {Rational(1), Rational(1), Rational(1)};
      break;
  }
  FlatManifold m = make_manifold(id);
  SurfaceSpec spec{id, seed, Rational(0), orbit_families(m, seed, Rational(0))};
  if (!filling_flat(spec.families))
    return std::nullopt;
  return spec;
}

} // namespace filling::flat3
