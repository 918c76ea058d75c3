#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "filling/error.hpp"
#include "filling/flat3.hpp"

namespace filling::flat3 {

namespace {

using boost::rational_cast;

struct PlaneSet {
  std::array<double, 3> normal;
  double period;
  double half_width;  // half a grid step, measured along normal . x
  std::vector<double> offsets;
};

using Shift = std::array<std::int16_t, 3>;

// Union-find over grid points that also tracks, for every node, which lattice
// translate of the root's lift it belongs to. Merging two nodes already in
// one tree through a path with a different translate means the cell wraps.
class PeriodicUnionFind {
public:
  explicit PeriodicUnionFind(std::size_t n) : parent_(n), shift_(n, Shift{0, 0, 0}), wraps_(n, 0) {
    for (std::size_t i = 0; i < n; ++i)
      parent_[i] = static_cast<std::uint32_t>(i);
  }

  std::uint32_t find(std::uint32_t x, Shift& acc) {
    Shift total{0, 0, 0};
    std::uint32_t root = x;
    while (parent_[root] != root) {
      for (int k = 0; k < 3; ++k)
        total[k] = static_cast<std::int16_t>(total[k] + shift_[root][k]);
      root = parent_[root];
    }
    // compress: every node on the path points at the root with its full shift
    Shift remaining = total;
    while (parent_[x] != root && parent_[x] != x) {
      std::uint32_t next = parent_[x];
      Shift own = shift_[x];
      parent_[x] = root;
      shift_[x] = remaining;
      for (int k = 0; k < 3; ++k)
        remaining[k] = static_cast<std::int16_t>(remaining[k] - own[k]);
      x = next;
    }
    acc = total;
    return root;
  }

  // Edge a -> b where the lift of b is the lift of a moved by `wrap` lattice
  // vectors.
  void unite(std::uint32_t a, std::uint32_t b, const Shift& wrap) {
    Shift sa, sb;
    std::uint32_t ra = find(a, sa), rb = find(b, sb);
    Shift want;
    for (int k = 0; k < 3; ++k)
      want[k] = static_cast<std::int16_t>(sa[k] + wrap[k] - sb[k]);
    if (ra == rb) {
      if (want != Shift{0, 0, 0})
        wraps_[ra] = 1;
      return;
    }
    // attach rb below ra: shift(rb) relative to ra = want
    parent_[rb] = ra;
    shift_[rb] = want;
    wraps_[ra] = static_cast<std::uint8_t>(wraps_[ra] | wraps_[rb]);
  }

  bool is_root(std::uint32_t x) const { return parent_[x] == x; }
  bool wraps(std::uint32_t root) const { return wraps_[root] != 0; }

private:
  std::vector<std::uint32_t> parent_;
  std::vector<Shift> shift_;
  std::vector<std::uint8_t> wraps_;
};

std::vector<PlaneSet> prepare(const FlatManifold& m,
                              const std::vector<EuclideanPlaneFamily>& families,
                              int resolution) {
  if (families.empty())
    fail(ErrorCode::EmptyInput, "no plane families given");
  if (resolution < 32)
    fail(ErrorCode::InvalidArgument, "resolution must be at least 32");
  if (resolution > kMaxResolution)
    fail(ErrorCode::InvalidArgument, "resolution exceeds " + std::to_string(kMaxResolution));
  for (const auto& f : families)
    if (f.offsets.empty())
      fail(ErrorCode::EmptyInput, "plane family without offsets");
  if (!is_invariant(m, families))
    fail(ErrorCode::NotInvariant, "families are not invariant under the manifold's group");

  std::vector<PlaneSet> sets;
  for (const auto& f : families) {
    PlaneSet s;
    double step = 0;
    for (int k = 0; k < 3; ++k) {
      s.normal[k] = rational_cast<double>(f.normal[k]);
      step = std::max(step, std::abs(s.normal[k]));
    }
    step /= resolution;
    s.period = rational_cast<double>(f.period);
    s.half_width = 0.5 * step;
    for (const auto& c : f.offsets)
      s.offsets.push_back(rational_cast<double>(c));

    // Planes need more than two grid steps between them to leave a free voxel.
    for (std::size_t i = 0; i < f.offsets.size(); ++i) {
      Rational gap = i + 1 < f.offsets.size() ? f.offsets[i + 1] - f.offsets[i]
                                               : f.period - f.offsets[i] + f.offsets[0];
      if (rational_cast<double>(gap) <= 2.0 * step)
        fail(ErrorCode::ResolutionTooLow, "parallel planes closer than two grid cells at resolution " +
                                              std::to_string(resolution));
    }
    sets.push_back(std::move(s));
  }
  return sets;
}

bool is_free(const std::vector<PlaneSet>& sets, double x, double y, double z) {
  for (const PlaneSet& s : sets) {
    double v = s.normal[0] * x + s.normal[1] * y + s.normal[2] * z;
    for (double c : s.offsets) {
      double d = std::fmod(v - c, s.period);
      if (d < 0)
        d += s.period;
      d = std::min(d, s.period - d);
      if (d <= s.half_width + 1e-12)
        return false;
    }
  }
  return true;
}

std::vector<std::uint8_t> mark_free(const std::vector<PlaneSet>& sets, int n, bool parallel) {
  std::vector<std::uint8_t> free(static_cast<std::size_t>(n) * n * n);
  const double inv = 1.0 / n;
#pragma omp parallel for schedule(static) if (parallel)
  for (int k = 0; k < n; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        std::size_t idx = (static_cast<std::size_t>(k) * n + j) * n + i;
        free[idx] = is_free(sets, (i + 0.5) * inv, (j + 0.5) * inv, (k + 0.5) * inv) ? 1 : 0;
      }
  return free;
}

// Unions the x and y edges of layers [k0, k1) and the z edges inside it.
void unite_slab(PeriodicUnionFind& uf, const std::vector<std::uint8_t>& free, int n, int k0, int k1) {
  auto id = [n](int i, int j, int k) {
    return static_cast<std::uint32_t>((static_cast<std::size_t>(k) * n + j) * n + i);
  };
  for (int k = k0; k < k1; ++k)
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        std::uint32_t a = id(i, j, k);
        if (!free[a])
          continue;
        std::uint32_t bx = id((i + 1) % n, j, k);
        if (free[bx])
          uf.unite(a, bx, Shift{static_cast<std::int16_t>(i + 1 == n), 0, 0});
        std::uint32_t by = id(i, (j + 1) % n, k);
        if (free[by])
          uf.unite(a, by, Shift{0, static_cast<std::int16_t>(j + 1 == n), 0});
        if (k + 1 < k1) {
          std::uint32_t bz = id(i, j, k + 1);
          if (free[bz])
            uf.unite(a, bz, Shift{0, 0, 0});
        }
      }
}

// z edges from layer k to layer (k + 1) mod n.
void unite_layer_pair(PeriodicUnionFind& uf, const std::vector<std::uint8_t>& free, int n, int k) {
  int k2 = (k + 1) % n;
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) {
      std::uint32_t a = static_cast<std::uint32_t>((static_cast<std::size_t>(k) * n + j) * n + i);
      std::uint32_t b = static_cast<std::uint32_t>((static_cast<std::size_t>(k2) * n + j) * n + i);
      if (free[a] && free[b])
        uf.unite(a, b, Shift{0, 0, static_cast<std::int16_t>(k + 1 == n)});
    }
}

CellReport summarize(PeriodicUnionFind& uf, const std::vector<std::uint8_t>& free, int n) {
  CellReport r{n, 0, 0, true};
  for (std::uint32_t i = 0; i < free.size(); ++i) {
    if (!free[i] || !uf.is_root(i))
      continue;
    ++r.cell_count;
    if (uf.wraps(i))
      ++r.wrapping_cells;
  }
  r.all_contractible = r.wrapping_cells == 0;
  return r;
}

} // namespace

CellReport complement_cells_serial(const FlatManifold& m,
                                   const std::vector<EuclideanPlaneFamily>& families,
                                   int resolution) {
  auto sets = prepare(m, families, resolution);
  const int n = resolution;
  auto free = mark_free(sets, n, false);
  PeriodicUnionFind uf(free.size());
  unite_slab(uf, free, n, 0, n);
  unite_layer_pair(uf, free, n, n - 1);
  return summarize(uf, free, n);
}

CellReport complement_cells(const FlatManifold& m,
                            const std::vector<EuclideanPlaneFamily>& families, int resolution) {
  auto sets = prepare(m, families, resolution);
  const int n = resolution;
  auto free = mark_free(sets, n, true);
  PeriodicUnionFind uf(free.size());

  int slabs = 1;
#ifdef _OPENMP
  slabs = std::clamp(omp_get_max_threads(), 1, n);
#endif
  std::vector<int> bounds(slabs + 1);
  for (int s = 0; s <= slabs; ++s)
    bounds[s] = static_cast<int>(static_cast<long>(s) * n / slabs);

  // Trees never cross slab boundaries in this phase, so slabs are independent.
#pragma omp parallel for schedule(static)
  for (int s = 0; s < slabs; ++s)
    unite_slab(uf, free, n, bounds[s], bounds[s + 1]);

  for (int s = 0; s < slabs; ++s)
    unite_layer_pair(uf, free, n, (bounds[s + 1] - 1 + n) % n);
  return summarize(uf, free, n);
}

} // namespace filling::flat3
