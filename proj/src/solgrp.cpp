#include "filling/solgrp.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

#include "filling/error.hpp"
#include "filling/tolerance.hpp"

namespace filling::solgrp {

AnosovMatrix::AnosovMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
    : m_{a, b, c, d} {
  if (a * d - b * c != 1)
    fail(ErrorCode::NotAnosov, "phi must have determinant 1");
  if (std::abs(a + d) <= 2)
    fail(ErrorCode::NotAnosov, "phi must have |trace| > 2");
}

IVec2 AnosovMatrix::apply_power(std::int64_t s, IVec2 v) const {
  // inverse of [[a,b],[c,d]] with det 1 is [[d,-b],[-c,a]]
  const std::int64_t fa = s >= 0 ? m_[0] : m_[3];
  const std::int64_t fb = s >= 0 ? m_[1] : -m_[1];
  const std::int64_t fc = s >= 0 ? m_[2] : -m_[2];
  const std::int64_t fd = s >= 0 ? m_[3] : m_[0];
  for (std::int64_t i = 0, n = std::abs(s); i < n; ++i)
    v = {fa * v[0] + fb * v[1], fc * v[0] + fd * v[1]};
  return v;
}

double AnosovMatrix::lambda() const {
  double tr = static_cast<double>(trace());
  double disc = std::sqrt(tr * tr - 4.0);
  return tr > 0 ? 0.5 * (tr + disc) : 0.5 * (tr - disc);
}

std::array<double, 2> AnosovMatrix::eigen_coordinates(const IVec2& v) const {
  // eigenvector for mu: (b, mu - a), or (mu - d, c) when b = 0
  double lam = lambda(), mu = 1.0 / lam;
  auto eigvec = [this](double e) -> std::array<double, 2> {
    if (m_[1] != 0)
      return {static_cast<double>(m_[1]), e - static_cast<double>(m_[0])};
    return {e - static_cast<double>(m_[3]), static_cast<double>(m_[2])};
  };
  auto x = eigvec(lam), y = eigvec(mu);
  double nx = std::hypot(x[0], x[1]), ny = std::hypot(y[0], y[1]);
  x = {x[0] / nx, x[1] / nx};
  y = {y[0] / ny, y[1] / ny};
  double det = x[0] * y[1] - x[1] * y[0];
  double v0 = static_cast<double>(v[0]), v1 = static_cast<double>(v[1]);
  return {(v0 * y[1] - v1 * y[0]) / det, (x[0] * v1 - x[1] * v0) / det};
}

SolElement multiply(const SolElement& x, const SolElement& y, const AnosovMatrix& phi) {
  IVec2 w = phi.apply_power(x.s, y.v);
  return SolElement{{x.v[0] + w[0], x.v[1] + w[1]}, x.s + y.s};
}

SolElement inverse(const SolElement& x, const AnosovMatrix& phi) {
  IVec2 w = phi.apply_power(-x.s, x.v);
  return SolElement{{-w[0], -w[1]}, -x.s};
}

SolElement power(const SolElement& x, std::int64_t k, const AnosovMatrix& phi) {
  SolElement base = k >= 0 ? x : inverse(x, phi);
  SolElement acc = kIdentity;
  for (std::int64_t i = 0, n = std::abs(k); i < n; ++i)
    acc = multiply(acc, base, phi);
  return acc;
}

SolWord parse_word(std::string_view text) {
  SolWord w;
  auto invert_last = [&](std::size_t pos) {
    if (w.empty())
      fail(ErrorCode::ParseError, "inverse marker without a letter at byte " + std::to_string(pos));
    Letter& l = w.back();
    switch (l) {
      case Letter::a: l = Letter::A; break;
      case Letter::b: l = Letter::B; break;
      case Letter::t: l = Letter::T; break;
      default:
        fail(ErrorCode::ParseError, "inverse marker after an inverse letter at byte " + std::to_string(pos));
    }
  };
  static constexpr std::string_view kSuperInverse = "⁻¹";  // ⁻¹
  for (std::size_t i = 0; i < text.size();) {
    char c = text[i];
    if (text.substr(i, kSuperInverse.size()) == kSuperInverse) {
      invert_last(i);
      i += kSuperInverse.size();
      continue;
    }
    if (text.substr(i, 3) == "^-1") {
      invert_last(i);
      i += 3;
      continue;
    }
    switch (c) {
      case 'a': w.push_back(Letter::a); break;
      case 'A': w.push_back(Letter::A); break;
      case 'b': w.push_back(Letter::b); break;
      case 'B': w.push_back(Letter::B); break;
      case 't': w.push_back(Letter::t); break;
      case 'T': w.push_back(Letter::T); break;
      case ' ': case '\t': case '\n': break;
      default:
        fail(ErrorCode::ParseError, std::string("unknown letter '") + c + "' at byte " + std::to_string(i));
    }
    ++i;
  }
  return w;
}

std::string format_word(const SolWord& w) {
  static constexpr char kChars[] = {'a', 'A', 'b', 'B', 't', 'T'};
  std::string out;
  for (Letter l : w)
    out.push_back(kChars[static_cast<int>(l)]);
  return out;
}

SolElement letter_element(Letter l) {
  switch (l) {
    case Letter::a: return SolElement{{1, 0}, 0};
    case Letter::A: return SolElement{{-1, 0}, 0};
    case Letter::b: return SolElement{{0, 1}, 0};
    case Letter::B: return SolElement{{0, -1}, 0};
    case Letter::t: return SolElement{{0, 0}, 1};
    case Letter::T: return SolElement{{0, 0}, -1};
  }
  return kIdentity;
}

SolElement reduce(const SolWord& w, const AnosovMatrix& phi) {
  SolElement acc = kIdentity;
  for (Letter l : w)
    acc = multiply(acc, letter_element(l), phi);
  return acc;
}

bool commute_check(const SolElement& x, const SolElement& y, const AnosovMatrix& phi) {
  return multiply(x, y, phi) == multiply(y, x, phi);
}

bool generates_z2(const SolElement& x, const SolElement& y, const AnosovMatrix& phi) {
  if (!commute_check(x, y, phi))
    return false;
  if (x.s == 0 && y.s == 0)
    return x.v[0] * y.v[1] - x.v[1] * y.v[0] != 0;
  // <x, y> is abelian; its t-exponent map onto gZ has kernel generated by
  // x^(r/g) y^(-s/g). The subgroup has rank 2 iff that element is nontrivial.
  std::int64_t g = std::gcd(x.s, y.s);
  SolElement k = multiply(power(x, y.s / g, phi), power(y, -x.s / g, phi), phi);
  return !(k == kIdentity);
}

namespace {

std::vector<SolElement> box_elements(int bound) {
  std::vector<SolElement> out;
  for (std::int64_t s = -bound; s <= bound; ++s)
    for (std::int64_t n = -bound; n <= bound; ++n)
      for (std::int64_t m = -bound; m <= bound; ++m)
        out.push_back(SolElement{{n, m}, s});
  return out;
}

void check_bound(int bound) {
  if (bound < 1)
    fail(ErrorCode::InvalidArgument, "scan bound must be at least 1");
}

} // namespace

std::vector<ElementPair> z2_scan_serial(const AnosovMatrix& phi, int bound) {
  check_bound(bound);
  auto elems = box_elements(bound);
  std::vector<ElementPair> out;
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = i + 1; j < elems.size(); ++j)
      if (generates_z2(elems[i], elems[j], phi))
        out.emplace_back(elems[i], elems[j]);
  return out;
}

std::vector<ElementPair> z2_scan(const AnosovMatrix& phi, int bound) {
  check_bound(bound);
  auto elems = box_elements(bound);
  const long n = static_cast<long>(elems.size());
  std::vector<std::vector<ElementPair>> rows(elems.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (long i = 0; i < n; ++i)
    for (long j = i + 1; j < n; ++j)
      if (generates_z2(elems[i], elems[j], phi))
        rows[i].emplace_back(elems[i], elems[j]);
  std::vector<ElementPair> out;
  for (auto& r : rows)
    out.insert(out.end(), r.begin(), r.end());
  return out;
}

EigenResidual eigen_residual(const AnosovMatrix& phi, const SolElement& x, const SolElement& y) {
  const double lam = phi.lambda();
  auto w = phi.eigen_coordinates(x.v);
  auto v = phi.eigen_coordinates(y.v);
  const double ls = std::pow(lam, static_cast<double>(x.s));
  const double lr = std::pow(lam, static_cast<double>(y.s));
  double r1 = ls * v[0] - lr * w[0] - (v[0] - w[0]);
  double r2 = v[1] / ls - w[1] / lr - (v[1] - w[1]);
  double mag_v = std::hypot(v[0], v[1]), mag_w = std::hypot(w[0], w[1]);
  double growth = std::max({1.0, std::abs(ls), std::abs(lr), 1.0 / std::abs(ls), 1.0 / std::abs(lr)});
  double scale = growth * (1.0 + mag_v + mag_w);
  return {r1 / scale, r2 / scale};
}

bool eigen_commutes(const AnosovMatrix& phi, const SolElement& x, const SolElement& y) {
  auto r = eigen_residual(phi, x, y);
  return std::abs(r.r1) < tol::kEigenResidual && std::abs(r.r2) < tol::kEigenResidual;
}

} // namespace filling::solgrp
