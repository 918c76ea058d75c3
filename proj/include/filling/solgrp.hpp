#pragma once

// Fundamental groups of Anosov torus bundles, Z^2 x|_phi Z. An element
// a^n b^m t^s is stored in normal form (v = (n, m), s); conjugation by t acts
// on Z^2 as phi.

#include <array>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace filling::solgrp {

using IVec2 = std::array<std::int64_t, 2>;

class AnosovMatrix {
public:
  // Rows (a, b), (c, d). Throws NotAnosov unless det = 1 and |trace| > 2.
  AnosovMatrix(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d);

  // [[2,1],[1,1]], the smallest-trace example.
  static AnosovMatrix standard() { return AnosovMatrix(2, 1, 1, 1); }

  std::int64_t a() const { return m_[0]; }
  std::int64_t b() const { return m_[1]; }
  std::int64_t c() const { return m_[2]; }
  std::int64_t d() const { return m_[3]; }
  std::int64_t trace() const { return m_[0] + m_[3]; }

  // phi^s v for any integer s (negative powers use the integer inverse).
  IVec2 apply_power(std::int64_t s, IVec2 v) const;

  // Expanding eigenvalue, |lambda| > 1.
  double lambda() const;
  // Coordinates of v in the eigenbasis (expanding, contracting).
  std::array<double, 2> eigen_coordinates(const IVec2& v) const;

private:
  std::array<std::int64_t, 4> m_;
};

struct SolElement {
  IVec2 v{0, 0};
  std::int64_t s = 0;

  friend bool operator==(const SolElement&, const SolElement&) = default;
};

inline constexpr SolElement kIdentity{};

SolElement multiply(const SolElement& x, const SolElement& y, const AnosovMatrix& phi);
SolElement inverse(const SolElement& x, const AnosovMatrix& phi);
SolElement power(const SolElement& x, std::int64_t k, const AnosovMatrix& phi);

enum class Letter : std::uint8_t { a, A, b, B, t, T };

using SolWord = std::vector<Letter>;

// Letters a A b B t T (capital = inverse). Also accepts a superscript "⁻¹"
// or "^-1" after a lowercase letter. Whitespace is ignored.
SolWord parse_word(std::string_view text);
std::string format_word(const SolWord& w);

SolElement letter_element(Letter l);
SolElement reduce(const SolWord& w, const AnosovMatrix& phi);

bool commute_check(const SolElement& x, const SolElement& y, const AnosovMatrix& phi);

// Commuting pair generating a subgroup isomorphic to Z^2 (not both powers of a
// common element). Exact.
bool generates_z2(const SolElement& x, const SolElement& y, const AnosovMatrix& phi);

using ElementPair = std::pair<SolElement, SolElement>;

// Unordered pairs of elements with |n|, |m|, |s| <= bound that generate Z^2,
// in enumeration order.
std::vector<ElementPair> z2_scan(const AnosovMatrix& phi, int bound);
std::vector<ElementPair> z2_scan_serial(const AnosovMatrix& phi, int bound);

struct EigenResidual {
  double r1;
  double r2;
};

// Residuals of the commutation equation in the eigenbasis, with v = y.v and
// w = x.v, s = x.s, r = y.s:
//   lambda^s v1 - lambda^r w1 - (v1 - w1)
//   lambda^-s v2 - lambda^-r w2 - (v2 - w2)
// Each is divided by a magnitude scale so that both are O(eps) when x and y
// commute.
EigenResidual eigen_residual(const AnosovMatrix& phi, const SolElement& x, const SolElement& y);

bool eigen_commutes(const AnosovMatrix& phi, const SolElement& x, const SolElement& y);

} // namespace filling::solgrp
