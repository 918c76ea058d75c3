#pragma once

// Numerical tolerances shared by every module. Predicates compare against
// these and nothing else.
namespace filling::tol {

// Boundary-point incidence with a circle, chordal coincidence of points,
// determinant normalization of Moebius matrices.
inline constexpr double kIncidence = 1e-9;
inline constexpr double kDeterminant = 1e-9;

// Polygon chord/point incidence in the Poincare disk.
inline constexpr double kChord = 1e-9;

// Half-angle (as |cos|) excluded around the equator of the fiber sphere when
// sampling planes transverse to a segment.
inline constexpr double kEquatorCap = 1e-6;

// Scaled residual below which the eigenbasis commutation equations count as
// satisfied.
inline constexpr double kEigenResidual = 1e-9;

} // namespace filling::tol
