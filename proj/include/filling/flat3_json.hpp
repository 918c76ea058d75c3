#pragma once

// JSON schema (version 1) for flat manifolds and plane-family surfaces.
// Rationals are integers or [numerator, denominator] pairs.
//
//   manifold: {"schema":1, "kind":"flat_manifold", "id":"M6",
//              "lattice_gram":[[r,r,r],[r,r,r],[r,r,r]],
//              "generators":[{"rotation":[[r,r,r],...], "translation":[r,r,r]}]}
//   family:   {"normal":[r,r,r], "period":r, "offsets":[r,...]}
//   surface:  {"schema":1, "kind":"surface", "manifold":"M6",
//              "seed":{"normal":[r,r,r], "offset":r}, "families":[family,...]}

#include <json.hpp>

#include "filling/flat3.hpp"

namespace filling::flat3 {

nlohmann::json rational_to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json vec_to_json(const RVec3& v);
RVec3 vec_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FlatManifold& m);
FlatManifold manifold_from_json(const nlohmann::json& j);

nlohmann::json to_json(const EuclideanPlaneFamily& f);
EuclideanPlaneFamily family_from_json(const nlohmann::json& j);

nlohmann::json families_to_json(const std::vector<EuclideanPlaneFamily>& fams);
std::vector<EuclideanPlaneFamily> families_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SurfaceSpec& s);
SurfaceSpec surface_from_json(const nlohmann::json& j);

} // namespace filling::flat3
