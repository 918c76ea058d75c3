#include "filling/flat3_json.hpp"

#include <string>

#include "filling/error.hpp"

namespace filling::flat3 {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    fail(ErrorCode::ParseError, std::string("missing field '") + key + "'");
  return j.at(key);
}

void check_schema(const json& j) {
  if (j.contains("schema") && j.at("schema") != 1)
    fail(ErrorCode::ParseError, "unsupported schema version");
}

} // namespace

json rational_to_json(const Rational& r) {
  if (r.denominator() == 1)
    return r.numerator();
  return json::array({r.numerator(), r.denominator()});
}

Rational rational_from_json(const json& j) {
  if (j.is_number_integer())
    return Rational(j.get<std::int64_t>());
  if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
    auto den = j[1].get<std::int64_t>();
    if (den == 0)
      fail(ErrorCode::ParseError, "zero denominator");
    return Rational(j[0].get<std::int64_t>(), den);
  }
  fail(ErrorCode::ParseError, "expected integer or [num, den] pair, got " + j.dump());
}

json vec_to_json(const RVec3& v) {
  return json::array({rational_to_json(v[0]), rational_to_json(v[1]), rational_to_json(v[2])});
}

RVec3 vec_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3)
    fail(ErrorCode::ParseError, "expected a 3-vector, got " + j.dump());
  return {rational_from_json(j[0]), rational_from_json(j[1]), rational_from_json(j[2])};
}

namespace {

json mat_to_json(const RMat3& m) {
  return json::array({vec_to_json(m[0]), vec_to_json(m[1]), vec_to_json(m[2])});
}

RMat3 mat_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3)
    fail(ErrorCode::ParseError, "expected a 3x3 matrix");
  return {vec_from_json(j[0]), vec_from_json(j[1]), vec_from_json(j[2])};
}

} // namespace

json to_json(const FlatManifold& m) {
  json gens = json::array();
  for (const auto& g : m.generators)
    gens.push_back({{"rotation", mat_to_json(g.rotation)}, {"translation", vec_to_json(g.translation)}});
  return {{"schema", 1},
          {"kind", "flat_manifold"},
          {"id", std::string(manifold_name(m.id))},
          {"lattice_gram", mat_to_json(m.gram)},
          {"generators", gens}};
}

FlatManifold manifold_from_json(const json& j) {
  check_schema(j);
  FlatManifold m;
  m.id = parse_manifold_id(field(j, "id").get<std::string>());
  m.gram = mat_from_json(field(j, "lattice_gram"));
  for (const auto& g : field(j, "generators"))
    m.generators.push_back({mat_from_json(field(g, "rotation")), vec_from_json(field(g, "translation"))});
  return m;
}

json to_json(const EuclideanPlaneFamily& f) {
  json offs = json::array();
  for (const auto& c : f.offsets)
    offs.push_back(rational_to_json(c));
  return {{"normal", vec_to_json(f.normal)}, {"period", rational_to_json(f.period)}, {"offsets", offs}};
}

EuclideanPlaneFamily family_from_json(const json& j) {
  std::vector<Rational> offs;
  for (const auto& c : field(j, "offsets"))
    offs.push_back(rational_from_json(c));
  Rational period = j.contains("period") ? rational_from_json(j.at("period")) : Rational(1);
  return EuclideanPlaneFamily::make(vec_from_json(field(j, "normal")), offs, period);
}

json families_to_json(const std::vector<EuclideanPlaneFamily>& fams) {
  json out = json::array();
  for (const auto& f : fams)
    out.push_back(to_json(f));
  return out;
}

std::vector<EuclideanPlaneFamily> families_from_json(const json& j) {
  if (!j.is_array())
    fail(ErrorCode::ParseError, "expected an array of families");
  std::vector<EuclideanPlaneFamily> out;
  for (const auto& f : j)
    out.push_back(family_from_json(f));
  return out;
}

json to_json(const SurfaceSpec& s) {
  return {{"schema", 1},
          {"kind", "surface"},
          {"manifold", std::string(manifold_name(s.manifold))},
          {"seed", {{"normal", vec_to_json(s.seed_normal)}, {"offset", rational_to_json(s.seed_offset)}}},
          {"families", families_to_json(s.families)}};
}

SurfaceSpec surface_from_json(const json& j) {
  check_schema(j);
  SurfaceSpec s;
  s.manifold = parse_manifold_id(field(j, "manifold").get<std::string>());
  s.families = families_from_json(field(j, "families"));
  if (j.contains("seed")) {
    s.seed_normal = vec_from_json(field(j.at("seed"), "normal"));
    s.seed_offset = rational_from_json(field(j.at("seed"), "offset"));
  } else if (!s.families.empty()) {
    s.seed_normal = s.families.front().normal;
    s.seed_offset = s.families.front().offsets.empty() ? Rational(0) : s.families.front().offsets.front();
  }
  return s;
}

} // namespace filling::flat3
