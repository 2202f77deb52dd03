#pragma once

// JSON encodings of polytopes, functions, measures, envelope specs and mass
// estimates. Exact values are written as strings ("3/2", "-1"), doubles as
// JSON numbers; readers accept either. Malformed documents raise InvalidInput.

#include <string>

#include "json.hpp"
#include "torimass/envelope.hpp"
#include "torimass/plconvex.hpp"
#include "torimass/polytope.hpp"

namespace torimass {

using Json = nlohmann::ordered_json;

Rational rational_from_json(const Json& j);

template <class S>
Json scalar_to_json(const S& v) {
  if constexpr (Arith<S>::kExact) {
    return Json(Arith<S>::format(v));
  } else {
    return Json(v);
  }
}

template <class S>
Json point_to_json(const Vec<S>& p) {
  Json arr = Json::array();
  for (const auto& x : p) arr.push_back(scalar_to_json(x));
  return arr;
}

template <class S>
Json to_json(const Polytope<S>& p) {
  Json vertices = Json::array();
  for (const auto& v : p.vertices()) vertices.push_back(point_to_json(v));
  return Json{{"dim", p.dim()}, {"vertices", vertices}};
}

template <class S>
Json to_json(const PLConvexFunction<S>& f) {
  Json pieces = Json::array();
  for (const auto& p : f.pieces()) pieces.push_back(Json{{"a", point_to_json(p.slope)}, {"b", scalar_to_json(p.offset)}});
  return Json{{"dim", f.dim()}, {"pieces", pieces}};
}

template <class S>
Json to_json(const AtomicMeasure<S>& m) {
  Json atoms = Json::array();
  for (const auto& a : m.atoms) atoms.push_back(Json{{"x", point_to_json(a.location)}, {"mass", scalar_to_json(a.mass)}});
  return Json{{"atoms", atoms}};
}

template <class S>
Json to_json(const EnvelopeFunction<S>& e) {
  return Json{{"u", to_json(e.u())}, {"v", to_json(e.v())}, {"N", e.big_n()}};
}

Json to_json(const MassEstimate& m);

Polytope<Rational> polytope_from_json(const Json& j);
PLConvexFunction<Rational> function_from_json(const Json& j);
AtomicMeasure<Rational> measure_from_json(const Json& j);
EnvelopeFunction<Rational> envelope_from_json(const Json& j);

// Parses text, raising InvalidInput on syntax errors.
Json parse_json(const std::string& text);
Json read_json_file(const std::string& path);

}  // namespace torimass
