#include "torimass/json_io.hpp"

#include <fstream>
#include <sstream>

namespace torimass {

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_number_unsigned()) return Rational(static_cast<long>(j.get<std::uint64_t>()));
  // Floating literals are read through their shortest decimal rendering, so
  // 0.1 means 1/10 rather than the nearest binary double.
  if (j.is_number_float()) return parse_rational(format_double(j.get<double>()));
  throw InvalidInput("expected a number or numeric string");
}

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw InvalidInput(std::string("expected an object with field '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) throw InvalidInput(std::string("missing field '") + name + "'");
  return *it;
}

std::size_t positive_count(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 1) throw InvalidInput(std::string("'") + name + "' must be a positive integer");
  return static_cast<std::size_t>(v.get<std::int64_t>());
}

Vec<Rational> point_from_json(const Json& j, std::size_t dim) {
  if (!j.is_array()) throw InvalidInput("expected a coordinate array");
  if (j.size() != dim) throw InvalidInput("coordinate array has wrong length");
  Vec<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

}  // namespace

Json to_json(const MassEstimate& m) {
  Json j;
  if (m.exact) {
    j["value"] = format_rational(*m.exact);
  } else {
    j["value"] = m.value;
  }
  j["method"] = m.method;
  j["error_bound"] = m.error_bound;
  j["samples"] = m.samples;
  j["seed"] = m.seed;
  j["normalization"] = "toric-lebesgue";
  if (m.diagnostics) {
    const auto& d = *m.diagnostics;
    j["diagnostics"] = Json{{"draws", d.draws},
                            {"kinks_skipped", d.kinks_skipped},
                            {"hull_vertices", d.hull_points},
                            {"half_sample_value", d.half_value},
                            {"max_interior_y", d.max_interior_y},
                            {"support_bound", d.support_bound},
                            {"support_ok", d.support_ok}};
  }
  return j;
}

Polytope<Rational> polytope_from_json(const Json& j) {
  const std::size_t dim = positive_count(j, "dim");
  const Json& verts = field(j, "vertices");
  if (!verts.is_array() || verts.empty()) throw InvalidInput("'vertices' must be a nonempty array");
  std::vector<Vec<Rational>> pts;
  for (const auto& v : verts) pts.push_back(point_from_json(v, dim));
  return Polytope<Rational>::hull_of(pts);
}

PLConvexFunction<Rational> function_from_json(const Json& j) {
  const std::size_t dim = positive_count(j, "dim");
  const Json& pieces = field(j, "pieces");
  if (!pieces.is_array() || pieces.empty()) throw InvalidInput("'pieces' must be a nonempty array");
  std::vector<AffinePiece<Rational>> out;
  for (const auto& p : pieces) out.push_back({point_from_json(field(p, "a"), dim), rational_from_json(field(p, "b"))});
  return PLConvexFunction<Rational>(dim, std::move(out));
}

AtomicMeasure<Rational> measure_from_json(const Json& j) {
  const Json& atoms = field(j, "atoms");
  if (!atoms.is_array()) throw InvalidInput("'atoms' must be an array");
  AtomicMeasure<Rational> m;
  for (const auto& a : atoms) {
    const Json& x = field(a, "x");
    m.atoms.push_back({point_from_json(x, x.is_array() ? x.size() : 0), rational_from_json(field(a, "mass"))});
  }
  return m;
}

EnvelopeFunction<Rational> envelope_from_json(const Json& j) {
  return EnvelopeFunction<Rational>(function_from_json(field(j, "u")), function_from_json(field(j, "v")),
                                    positive_count(j, "N"));
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json(buf.str());
}

}  // namespace torimass
