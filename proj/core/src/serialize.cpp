#include "coxtop/serialize.hpp"

#include "coxtop/errors.hpp"

namespace coxtop {

using nlohmann::json;

json rational_to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError("expected a rational, got " + j.dump());
}

json golden_to_json(const Golden& g) { return json::array({to_string(g.a()), to_string(g.b())}); }

Golden golden_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) return Golden(rational_from_json(j));
  return Golden(rational_from_json(j[0]), rational_from_json(j[1]));
}

json cyclo_to_json(const Cyclo& c) {
  Cyclo r = c.reduced();
  json coeffs = json::array();
  for (const auto& x : r.coeffs()) coeffs.push_back(to_string(x));
  return json{{"order", r.order()}, {"coeffs", coeffs}};
}

Cyclo cyclo_from_json(const json& j) {
  if (!j.is_object()) return Cyclo(rational_from_json(j));
  if (!j.contains("order") || !j.contains("coeffs") || !j["coeffs"].is_array())
    throw InputError("malformed cyclotomic value " + j.dump());
  std::vector<Rational> c;
  for (const auto& x : j["coeffs"]) c.push_back(rational_from_json(x));
  int n = j["order"].get<int>();
  if (n < 1) throw InputError("cyclotomic order must be positive");
  return Cyclo(n, std::move(c));
}

}  // namespace coxtop
