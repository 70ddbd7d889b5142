#pragma once

#include <nlohmann/json.hpp>

#include "coxtop/cyclo.hpp"
#include "coxtop/golden.hpp"
#include "coxtop/rational.hpp"

namespace coxtop {

nlohmann::json rational_to_json(const Rational& r);
Rational rational_from_json(const nlohmann::json& j);

nlohmann::json golden_to_json(const Golden& g);
Golden golden_from_json(const nlohmann::json& j);

/// Written in its minimal order.
nlohmann::json cyclo_to_json(const Cyclo& c);
Cyclo cyclo_from_json(const nlohmann::json& j);

}  // namespace coxtop
