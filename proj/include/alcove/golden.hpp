#pragma once

#include <json.hpp>

#include "alcove/rational.hpp"

namespace alcove {

// Reference tables compiled in from data/golden.json.  All suite
// expectations come from here so that expected values live in one place.
const nlohmann::ordered_json& golden();

Rational golden_rational(const nlohmann::ordered_json& j);
AffineForm golden_affine(const nlohmann::ordered_json& j);

}  // namespace alcove
