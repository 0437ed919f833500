#include "alcove/golden.hpp"

namespace alcove {

namespace detail {
const std::string& golden_json_raw();
}

const nlohmann::ordered_json& golden() {
    static const nlohmann::ordered_json parsed =
        nlohmann::ordered_json::parse(detail::golden_json_raw());
    return parsed;
}

Rational golden_rational(const nlohmann::ordered_json& j) {
    return parse_rational(j.get<std::string>());
}

AffineForm golden_affine(const nlohmann::ordered_json& j) {
    return AffineForm{parse_rational(j.at("a").get<std::string>()),
                      parse_rational(j.at("b").get<std::string>())};
}

}  // namespace alcove
