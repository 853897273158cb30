#pragma once

#include "fuchsdim/big_real.hpp"

#include "json.hpp"

namespace fuchsdim::detail {

using Json = nlohmann::ordered_json;

inline Json number_json(const BigReal& x) {
    return Json{{"decimal", x.to_decimal()}, {"binary", x.to_binary()}};
}

// Reads either a bare string or the {"decimal", "binary"} pair, preferring binary.
inline BigReal number_from_json(const Json& j, Precision prec) {
    if (j.is_string()) {
        return BigReal::parse(j.get<std::string>(), prec);
    }
    if (j.is_number_integer()) {
        return BigReal(j.get<long>(), prec);
    }
    if (j.is_number()) {
        return BigReal(j.get<double>(), prec);
    }
    return BigReal::parse(j.at("binary").get<std::string>(), prec);
}

} // namespace fuchsdim::detail
