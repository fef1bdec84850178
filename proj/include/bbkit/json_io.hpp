#pragma once

// JSON forms of the library's values. Field elements are written as their
// integer codes (base-p digits of the GF(p)-coordinates, least significant
// first), so GF(q) elements are the codes 0..q-1.

#include <json.hpp>

#include "bbkit/nrc.hpp"
#include "bbkit/special.hpp"
#include "bbkit/subgeometry.hpp"

namespace bbkit {

using Json = nlohmann::json;

Json to_json(const Vec& v);
Json to_json(const Point& p);
Json to_json(const Matrix& m);
Json to_json(const ConicSpec& spec);
Json to_json(const NRC& c);
Json to_json(const FieldTower& F, const SpecialReport& rep);

// Throws std::invalid_argument on malformed input or codes outside the field.
Vec vec_from_json(const FieldTower& F, const Json& j);
Matrix matrix_from_json(const FieldTower& F, const Json& j);
// {"frame": 3x3 matrix over GF(q^3), "form": 6 coefficients over GF(q)}
ConicSpec conic_spec_from_json(const FieldTower& F, const Json& j);
NRC nrc_from_json(const FieldTower& F, const Json& j);

}  // namespace bbkit
