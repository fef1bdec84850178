#include "bbkit/json_io.hpp"

#include <stdexcept>

namespace bbkit {

Json to_json(const Vec& v) {
    Json j = Json::array();
    for (Fe x : v) j.push_back(x.code);
    return j;
}

Json to_json(const Point& p) { return to_json(p.coords()); }

Json to_json(const Matrix& m) {
    Json j = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) j.push_back(to_json(m.row(r)));
    return j;
}

Json to_json(const ConicSpec& spec) {
    Json form = Json::array();
    for (Fe c : spec.form.c) form.push_back(c.code);
    return {{"frame", to_json(spec.frame.M)}, {"form", form}};
}

Json to_json(const NRC& c) {
    return {{"r", c.r}, {"level", degree(c.level)}, {"carrier", to_json(c.carrier.basis())}, {"param", to_json(c.param)}};
}

Json to_json(const FieldTower& F, const SpecialReport& rep) {
    Json pts = Json::array();
    for (const auto& p : rep.points)
        pts.push_back({{"coords", to_json(p.point)},
                       {"level", degree(point_level(F, p.point))},
                       {"mult", p.multiplicity},
                       {"w", p.w},
                       {"o", p.o},
                       {"s", p.s},
                       {"happy", p.happy}});
    Json j{{"r", rep.r}, {"points", pts}, {"weight_sum", rep.weight_sum}, {"is_3special", rep.is_3special}};
    j["type"] = rep.type ? Json(*rep.type) : Json(nullptr);
    return j;
}

Vec vec_from_json(const FieldTower& F, const Json& j) {
    if (!j.is_array()) throw std::invalid_argument("expected an array of field element codes");
    Vec v;
    for (const auto& x : j) {
        if (!x.is_number_unsigned()) throw std::invalid_argument("field element codes are non-negative integers");
        v.push_back(F.element(x.get<std::uint32_t>()));
    }
    return v;
}

Matrix matrix_from_json(const FieldTower& F, const Json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("expected a non-empty array of rows");
    std::vector<Vec> rows;
    for (const auto& r : j) rows.push_back(vec_from_json(F, r));
    for (const auto& r : rows)
        if (r.size() != rows.front().size()) throw std::invalid_argument("ragged matrix");
    return Matrix::from_rows(rows);
}

ConicSpec conic_spec_from_json(const FieldTower& F, const Json& j) {
    if (!j.is_object() || !j.contains("frame") || !j.contains("form"))
        throw std::invalid_argument("conic spec needs \"frame\" and \"form\"");
    const Matrix M = matrix_from_json(F, j.at("frame"));
    if (M.rows() != 3 || M.cols() != 3) throw std::invalid_argument("frame must be 3x3");
    if (degree(entry_level(F, M)) > 3) throw std::invalid_argument("frame entries must lie in GF(q^3)");
    const Vec form = vec_from_json(F, j.at("form"));
    if (form.size() != 6) throw std::invalid_argument("form needs six coefficients");
    ConicSpec spec{subplane_from_matrix(F, M), {}};
    for (int i = 0; i < 6; ++i) spec.form.c[i] = form[i];
    validate(F, spec);
    return spec;
}

NRC nrc_from_json(const FieldTower& F, const Json& j) {
    const Matrix basis = matrix_from_json(F, j.at("carrier"));
    const Subspace carrier(F, basis, basis.cols() - 1);
    if (carrier.basis() != basis) throw std::invalid_argument("carrier basis must be in reduced echelon form");
    NRC c = make_nrc(F, carrier, matrix_from_json(F, j.at("param")));
    if (j.at("r").get<int>() != c.r) throw std::invalid_argument("degree does not match the carrier");
    c.level = level_from_int(j.at("level").get<int>());
    return c;
}

}  // namespace bbkit
