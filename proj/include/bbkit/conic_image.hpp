#pragma once

#include <array>
#include <vector>

#include "bbkit/bruck_bose.hpp"
#include "bbkit/nrc.hpp"
#include "bbkit/subgeometry.hpp"

namespace bbkit {

// Y(t) = c[0] + c[1] t + c[2] t^2 runs once through the real conic Q = 0 as t
// ranges over GF(q) and infinity (t = infinity gives c[2]).
std::array<Vec, 3> conic_parametrization(const FieldTower& F, const QuadForm& Q);

// Bruck-Bose image of an F_q-conic of PG(2,q^3).
struct ConicImage {
    std::vector<Point> affine;          // images of the affine conic points, PG(6,q)
    std::vector<std::size_t> elements;  // spread elements of the conic points on l_inf
    NRC curve;                          // closure of the affine part
    int stripped_degree = 0;            // 6 - curve.r
};

ConicImage conic_image(const BBContext& ctx, const ConicSpec& spec);

}  // namespace bbkit
