#pragma once

#include <optional>
#include <vector>

#include "bbkit/projective.hpp"

namespace bbkit {

// Curve parameter: a field element or the point at infinity of PG(1).
struct Param {
    bool infinite = false;
    Fe value{};
    friend bool operator==(const Param&, const Param&) = default;
};

// Normal rational curve of degree r. The point with parameter t is
// embedding * (1, t, ..., t^r); t = infinity gives the last column.
// embedding = carrier_basis^T * param.
struct NRC {
    int r = 0;
    Level level = Level::base;
    Subspace carrier;
    Matrix param;      // (r+1) x (r+1), carrier coordinates
    Matrix embedding;  // (n+1) x (r+1), ambient coordinates
};

// Assembles the embedding from carrier and param; throws if param is singular.
NRC make_nrc(const FieldTower& F, const Subspace& carrier, const Matrix& param);

// Curve t -> G (1, t, ..., t^r) for a full-rank (n+1) x (r+1) matrix G.
NRC nrc_from_embedding(const FieldTower& F, const Matrix& G);

NRC standard_nrc(const FieldTower& F, int r, Level level);

Point nrc_point(const FieldTower& F, const NRC& c, Param t);
// Points whose parameters lie in GF(q^level) or at infinity.
std::vector<Point> nrc_points(const FieldTower& F, const NRC& c, Level level);
// Parameter of x on the extended curve, if x lies on it.
std::optional<Param> nrc_parameter(const FieldTower& F, const NRC& c, const Point& x);
bool nrc_contains(const FieldTower& F, const NRC& c, const Point& x);

// The unique curve through r+3 points in general position inside their r-dim span.
NRC nrc_through(const FieldTower& F, const std::vector<Point>& points);

// No t+2 points in a t-space for t < r, with r the dimension of the span.
bool t_space_property(const FieldTower& F, const std::vector<Point>& points);

// Curve containing every input point, fitted through the first r+3 points in canonical order that stay in general
// position. Throws std::invalid_argument when fewer than r+3 points are given.
std::optional<NRC> recognize(const FieldTower& F, std::vector<Point> points);

// The real curve whose extension is c, or nullopt when c is not Frobenius-stable.
std::optional<NRC> descend(const FieldTower& F, const NRC& c);

// Section by the hyperplane h . x = 0 over GF(q^6). The multiplicities add up
// to r whenever the section splits over GF(q^6), which is always the case for
// r <= 3; a shortfall means part of the section lives in GF(q^4) or GF(q^5).
std::vector<MultPoint> infinity_points(const FieldTower& F, const NRC& c, const Vec& hyperplane);

}  // namespace bbkit
