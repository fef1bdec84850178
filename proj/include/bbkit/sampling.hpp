#pragma once

#include <optional>

#include "bbkit/random.hpp"
#include "bbkit/subgeometry.hpp"

namespace bbkit {

QuadForm random_nondegenerate_form(const FieldTower& F, Rng& rng);
// Points of the real conic Q = 0 in PG(2,q).
std::vector<Vec> real_conic_points(const FieldTower& F, const QuadForm& Q);
// A point of Q = 0 over GF(q^3) on the line through the real conic point y0
// with slope phi (nullopt when the line is the tangent at y0).
std::optional<Vec> conic_point_on_slope(const FieldTower& F, const QuadForm& Q, const Vec& y0, Fe phi);
// Dual coordinates of the tangent line at a point of Q = 0.
Vec tangent_line(const FieldTower& F, const QuadForm& Q, const Vec& y);
Vec cross(const FieldTower& F, const Vec& a, const Vec& b);

// A subplane frame whose pullback of l_inf is the line with dual vector l.
SubplaneFrame frame_with_line_at_infinity(const FieldTower& F, const Vec& l, Rng& rng);

// Draws conics until one classifies as the target label; nullopt when the
// budget runs out or the label cannot occur for this q.
std::optional<ConicSpec> sample_conic(const FieldTower& F, CaseLabel target, Rng& rng, int budget = 2000);

}  // namespace bbkit
