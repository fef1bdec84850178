#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "bbkit/projective.hpp"

namespace bbkit {

// The subplane M * PG(2,q) of PG(2,q^3).
struct SubplaneFrame {
    Matrix M;
    Matrix Minv;
};

SubplaneFrame subplane_from_matrix(const FieldTower& F, const Matrix& M);
// The subplane through four points of PG(2,q^3), no three collinear, with the
// standard frame sent to the quadrangle.
SubplaneFrame subplane_through(const FieldTower& F, const std::vector<Point>& quadrangle);

// Subplane coordinates M^-1 X.
Vec subplane_coords(const FieldTower& F, const SubplaneFrame& pi, const Point& x);
bool in_subplane(const FieldTower& F, const SubplaneFrame& pi, const Point& x);
std::vector<Point> subplane_points(const FieldTower& F, const SubplaneFrame& pi);

// X -> B X^q with B = M (M^-1)^(q); fixes the subplane pointwise.
Collineation conj_map(const FieldTower& F, const SubplaneFrame& pi);
// Image of a line of PG(2, .) under a collineation.
Subspace apply_to_line(const FieldTower& F, const Collineation& c, const Subspace& line);

// The line x0 = 0.
Subspace line_at_infinity(const FieldTower& F);

enum class Secancy { secant, tangent, exterior };
std::string to_string(Secancy s);
Secancy secancy(const FieldTower& F, const SubplaneFrame& pi, const Subspace& line);
// Points of the subplane on the line (q+1, 1 or 0 of them).
std::vector<Point> subplane_meet_line(const FieldTower& F, const SubplaneFrame& pi, const Subspace& line);

// Carriers of an exterior pair (pi, l): {E, E^c, E^(c^2)} with c = conj_map(pi),
// E = l meet l^(c^2), so that E and E^c lie on l and E^(c^2) = l^c meet l^(c^2).
// c permutes the three cyclically.
std::array<Point, 3> carriers(const FieldTower& F, const SubplaneFrame& pi, const Subspace& line);

// a x^2 + b y^2 + c z^2 + d yz + e xz + f xy with coefficients in GF(q).
struct QuadForm {
    std::array<Fe, 6> c{};
    friend bool operator==(const QuadForm&, const QuadForm&) = default;
};

Fe eval_form(const FieldTower& F, const QuadForm& Q, const Vec& y);
// Q(x + y) - Q(x) - Q(y).
Fe polar_form(const FieldTower& F, const QuadForm& Q, const Vec& x, const Vec& y);
bool is_nondegenerate(const FieldTower& F, const QuadForm& Q);
// For even q: the common zero of the partial derivatives, in subplane coordinates.
std::optional<Vec> nucleus(const FieldTower& F, const QuadForm& Q);

struct ConicSpec {
    SubplaneFrame frame;
    QuadForm form;
};

// Throws std::invalid_argument on a degenerate form or a form not over GF(q).
void validate(const FieldTower& F, const ConicSpec& spec);
bool on_conic(const FieldTower& F, const ConicSpec& spec, const Point& x);
// C (level 1), C+ (level 3) or C++ (level 6). Level 6 enumerates q^6+1 pencil lines.
std::vector<Point> conic_points(const FieldTower& F, const ConicSpec& spec, Level level);

// Intersection of the extended conic with a line of PG(2,q^3). Level 6 gives
// both points of the restricted quadratic (multiplicity 2 at a tangency),
// level 3 keeps those in PG(2,q^3), level 1 those in the subplane.
std::vector<MultPoint> line_meet_conic(const FieldTower& F, const ConicSpec& spec, const Subspace& line, Level level);

enum class CaseLabel { S1, S2, S3, T1, T2, T3, T4, E1, E2, E3, E4 };
inline constexpr std::array<CaseLabel, 11> all_case_labels = {CaseLabel::S1, CaseLabel::S2, CaseLabel::S3, CaseLabel::T1,
                                                              CaseLabel::T2, CaseLabel::T3, CaseLabel::T4, CaseLabel::E1,
                                                              CaseLabel::E2, CaseLabel::E3, CaseLabel::E4};
std::string to_string(CaseLabel l);
std::optional<CaseLabel> case_label_from_string(const std::string& s);
Secancy secancy_of(CaseLabel l);
// Labels that can occur for the given q (E3 needs q odd, T3 needs q even).
bool case_reachable(CaseLabel l, std::uint32_t q);

struct ConicCase {
    CaseLabel label;
    Secancy secancy;
    std::vector<MultPoint> meet6;     // C++ on l_inf
    std::optional<Point> tangent_point;  // pi meet l_inf for tangent subplanes
    std::optional<std::array<Point, 3>> carrier_points;  // exterior subplanes
};

// Result of the eleven-way case split, with every side condition asserted
// (ConsistencyError on violation).
ConicCase classify_conic_case(const FieldTower& F, const ConicSpec& spec, const Subspace& linf);

// Points X, X^c, X^(c^2) collinear.
bool conjugates_collinear(const FieldTower& F, const SubplaneFrame& pi, const Point& x);

}  // namespace bbkit
