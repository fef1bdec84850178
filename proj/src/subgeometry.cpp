#include "bbkit/subgeometry.hpp"

#include <algorithm>
#include <stdexcept>

#include "bbkit/poly.hpp"

namespace bbkit {

SubplaneFrame subplane_from_matrix(const FieldTower& F, const Matrix& M) {
    if (M.rows() != 3 || M.cols() != 3) throw std::invalid_argument("subplane matrix must be 3x3");
    if (degree(entry_level(F, M)) > 3) throw std::invalid_argument("subplane matrix must lie over GF(q^3)");
    auto inv = inverse(F, M);
    if (!inv) throw std::invalid_argument("subplane matrix is singular");
    return {M, *inv};
}

SubplaneFrame subplane_through(const FieldTower& F, const std::vector<Point>& quadrangle) {
    if (quadrangle.size() != 4) throw std::invalid_argument("a quadrangle has four points");
    const Fe o = F.one(), z = F.zero();
    const std::vector<Point> standard = {normalize(F, {o, z, z}), normalize(F, {z, o, z}), normalize(F, {z, z, o}),
                                         normalize(F, {o, o, o})};
    return subplane_from_matrix(F, unique_projectivity(F, standard, quadrangle).matrix);
}

Vec subplane_coords(const FieldTower& F, const SubplaneFrame& pi, const Point& x) {
    return mat_vec(F, pi.Minv, x.coords());
}

bool in_subplane(const FieldTower& F, const SubplaneFrame& pi, const Point& x) {
    return point_level(F, normalize(F, subplane_coords(F, pi, x))) == Level::base;
}

std::vector<Point> subplane_points(const FieldTower& F, const SubplaneFrame& pi) {
    std::vector<Point> out;
    for_each_point(F, 2, Level::base,
                   [&](std::uint64_t, const Point& y) { out.push_back(normalize(F, mat_vec(F, pi.M, y.coords()))); });
    return out;
}

Collineation conj_map(const FieldTower& F, const SubplaneFrame& pi) {
    return {mat_mul(F, pi.M, mat_frob(F, pi.Minv, 1)), 1};
}

Subspace apply_to_line(const FieldTower& F, const Collineation& c, const Subspace& line) {
    std::vector<Point> pts;
    for (std::size_t r = 0; r < line.basis().rows(); ++r)
        pts.push_back(apply(F, c, normalize(F, line.basis().row(r))));
    return span(F, pts);
}

Subspace line_at_infinity(const FieldTower& F) {
    return Subspace(F, Matrix::from_rows({{F.zero(), F.one(), F.zero()}, {F.zero(), F.zero(), F.one()}}), 2);
}

std::string to_string(Secancy s) {
    switch (s) {
        case Secancy::secant: return "secant";
        case Secancy::tangent: return "tangent";
        case Secancy::exterior: return "exterior";
    }
    return "?";
}

namespace {

void require_line(const Subspace& line) {
    if (line.ambient_dim() != 2 || line.dim() != 1) throw std::invalid_argument("expected a line of PG(2, .)");
}

// The line in subplane coordinates.
Subspace pulled_back(const FieldTower& F, const SubplaneFrame& pi, const Subspace& line) {
    return apply_to_line(F, Collineation{pi.Minv, 0}, line);
}

}  // namespace

std::vector<Point> subplane_meet_line(const FieldTower& F, const SubplaneFrame& pi, const Subspace& line) {
    require_line(line);
    const Subspace l = pulled_back(F, pi, line);
    std::vector<Point> out;
    if (entry_level(F, l.basis()) == Level::base) {
        for (const Point& y : subspace_points(F, l, Level::base)) out.push_back(normalize(F, mat_vec(F, pi.M, y.coords())));
        return out;
    }
    // a non-real line has at most one real point, on its conjugate too
    const Subspace m = meet(F, l, subspace_frob(F, l, 1));
    if (m.dim() == 0) {
        const Point y = as_point(F, m);
        if (point_level(F, y) == Level::base) out.push_back(normalize(F, mat_vec(F, pi.M, y.coords())));
    }
    return out;
}

Secancy secancy(const FieldTower& F, const SubplaneFrame& pi, const Subspace& line) {
    const std::size_t n = subplane_meet_line(F, pi, line).size();
    if (n == 0) return Secancy::exterior;
    if (n == 1) return Secancy::tangent;
    if (n == F.q() + 1) return Secancy::secant;
    throw ConsistencyError("subplane meets a line in " + std::to_string(n) + " points");
}

std::array<Point, 3> carriers(const FieldTower& F, const SubplaneFrame& pi, const Subspace& line) {
    require_line(line);
    if (secancy(F, pi, line) != Secancy::exterior) throw std::invalid_argument("line is not exterior to the subplane");
    const Collineation c = conj_map(F, pi);
    const Subspace l1 = apply_to_line(F, c, line);
    const Subspace l2 = apply_to_line(F, c, l1);
    const Subspace a = meet(F, line, l2), b = meet(F, line, l1), d = meet(F, l1, l2);
    if (a.dim() != 0 || b.dim() != 0 || d.dim() != 0) throw ConsistencyError("exterior line equals a conjugate");
    const Point e = as_point(F, a);
    std::array<Point, 3> out = {e, as_point(F, b), as_point(F, d)};
    if (apply(F, c, out[0]) != out[1] || apply(F, c, out[1]) != out[2] || apply(F, c, out[2]) != out[0])
        throw ConsistencyError("carriers are not a conjugacy orbit");
    return out;
}

Fe eval_form(const FieldTower& F, const QuadForm& Q, const Vec& y) {
    const auto& c = Q.c;
    Fe s = F.mul(c[0], F.mul(y[0], y[0]));
    s = F.add(s, F.mul(c[1], F.mul(y[1], y[1])));
    s = F.add(s, F.mul(c[2], F.mul(y[2], y[2])));
    s = F.add(s, F.mul(c[3], F.mul(y[1], y[2])));
    s = F.add(s, F.mul(c[4], F.mul(y[0], y[2])));
    s = F.add(s, F.mul(c[5], F.mul(y[0], y[1])));
    return s;
}

Fe polar_form(const FieldTower& F, const QuadForm& Q, const Vec& x, const Vec& y) {
    return F.sub(F.sub(eval_form(F, Q, vec_add(F, x, y)), eval_form(F, Q, x)), eval_form(F, Q, y));
}

namespace {

// Rows are the partial derivatives as linear forms.
Matrix gradient_matrix(const FieldTower& F, const QuadForm& Q) {
    const auto& c = Q.c;
    const Fe two = F.from_int(2);
    return Matrix::from_rows({{F.mul(two, c[0]), c[5], c[4]}, {c[5], F.mul(two, c[1]), c[3]}, {c[4], c[3], F.mul(two, c[2])}});
}

}  // namespace

bool is_nondegenerate(const FieldTower& F, const QuadForm& Q) {
    const Matrix k = nullspace(F, gradient_matrix(F, Q));
    if (k.rows() == 0) return true;
    if (k.rows() >= 2) return false;
    return eval_form(F, Q, k.row(0)).code != 0;
}

std::optional<Vec> nucleus(const FieldTower& F, const QuadForm& Q) {
    if (F.p() != 2) return std::nullopt;
    const Matrix k = nullspace(F, gradient_matrix(F, Q));
    if (k.rows() != 1) return std::nullopt;
    return normalize(F, k.row(0)).coords();
}

void validate(const FieldTower& F, const ConicSpec& spec) {
    for (Fe x : spec.form.c)
        if (!F.in_level(x, Level::base)) throw std::invalid_argument("form coefficients must lie in GF(q)");
    if (!is_nondegenerate(F, spec.form)) throw std::invalid_argument("degenerate quadratic form");
    if (spec.frame.M.rows() != 3 || mat_mul(F, spec.frame.M, spec.frame.Minv) != Matrix::identity(3))
        throw std::invalid_argument("invalid subplane frame");
}

bool on_conic(const FieldTower& F, const ConicSpec& spec, const Point& x) {
    return eval_form(F, spec.form, subplane_coords(F, spec.frame, x)).code == 0;
}

std::vector<Point> conic_points(const FieldTower& F, const ConicSpec& spec, Level level) {
    std::vector<Point> out;
    const Fe z = F.zero(), o = F.one();
    const auto push = [&](const Vec& y) { out.push_back(normalize(F, mat_vec(F, spec.frame.M, y))); };
    if (eval_form(F, spec.form, {z, z, o}).code == 0) push({z, z, o});
    // the pencil of lines through (0:0:1): points (s : t : u) with (s:t) fixed
    const auto& c = spec.form.c;
    for_each_point(
        F, 1, level,
        [&](std::uint64_t, const Point& st) {
            const Fe s = st[0], t = st[1];
            // Q(s,t,u) = c u^2 + (d t + e s) u + (a s^2 + b t^2 + f s t)
            Poly f{F.add(F.add(F.mul(c[0], F.mul(s, s)), F.mul(c[1], F.mul(t, t))), F.mul(c[5], F.mul(s, t))),
                   F.add(F.mul(c[3], t), F.mul(c[4], s)), c[2]};
            poly_trim(f);
            if (f.empty()) throw ConsistencyError("a line through (0:0:1) lies on the conic");
            for (const Root& r : roots(F, f, level)) push({s, t, r.value});
        },
        EnumerationBudget{});
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MultPoint> line_meet_conic(const FieldTower& F, const ConicSpec& spec, const Subspace& line, Level level) {
    require_line(line);
    if (degree(entry_level(F, line.basis())) > 3) throw std::invalid_argument("line must lie in PG(2, q^3)");
    const Vec A = line.basis().row(0), B = line.basis().row(1);
    const Vec a = mat_vec(F, spec.frame.Minv, A), b = mat_vec(F, spec.frame.Minv, B);
    // Q(theta a + b) = Q(a) theta^2 + polar(a, b) theta + Q(b)
    Poly f{eval_form(F, spec.form, b), polar_form(F, spec.form, a, b), eval_form(F, spec.form, a)};
    poly_trim(f);
    if (f.empty()) throw ConsistencyError("line contained in a nondegenerate conic");
    std::vector<MultPoint> all;
    for (const Root& r : roots(F, f, Level::sextic))
        all.push_back({normalize(F, vec_add(F, vec_scale(F, A, r.value), B)), r.multiplicity});
    if (poly_degree(f) < 2) all.push_back({normalize(F, A), 2 - poly_degree(f)});
    std::vector<MultPoint> out;
    for (auto& lp : all) {
        const bool keep = level == Level::sextic ||
                          (level == Level::cubic && degree(point_level(F, lp.point)) <= 3) ||
                          (level == Level::base && in_subplane(F, spec.frame, lp.point));
        if (keep) out.push_back(lp);
    }
    std::sort(out.begin(), out.end(), [](const MultPoint& x, const MultPoint& y) { return x.point < y.point; });
    return out;
}

std::string to_string(CaseLabel l) {
    static const char* names[] = {"S1", "S2", "S3", "T1", "T2", "T3", "T4", "E1", "E2", "E3", "E4"};
    return names[static_cast<int>(l)];
}

std::optional<CaseLabel> case_label_from_string(const std::string& s) {
    for (CaseLabel l : all_case_labels)
        if (to_string(l) == s) return l;
    return std::nullopt;
}

Secancy secancy_of(CaseLabel l) {
    switch (l) {
        case CaseLabel::S1:
        case CaseLabel::S2:
        case CaseLabel::S3: return Secancy::secant;
        case CaseLabel::T1:
        case CaseLabel::T2:
        case CaseLabel::T3:
        case CaseLabel::T4: return Secancy::tangent;
        default: return Secancy::exterior;
    }
}

bool case_reachable(CaseLabel l, std::uint32_t q) {
    if (l == CaseLabel::E3) return q % 2 == 1;
    if (l == CaseLabel::T3) return q % 2 == 0;
    return true;
}

namespace {

void require(bool ok, CaseLabel l, const char* what) {
    if (!ok) throw ConsistencyError("case " + to_string(l) + ": " + what);
}

// X^(c^i) for a point of PG(2,q^6).
Point conj_power(const FieldTower& F, const Collineation& c, Point x, int i) {
    for (int k = 0; k < i; ++k) x = apply(F, c, x);
    return x;
}

int conj_orbit_size(const FieldTower& F, const Collineation& c, const Point& x) {
    Point y = x;
    for (int k = 1; k <= 6; ++k) {
        y = apply(F, c, y);
        if (y == x) return k;
    }
    throw ConsistencyError("conjugacy map orbit longer than 6");
}

}  // namespace

ConicCase classify_conic_case(const FieldTower& F, const ConicSpec& spec, const Subspace& linf) {
    validate(F, spec);
    ConicCase out;
    out.secancy = secancy(F, spec.frame, linf);
    out.meet6 = line_meet_conic(F, spec, linf, Level::sextic);
    const auto m3 = line_meet_conic(F, spec, linf, Level::cubic);
    const auto m1 = line_meet_conic(F, spec, linf, Level::base);
    const Collineation c = conj_map(F, spec.frame);
    const auto on_linf = [&](const Point& x) { return linf.contains(F, x); };
    int total = 0;
    for (const auto& lp : out.meet6) total += lp.multiplicity;
    if (total != 2) throw ConsistencyError("restricted quadratic does not have two roots");

    // a conjugate pair P, Q = P^(q^3) = P^(c^3) off PG(2,q^3)
    const auto check_level6_pair = [&](CaseLabel l) {
        require(out.meet6.size() == 2, l, "expected two points at level 6");
        const Point& p = out.meet6[0].point;
        const Point& q = out.meet6[1].point;
        require(point_level(F, p) == Level::sextic && point_level(F, q) == Level::sextic, l, "pair not off PG(2,q^3)");
        require(point_frob(F, p, 3) == q, l, "Q != P^(q^3)");
        require(conj_power(F, c, p, 3) == q, l, "Q != P^(c^3)");
    };
    // P has orbit size 3 and only P itself of its orbit lies on l_inf
    const auto check_orbit3 = [&](CaseLabel l, const Point& p) {
        require(conj_orbit_size(F, c, p) == 3, l, "orbit size is not 3");
        require(!on_linf(conj_power(F, c, p, 1)) && !on_linf(conj_power(F, c, p, 2)), l, "conjugate on l_inf");
    };
    const auto check_orbit6 = [&](CaseLabel l) {
        const Point& p = out.meet6[0].point;
        require(conj_orbit_size(F, c, p) == 6, l, "orbit size is not 6");
        for (int i : {1, 2, 4, 5}) require(!on_linf(conj_power(F, c, p, i)), l, "conjugate on l_inf");
    };

    if (out.secancy == Secancy::secant) {
        require(apply_to_line(F, c, linf) == linf, CaseLabel::S1, "l_inf not fixed by the conjugacy map");
        for (const auto& lp : m3) require(in_subplane(F, spec.frame, lp.point), CaseLabel::S1, "level 3 point outside pi");
        if (m1.size() == 2) {
            out.label = CaseLabel::S1;
        } else if (m1.size() == 1) {
            out.label = CaseLabel::S2;
            require(m1[0].multiplicity == 2, out.label, "single point is not a tangency");
        } else {
            out.label = CaseLabel::S3;
            require(m3.empty(), out.label, "level 3 intersection");
            check_level6_pair(out.label);
            const Point& p = out.meet6[0].point;
            require(apply(F, c, p) == out.meet6[1].point, out.label, "Q != P^c");
            require(conj_power(F, c, p, 2) == p, out.label, "P^(c^2) != P");
        }
        return out;
    }

    if (out.secancy == Secancy::tangent) {
        const Point t = subplane_meet_line(F, spec.frame, linf).at(0);
        out.tangent_point = t;
        if (on_conic(F, spec, t)) {
            out.label = CaseLabel::T1;
            require(m3.size() == 2, out.label, "C+ not secant");
            const Point& q = m3[0].point == t ? m3[1].point : m3[0].point;
            require(q != t && (m3[0].point == t || m3[1].point == t), out.label, "T not among the points");
            require(apply(F, c, t) == t, out.label, "T not fixed");
            require(!on_linf(conj_power(F, c, q, 1)) && !on_linf(conj_power(F, c, q, 2)), out.label,
                    "conjugate of Q on l_inf");
        } else if (m3.size() == 2) {
            out.label = CaseLabel::T2;
            for (const auto& lp : m3) check_orbit3(out.label, lp.point);
        } else if (m3.size() == 1) {
            out.label = CaseLabel::T3;
            require(m3[0].multiplicity == 2, out.label, "single point is not a tangency");
            if (F.p() == 2) {
                const auto n = nucleus(F, spec.form);
                require(n && normalize(F, mat_vec(F, spec.frame.M, *n)) == t, out.label, "T is not the nucleus");
            }
            check_orbit3(out.label, m3[0].point);
        } else {
            out.label = CaseLabel::T4;
            check_level6_pair(out.label);
            check_orbit6(out.label);
        }
        return out;
    }

    const auto e = carriers(F, spec.frame, linf);
    out.carrier_points = e;
    const auto is_carrier = [&](const Point& x) { return x == e[0] || x == e[1]; };
    if (m3.size() == 2 && is_carrier(m3[0].point) && is_carrier(m3[1].point)) {
        out.label = CaseLabel::E1;
    } else if (m3.size() == 2) {
        out.label = CaseLabel::E2;
        for (const auto& lp : m3) {
            require(!is_carrier(lp.point), out.label, "one point is a carrier");
            check_orbit3(out.label, lp.point);
        }
    } else if (m3.size() == 1) {
        out.label = CaseLabel::E3;
        require(m3[0].multiplicity == 2, out.label, "single point is not a tangency");
        require(F.p() != 2, out.label, "occurs for even q");
        require(!is_carrier(m3[0].point), out.label, "tangency at a carrier");
        check_orbit3(out.label, m3[0].point);
    } else {
        out.label = CaseLabel::E4;
        check_level6_pair(out.label);
        check_orbit6(out.label);
    }
    return out;
}

bool conjugates_collinear(const FieldTower& F, const SubplaneFrame& pi, const Point& x) {
    const Collineation c = conj_map(F, pi);
    const Point y = apply(F, c, x);
    return span(F, {x, y, apply(F, c, y)}).dim() <= 1;
}

}  // namespace bbkit
