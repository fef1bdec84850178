#include "bbkit/bruck_bose.hpp"

#include <stdexcept>

namespace bbkit {

Vec lift_to_sigma_inf(const Vec& v) {
    Vec out;
    out.reserve(v.size() + 1);
    out.push_back(Fe{0});
    out.insert(out.end(), v.begin(), v.end());
    return out;
}

namespace {

Subspace lift_subspace(const FieldTower& F, const Subspace& s) {
    Matrix m(0, s.ambient_dim() + 2);
    for (std::size_t r = 0; r < s.basis().rows(); ++r) m.append_row(lift_to_sigma_inf(s.basis().row(r)));
    return Subspace(F, m, s.ambient_dim() + 1);
}

void require_plane_point(const Point& p) {
    if (p.dim() != 2) throw std::invalid_argument("expected a point of PG(2, q^3)");
}

}  // namespace

BBContext BBContext::build(TowerPtr F, bool with_bose, EnumerationBudget budget) {
    BBContext c;
    c.F_ = F;
    c.spread6_ = RegularSpread::build(F, 5, budget);
    if (with_bose) c.spread8_ = RegularSpread::build(F, 8, budget);
    for (std::size_t k = 0; k < c.spread6_.size(); ++k) c.elements6_.push_back(lift_subspace(*F, c.spread6_.element(k)));
    for (int i = 0; i < 3; ++i) c.transversals6_.push_back(lift_subspace(*F, c.spread6_.transversal(i)));
    Matrix inf(0, 7), s6(0, 9);
    for (std::size_t i = 1; i <= 6; ++i) {
        Vec row(7);
        row[i] = F->one();
        inf.append_row(row);
    }
    for (std::size_t i : {0, 3, 4, 5, 6, 7, 8}) {
        Vec row(9);
        row[i] = F->one();
        s6.append_row(row);
    }
    c.sigma_inf_ = Subspace(*F, inf, 6);
    c.sigma6_ = Subspace(*F, s6, 8);
    return c;
}

const RegularSpread& BBContext::spread8() const {
    if (!spread8_) throw std::logic_error("context was built without the Bose representation");
    return *spread8_;
}

std::size_t BBContext::element_through(const Point& p) const {
    if (p.dim() != 6 || p[0].code != 0) throw std::invalid_argument("point is not in Sigma_inf");
    return spread6_.element_through(normalize(*F_, Vec(p.coords().begin() + 1, p.coords().end())));
}

BBPoint BBContext::to_bb_point(const Point& p) const {
    require_plane_point(p);
    if (degree(point_level(*F_, p)) > 3) throw std::invalid_argument("point is not in PG(2, q^3)");
    BBPoint out;
    if (p[0].code != 0) {
        const auto a = F_->vec(p[1]), b = F_->vec(p[2]);
        out.affine = normalize(*F_, Vec{p[0], a[0], a[1], a[2], b[0], b[1], b[2]});
        return out;
    }
    out.at_infinity = true;
    out.element = spread6_.element_index(normalize(*F_, Vec{p[1], p[2]}));
    return out;
}

Point BBContext::from_bb_point(const Point& x) const {
    if (x.dim() != 6 || point_level(*F_, x) != Level::base) throw std::invalid_argument("expected a real point of PG(6, q)");
    if (x[0].code == 0)
        throw std::invalid_argument("points of Sigma_inf are not I_BB points; pass the spread element instead");
    return normalize(*F_, Vec{x[0], F_->unvec(x[1], x[2], x[3]), F_->unvec(x[4], x[5], x[6])});
}

Point BBContext::from_bb_element(std::size_t k) const {
    const Point label = spread6_.element_label(k);
    return normalize(*F_, Vec{F_->zero(), label[0], label[1]});
}

Point BBContext::from_bb(const BBPoint& x) const {
    return x.at_infinity ? from_bb_element(x.element) : from_bb_point(x.affine);
}

std::optional<Subspace> BBContext::to_bb_line(const Subspace& line) const {
    if (line.ambient_dim() != 2 || line.dim() != 1) throw std::invalid_argument("expected a line of PG(2, q^3)");
    const Subspace linf(*F_, Matrix::from_rows({{F_->zero(), F_->one(), F_->zero()}, {F_->zero(), F_->zero(), F_->one()}}),
                        2);
    if (line == linf) return std::nullopt;
    const Point t = as_point(*F_, meet(*F_, line, linf));
    // an affine point of the line: a basis row with nonzero x0
    const Matrix& b = line.basis();
    const Point a = normalize(*F_, b.at(0, 0).code != 0 ? b.row(0) : b.row(1));
    const BBPoint ta = to_bb_point(t), aa = to_bb_point(a);
    return join(*F_, span(*F_, {aa.affine}), element(ta.element));
}

Point BBContext::infty_to_g(const Point& p) const {
    require_plane_point(p);
    if (p[0].code != 0) throw std::invalid_argument("point is not on l_inf");
    const Vec& v = spread6_.eigenvector();
    Vec x{F_->zero()};
    for (std::size_t j = 1; j <= 2; ++j)
        for (Fe vi : v) x.push_back(F_->mul(p[j], vi));
    return normalize(*F_, x);
}

Point BBContext::g_to_infty(const Point& x) const {
    if (x.dim() != 6 || x[0].code != 0) throw std::invalid_argument("point is not in the extension of Sigma_inf");
    return from_bb_element(
        spread6_.element_of_transversal_point(normalize(*F_, Vec(x.coords().begin() + 1, x.coords().end()))));
}

Subspace BBContext::bose_plane(const Point& p) const {
    const RegularSpread& s8 = spread8();
    require_plane_point(p);
    const Vec& v = s8.eigenvector();
    Vec x;
    for (Fe c : p.coords())
        for (Fe vi : v) x.push_back(F_->mul(c, vi));
    Subspace plane(*F_, Matrix::from_rows({x, vec_frob(*F_, x, 1), vec_frob(*F_, x, 2)}), 8);
    if (plane.dim() != 2 || entry_level(*F_, plane.basis()) != Level::base)
        throw ConsistencyError("Bose plane is not a real plane");
    return plane;
}

Point BBContext::embed_in_bose(const Point& x) const {
    if (x.dim() != 6) throw std::invalid_argument("expected a point of PG(6, q)");
    const Vec& c = x.coords();
    return normalize(*F_, Vec{c[0], F_->zero(), F_->zero(), c[1], c[2], c[3], c[4], c[5], c[6]});
}

Subspace BBContext::embed_in_bose(const Subspace& s) const {
    if (s.ambient_dim() != 6) throw std::invalid_argument("expected a subspace of PG(6, q)");
    Matrix m(0, 9);
    for (std::size_t r = 0; r < s.basis().rows(); ++r) {
        const Vec c = s.basis().row(r);
        m.append_row(Vec{c[0], F_->zero(), F_->zero(), c[1], c[2], c[3], c[4], c[5], c[6]});
    }
    return Subspace(*F_, m, 8);
}

}  // namespace bbkit
