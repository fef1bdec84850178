#include "bbkit/spread.hpp"

#include <stdexcept>
#include <string>

namespace bbkit {

Vec dual_basis_vector(const FieldTower& F) {
    Matrix moore(3, 3);
    for (int i = 0; i < 3; ++i) {
        Fe wj = F.one();
        for (int j = 0; j < 3; ++j) {
            moore.at(i, j) = F.frob(wj, i);
            wj = F.mul(wj, F.omega());
        }
    }
    const auto inv = inverse(F, moore);
    if (!inv) throw ConsistencyError("Moore matrix of {1, w, w^2} is singular");
    return inv->column(0);
}

namespace {

Vec lift_label(const FieldTower& F, const Point& label, const Vec& v) {
    Vec x;
    for (Fe c : label.coords())
        for (Fe vi : v) x.push_back(F.mul(c, vi));
    return x;
}

}  // namespace

RegularSpread RegularSpread::build(TowerPtr F, std::size_t ambient_dim, EnumerationBudget budget) {
    if (!F) throw std::invalid_argument("null tower");
    if (ambient_dim != 5 && ambient_dim != 8) throw std::invalid_argument("spread ambient dimension must be 5 or 8");
    RegularSpread s;
    s.F_ = F;
    s.blocks_ = (ambient_dim + 1) / 3;
    s.v_ = dual_basis_vector(*F);
    const std::size_t label_dim = s.blocks_ - 1;

    const std::uint64_t ambient_points = point_count(*F, ambient_dim, Level::base);
    if (ambient_points > budget.max_points)
        throw BudgetExceeded("PG(" + std::to_string(ambient_dim) + ", " + std::to_string(F->q()) + ") has " +
                             std::to_string(ambient_points) + " points, over the budget of " +
                             std::to_string(budget.max_points));

    for (int i = 0; i < 3; ++i) {
        Matrix g(0, ambient_dim + 1);
        for (std::size_t b = 0; b < s.blocks_; ++b) {
            Vec row(ambient_dim + 1);
            for (int j = 0; j < 3; ++j) row[3 * b + j] = F->frob(s.v_[j], i);
            g.append_row(row);
        }
        s.transversals_.emplace_back(*F, g, ambient_dim);
    }

    const std::uint64_t n_elements = point_count(*F, label_dim, Level::cubic);
    s.elements_.reserve(n_elements);
    std::vector<std::uint32_t> owner(ambient_points, UINT32_MAX);
    for (std::uint64_t k = 0; k < n_elements; ++k) {
        const Point label = point_at(*F, label_dim, Level::cubic, k);
        const Vec x = lift_label(*F, label, s.v_);
        const Matrix conj = Matrix::from_rows({x, vec_frob(*F, x, 1), vec_frob(*F, x, 2)});
        Subspace e(*F, conj, ambient_dim);
        if (e.dim() != 2 || entry_level(*F, e.basis()) != Level::base)
            throw ConsistencyError("spread element " + std::to_string(k) + " is not a real plane");
        for (const Point& p : subspace_points(*F, e, Level::base)) {
            const std::uint64_t idx = point_index(*F, p, Level::base);
            if (owner[idx] != UINT32_MAX) throw ConsistencyError("spread elements overlap");
            owner[idx] = static_cast<std::uint32_t>(k);
        }
        s.elements_.push_back(std::move(e));
    }
    for (std::uint64_t idx = 0; idx < ambient_points; ++idx)
        if (owner[idx] == UINT32_MAX) throw ConsistencyError("spread elements do not cover the ambient space");
    return s;
}

const Subspace& RegularSpread::element(std::size_t k) const {
    if (k >= elements_.size()) throw std::out_of_range("spread element index out of range");
    return elements_[k];
}

const Subspace& RegularSpread::extended_element(std::size_t k, Level level) const {
    if (level == Level::base) throw std::invalid_argument("extension level must be 3 or 6");
    return element(k);
}

Point RegularSpread::element_label(std::size_t k) const {
    if (k >= elements_.size()) throw std::out_of_range("spread element index out of range");
    return point_at(*F_, blocks_ - 1, Level::cubic, k);
}

std::size_t RegularSpread::element_index(const Point& label) const {
    if (label.dim() != blocks_ - 1) throw std::invalid_argument("label has the wrong dimension");
    return static_cast<std::size_t>(point_index(*F_, label, Level::cubic));
}

Point RegularSpread::transversal_point(std::size_t k) const {
    return normalize(*F_, lift_label(*F_, element_label(k), v_));
}

std::size_t RegularSpread::element_of_transversal_point(const Point& p) const {
    if (p.dim() != ambient_dim() || !transversal(0).contains(*F_, p))
        throw std::invalid_argument("point is not on the transversal");
    // the first nonzero block is a multiple of v; divide it out
    Vec label;
    for (std::size_t b = 0; b < blocks_; ++b) {
        std::size_t j = 0;
        while (j < 3 && v_[j].code == 0) ++j;
        label.push_back(F_->div(p[3 * b + j], v_[j]));
    }
    return element_index(normalize(*F_, label));
}

std::size_t RegularSpread::element_through(const Point& p) const {
    if (p.dim() != ambient_dim()) throw std::invalid_argument("point has the wrong dimension");
    if (point_level(*F_, p) != Level::base) throw std::invalid_argument("point is not real");
    Vec label;
    for (std::size_t b = 0; b < blocks_; ++b) label.push_back(F_->unvec(p[3 * b], p[3 * b + 1], p[3 * b + 2]));
    return element_index(normalize(*F_, label));
}

std::vector<std::size_t> RegularSpread::regulus(std::size_t a, std::size_t b, std::size_t c) const {
    if (blocks_ != 2) throw std::invalid_argument("reguli are only provided for PG(5,q) spreads");
    if (a == b || b == c || a == c) throw std::invalid_argument("regulus needs three distinct elements");
    const Vec A = element_label(a).coords(), B = element_label(b).coords(), C = element_label(c).coords();
    // scale A and B so that C = A + B
    const Matrix m = Matrix::from_columns({A, B});
    const auto coef = solve(*F_, m, C);
    if (!coef) throw ConsistencyError("labels of distinct elements are dependent");
    const Vec sa = vec_scale(*F_, A, (*coef)[0]), sb = vec_scale(*F_, B, (*coef)[1]);
    std::vector<std::size_t> out;
    for (std::uint64_t i = 0; i < point_count(*F_, 1, Level::base); ++i) {
        const Point t = point_at(*F_, 1, Level::base, i);
        const Vec x = vec_add(*F_, vec_scale(*F_, sa, t[0]), vec_scale(*F_, sb, t[1]));
        out.push_back(element_index(normalize(*F_, x)));
    }
    return out;
}

}  // namespace bbkit
