#include "bbkit/linalg.hpp"

#include <stdexcept>

namespace bbkit {

Matrix Matrix::from_rows(const std::vector<Vec>& rows) {
    if (rows.empty()) return {};
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) throw std::invalid_argument("ragged rows");
        for (std::size_t c = 0; c < m.cols_; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vec>& cols) { return transpose(from_rows(cols)); }

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Fe{1};
    return m;
}

Vec Matrix::row(std::size_t r) const { return Vec(data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_); }

Vec Matrix::column(std::size_t c) const {
    Vec v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return v;
}

void Matrix::append_row(const Vec& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    data_.insert(data_.end(), v.begin(), v.end());
    ++rows_;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) t.at(c, r) = a.at(r, c);
    return t;
}

Matrix mat_mul(const FieldTower& F, const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch");
    Matrix m(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Fe x = a.at(i, k);
            if (x.code == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) m.at(i, j) = F.add(m.at(i, j), F.mul(x, b.at(k, j)));
        }
    return m;
}

Vec mat_vec(const FieldTower& F, const Matrix& a, const Vec& v) {
    if (a.cols() != v.size()) throw std::invalid_argument("matrix-vector shape mismatch");
    Vec out(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        Fe acc{};
        for (std::size_t k = 0; k < a.cols(); ++k) acc = F.add(acc, F.mul(a.at(i, k), v[k]));
        out[i] = acc;
    }
    return out;
}

Matrix mat_frob(const FieldTower& F, const Matrix& a, int i) {
    Matrix m = a;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) m.at(r, c) = F.frob(a.at(r, c), i);
    return m;
}

Vec vec_frob(const FieldTower& F, const Vec& v, int i) {
    Vec out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = F.frob(v[k], i);
    return out;
}

Vec vec_scale(const FieldTower& F, const Vec& v, Fe c) {
    Vec out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = F.mul(v[k], c);
    return out;
}

Vec vec_add(const FieldTower& F, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
    Vec out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = F.add(a[k], b[k]);
    return out;
}

Fe dot(const FieldTower& F, const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("vector length mismatch");
    Fe acc{};
    for (std::size_t k = 0; k < a.size(); ++k) acc = F.add(acc, F.mul(a[k], b[k]));
    return acc;
}

Matrix rref(const FieldTower& F, Matrix a, std::vector<std::size_t>* pivots) {
    std::size_t lead_row = 0;
    std::vector<std::size_t> piv;
    for (std::size_t c = 0; c < a.cols() && lead_row < a.rows(); ++c) {
        std::size_t r = lead_row;
        while (r < a.rows() && a.at(r, c).code == 0) ++r;
        if (r == a.rows()) continue;
        if (r != lead_row)
            for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a.at(r, k), a.at(lead_row, k));
        const Fe s = F.inv(a.at(lead_row, c));
        for (std::size_t k = c; k < a.cols(); ++k) a.at(lead_row, k) = F.mul(a.at(lead_row, k), s);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i == lead_row) continue;
            const Fe f = a.at(i, c);
            if (f.code == 0) continue;
            for (std::size_t k = c; k < a.cols(); ++k)
                a.at(i, k) = F.sub(a.at(i, k), F.mul(f, a.at(lead_row, k)));
        }
        piv.push_back(c);
        ++lead_row;
    }
    Matrix out(lead_row, a.cols());
    for (std::size_t r = 0; r < lead_row; ++r)
        for (std::size_t c = 0; c < a.cols(); ++c) out.at(r, c) = a.at(r, c);
    if (pivots) *pivots = std::move(piv);
    return out;
}

std::size_t rank(const FieldTower& F, const Matrix& a) { return rref(F, a).rows(); }

Matrix nullspace(const FieldTower& F, const Matrix& a) {
    std::vector<std::size_t> piv;
    const Matrix r = rref(F, a, &piv);
    std::vector<bool> is_pivot(a.cols(), false);
    for (auto c : piv) is_pivot[c] = true;
    Matrix out(0, a.cols());
    for (std::size_t free = 0; free < a.cols(); ++free) {
        if (is_pivot[free]) continue;
        Vec v(a.cols());
        v[free] = F.one();
        for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = F.neg(r.at(i, free));
        out.append_row(v);
    }
    return out;
}

std::optional<Matrix> inverse(const FieldTower& F, const Matrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("inverse of a non-square matrix");
    const std::size_t n = a.rows();
    Matrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, n + i) = F.one();
    }
    std::vector<std::size_t> piv;
    const Matrix r = rref(F, aug, &piv);
    if (r.rows() < n || piv[n - 1] != n - 1) return std::nullopt;
    Matrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) inv.at(i, j) = r.at(i, n + j);
    return inv;
}

std::optional<Vec> solve(const FieldTower& F, const Matrix& a, const Vec& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("right-hand side length mismatch");
    Matrix aug(a.rows(), a.cols() + 1);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) aug.at(i, j) = a.at(i, j);
        aug.at(i, a.cols()) = b[i];
    }
    std::vector<std::size_t> piv;
    const Matrix r = rref(F, aug, &piv);
    if (!piv.empty() && piv.back() == a.cols()) return std::nullopt;
    Vec x(a.cols());
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = r.at(i, a.cols());
    return x;
}

Level entry_level(const FieldTower& F, const Matrix& a) {
    Level l = Level::base;
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (degree(F.level_of(a.at(r, c))) > degree(l)) l = F.level_of(a.at(r, c));
    return l;
}

Level entry_level(const FieldTower& F, const Vec& v) {
    Level l = Level::base;
    for (Fe x : v)
        if (degree(F.level_of(x)) > degree(l)) l = F.level_of(x);
    return l;
}

}  // namespace bbkit
