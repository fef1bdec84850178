#include "bbkit/projective.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace bbkit {

Point normalize(const FieldTower& F, Vec raw) {
    auto it = std::find_if(raw.begin(), raw.end(), [](Fe x) { return x.code != 0; });
    if (it == raw.end()) throw std::invalid_argument("the zero vector is not a projective point");
    if (it->code != 1) {
        const Fe s = F.inv(*it);
        for (auto jt = it; jt != raw.end(); ++jt) *jt = F.mul(*jt, s);
    }
    Point p;
    p.coords_ = std::move(raw);
    return p;
}

Level point_level(const FieldTower& F, const Point& p) { return entry_level(F, p.coords()); }

Point point_frob(const FieldTower& F, const Point& p, int i) { return normalize(F, vec_frob(F, p.coords(), i)); }

Subspace::Subspace(const FieldTower& F, const Matrix& generators, std::size_t ambient_dim)
    : ambient_(ambient_dim) {
    if (generators.rows() == 0) {
        basis_ = Matrix(0, ambient_dim + 1);
        return;
    }
    if (generators.cols() != ambient_dim + 1) throw std::invalid_argument("generator length does not match ambient space");
    basis_ = rref(F, generators);
    if (basis_.rows() == 0) basis_ = Matrix(0, ambient_dim + 1);
}

Subspace Subspace::empty(std::size_t ambient_dim) {
    Subspace s;
    s.ambient_ = ambient_dim;
    s.basis_ = Matrix(0, ambient_dim + 1);
    return s;
}

Subspace Subspace::whole(std::size_t ambient_dim) {
    Subspace s;
    s.ambient_ = ambient_dim;
    s.basis_ = Matrix::identity(ambient_dim + 1);
    return s;
}

bool Subspace::contains(const FieldTower& F, const Vec& v) const {
    if (v.size() != ambient_ + 1) throw std::invalid_argument("vector length does not match ambient space");
    Vec w = v;
    for (std::size_t r = 0; r < basis_.rows(); ++r) {
        std::size_t c = 0;
        while (basis_.at(r, c).code == 0) ++c;
        const Fe f = w[c];
        if (f.code == 0) continue;
        for (std::size_t k = c; k < w.size(); ++k) w[k] = F.sub(w[k], F.mul(f, basis_.at(r, k)));
    }
    return std::all_of(w.begin(), w.end(), [](Fe x) { return x.code == 0; });
}

bool Subspace::contains(const FieldTower& F, const Subspace& s) const {
    if (s.ambient_ != ambient_) throw std::invalid_argument("subspaces live in different ambient spaces");
    for (std::size_t r = 0; r < s.basis_.rows(); ++r)
        if (!contains(F, s.basis_.row(r))) return false;
    return true;
}

Subspace span(const FieldTower& F, const std::vector<Point>& points) {
    if (points.empty()) throw std::invalid_argument("span of no points");
    const std::size_t n = points.front().dim();
    std::vector<Vec> rows;
    for (const auto& p : points) {
        if (p.dim() != n) throw std::invalid_argument("points of different dimensions");
        rows.push_back(p.coords());
    }
    return Subspace(F, Matrix::from_rows(rows), n);
}

Subspace join(const FieldTower& F, const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("mismatched ambient spaces");
    Matrix m(0, a.ambient_dim() + 1);
    for (std::size_t r = 0; r < a.basis().rows(); ++r) m.append_row(a.basis().row(r));
    for (std::size_t r = 0; r < b.basis().rows(); ++r) m.append_row(b.basis().row(r));
    return Subspace(F, m, a.ambient_dim());
}

Matrix annihilator(const FieldTower& F, const Subspace& s) {
    if (s.is_empty()) return Matrix::identity(s.ambient_dim() + 1);
    return nullspace(F, s.basis());
}

Subspace meet(const FieldTower& F, const Subspace& a, const Subspace& b) {
    if (a.ambient_dim() != b.ambient_dim()) throw std::invalid_argument("mismatched ambient spaces");
    const Matrix ka = annihilator(F, a), kb = annihilator(F, b);
    Matrix m(0, a.ambient_dim() + 1);
    for (std::size_t r = 0; r < ka.rows(); ++r) m.append_row(ka.row(r));
    for (std::size_t r = 0; r < kb.rows(); ++r) m.append_row(kb.row(r));
    if (m.rows() == 0) return Subspace::whole(a.ambient_dim());
    return Subspace(F, nullspace(F, m), a.ambient_dim());
}

Subspace subspace_frob(const FieldTower& F, const Subspace& s, int i) {
    return Subspace(F, mat_frob(F, s.basis(), i), s.ambient_dim());
}

std::vector<Point> subspace_points(const FieldTower& F, const Subspace& s, Level level) {
    std::vector<Point> out;
    if (s.is_empty()) return out;
    const std::size_t k = s.basis().rows();
    const std::uint64_t count = point_count(F, k - 1, level);
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        const Point c = point_at(F, k - 1, level, i);
        Vec v(s.ambient_dim() + 1);
        for (std::size_t r = 0; r < k; ++r)
            if (c[r].code != 0) v = vec_add(F, v, vec_scale(F, s.basis().row(r), c[r]));
        out.push_back(normalize(F, v));
    }
    return out;
}

Point as_point(const FieldTower& F, const Subspace& s) {
    if (s.dim() != 0) throw std::invalid_argument("subspace is not a point");
    return normalize(F, s.basis().row(0));
}

Collineation compose(const FieldTower& F, const Collineation& a, const Collineation& b) {
    return {mat_mul(F, a.matrix, mat_frob(F, b.matrix, a.frob_power)), a.frob_power + b.frob_power};
}

Point apply(const FieldTower& F, const Collineation& c, const Point& p) {
    if (c.matrix.cols() != p.coords().size()) throw std::invalid_argument("collineation dimension mismatch");
    return normalize(F, mat_vec(F, c.matrix, vec_frob(F, p.coords(), c.frob_power)));
}

namespace {

// Columns p_0..p_n scaled so that their sum is p_{n+1}.
std::optional<Matrix> frame_matrix(const FieldTower& F, const std::vector<Point>& frame) {
    const std::size_t n = frame.size() - 2;
    std::vector<Vec> raw;
    for (std::size_t i = 0; i <= n; ++i) raw.push_back(frame[i].coords());
    const Matrix a = Matrix::from_columns(raw);
    const auto lam = solve(F, a, frame[n + 1].coords());
    if (!lam || rank(F, a) != n + 1) return std::nullopt;
    Matrix s = a;
    for (std::size_t j = 0; j <= n; ++j) {
        if ((*lam)[j].code == 0) return std::nullopt;
        for (std::size_t i = 0; i <= n; ++i) s.at(i, j) = F.mul(a.at(i, j), (*lam)[j]);
    }
    return s;
}

}  // namespace

Collineation unique_projectivity(const FieldTower& F, const std::vector<Point>& src, const std::vector<Point>& dst) {
    if (src.empty() || src.size() != dst.size() || src.size() != src.front().dim() + 2)
        throw std::invalid_argument("a frame of PG(n) has n+2 points");
    const auto s = frame_matrix(F, src);
    const auto d = frame_matrix(F, dst);
    if (!s || !d || !in_general_position(F, src) || !in_general_position(F, dst))
        throw std::invalid_argument("frame points are not in general position");
    Matrix m = mat_mul(F, *d, *inverse(F, *s));
    Fe lead{};
    for (std::size_t r = 0; r < m.rows() && lead.code == 0; ++r)
        for (std::size_t c = 0; c < m.cols() && lead.code == 0; ++c) lead = m.at(r, c);
    const Fe li = F.inv(lead);
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) m.at(r, c) = F.mul(m.at(r, c), li);
    return {m, 0};
}

bool in_general_position(const FieldTower& F, const std::vector<Point>& points) {
    if (points.empty()) return true;
    const std::size_t n = points.front().dim();
    const std::size_t k = std::min(points.size(), n + 1);
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
        std::vector<Vec> rows;
        for (auto i : idx) rows.push_back(points[i].coords());
        if (rank(F, Matrix::from_rows(rows)) != k) return false;
        std::size_t pos = k;
        while (pos > 0 && idx[pos - 1] == points.size() - k + pos - 1) --pos;
        if (pos == 0) return true;
        ++idx[pos - 1];
        for (std::size_t i = pos; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
}

namespace {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
    return a * b;
}

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
    return b > std::numeric_limits<std::uint64_t>::max() - a ? std::numeric_limits<std::uint64_t>::max() : a + b;
}

}  // namespace

std::uint64_t point_count(const FieldTower& F, std::size_t n, Level level) {
    const std::uint64_t Q = F.size(level);
    std::uint64_t total = 0, block = 1;
    for (std::size_t j = 0; j <= n; ++j) {
        total = sat_add(total, block);
        block = sat_mul(block, Q);
    }
    return total;
}

Point point_at(const FieldTower& F, std::size_t n, Level level, std::uint64_t index) {
    const std::uint64_t Q = F.size(level);
    std::uint64_t block = 1;
    for (std::size_t lead = n + 1; lead-- > 0;) {
        if (index < block) {
            Vec v(n + 1);
            v[lead] = F.one();
            for (std::size_t k = n; k > lead; --k) {
                v[k] = Fe{static_cast<std::uint32_t>(index % Q)};
                index /= Q;
            }
            return normalize(F, v);
        }
        index -= block;
        block = sat_mul(block, Q);
    }
    throw std::out_of_range("point index out of range");
}

std::uint64_t point_index(const FieldTower& F, const Point& p, Level level) {
    const std::uint64_t Q = F.size(level);
    const std::size_t n = p.dim();
    std::size_t lead = 0;
    while (p[lead].code == 0) ++lead;
    std::uint64_t offset = 0, block = 1;
    for (std::size_t k = n; k > lead; --k) {
        offset += block;
        block *= Q;
    }
    std::uint64_t tail = 0;
    for (std::size_t k = lead + 1; k <= n; ++k) {
        if (p[k].code >= Q) throw std::invalid_argument("point coordinates exceed the requested level");
        tail = tail * Q + p[k].code;
    }
    return offset + tail;
}

void for_each_point(const FieldTower& F, std::size_t n, Level level,
                    const std::function<void(std::uint64_t, const Point&)>& fn, EnumerationBudget budget) {
    const std::uint64_t count = point_count(F, n, level);
    if (count > budget.max_points)
        throw BudgetExceeded("PG(" + std::to_string(n) + ", q^" + std::to_string(degree(level)) + ") has " +
                             std::to_string(count) + " points, over the budget of " +
                             std::to_string(budget.max_points));
    for (std::uint64_t i = 0; i < count; ++i) fn(i, point_at(F, n, level, i));
}

}  // namespace bbkit
