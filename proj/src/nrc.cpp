#include "bbkit/nrc.hpp"

#include <algorithm>
#include <stdexcept>

#include "bbkit/poly.hpp"

namespace bbkit {

namespace {

Vec monomials(const FieldTower& F, int r, Param t) {
    Vec m(r + 1);
    if (t.infinite) {
        m[r] = F.one();
        return m;
    }
    m[0] = F.one();
    for (int k = 1; k <= r; ++k) m[k] = F.mul(m[k - 1], t.value);
    return m;
}

// Coordinates of x in the basis of s; nullopt when x is outside s.
std::optional<Vec> local_coords(const FieldTower& F, const Subspace& s, const Vec& x) {
    return solve(F, transpose(s.basis()), x);
}

std::vector<Point> to_local(const FieldTower& F, const Subspace& s, const std::vector<Point>& points) {
    std::vector<Point> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(normalize(F, *local_coords(F, s, p.coords())));
    return out;
}

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](Fe x) { return x.code == 0; });
}

}  // namespace

NRC make_nrc(const FieldTower& F, const Subspace& carrier, const Matrix& param) {
    const std::size_t k = carrier.basis().rows();
    if (k < 2 || k > 7 || param.rows() != k || param.cols() != k)
        throw std::invalid_argument("curve degree must be 1..6 and match the carrier");
    if (!inverse(F, param)) throw std::invalid_argument("singular curve parametrization");
    NRC c;
    c.r = static_cast<int>(k) - 1;
    c.carrier = carrier;
    c.param = param;
    c.embedding = mat_mul(F, transpose(carrier.basis()), param);
    c.level = entry_level(F, c.embedding);
    return c;
}

NRC nrc_from_embedding(const FieldTower& F, const Matrix& G) {
    if (rank(F, G) != G.cols()) throw std::invalid_argument("curve embedding must have full column rank");
    const Subspace carrier(F, transpose(G), G.rows() - 1);
    Matrix param(G.cols(), G.cols());
    for (std::size_t k = 0; k < G.cols(); ++k) {
        const Vec u = *local_coords(F, carrier, G.column(k));
        for (std::size_t i = 0; i < G.cols(); ++i) param.at(i, k) = u[i];
    }
    return make_nrc(F, carrier, param);
}

NRC standard_nrc(const FieldTower& F, int r, Level level) {
    if (r < 1 || r > 6) throw std::invalid_argument("curve degree must be 1..6");
    if (F.size(level) < static_cast<std::uint32_t>(r)) throw std::invalid_argument("field too small for the curve");
    NRC c = make_nrc(F, Subspace::whole(r), Matrix::identity(r + 1));
    c.level = level;
    return c;
}

Point nrc_point(const FieldTower& F, const NRC& c, Param t) {
    return normalize(F, mat_vec(F, c.embedding, monomials(F, c.r, t)));
}

std::vector<Point> nrc_points(const FieldTower& F, const NRC& c, Level level) {
    std::vector<Point> out;
    const std::uint32_t n = F.size(level);
    out.reserve(n + 1);
    for (std::uint32_t code = 0; code < n; ++code) out.push_back(nrc_point(F, c, {false, Fe{code}}));
    out.push_back(nrc_point(F, c, {true, {}}));
    return out;
}

std::optional<Param> nrc_parameter(const FieldTower& F, const NRC& c, const Point& x) {
    if (x.coords().size() != c.embedding.rows()) return std::nullopt;
    const auto u = solve(F, c.embedding, x.coords());
    if (!u) return std::nullopt;
    const Vec& v = *u;
    if (v[0].code == 0) {
        for (int k = 0; k < c.r; ++k)
            if (v[k].code != 0) return std::nullopt;
        return Param{true, {}};
    }
    const Fe inv0 = F.inv(v[0]);
    const Fe t = F.mul(v[1], inv0);
    Fe power = F.one();
    for (int k = 1; k <= c.r; ++k) {
        power = F.mul(power, t);
        if (F.mul(v[k], inv0) != power) return std::nullopt;
    }
    return Param{false, t};
}

bool nrc_contains(const FieldTower& F, const NRC& c, const Point& x) { return nrc_parameter(F, c, x).has_value(); }

NRC nrc_through(const FieldTower& F, const std::vector<Point>& points) {
    if (points.empty()) throw std::invalid_argument("no points");
    const Subspace carrier = span(F, points);
    const int r = carrier.dim();
    if (r < 1 || r > 6 || points.size() != static_cast<std::size_t>(r) + 3)
        throw std::invalid_argument("need r+3 points spanning an r-space with 1 <= r <= 6");
    const auto local = to_local(F, carrier, points);
    if (!in_general_position(F, local)) throw std::invalid_argument("points are not in general position");

    // Send the first r+2 points to the standard frame; the standard-frame curve
    // through the last point a has x_i(t) = prod_{j != i} (t + 1/a_j), which
    // passes through e_i at t = -1/a_i, (1,...,1) at infinity and a at 0.
    std::vector<Point> frame;
    for (int i = 0; i <= r; ++i) {
        Vec e(r + 1);
        e[i] = F.one();
        frame.push_back(normalize(F, e));
    }
    frame.push_back(normalize(F, Vec(r + 1, F.one())));
    const Matrix T = unique_projectivity(F, std::vector<Point>(local.begin(), local.begin() + r + 2), frame).matrix;
    const Vec a = mat_vec(F, T, local[r + 2].coords());
    Matrix C(r + 1, r + 1);
    for (int i = 0; i <= r; ++i) {
        Poly f{F.one()};
        for (int j = 0; j <= r; ++j)
            if (j != i) f = poly_mul(F, f, Poly{F.inv(a[j]), F.one()});
        for (int k = 0; k <= r; ++k) C.at(i, k) = f[k];
    }
    NRC c = make_nrc(F, carrier, mat_mul(F, *inverse(F, T), C));
    Level lv = Level::base;
    for (const auto& p : points) lv = std::max(lv, point_level(F, p));
    c.level = std::max(lv, c.level);
    return c;
}

bool t_space_property(const FieldTower& F, const std::vector<Point>& points) {
    if (points.size() < 2) return true;
    return in_general_position(F, to_local(F, span(F, points), points));
}

std::optional<NRC> recognize(const FieldTower& F, std::vector<Point> points) {
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    if (points.empty()) throw std::invalid_argument("no points");
    const Subspace carrier = span(F, points);
    const int r = carrier.dim();
    if (r < 1) return std::nullopt;
    if (points.size() < static_cast<std::size_t>(r) + 3) throw std::invalid_argument("too few points to determine a curve");
    if (r > 6) return std::nullopt;

    const auto local = to_local(F, carrier, points);
    std::vector<Point> chosen, chosen_local;
    for (std::size_t i = 0; i < points.size() && chosen.size() < static_cast<std::size_t>(r) + 3; ++i) {
        chosen_local.push_back(local[i]);
        if (in_general_position(F, chosen_local)) {
            chosen.push_back(points[i]);
        } else {
            chosen_local.pop_back();
        }
    }
    if (chosen.size() < static_cast<std::size_t>(r) + 3) return std::nullopt;
    NRC c = nrc_through(F, chosen);
    for (const auto& p : points)
        if (!nrc_contains(F, c, p)) return std::nullopt;
    if (!in_general_position(F, local)) return std::nullopt;
    return c;
}

std::optional<NRC> descend(const FieldTower& F, const NRC& c) {
    if (c.level == Level::base) return c;
    const int r = c.r;
    // Frobenius maps the curve to itself iff it maps r+3 of its points onto it.
    std::vector<Param> probe{{true, {}}};
    for (std::uint32_t k = 0; probe.size() < static_cast<std::size_t>(r) + 3; ++k) probe.push_back({false, Fe{k}});
    std::vector<Param> image;
    for (const auto& t : probe) {
        const auto s = nrc_parameter(F, c, point_frob(F, nrc_point(F, c, t), 1));
        if (!s) return std::nullopt;
        image.push_back(*s);
    }
    // Induced semilinear map on parameters: t -> A (1, t^q), fixed on real points.
    auto as_point = [&](Param t) { return normalize(F, t.infinite ? Vec{F.zero(), F.one()} : Vec{F.one(), t.value}); };
    const Matrix A = unique_projectivity(F, {as_point(probe[1]), as_point(probe[0]), as_point(probe[2])},
                                         {as_point(image[1]), as_point(image[0]), as_point(image[2])})
                         .matrix;
    std::vector<Point> real;
    if (A.at(0, 1).code == 0) real.push_back(nrc_point(F, c, {true, {}}));
    const std::uint32_t n = F.size(c.level);
    for (std::uint32_t code = 0; code < n && real.size() < static_cast<std::size_t>(r) + 3; ++code) {
        const Fe t{code};
        const Fe tq = F.frob(t, 1);
        const Fe x0 = F.add(A.at(0, 0), F.mul(A.at(0, 1), tq));
        const Fe x1 = F.add(A.at(1, 0), F.mul(A.at(1, 1), tq));
        if (x0.code != 0 && F.mul(x0, t) == x1) real.push_back(nrc_point(F, c, {false, t}));
    }
    if (real.size() < static_cast<std::size_t>(r) + 3)
        throw std::invalid_argument("too few real points to pin down the real curve");
    for (const auto& p : real)
        if (point_level(F, p) != Level::base) throw ConsistencyError("Frobenius-fixed parameter gave a non-real point");
    NRC out = nrc_through(F, real);
    for (const auto& t : probe)
        if (!nrc_contains(F, out, nrc_point(F, c, t))) throw ConsistencyError("descended curve does not extend to the input");
    return out;
}

std::vector<MultPoint> infinity_points(const FieldTower& F, const NRC& c, const Vec& hyperplane) {
    if (hyperplane.size() != c.embedding.rows() || is_zero(hyperplane))
        throw std::invalid_argument("hyperplane does not match the ambient space");
    Poly f(c.r + 1);
    for (int k = 0; k <= c.r; ++k) f[k] = dot(F, hyperplane, c.embedding.column(k));
    poly_trim(f);
    if (f.empty()) throw std::invalid_argument("curve lies in the hyperplane");
    std::vector<MultPoint> out;
    for (const Root& root : roots(F, f, Level::sextic)) out.push_back({nrc_point(F, c, {false, root.value}), root.multiplicity});
    const int at_inf = c.r - poly_degree(f);
    if (at_inf > 0) out.push_back({nrc_point(F, c, {true, {}}), at_inf});
    return out;
}

}  // namespace bbkit
