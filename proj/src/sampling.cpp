#include "bbkit/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace bbkit {

QuadForm random_nondegenerate_form(const FieldTower& F, Rng& rng) {
    for (;;) {
        QuadForm Q;
        for (auto& x : Q.c) x = rng.element(F, Level::base);
        if (is_nondegenerate(F, Q)) return Q;
    }
}

std::vector<Vec> real_conic_points(const FieldTower& F, const QuadForm& Q) {
    std::vector<Vec> out;
    for_each_point(F, 2, Level::base, [&](std::uint64_t, const Point& y) {
        if (eval_form(F, Q, y.coords()).code == 0) out.push_back(y.coords());
    });
    return out;
}

Vec cross(const FieldTower& F, const Vec& a, const Vec& b) {
    return {F.sub(F.mul(a[1], b[2]), F.mul(a[2], b[1])), F.sub(F.mul(a[2], b[0]), F.mul(a[0], b[2])),
            F.sub(F.mul(a[0], b[1]), F.mul(a[1], b[0]))};
}

std::optional<Vec> conic_point_on_slope(const FieldTower& F, const QuadForm& Q, const Vec& y0, Fe phi) {
    // complete y0 to a basis with two unit vectors
    std::vector<Vec> units;
    for (int i = 0; i < 3; ++i) {
        Vec u(3);
        u[i] = F.one();
        units.push_back(u);
    }
    for (int skip = 0; skip < 3; ++skip) {
        const Vec& u = units[(skip + 1) % 3];
        const Vec& v = units[(skip + 2) % 3];
        if (rank(F, Matrix::from_rows({y0, u, v})) != 3) continue;
        const Vec d = vec_add(F, u, vec_scale(F, v, phi));
        const Vec p = vec_add(F, vec_scale(F, y0, eval_form(F, Q, d)), vec_scale(F, d, F.neg(polar_form(F, Q, y0, d))));
        if (std::all_of(p.begin(), p.end(), [](Fe x) { return x.code == 0; })) return std::nullopt;
        return p;
    }
    throw std::invalid_argument("zero vector is not a conic point");
}

Vec tangent_line(const FieldTower& F, const QuadForm& Q, const Vec& y) {
    // the gradient of Q at y
    const auto& c = Q.c;
    const Fe two = F.from_int(2);
    return {F.add(F.add(F.mul(F.mul(two, c[0]), y[0]), F.mul(c[5], y[1])), F.mul(c[4], y[2])),
            F.add(F.add(F.mul(c[5], y[0]), F.mul(F.mul(two, c[1]), y[1])), F.mul(c[3], y[2])),
            F.add(F.add(F.mul(c[4], y[0]), F.mul(c[3], y[1])), F.mul(F.mul(two, c[2]), y[2]))};
}

SubplaneFrame frame_with_line_at_infinity(const FieldTower& F, const Vec& l, Rng& rng) {
    for (;;) {
        Matrix M = Matrix::from_rows({l, rng.vector(F, 3, Level::cubic), rng.vector(F, 3, Level::cubic)});
        if (rank(F, M) == 3) return subplane_from_matrix(F, M);
    }
}

namespace {

bool is_zero(const Vec& v) {
    return std::all_of(v.begin(), v.end(), [](Fe x) { return x.code == 0; });
}

// A point of Q = 0 over GF(q^3) that is not real.
std::optional<Vec> nonreal_conic_point(const FieldTower& F, const QuadForm& Q, const std::vector<Vec>& real, Rng& rng) {
    const Vec& y0 = real[rng.below(real.size())];
    const auto p = conic_point_on_slope(F, Q, y0, rng.element(F, Level::cubic));
    if (!p || point_level(F, normalize(F, *p)) == Level::base) return std::nullopt;
    return normalize(F, *p).coords();
}

Vec random_real_point(const FieldTower& F, Rng& rng) { return normalize(F, rng.nonzero_vector(F, 3, Level::base)).coords(); }

// Dual vector for the target stratum, or nullopt to retry.
std::optional<Vec> candidate_line(const FieldTower& F, CaseLabel target, const QuadForm& Q,
                                  const std::vector<Vec>& real, Rng& rng) {
    switch (target) {
        case CaseLabel::S1: {
            const std::size_t i = rng.below(real.size());
            std::size_t j = rng.below(real.size() - 1);
            if (j >= i) ++j;
            return cross(F, real[i], real[j]);
        }
        case CaseLabel::S2: return tangent_line(F, Q, real[rng.below(real.size())]);
        case CaseLabel::S3: return random_real_point(F, rng);
        case CaseLabel::T1: {
            const Vec x = rng.nonzero_vector(F, 3, Level::cubic);
            return cross(F, real[rng.below(real.size())], x);
        }
        case CaseLabel::T2: {
            const auto x = nonreal_conic_point(F, Q, real, rng);
            if (!x) return std::nullopt;
            return cross(F, random_real_point(F, rng), *x);
        }
        case CaseLabel::T3: {
            const auto n = nucleus(F, Q);
            if (!n) return std::nullopt;
            return cross(F, *n, rng.nonzero_vector(F, 3, Level::cubic));
        }
        case CaseLabel::T4: return cross(F, random_real_point(F, rng), rng.nonzero_vector(F, 3, Level::cubic));
        case CaseLabel::E1: {
            const auto x = nonreal_conic_point(F, Q, real, rng);
            if (!x) return std::nullopt;
            return cross(F, *x, vec_frob(F, *x, 1));
        }
        case CaseLabel::E2: {
            const auto x = nonreal_conic_point(F, Q, real, rng);
            const auto y = nonreal_conic_point(F, Q, real, rng);
            if (!x || !y) return std::nullopt;
            return cross(F, *x, *y);
        }
        case CaseLabel::E3: {
            const auto x = nonreal_conic_point(F, Q, real, rng);
            if (!x) return std::nullopt;
            return tangent_line(F, Q, *x);
        }
        case CaseLabel::E4: return rng.nonzero_vector(F, 3, Level::cubic);
    }
    return std::nullopt;
}

}  // namespace

std::optional<ConicSpec> sample_conic(const FieldTower& F, CaseLabel target, Rng& rng, int budget) {
    if (!case_reachable(target, F.q())) return std::nullopt;
    const Subspace linf = line_at_infinity(F);
    for (int attempt = 0; attempt < budget; ++attempt) {
        const QuadForm Q = random_nondegenerate_form(F, rng);
        const auto real = real_conic_points(F, Q);
        const auto l = candidate_line(F, target, Q, real, rng);
        if (!l || is_zero(*l)) continue;
        ConicSpec spec{frame_with_line_at_infinity(F, *l, rng), Q};
        if (classify_conic_case(F, spec, linf).label == target) return spec;
    }
    return std::nullopt;
}

}  // namespace bbkit
