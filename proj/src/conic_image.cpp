#include "bbkit/conic_image.hpp"

#include <stdexcept>

#include "bbkit/poly.hpp"
#include "bbkit/sampling.hpp"

namespace bbkit {

std::array<Vec, 3> conic_parametrization(const FieldTower& F, const QuadForm& Q) {
    const auto real = real_conic_points(F, Q);
    if (real.empty()) throw std::invalid_argument("form has no real points");
    const Vec& y0 = real.front();
    // y0 = (1,...) or (0,1,..) or (0,0,1) after normalization; complete with two unit vectors
    Vec u(3), v(3);
    if (y0[0].code != 0) {
        u[1] = v[2] = F.one();
    } else if (y0[1].code != 0) {
        u[0] = v[2] = F.one();
    } else {
        u[0] = v[1] = F.one();
    }
    // line y0 + s(u + t v) meets the conic again at Q(d) y0 - B(y0, d) d, d = u + t v
    const Fe buv = polar_form(F, Q, u, v), byu = polar_form(F, Q, y0, u), byv = polar_form(F, Q, y0, v);
    const Vec c0 = vec_add(F, vec_scale(F, y0, eval_form(F, Q, u)), vec_scale(F, u, F.neg(byu)));
    const Vec c1 = vec_add(F, vec_add(F, vec_scale(F, y0, buv), vec_scale(F, v, F.neg(byu))), vec_scale(F, u, F.neg(byv)));
    const Vec c2 = vec_add(F, vec_scale(F, y0, eval_form(F, Q, v)), vec_scale(F, v, F.neg(byv)));
    return {c0, c1, c2};
}

ConicImage conic_image(const BBContext& ctx, const ConicSpec& spec) {
    const FieldTower& F = ctx.field();
    validate(F, spec);
    const auto cp = conic_parametrization(F, spec.form);

    ConicImage out;
    auto plane_point = [&](Param t) {
        Vec y = cp[2];
        if (!t.infinite) y = vec_add(F, vec_add(F, cp[0], vec_scale(F, cp[1], t.value)), vec_scale(F, cp[2], F.mul(t.value, t.value)));
        return normalize(F, mat_vec(F, spec.frame.M, y));
    };
    for (std::uint32_t code = 0; code <= F.q(); ++code) {
        const Param t = code < F.q() ? Param{false, Fe{code}} : Param{true, {}};
        const BBPoint b = ctx.to_bb_point(plane_point(t));
        if (b.at_infinity) {
            out.elements.push_back(b.element);
        } else {
            out.affine.push_back(b.affine);
        }
    }

    // x_i(t) over GF(q^3), then (N(x0), vec(x1 x0^q x0^q^2), vec(x2 x0^q x0^q^2))
    std::array<Poly, 3> x;
    for (int i = 0; i < 3; ++i) {
        for (const auto& c : cp) x[i].push_back(dot(F, spec.frame.M.row(i), c));
        poly_trim(x[i]);
    }
    const Poly cofactor = poly_mul(F, poly_frob(F, x[0], 1), poly_frob(F, x[0], 2));
    std::array<Poly, 7> y;
    y[0] = poly_mul(F, x[0], cofactor);
    for (int i = 1; i <= 2; ++i) {
        const Poly p = poly_mul(F, x[i], cofactor);
        for (int k = 0; k < 3; ++k) {
            Poly part;
            for (Fe c : p) part.push_back(F.vec(c)[k]);
            poly_trim(part);
            y[3 * i - 2 + k] = part;
        }
    }
    for (Fe c : y[0])
        if (!F.in_level(c, Level::base)) throw ConsistencyError("norm polynomial is not over GF(q)");

    // strip the common factor of the degree-6 binary forms
    int top = -1;
    Poly g;
    for (const auto& p : y) {
        top = std::max(top, poly_degree(p));
        if (!p.empty()) g = g.empty() ? poly_monic(F, p) : poly_gcd(F, g, p);
    }
    const int at_inf = 6 - top;
    const int k = top - poly_degree(g);
    Matrix G(7, k + 1);
    for (std::size_t a = 0; a < 7; ++a) {
        if (y[a].empty()) continue;
        const auto [quot, rem] = poly_divmod(F, y[a], g);
        if (!rem.empty()) throw ConsistencyError("gcd does not divide");
        for (std::size_t j = 0; j < quot.size(); ++j) G.at(a, j) = quot[j];
    }
    try {
        out.curve = nrc_from_embedding(F, G);
    } catch (const std::invalid_argument&) {
        throw ConsistencyError("conic image is not a normal rational curve");
    }
    out.stripped_degree = at_inf + poly_degree(g);
    return out;
}

}  // namespace bbkit
