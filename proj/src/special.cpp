#include "bbkit/special.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "bbkit/random.hpp"

namespace bbkit {

namespace {

void require_at_infinity(const Point& p) {
    if (p.dim() != 6 || p[0].code != 0) throw std::invalid_argument("point is not in the extension of Sigma_inf");
}

Vec sigma_inf_form() {
    Vec h(7);
    h[0] = Fe{1};
    return h;
}

}  // namespace

int weight(const BBContext& ctx, const Point& p) {
    require_at_infinity(p);
    const FieldTower& F = ctx.field();
    for (int i = 0; i < 3; ++i)
        if (ctx.transversal(i).contains(F, p)) return 1;
    for (int i = 0; i < 3; ++i)
        if (join(F, ctx.transversal(i), ctx.transversal(i + 1)).contains(F, p)) return 2;
    return 3;
}

int orbit_size(const FieldTower& F, const Point& p) {
    for (int i : {1, 2, 3})
        if (point_frob(F, p, i) == p) return i;
    return 6;
}

int s_value(const BBContext& ctx, const Point& p) {
    require_at_infinity(p);
    const FieldTower& F = ctx.field();
    // a real point is in the element through it; otherwise scan
    if (point_level(F, p) == Level::base) return 1;
    for (std::size_t k = 0; k < ctx.element_count(); ++k)
        if (ctx.element(k).contains(F, p)) return 1;
    return 2;
}

SpecialReport is_3special(const BBContext& ctx, const NRC& curve) {
    const FieldTower& F = ctx.field();
    if (curve.embedding.rows() != 7) throw std::invalid_argument("curve is not in PG(6, q)");
    SpecialReport rep;
    rep.r = curve.r;
    int total = 0;
    bool all_happy = true;
    for (const MultPoint& m : infinity_points(F, curve, sigma_inf_form())) {
        InfinityPointReport pr;
        pr.point = m.point;
        pr.multiplicity = m.multiplicity;
        pr.w = weight(ctx, m.point);
        pr.o = orbit_size(F, m.point);
        pr.s = s_value(ctx, m.point);
        pr.happy = is_happy(pr.w, pr.o, pr.s);
        all_happy = all_happy && pr.happy;
        rep.weight_sum += pr.w * pr.multiplicity;
        total += pr.multiplicity;
        rep.points.push_back(pr);
    }
    rep.is_3special = total == curve.r && all_happy && rep.weight_sum == 6;
    if (rep.is_3special) rep.type = classify_type(ctx, rep);
    return rep;
}

std::optional<WeightTwoWitness> weight_two_witness(const BBContext& ctx, const Point& r) {
    const FieldTower& F = ctx.field();
    const Subspace& g0 = ctx.transversal(0);
    const Subspace& g1 = ctx.transversal(1);
    if (!join(F, g0, g1).contains(F, r) || g0.contains(F, r) || g1.contains(F, r)) return std::nullopt;
    const Subspace rs = span(F, {r});
    const Point x = as_point(F, meet(F, join(F, rs, g1), g0));
    const Point yq = as_point(F, meet(F, join(F, rs, g0), g1));
    if (!span(F, {x, yq}).contains(F, r)) throw ConsistencyError("transversal line misses the point");
    return WeightTwoWitness{x, point_frob(F, yq, -1)};
}

int classify_type(const BBContext& ctx, const SpecialReport& rep) {
    const FieldTower& F = ctx.field();
    if (!rep.is_3special) throw std::invalid_argument("curve is not 3-special");
    const auto& pts = rep.points;
    auto all = [&](auto pred) { return std::all_of(pts.begin(), pts.end(), pred); };
    auto fail = [&](const std::string& why) -> int {
        throw ConsistencyError("3-special curve of degree " + std::to_string(rep.r) + " fits no shape: " + why);
    };

    switch (rep.r) {
        case 6:
            if (all([](const auto& p) { return p.w == 1 && p.o == 3; })) return 1;
            if (all([](const auto& p) { return p.w == 1 && p.o == 6; })) return 2;
            return fail("six points not on the transversals with a common orbit size");
        case 4: {
            std::vector<Point> orbit;
            std::optional<Point> real;
            for (const auto& p : pts) {
                if (p.o == 1 && p.w == 3 && p.multiplicity == 1) {
                    real = p.point;
                } else if (p.o == 3 && p.w == 1 && p.multiplicity == 1) {
                    orbit.push_back(p.point);
                }
            }
            if (!real || orbit.size() != 3) return fail("expected a real point and a transversal orbit");
            if (span(F, orbit).contains(F, *real)) return fail("real point in the plane of the orbit");
            return 3;
        }
        case 3: {
            if (!all([](const auto& p) { return p.w == 2 && p.o == 3 && p.multiplicity == 1; }))
                return fail("expected one orbit of weight-2 points");
            for (const auto& p : pts) {
                const auto wit = weight_two_witness(ctx, p.point);
                if (!wit) continue;
                if (wit->x == wit->y || p.point == wit->x || p.point == point_frob(F, wit->y, 1))
                    return fail("degenerate transversal line");
                return 4;
            }
            return fail("no orbit point in <g, g^q>");
        }
        case 2:
            if (all([](const auto& p) { return p.o == 1 && p.w == 3; })) return 5;
            if (all([](const auto& p) { return p.o == 2 && p.w == 3 && p.multiplicity == 1; })) return 6;
            return fail("expected two real points or a conjugate pair");
        default: return fail("no shape has this degree");
    }
}

Profile expected_profile(CaseLabel label) {
    switch (label) {
        case CaseLabel::S1:
        case CaseLabel::S2: return {2, 5};
        case CaseLabel::S3: return {2, 6};
        case CaseLabel::T1: return {4, 3};
        case CaseLabel::T2:
        case CaseLabel::T3:
        case CaseLabel::E2:
        case CaseLabel::E3: return {6, 1};
        case CaseLabel::T4:
        case CaseLabel::E4: return {6, 2};
        case CaseLabel::E1: return {3, 4};
    }
    throw std::invalid_argument("unknown case label");
}

Subspace carrier_line_h(const BBContext& ctx, const SubplaneFrame& pi, int frob_power) {
    const FieldTower& F = ctx.field();
    const auto c = carriers(F, pi, line_at_infinity(F));
    const Point e = ctx.infty_to_g(c[0]);
    const Point ec = point_frob(F, ctx.infty_to_g(c[1]), frob_power);
    return span(F, {e, ec});
}

namespace {

// Point of the extended g over the given level.
Point random_g_point(const BBContext& ctx, Rng& rng, Level level) {
    const FieldTower& F = ctx.field();
    return ctx.infty_to_g(normalize(F, Vec{F.zero(), F.one(), rng.element(F, level)}));
}

std::vector<Point> orbit(const FieldTower& F, const Point& p) {
    std::vector<Point> out{p};
    for (int i = 1; i < orbit_size(F, p); ++i) out.push_back(point_frob(F, p, i));
    return out;
}

// Random real point of a real subspace off Sigma_inf.
std::optional<Point> random_affine_in(const FieldTower& F, const Subspace& s, Rng& rng) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        Vec v(7);
        for (std::size_t i = 0; i < s.basis().rows(); ++i)
            v = vec_add(F, v, vec_scale(F, s.basis().row(i), rng.element(F, Level::base)));
        if (v[0].code != 0) return normalize(F, v);
    }
    return std::nullopt;
}

// Frobenius-closed points at infinity for the type, or nullopt to retry.
std::optional<std::vector<Point>> infinity_shape(const BBContext& ctx, int type, Rng& rng) {
    const FieldTower& F = ctx.field();
    switch (type) {
        case 1: {
            auto a = orbit(F, random_g_point(ctx, rng, Level::cubic));
            auto b = orbit(F, random_g_point(ctx, rng, Level::cubic));
            a.insert(a.end(), b.begin(), b.end());
            return a;
        }
        case 2: {
            const Point p = random_g_point(ctx, rng, Level::sextic);
            if (orbit_size(F, p) != 6) return std::nullopt;
            return orbit(F, p);
        }
        case 3: {
            auto a = orbit(F, random_g_point(ctx, rng, Level::cubic));
            a.push_back(normalize(F, lift_to_sigma_inf(rng.nonzero_vector(F, 6, Level::base))));
            return a;
        }
        case 4: {
            const Point x = random_g_point(ctx, rng, Level::cubic);
            const Point y = random_g_point(ctx, rng, Level::cubic);
            if (x == y) return std::nullopt;
            const Vec r = vec_add(F, x.coords(), vec_scale(F, point_frob(F, y, 1).coords(), rng.nonzero(F, Level::cubic)));
            return orbit(F, normalize(F, r));
        }
        case 5: {
            const Point a = normalize(F, lift_to_sigma_inf(rng.nonzero_vector(F, 6, Level::base)));
            const Point b = normalize(F, lift_to_sigma_inf(rng.nonzero_vector(F, 6, Level::base)));
            // the preimage is collinear when both lie in one spread element
            if (ctx.element_through(a) == ctx.element_through(b)) return std::nullopt;
            return std::vector<Point>{a, b};
        }
        case 6: {
            // a point over GF(q^2): the relative trace of a random point
            const Vec w = lift_to_sigma_inf(rng.nonzero_vector(F, 6, Level::sextic));
            const Vec t = vec_add(F, vec_add(F, w, vec_frob(F, w, 2)), vec_frob(F, w, 4));
            if (std::all_of(t.begin(), t.end(), [](Fe x) { return x.code == 0; })) return std::nullopt;
            const Point p = normalize(F, t);
            if (orbit_size(F, p) != 2) return std::nullopt;
            return orbit(F, p);
        }
        default: throw std::invalid_argument("type must be 1..6");
    }
}

constexpr int kGenerateBudget = 64;

}  // namespace

GeneratedCurve generate_3special(const BBContext& ctx, int type, std::uint64_t seed) {
    if (type < 1 || type > 6) throw std::invalid_argument("type must be 1..6");
    const FieldTower& F = ctx.field();
    Rng rng(seed);
    for (int attempt = 1; attempt <= kGenerateBudget; ++attempt) {
        auto pts = infinity_shape(ctx, type, rng);
        if (!pts) continue;
        // the curve degree is the number of points at infinity, which must be independent
        const Subspace at_inf = span(F, *pts);
        if (at_inf.dim() + 1 != static_cast<int>(pts->size())) continue;
        // affine points: one free, the others inside the span it creates
        const Point a1 = normalize(F, rng.nonzero_vector(F, 7, Level::base));
        if (a1[0].code == 0) continue;
        const Subspace carrier = join(F, at_inf, span(F, {a1}));
        std::vector<Point> all = *pts;
        all.push_back(a1);
        bool ok = true;
        for (int i = 0; i < 2 && ok; ++i) {
            const auto a = random_affine_in(F, carrier, rng);
            ok = a.has_value();
            if (ok) all.push_back(*a);
        }
        if (!ok) continue;
        std::optional<NRC> real;
        try {
            real = descend(F, nrc_through(F, all));
        } catch (const std::invalid_argument&) {
            continue;  // not in general position
        }
        if (!real) throw ConsistencyError("curve through a conjugate-closed set did not descend");
        const SpecialReport rep = is_3special(ctx, *real);
        if (rep.is_3special && rep.type == type) return {*real, attempt};
    }
    throw BudgetExceeded("generate_3special: no type " + std::to_string(type) + " curve after " +
                         std::to_string(kGenerateBudget) + " attempts (seed " + std::to_string(seed) + ")");
}

}  // namespace bbkit
