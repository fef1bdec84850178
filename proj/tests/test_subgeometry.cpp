#include <map>
#include <set>

#include "bbkit/sampling.hpp"
#include "doctest.h"

using namespace bbkit;

namespace {

Point P(const FieldTower& F, Fe a, Fe b, Fe c) { return normalize(F, Vec{a, b, c}); }

std::vector<Point> quadrangle(const FieldTower& F, Rng& rng) {
    for (;;) {
        std::vector<Point> pts;
        for (int i = 0; i < 4; ++i) pts.push_back(normalize(F, rng.nonzero_vector(F, 3, Level::cubic)));
        if (in_general_position(F, pts)) return pts;
    }
}

SubplaneFrame random_subplane(const FieldTower& F, Rng& rng) { return subplane_through(F, quadrangle(F, rng)); }

// y^2 - xz in subplane coordinates (x, y, z)
QuadForm standard_form(const FieldTower& F) {
    QuadForm Q;
    Q.c[1] = F.one();
    Q.c[4] = F.neg(F.one());
    return Q;
}

Subspace line_through(const FieldTower& F, const Point& a, const Point& b) { return span(F, {a, b}); }

Subspace line_from_dual(const FieldTower& F, const Vec& l) { return Subspace(F, nullspace(F, Matrix::from_rows({l})), 2); }

}  // namespace

TEST_CASE("subplanes through quadrangles") {
    auto F = FieldTower::build(2, 1);
    const Fe o = F->one(), z = F->zero();
    const auto std_plane = subplane_through(*F, {P(*F, o, z, z), P(*F, z, o, z), P(*F, z, z, o), P(*F, o, o, o)});
    CHECK(std_plane.M == Matrix::identity(3));
    CHECK(conj_map(*F, std_plane).matrix == Matrix::identity(3));

    Rng rng(8);
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}}) {
        F = FieldTower::build(p, e);
        const std::uint32_t q = F->q();
        for (int trial = 0; trial < 10; ++trial) {
            const auto quad = quadrangle(*F, rng);
            const auto pi = subplane_through(*F, quad);
            const auto pts = subplane_points(*F, pi);
            const std::set<Point> set(pts.begin(), pts.end());
            CHECK(set.size() == q * q + q + 1);
            for (const auto& x : quad) CHECK(set.count(x));
            // another quadrangle of the subplane regenerates it
            std::vector<Point> sub;
            do {
                sub.clear();
                for (int i = 0; i < 4; ++i) sub.push_back(pts[rng.below(pts.size())]);
            } while (!in_general_position(*F, sub));
            const auto again = subplane_points(*F, subplane_through(*F, sub));
            CHECK(std::set<Point>(again.begin(), again.end()) == set);
            for (const auto& x : pts) CHECK(in_subplane(*F, pi, x));
        }
    }
    CHECK_THROWS_AS(subplane_through(*F, {P(*F, o, z, z), P(*F, z, o, z), P(*F, o, o, z), P(*F, z, z, o)}),
                    std::invalid_argument);
}

TEST_CASE("conjugacy map fixes the subplane and has the expected orbit sizes") {
    auto F = FieldTower::build(2, 1);
    Rng rng(21);
    for (int trial = 0; trial < 5; ++trial) {
        const auto pi = random_subplane(*F, rng);
        const Collineation c = conj_map(*F, pi);
        for (const auto& x : subplane_points(*F, pi)) CHECK(apply(*F, c, x) == x);
        std::map<int, int> sizes;
        for_each_point(*F, 2, Level::sextic, [&](std::uint64_t, const Point& x) {
            Point y = x;
            int k = 0;
            do {
                y = apply(*F, c, y);
                ++k;
            } while (y != x && k <= 6);
            CHECK((k == 1 || k == 2 || k == 3 || k == 6));
            if (k == 1) CHECK(in_subplane(*F, pi, x));
            if (k == 3) CHECK((point_level(*F, x) != Level::sextic && !in_subplane(*F, pi, x)));
            if (point_level(*F, x) != Level::sextic) CHECK((k == 1 || k == 3));
            ++sizes[k];
        });
        CHECK(sizes[1] == 7);
        CHECK(sizes[1] + sizes[3] == 73);
    }
}

TEST_CASE("conjugates of a point are collinear exactly on extended lines of the subplane") {
    auto F = FieldTower::build(3, 1);
    Rng rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        const auto pi = random_subplane(*F, rng);
        std::vector<Subspace> lines;
        for_each_point(*F, 2, Level::base, [&](std::uint64_t, const Point& l) {
            lines.push_back(apply_to_line(*F, Collineation{pi.M, 0}, line_from_dual(*F, l.coords())));
        });
        for (int i = 0; i < 200; ++i) {
            const Point x = normalize(*F, rng.nonzero_vector(*F, 3, Level::cubic));
            bool on_line = false;
            for (const auto& l : lines) on_line = on_line || l.contains(*F, x);
            CHECK(conjugates_collinear(*F, pi, x) == on_line);
        }
    }
}

TEST_CASE("secancy matches a count of subplane points on the line") {
    auto F = FieldTower::build(3, 1);
    Rng rng(2);
    const auto real = subplane_from_matrix(*F, Matrix::identity(3));
    const Fe o = F->one(), z = F->zero();
    CHECK(secancy(*F, real, line_through(*F, P(*F, o, z, z), P(*F, z, o, z))) == Secancy::secant);
    std::map<Secancy, int> seen;
    for (int trial = 0; trial < 100; ++trial) {
        const auto pi = random_subplane(*F, rng);
        const auto pts = subplane_points(*F, pi);
        // bias towards lines through a subplane point
        const Point a = trial % 2 ? pts[rng.below(pts.size())] : normalize(*F, rng.nonzero_vector(*F, 3, Level::cubic));
        Point b;
        do b = normalize(*F, rng.nonzero_vector(*F, 3, Level::cubic)); while (b == a);
        const Subspace l = line_through(*F, a, b);
        std::size_t count = 0;
        for (const auto& x : pts) count += l.contains(*F, x);
        const Secancy s = secancy(*F, pi, l);
        CHECK(count == subplane_meet_line(*F, pi, l).size());
        CHECK(s == (count == 0 ? Secancy::exterior : count == 1 ? Secancy::tangent : Secancy::secant));
        ++seen[s];
    }
    CHECK(seen[Secancy::exterior] > 0);
    CHECK(seen[Secancy::tangent] > 0);
}

TEST_CASE("carriers of exterior lines") {
    auto F = FieldTower::build(3, 1);
    Rng rng(13);
    int found = 0;
    while (found < 30) {
        const auto pi = random_subplane(*F, rng);
        const Subspace l = line_through(*F, normalize(*F, rng.nonzero_vector(*F, 3, Level::cubic)),
                                        normalize(*F, rng.nonzero_vector(*F, 3, Level::cubic)));
        if (l.dim() != 1 || secancy(*F, pi, l) != Secancy::exterior) continue;
        ++found;
        const auto e = carriers(*F, pi, l);
        CHECK(l.contains(*F, e[0]));
        CHECK(l.contains(*F, e[1]));
        CHECK_FALSE(l.contains(*F, e[2]));
        const Collineation c = conj_map(*F, pi);
        // the cyclic action, and the fixed set of c^3 (identity on PG(2,q^3))
        CHECK(apply(*F, c, e[0]) == e[1]);
        CHECK(apply(*F, c, e[1]) == e[2]);
        CHECK(apply(*F, c, e[2]) == e[0]);
        // brute force: the points of l whose image (resp. preimage) stays on l
        std::vector<Point> forward, backward;
        for (const Point& x : subspace_points(*F, l, Level::cubic)) {
            const Point y = apply(*F, c, x);
            if (l.contains(*F, y)) forward.push_back(x);
            if (l.contains(*F, apply(*F, c, y))) backward.push_back(x);
        }
        CHECK(forward == std::vector<Point>{e[0]});
        CHECK(backward == std::vector<Point>{e[1]});
        for (const auto& x : e) CHECK_FALSE(in_subplane(*F, pi, x));
    }
    const auto real = subplane_from_matrix(*F, Matrix::identity(3));
    CHECK_THROWS_AS(carriers(*F, real, line_at_infinity(*F)), std::invalid_argument);
}

TEST_CASE("conic points at each level") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}}) {
        auto F = FieldTower::build(p, e);
        const std::uint64_t q = F->q();
        const ConicSpec std_conic{subplane_from_matrix(*F, Matrix::identity(3)), standard_form(*F)};
        const auto c1 = conic_points(*F, std_conic, Level::base);
        std::set<Point> expect;
        for (std::uint32_t t = 0; t < q; ++t) {
            const Fe x{t};
            expect.insert(P(*F, F->one(), x, F->mul(x, x)));
        }
        expect.insert(P(*F, F->zero(), F->zero(), F->one()));
        CHECK(std::set<Point>(c1.begin(), c1.end()) == expect);

        Rng rng(p);
        for (int trial = 0; trial < 3; ++trial) {
            const ConicSpec spec{random_subplane(*F, rng), random_nondegenerate_form(*F, rng)};
            const auto a = conic_points(*F, spec, Level::base);
            const auto b = conic_points(*F, spec, Level::cubic);
            const auto c = conic_points(*F, spec, Level::sextic);
            CHECK(a.size() == q + 1);
            CHECK(b.size() == q * q * q + 1);
            CHECK(c.size() == q * q * q * q * q * q + 1);
            const std::set<Point> sb(b.begin(), b.end()), sc(c.begin(), c.end());
            for (const auto& x : a) CHECK((sb.count(x) && in_subplane(*F, spec.frame, x)));
            for (const auto& x : b) CHECK(sc.count(x));
            const Collineation conj = conj_map(*F, spec.frame);
            for (const auto& x : b) CHECK(sb.count(apply(*F, conj, x)));
            for (const auto& x : c) CHECK(on_conic(*F, spec, x));
            // no three points of C collinear
            CHECK(in_general_position(*F, a));
        }
    }
}

TEST_CASE("nondegeneracy and nucleus") {
    auto F = FieldTower::build(2, 1);
    CHECK(is_nondegenerate(*F, standard_form(*F)));
    QuadForm square;  // (x + y)^2
    square.c[0] = square.c[1] = F->one();
    CHECK_FALSE(is_nondegenerate(*F, square));
    QuadForm pair;  // xy
    pair.c[5] = F->one();
    CHECK_FALSE(is_nondegenerate(*F, pair));
    const auto n = nucleus(*F, standard_form(*F));
    REQUIRE(n);
    CHECK(*n == Vec{F->zero(), F->one(), F->zero()});

    auto G = FieldTower::build(3, 1);
    QuadForm cone;  // x^2 - y^2 has the singular point (0:0:1)
    cone.c[0] = G->one();
    cone.c[1] = G->neg(G->one());
    CHECK_FALSE(is_nondegenerate(*G, cone));
    CHECK(is_nondegenerate(*G, standard_form(*G)));
}

TEST_CASE("line meets conic") {
    auto F = FieldTower::build(3, 1);
    const Fe o = F->one(), z = F->zero();
    const ConicSpec spec{subplane_from_matrix(*F, Matrix::identity(3)), standard_form(*F)};
    // z = 0 touches y^2 = xz at (1:0:0)
    const auto m = line_meet_conic(*F, spec, line_through(*F, P(*F, o, z, z), P(*F, z, o, z)), Level::sextic);
    REQUIRE(m.size() == 1);
    CHECK(m[0].point == P(*F, o, z, z));
    CHECK(m[0].multiplicity == 2);

    // x = z - y ... a real exterior line: no level 3 points, a conjugate pair at level 6
    Rng rng(3);
    int exterior = 0;
    for_each_point(*F, 2, Level::base, [&](std::uint64_t, const Point& l) {
        const Subspace line = line_from_dual(*F, l.coords());
        const auto m6 = line_meet_conic(*F, spec, line, Level::sextic);
        int total = 0;
        for (const auto& lp : m6) total += lp.multiplicity;
        CHECK(total == 2);
        if (line_meet_conic(*F, spec, line, Level::cubic).empty()) {
            ++exterior;
            REQUIRE(m6.size() == 2);
            CHECK(point_frob(*F, m6[0].point, 3) == m6[1].point);
        }
    });
    CHECK(exterior == 3);  // q(q-1)/2 exterior lines
}

TEST_CASE("every reachable case label is sampled and its side conditions hold") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {2, 2}, {5, 1}}) {
        auto F = FieldTower::build(p, e);
        Rng rng(p * 31 + e);
        for (CaseLabel l : all_case_labels) {
            const bool reachable = case_reachable(l, F->q());
            for (int i = 0; i < 5 && reachable; ++i) {
                const auto spec = sample_conic(*F, l, rng, 3000);
                REQUIRE_MESSAGE(spec.has_value(), to_string(l));
                const auto cc = classify_conic_case(*F, *spec, line_at_infinity(*F));
                CHECK(cc.label == l);
                CHECK(cc.secancy == secancy_of(l));
                if (l == CaseLabel::E1) {
                    for (const auto& lp : cc.meet6)
                        CHECK((lp.point == (*cc.carrier_points)[0] || lp.point == (*cc.carrier_points)[1]));
                }
            }
            if (!reachable) CHECK_FALSE(sample_conic(*F, l, rng).has_value());
        }
    }
}

namespace {

// Every line of PG(2,q^3) as seen from the standard conic, classified.
std::map<CaseLabel, int> exhaustive_labels(const FieldTower& F) {
    std::map<CaseLabel, int> counts;
    const QuadForm Q = standard_form(F);
    Rng rng(1);
    for_each_point(F, 2, Level::cubic, [&](std::uint64_t, const Point& l) {
        const ConicSpec spec{frame_with_line_at_infinity(F, l.coords(), rng), Q};
        ++counts[classify_conic_case(F, spec, line_at_infinity(F)).label];
    });
    return counts;
}

}  // namespace

TEST_CASE("tangency cases follow the parity of q") {
    // Odd q: the tangents to a conic from a real point are defined over GF(q^2),
    // so a non-real line through a real point is never tangent: no T3.
    // Even q: every line through the nucleus is tangent, giving T3, and the
    // tangent at a non-real point always passes through the nucleus: no E3.
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{3, 1}, {2, 1}, {2, 2}, {5, 1}}) {
        auto F = FieldTower::build(p, e);
        const auto counts = exhaustive_labels(*F);
        const bool odd = F->q() % 2 == 1;
        CHECK((counts.count(CaseLabel::T3) > 0) == !odd);
        CHECK((counts.count(CaseLabel::E3) > 0) == odd);
        int total = 0;
        for (auto [l, n] : counts) total += n;
        CHECK(static_cast<std::uint64_t>(total) == point_count(*F, 2, Level::cubic));
    }
}
