#include <set>

#include "bbkit/bruck_bose.hpp"
#include "bbkit/random.hpp"
#include "doctest.h"

using namespace bbkit;

namespace {

Point plane_point(const FieldTower& F, Fe a, Fe b, Fe c) { return normalize(F, Vec{a, b, c}); }

}  // namespace

TEST_CASE("affine and infinite points round trip") {
    auto F = FieldTower::build(2, 1);
    const auto ctx = BBContext::build(F);
    const auto origin = ctx.to_bb_point(plane_point(*F, F->one(), F->zero(), F->zero()));
    REQUIRE_FALSE(origin.at_infinity);
    CHECK(origin.affine.coords() == Vec{F->one(), {}, {}, {}, {}, {}, {}});

    std::set<Point> images;
    std::set<std::size_t> elements;
    for_each_point(*F, 2, Level::cubic, [&](std::uint64_t, const Point& p) {
        const BBPoint x = ctx.to_bb_point(p);
        CHECK(ctx.from_bb(x) == p);
        CHECK(x.at_infinity == (p[0].code == 0));
        if (x.at_infinity) {
            CHECK(elements.insert(x.element).second);
            CHECK(subspace_points(*F, ctx.element(x.element), Level::base).size() == 7);
            CHECK(ctx.sigma_inf().contains(*F, ctx.element(x.element)));
        } else {
            CHECK(images.insert(x.affine).second);
            CHECK_FALSE(ctx.sigma_inf().contains(*F, x.affine));
        }
    });
    CHECK(images.size() == 64);
    CHECK(elements.size() == 9);
    CHECK_THROWS_AS(ctx.from_bb_point(normalize(*F, Vec{{}, F->one(), {}, {}, {}, {}, {}})), std::invalid_argument);
}

TEST_CASE("images of a line span a 3-space through one spread element") {
    auto F = FieldTower::build(3, 1);
    const auto ctx = BBContext::build(F);
    Rng rng(4);
    const Subspace linf(*F, Matrix::from_rows({{F->zero(), F->one(), F->zero()}, {F->zero(), F->zero(), F->one()}}), 2);
    CHECK_FALSE(ctx.to_bb_line(linf).has_value());
    for (int trial = 0; trial < 30; ++trial) {
        Subspace line;
        do {
            line = span(*F, {normalize(*F, rng.nonzero_vector(*F, 3, Level::cubic)),
                             normalize(*F, rng.nonzero_vector(*F, 3, Level::cubic))});
        } while (line.dim() != 1 || line == linf);
        const auto image = ctx.to_bb_line(line);
        REQUIRE(image.has_value());
        CHECK(image->dim() == 3);
        std::size_t affine = 0, elements_inside = 0;
        for (const Point& p : subspace_points(*F, line, Level::cubic)) {
            const BBPoint x = ctx.to_bb_point(p);
            if (x.at_infinity) {
                CHECK(image->contains(*F, ctx.element(x.element)));
            } else {
                CHECK(image->contains(*F, x.affine));
                ++affine;
            }
        }
        CHECK(affine == 27);
        for (std::size_t k = 0; k < ctx.element_count(); ++k)
            if (image->contains(*F, ctx.element(k))) ++elements_inside;
        CHECK(elements_inside == 1);
    }
}

TEST_CASE("infinite points correspond to the points of g") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
        auto F = FieldTower::build(p, e);
        const auto ctx = BBContext::build(F);
        std::set<Point> on_g;
        for (std::size_t k = 0; k < ctx.element_count(); ++k) {
            const Point inf = ctx.from_bb_element(k);
            const Point x = ctx.infty_to_g(inf);
            CHECK(ctx.transversal(0).contains(*F, x));
            CHECK(ctx.element(k).contains(*F, x));
            CHECK(as_point(*F, meet(*F, ctx.element(k), ctx.transversal(0))) == x);
            CHECK(ctx.g_to_infty(x) == inf);
            // the conjugate lies on g^q inside the same extended element
            const Point xq = point_frob(*F, x, 1);
            CHECK(ctx.transversal(1).contains(*F, xq));
            CHECK(ctx.element(k).contains(*F, xq));
            CHECK(on_g.insert(x).second);
        }
        CHECK(on_g.size() == F->size(Level::cubic) + 1);
    }
}

TEST_CASE("Bose planes are the PG(8,q) spread and cut Sigma6 in the Bruck-Bose image") {
    auto F = FieldTower::build(2, 1);
    const auto ctx = BBContext::build(F, true);
    std::set<Vec> planes;
    for_each_point(*F, 2, Level::cubic, [&](std::uint64_t i, const Point& p) {
        const Subspace plane = ctx.bose_plane(p);
        CHECK(plane == ctx.spread8().element(i));
        CHECK(planes.insert(plane.basis().row(0)).second);
        const Subspace cut = meet(*F, plane, ctx.sigma6());
        const BBPoint x = ctx.to_bb_point(p);
        if (x.at_infinity)
            CHECK(cut == ctx.embed_in_bose(ctx.element(x.element)));
        else
            CHECK(cut == span(*F, {ctx.embed_in_bose(x.affine)}));
    });
    CHECK(planes.size() == 73);

    // the planes of a line of PG(2,8) lie in a 5-space containing q^3+1 of them
    const Subspace line = span(*F, {normalize(*F, Vec{F->one(), F->omega(), {}}), normalize(*F, Vec{{}, F->one(), F->one()})});
    Matrix rows(0, 9);
    for (const Point& p : subspace_points(*F, line, Level::cubic)) {
        const Subspace pl = ctx.bose_plane(p);
        for (std::size_t r = 0; r < 3; ++r) rows.append_row(pl.basis().row(r));
    }
    const Subspace five(*F, rows, 8);
    CHECK(five.dim() == 5);
    std::size_t inside = 0;
    for (std::size_t k = 0; k < ctx.spread8().size(); ++k)
        if (five.contains(*F, ctx.spread8().element(k))) ++inside;
    CHECK(inside == 9);
}
