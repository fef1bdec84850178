#include <set>

#include "bbkit/random.hpp"
#include "bbkit/spread.hpp"
#include "doctest.h"

using namespace bbkit;

TEST_CASE("dual basis vector reconstructs coordinates and is an eigenvector of multiplication by w") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        auto F = FieldTower::build(p, e);
        const Vec v = dual_basis_vector(*F);
        for (std::uint32_t c = 0; c < F->size(Level::cubic); ++c) {
            const Fe a{c};
            const auto coords = F->vec(a);
            for (int j = 0; j < 3; ++j) {
                Fe sum = F->zero();
                for (int i = 0; i < 3; ++i) sum = F->add(sum, F->frob(F->mul(a, v[j]), i));
                CHECK(sum == coords[j]);
            }
        }
        // column j of the multiplication matrix is vec(w * w^j)
        Matrix mult(3, 3);
        Fe wj = F->one();
        for (int j = 0; j < 3; ++j) {
            const auto col = F->vec(F->mul(F->omega(), wj));
            for (int i = 0; i < 3; ++i) mult.at(i, j) = col[i];
            wj = F->mul(wj, F->omega());
        }
        CHECK(mat_vec(*F, mult, v) == vec_scale(*F, v, F->omega()));
    }
}

TEST_CASE("spreads of PG(5,q) partition the space") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
        auto F = FieldTower::build(p, e);
        const auto S = RegularSpread::build(F, 5);
        const std::uint64_t q = F->q();
        CHECK(S.size() == q * q * q + 1);
        std::set<Point> seen;
        for (std::size_t k = 0; k < S.size(); ++k) {
            const auto pts = subspace_points(*F, S.element(k), Level::base);
            CHECK(pts.size() == q * q + q + 1);
            for (const auto& x : pts) {
                CHECK(seen.insert(x).second);
                CHECK(S.element_through(x) == k);
            }
        }
        CHECK(seen.size() == point_count(*F, 5, Level::base));
    }
    CHECK(RegularSpread::build(FieldTower::build(3, 1), 5).size() == 28);
}

TEST_CASE("spread of PG(8,2) has 73 elements") {
    auto F = FieldTower::build(2, 1);
    const auto S = RegularSpread::build(F, 8);
    CHECK(S.size() == 73);
    std::set<Point> seen;
    for (std::size_t k = 0; k < S.size(); ++k)
        for (const auto& x : subspace_points(*F, S.element(k), Level::base)) CHECK(seen.insert(x).second);
    CHECK(seen.size() == 511);
    CHECK(S.transversal(0).dim() == 2);
}

TEST_CASE("element lookup agrees with a scan over all elements") {
    auto F = FieldTower::build(3, 1);
    const auto S = RegularSpread::build(F, 5);
    Rng rng(1);
    for (int i = 0; i < 100; ++i) {
        const Point x = normalize(*F, rng.nonzero_vector(*F, 6, Level::base));
        std::vector<std::size_t> hits;
        for (std::size_t k = 0; k < S.size(); ++k)
            if (S.element(k).contains(*F, x)) hits.push_back(k);
        REQUIRE(hits.size() == 1);
        CHECK(S.element_through(x) == hits[0]);
    }
    CHECK_THROWS_AS(S.element_through(normalize(*F, Vec{F->omega(), F->one(), {}, {}, {}, {}})),
                    std::invalid_argument);
    CHECK_THROWS_AS(S.element(S.size()), std::out_of_range);
}

TEST_CASE("transversals are conjugate and meet each extended element once") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        auto F = FieldTower::build(p, e);
        const auto S = RegularSpread::build(F, 5);
        const Subspace& g = S.transversal(0);
        CHECK(g.dim() == 1);
        CHECK(subspace_frob(*F, g, 1) == S.transversal(1));
        CHECK(subspace_frob(*F, g, 2) == S.transversal(2));
        CHECK(subspace_frob(*F, g, 3) == g);
        CHECK(entry_level(*F, g.basis()) == Level::cubic);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) CHECK(meet(*F, S.transversal(i), S.transversal(j)).is_empty());
        // no real point on g: g is disjoint from its two conjugates, hence from PG(5,q)
        std::set<Point> on_g;
        for (std::size_t k = 0; k < S.size(); ++k) {
            const Subspace m = meet(*F, S.extended_element(k, Level::cubic), g);
            REQUIRE(m.dim() == 0);
            const Point x = as_point(*F, m);
            CHECK(x == S.transversal_point(k));
            CHECK(S.element_of_transversal_point(x) == k);
            CHECK(point_level(*F, x) == Level::cubic);
            CHECK(on_g.insert(x).second);
            // the extension also meets g^q and g^q^2 in the conjugates
            for (int i = 1; i < 3; ++i)
                CHECK(as_point(*F, meet(*F, S.element(k), S.transversal(i))) == point_frob(*F, x, i));
        }
        CHECK(on_g.size() == point_count(*F, 1, Level::cubic));
    }
}

TEST_CASE("transversal lines of three elements only meet elements of their regulus") {
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
        auto F = FieldTower::build(p, e);
        const auto S = RegularSpread::build(F, 5);
        Rng rng(p * 7 + e);
        for (int trial = 0; trial < 10; ++trial) {
            std::size_t a = rng.below(S.size()), b, c;
            do b = rng.below(S.size()); while (b == a);
            do c = rng.below(S.size()); while (c == a || c == b);
            const auto reg = S.regulus(a, b, c);
            const std::set<std::size_t> expected(reg.begin(), reg.end());
            CHECK(expected.size() == F->q() + 1);
            CHECK(expected.count(a));
            CHECK(expected.count(b));
            CHECK(expected.count(c));
            std::set<std::size_t> met;
            for (const Point& x : subspace_points(*F, S.element(a), Level::base)) {
                // the line through x meeting b and c lies in <x, b> and passes through <x, b> ∩ c
                const Subspace xb = join(*F, span(*F, {x}), S.element(b));
                const Subspace r = meet(*F, xb, S.element(c));
                REQUIRE(r.dim() == 0);
                const Subspace line = join(*F, span(*F, {x}), r);
                REQUIRE(line.dim() == 1);
                for (const Point& y : subspace_points(*F, line, Level::base)) met.insert(S.element_through(y));
            }
            CHECK(met == expected);
        }
    }
}
