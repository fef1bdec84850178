#include <set>
#include <unordered_set>

#include "bbkit/projective.hpp"
#include "bbkit/random.hpp"
#include "doctest.h"

using namespace bbkit;

namespace {

Point pt(const FieldTower& F, std::initializer_list<long long> v) {
    Vec raw;
    for (auto x : v) raw.push_back(F.from_int(x));
    return normalize(F, raw);
}

Point random_point(const FieldTower& F, Rng& rng, std::size_t n, Level level) {
    return normalize(F, rng.nonzero_vector(F, n + 1, level));
}

Subspace random_subspace(const FieldTower& F, Rng& rng, std::size_t n, std::size_t k, Level level) {
    Matrix m(0, n + 1);
    for (std::size_t i = 0; i < k; ++i) m.append_row(rng.vector(F, n + 1, level));
    return Subspace(F, m, n);
}

}  // namespace

TEST_CASE("normalize scales the first nonzero coordinate to one") {
    auto F = FieldTower::build(5, 1);
    const Point p = pt(*F, {0, 2, 4});
    CHECK(p[0].code == 0);
    CHECK(p[1].code == 1);
    CHECK(p[2].code == 2);
    CHECK_THROWS_AS(normalize(*F, Vec(3)), std::invalid_argument);
    CHECK(normalize(*F, p.coords()) == p);

    Rng rng(5);
    auto G = FieldTower::build(2, 2);
    for (int i = 0; i < 200; ++i) {
        const Vec v = rng.nonzero_vector(*G, 4, Level::sextic);
        const Fe s = rng.nonzero(*G, Level::sextic);
        CHECK(normalize(*G, vec_scale(*G, v, s)) == normalize(*G, v));
    }
}

TEST_CASE("point counts and canonical enumeration") {
    auto F2 = FieldTower::build(2, 1);
    CHECK(point_count(*F2, 2, Level::base) == 7);
    CHECK(point_count(*F2, 5, Level::base) == 63);
    CHECK(point_count(*F2, 6, Level::cubic) == 299593);

    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}}) {
        auto F = FieldTower::build(p, e);
        for (auto [n, level] : std::vector<std::pair<std::size_t, Level>>{{2, Level::base}, {5, Level::base},
                                                                           {2, Level::cubic}, {1, Level::sextic}}) {
            std::unordered_set<Point, PointHash> seen;
            std::uint64_t expect = 0;
            for_each_point(*F, n, level, [&](std::uint64_t i, const Point& x) {
                CHECK(i == expect++);
                CHECK(point_index(*F, x, level) == i);
                CHECK(normalize(*F, x.coords()) == x);
                CHECK(seen.insert(x).second);
            });
            std::uint64_t Q = F->size(level), total = 0, power = 1;
            for (std::size_t j = 0; j <= n; ++j, power *= Q) total += power;
            CHECK(seen.size() == total);
        }
    }
}

TEST_CASE("enumeration respects the budget") {
    auto F = FieldTower::build(2, 1);
    CHECK_THROWS_AS(for_each_point(*F, 6, Level::cubic, [](std::uint64_t, const Point&) {}, {1000}),
                    BudgetExceeded);
}

TEST_CASE("span and meet on small examples") {
    auto F = FieldTower::build(3, 1);
    CHECK(span(*F, {pt(*F, {1, 0, 0}), pt(*F, {0, 1, 0}), pt(*F, {0, 0, 1})}).dim() == 2);
    CHECK(span(*F, {pt(*F, {1, 2, 0}), pt(*F, {1, 2, 0})}).dim() == 0);
    CHECK(span(*F, {pt(*F, {1, 0, 0}), pt(*F, {0, 1, 0}), pt(*F, {1, 1, 0})}).dim() == 1);

    const Subspace a = span(*F, {pt(*F, {1, 0, 0}), pt(*F, {0, 1, 0})});
    const Subspace b = span(*F, {pt(*F, {0, 0, 1}), pt(*F, {1, 1, 1})});
    const Subspace m = meet(*F, a, b);
    REQUIRE(m.dim() == 0);
    CHECK(as_point(*F, m) == pt(*F, {1, 1, 0}));
    CHECK(meet(*F, a, Subspace::whole(2)) == a);

    // two planes of PG(5) spanned by disjoint coordinate blocks
    std::vector<Vec> r1(3, Vec(6)), r2(3, Vec(6));
    for (int i = 0; i < 3; ++i) {
        r1[i][i] = F->one();
        r2[i][i + 3] = F->one();
    }
    CHECK(meet(*F, Subspace(*F, Matrix::from_rows(r1), 5), Subspace(*F, Matrix::from_rows(r2), 5)).is_empty());
}

TEST_CASE("subspace basis is canonical and the dimension formula holds") {
    Rng rng(11);
    for (auto [p, e] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {5, 1}}) {
        auto F = FieldTower::build(p, e);
        for (int trial = 0; trial < 200; ++trial) {
            const std::size_t n = 2 + rng.below(6);
            const Level level = trial % 2 ? Level::cubic : Level::base;
            const Subspace a = random_subspace(*F, rng, n, 1 + rng.below(n), level);
            const Subspace b = random_subspace(*F, rng, n, 1 + rng.below(n), level);
            // re-reducing a basis in a shuffled, rescaled form gives the same matrix
            Matrix mixed(0, n + 1);
            for (std::size_t r = a.basis().rows(); r-- > 0;) {
                Vec row = vec_scale(*F, a.basis().row(r), rng.nonzero(*F, level));
                if (r > 0) row = vec_add(*F, row, a.basis().row(r - 1));
                mixed.append_row(row);
            }
            CHECK(Subspace(*F, mixed, n) == a);

            const Subspace j = join(*F, a, b), m = meet(*F, a, b);
            CHECK(j.dim() == a.dim() + b.dim() - m.dim());
            CHECK(m.dim() >= a.dim() + b.dim() - static_cast<int>(n));
            CHECK(a.contains(*F, m));
            CHECK(b.contains(*F, m));
            CHECK(j.contains(*F, a));
            CHECK(j.contains(*F, b));
            // annihilator really annihilates
            const Matrix k = annihilator(*F, a);
            CHECK(static_cast<int>(k.rows()) == static_cast<int>(n) - a.dim());
            for (std::size_t r = 0; r < a.basis().rows(); ++r)
                for (std::size_t s = 0; s < k.rows(); ++s) CHECK(dot(*F, a.basis().row(r), k.row(s)).code == 0);
        }
    }
}

TEST_CASE("subspace points are exactly the enumerated points inside the subspace") {
    auto F = FieldTower::build(2, 1);
    Rng rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const Subspace s = random_subspace(*F, rng, 4, 1 + rng.below(4), Level::base);
        std::set<Point> listed;
        for (const auto& x : subspace_points(*F, s, Level::base)) listed.insert(x);
        std::set<Point> brute;
        for_each_point(*F, 4, Level::base, [&](std::uint64_t, const Point& x) {
            if (s.contains(*F, x)) brute.insert(x);
        });
        CHECK(listed == brute);
        CHECK(listed.size() == point_count(*F, s.dim(), Level::base));
    }
}

TEST_CASE("collineations compose and the projectivity through a frame is unique") {
    Rng rng(17);
    auto F = FieldTower::build(3, 1);
    const std::vector<Point> std_frame = {pt(*F, {1, 0, 0}), pt(*F, {0, 1, 0}), pt(*F, {0, 0, 1}), pt(*F, {1, 1, 1})};
    const Collineation id = unique_projectivity(*F, std_frame, std_frame);
    CHECK(id.matrix == Matrix::identity(3));

    // transposed frame
    std::vector<Point> swapped = {std_frame[1], std_frame[0], std_frame[2], std_frame[3]};
    const Collineation sw = unique_projectivity(*F, std_frame, swapped);
    for (std::size_t i = 0; i < 4; ++i) CHECK(apply(*F, sw, std_frame[i]) == swapped[i]);

    CHECK_THROWS_AS(unique_projectivity(*F, std_frame, {pt(*F, {1, 0, 0}), pt(*F, {0, 1, 0}), pt(*F, {1, 1, 0}),
                                                        pt(*F, {0, 0, 1})}),
                    std::invalid_argument);

    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.below(5);
        std::vector<Point> src, dst;
        do {
            src.clear();
            dst.clear();
            for (std::size_t i = 0; i < n + 2; ++i) {
                src.push_back(random_point(*F, rng, n, Level::cubic));
                dst.push_back(random_point(*F, rng, n, Level::cubic));
            }
        } while (!in_general_position(*F, src) || !in_general_position(*F, dst));
        const Collineation c = unique_projectivity(*F, src, dst);
        for (std::size_t i = 0; i < n + 2; ++i) CHECK(apply(*F, c, src[i]) == dst[i]);

        const Collineation a{rng.invertible(*F, n + 1, Level::sextic), static_cast<int>(rng.below(6))};
        const Collineation b{rng.invertible(*F, n + 1, Level::sextic), static_cast<int>(rng.below(6))};
        const Point x = random_point(*F, rng, n, Level::sextic);
        CHECK(apply(*F, compose(*F, a, b), x) == apply(*F, a, apply(*F, b, x)));
    }

    // (B,1) three times on a level-3 point equals (B B^q B^q^2, 0)
    for (int trial = 0; trial < 50; ++trial) {
        const Collineation b{rng.invertible(*F, 3, Level::cubic), 1};
        const Point x = random_point(*F, rng, 2, Level::cubic);
        const Matrix prod = mat_mul(*F, b.matrix, mat_mul(*F, mat_frob(*F, b.matrix, 1), mat_frob(*F, b.matrix, 2)));
        CHECK(apply(*F, b, apply(*F, b, apply(*F, b, x))) == apply(*F, Collineation{prod, 0}, x));
    }

    const Point base = pt(*F, {1, 2, 0});
    CHECK(apply(*F, Collineation{Matrix::identity(3), 1}, base) == base);
}

TEST_CASE("general position") {
    auto F = FieldTower::build(5, 1);
    std::vector<Point> conic;
    for (long long t : {0, 1, 2, 3}) conic.push_back(pt(*F, {1, t, t * t}));
    CHECK(in_general_position(*F, conic));
    CHECK_FALSE(in_general_position(*F, {pt(*F, {1, 0, 0}), pt(*F, {0, 1, 0}), pt(*F, {1, 1, 0})}));

    // r+3 points of the standard curve in PG(r)
    F = FieldTower::build(7, 1);
    for (std::size_t r = 1; r <= 5; ++r) {
        std::vector<Point> curve;
        for (long long t = 0; t < static_cast<long long>(r) + 2; ++t) {
            Vec v;
            long long x = 1;
            for (std::size_t k = 0; k <= r; ++k, x *= t) v.push_back(F->from_int(x));
            curve.push_back(normalize(*F, v));
        }
        Vec inf(r + 1);
        inf[r] = F->one();
        curve.push_back(normalize(*F, inf));
        CHECK(in_general_position(*F, curve));
        CHECK(span(*F, curve).dim() == static_cast<int>(r));
    }
}
