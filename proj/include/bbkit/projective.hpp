#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bbkit/linalg.hpp"

namespace bbkit {

// Projective point; the first nonzero coordinate is always 1.
class Point {
public:
    Point() = default;
    const Vec& coords() const { return coords_; }
    std::size_t dim() const { return coords_.size() - 1; }
    Fe operator[](std::size_t i) const { return coords_[i]; }

    friend bool operator==(const Point&, const Point&) = default;
    friend bool operator<(const Point& a, const Point& b) { return a.coords_ < b.coords_; }

private:
    friend Point normalize(const FieldTower& F, Vec raw);

    Vec coords_;
};

struct MultPoint {
    Point point;
    int multiplicity = 0;
};

struct PointHash {
    std::size_t operator()(const Point& p) const {
        std::uint64_t h = 1469598103934665603ULL;
        for (Fe x : p.coords()) h = (h ^ x.code) * 1099511628211ULL;
        return static_cast<std::size_t>(h);
    }
};

Point normalize(const FieldTower& F, Vec raw);
Level point_level(const FieldTower& F, const Point& p);
Point point_frob(const FieldTower& F, const Point& p, int i);

// Row space of a matrix kept in reduced row echelon form.
class Subspace {
public:
    Subspace() = default;
    Subspace(const FieldTower& F, const Matrix& generators, std::size_t ambient_dim);
    static Subspace empty(std::size_t ambient_dim);
    static Subspace whole(std::size_t ambient_dim);

    const Matrix& basis() const { return basis_; }
    std::size_t ambient_dim() const { return ambient_; }
    // Projective dimension; -1 for the empty subspace.
    int dim() const { return static_cast<int>(basis_.rows()) - 1; }
    bool is_empty() const { return basis_.rows() == 0; }

    bool contains(const FieldTower& F, const Vec& v) const;
    bool contains(const FieldTower& F, const Point& p) const { return contains(F, p.coords()); }
    bool contains(const FieldTower& F, const Subspace& s) const;

    friend bool operator==(const Subspace&, const Subspace&) = default;

private:
    Matrix basis_;
    std::size_t ambient_ = 0;
};

Subspace span(const FieldTower& F, const std::vector<Point>& points);
Subspace join(const FieldTower& F, const Subspace& a, const Subspace& b);
Subspace meet(const FieldTower& F, const Subspace& a, const Subspace& b);
Subspace subspace_frob(const FieldTower& F, const Subspace& s, int i);
// Linear forms vanishing on s, one per row.
Matrix annihilator(const FieldTower& F, const Subspace& s);
// Points of s whose coordinates lie in the given level.
std::vector<Point> subspace_points(const FieldTower& F, const Subspace& s, Level level);
// The single point of a 0-dimensional subspace.
Point as_point(const FieldTower& F, const Subspace& s);

// X -> M * X^(q^i)
struct Collineation {
    Matrix matrix;
    int frob_power = 0;
};

Collineation compose(const FieldTower& F, const Collineation& a, const Collineation& b);
Point apply(const FieldTower& F, const Collineation& c, const Point& p);

// Projectivity (M, 0) with M src_i proportional to dst_i; frames are n+2 points in general position.
Collineation unique_projectivity(const FieldTower& F, const std::vector<Point>& src, const std::vector<Point>& dst);

bool in_general_position(const FieldTower& F, const std::vector<Point>& points);

// Canonical enumeration of PG(n, q^level): lexicographic order of normalized coordinates.
std::uint64_t point_count(const FieldTower& F, std::size_t n, Level level);
Point point_at(const FieldTower& F, std::size_t n, Level level, std::uint64_t index);
std::uint64_t point_index(const FieldTower& F, const Point& p, Level level);

struct EnumerationBudget {
    std::uint64_t max_points = 20'000'000;
};

void for_each_point(const FieldTower& F, std::size_t n, Level level,
                    const std::function<void(std::uint64_t, const Point&)>& fn, EnumerationBudget budget = {});

}  // namespace bbkit
