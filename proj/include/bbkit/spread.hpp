#pragma once

#include <cstdint>
#include <vector>

#include "bbkit/projective.hpp"

namespace bbkit {

// Regular 2-spread of PG(5,q) or PG(8,q) obtained by field reduction.
//
// Coordinates come in blocks of three, block j holding vec(x_j) of a point
// (x_0 : x_1 [: x_2]) of PG(1,q^3) or PG(2,q^3). Element k is the plane
// {(vec(t x_0), vec(t x_1), ...) : t in GF(q^3)*} where (x_j) is point k of
// PG(blocks-1, q^3) in canonical order. With v the dual basis of {1, w, w^2},
// vec(a) = a v + a^q v^q + a^(q^2) v^(q^2), so element k is the real part of
// <X, X^q, X^(q^2)> for X = (x_0 v, x_1 v, ...), and X runs over the
// transversal g = {(a_0 v, a_1 v, ...)}. v is the w-eigenvector of the
// GF(q)-linear map "multiply by w".
class RegularSpread {
public:
    RegularSpread() = default;  // empty placeholder; use build()
    // Builds and verifies the partition; throws BudgetExceeded when the
    // ambient space has more points than the budget allows.
    static RegularSpread build(TowerPtr F, std::size_t ambient_dim, EnumerationBudget budget = {});

    const FieldTower& field() const { return *F_; }
    const TowerPtr& tower() const { return F_; }
    std::size_t ambient_dim() const { return blocks_ * 3 - 1; }
    std::size_t blocks() const { return blocks_; }
    std::size_t size() const { return elements_.size(); }

    const Subspace& element(std::size_t k) const;
    // The same basis read at a higher level.
    const Subspace& extended_element(std::size_t k, Level level) const;
    // g^(q^i), i in {0,1,2}.
    const Subspace& transversal(int i) const { return transversals_.at(((i % 3) + 3) % 3); }
    // The point where the extension of element k meets g.
    Point transversal_point(std::size_t k) const;
    // Index of the element whose extension meets g in P (P on g).
    std::size_t element_of_transversal_point(const Point& p) const;

    std::size_t element_through(const Point& p) const;
    const Vec& eigenvector() const { return v_; }

    // The element through (vec(x_0), vec(x_1), ...) read as a point of PG(blocks-1, q^3).
    Point element_label(std::size_t k) const;
    std::size_t element_index(const Point& label) const;

    // Elements of the 2-regulus determined by three distinct elements of a
    // PG(5,q) spread: the q+1 elements labelled by the subline of PG(1,q^3)
    // through their labels.
    std::vector<std::size_t> regulus(std::size_t a, std::size_t b, std::size_t c) const;

private:
    TowerPtr F_;
    std::size_t blocks_ = 0;
    Vec v_;
    std::vector<Subspace> elements_;
    std::vector<Subspace> transversals_;
};

// Dual basis vector of {1, w, w^2}: the first column of the inverse Moore matrix.
Vec dual_basis_vector(const FieldTower& F);

}  // namespace bbkit
