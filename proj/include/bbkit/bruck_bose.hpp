#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bbkit/spread.hpp"

namespace bbkit {

// An I_BB point: an affine point of PG(6,q) or a spread element at infinity.
struct BBPoint {
    bool at_infinity = false;
    Point affine;             // valid when !at_infinity
    std::size_t element = 0;  // valid when at_infinity

    friend bool operator==(const BBPoint&, const BBPoint&) = default;
};

// Coordinates: PG(2,q^3) points are (x0:x1:x2) with l_inf = {x0 = 0}.
// PG(6,q) points are (y0 | vec x1 | vec x2) with Sigma_inf = {y0 = 0}.
// PG(8,q) points are (vec x0 | vec x1 | vec x2); PG(6,q) sits inside it as
// Sigma6 = {z1 = z2 = 0} via (y0, u, w) -> (y0, 0, 0, u, w).
class BBContext {
public:
    static BBContext build(TowerPtr F, bool with_bose = false, EnumerationBudget budget = {});

    const FieldTower& field() const { return *F_; }
    const TowerPtr& tower() const { return F_; }
    const RegularSpread& spread6() const { return spread6_; }
    bool has_bose() const { return spread8_.has_value(); }
    const RegularSpread& spread8() const;

    // Spread element k of Sigma_inf as a plane of PG(6,q).
    const Subspace& element(std::size_t k) const { return elements6_.at(k); }
    std::size_t element_count() const { return elements6_.size(); }
    const Subspace& sigma_inf() const { return sigma_inf_; }
    // g^(q^i) inside the extension of Sigma_inf.
    const Subspace& transversal(int i) const { return transversals6_.at(((i % 3) + 3) % 3); }
    // Index of the spread element containing a real point of Sigma_inf.
    std::size_t element_through(const Point& p) const;

    BBPoint to_bb_point(const Point& p) const;
    Point from_bb_point(const Point& x) const;  // x affine in PG(6,q)
    Point from_bb_element(std::size_t k) const;
    Point from_bb(const BBPoint& x) const;

    // 3-space of a line other than l_inf (given as a subspace of PG(2,q^3));
    // nullopt for l_inf.
    std::optional<Subspace> to_bb_line(const Subspace& line) const;

    // The point of g in the extension of [P], P on l_inf.
    Point infty_to_g(const Point& p) const;
    // Inverse of infty_to_g.
    Point g_to_infty(const Point& x) const;

    // Bose representation.
    Subspace bose_plane(const Point& p) const;
    const Subspace& sigma6() const { return sigma6_; }
    Point embed_in_bose(const Point& x) const;
    Subspace embed_in_bose(const Subspace& s) const;

private:
    BBContext() = default;

    TowerPtr F_;
    RegularSpread spread6_;
    std::optional<RegularSpread> spread8_;
    std::vector<Subspace> elements6_;
    std::vector<Subspace> transversals6_;
    Subspace sigma_inf_;
    Subspace sigma6_;
};

// Prepends a zero coordinate (PG(5) inside Sigma_inf of PG(6)).
Vec lift_to_sigma_inf(const Vec& v);

}  // namespace bbkit
