#pragma once

#include <vector>

#include "bbkit/field.hpp"

namespace bbkit {

// Univariate polynomial over the tower, constant term first, no trailing zeros.
using Poly = std::vector<Fe>;

struct Root {
    Fe value;
    int multiplicity = 0;
};

int poly_degree(const Poly& f);  // -1 for the zero polynomial
void poly_trim(Poly& f);
Fe poly_eval(const FieldTower& F, const Poly& f, Fe x);
Poly poly_add(const FieldTower& F, const Poly& a, const Poly& b);
Poly poly_sub(const FieldTower& F, const Poly& a, const Poly& b);
Poly poly_mul(const FieldTower& F, const Poly& a, const Poly& b);
Poly poly_scale(const FieldTower& F, const Poly& a, Fe c);
// Quotient and remainder; throws on division by zero.
std::pair<Poly, Poly> poly_divmod(const FieldTower& F, const Poly& a, const Poly& b);
Poly poly_monic(const FieldTower& F, const Poly& a);
Poly poly_gcd(const FieldTower& F, Poly a, Poly b);  // monic, or empty if both zero
Poly poly_powmod(const FieldTower& F, Poly base, std::uint64_t k, const Poly& mod);
Poly poly_frob(const FieldTower& F, const Poly& a, int i);

// All roots of f in GF(q^target) with multiplicities, ordered by element code.
// Brute force when the target field has at most 4096 elements, otherwise
// distinct-degree then equal-degree splitting.
std::vector<Root> roots(const FieldTower& F, const Poly& f, Level target);

}  // namespace bbkit
