#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "bbkit/bruck_bose.hpp"
#include "bbkit/nrc.hpp"
#include "bbkit/subgeometry.hpp"

namespace bbkit {

// Points below live in the extension of Sigma_inf = {y0 = 0} of PG(6,q).

// 1 on an extended transversal, 2 in the 3-space of two of them, else 3.
int weight(const BBContext& ctx, const Point& p);
// Size of the Frobenius orbit: 1, 2, 3 or 6.
int orbit_size(const FieldTower& F, const Point& p);
// 1 if p lies in an extended spread element, else 2.
int s_value(const BBContext& ctx, const Point& p);
inline bool is_happy(int w, int o, int s) { return w * o == 3 * s; }

struct InfinityPointReport {
    Point point;
    int multiplicity = 0;
    int w = 0, o = 0, s = 0;
    bool happy = false;
};

struct SpecialReport {
    int r = 0;
    std::vector<InfinityPointReport> points;
    int weight_sum = 0;  // counted with multiplicity
    bool is_3special = false;
    std::optional<int> type;
};

SpecialReport is_3special(const BBContext& ctx, const NRC& curve);

// One of the six shapes; throws ConsistencyError when the report is 3-special
// but fits none of them, or a shape's side condition fails.
int classify_type(const BBContext& ctx, const SpecialReport& report);

// For a point R of the 3-space <g, g^q>: X, Y on g with R on the line X Y^q.
struct WeightTwoWitness {
    Point x, y;
};
std::optional<WeightTwoWitness> weight_two_witness(const BBContext& ctx, const Point& r);

struct Profile {
    int k = 0;     // dimension of the image curve
    int type = 0;  // shape of its points at infinity
};
Profile expected_profile(CaseLabel label);

// Line through E and (E^c)^(q^frob_power) in the extension of Sigma_inf, where
// E, E^c are the carriers of an exterior subplane on l_inf mapped to g.
Subspace carrier_line_h(const BBContext& ctx, const SubplaneFrame& pi, int frob_power = 2);

struct GeneratedCurve {
    NRC curve;
    int attempts = 0;
};
// A real 3-special curve of the given type built from its points at infinity
// and random affine points. Throws BudgetExceeded after 64 failed attempts.
GeneratedCurve generate_3special(const BBContext& ctx, int type, std::uint64_t seed);

}  // namespace bbkit
