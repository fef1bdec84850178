#include "bbkit/poly.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace bbkit {

int poly_degree(const Poly& f) { return static_cast<int>(f.size()) - 1; }

void poly_trim(Poly& f) {
    while (!f.empty() && f.back().code == 0) f.pop_back();
}

Fe poly_eval(const FieldTower& F, const Poly& f, Fe x) {
    Fe acc = F.zero();
    for (std::size_t i = f.size(); i-- > 0;) acc = F.add(F.mul(acc, x), f[i]);
    return acc;
}

Poly poly_add(const FieldTower& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.add(r[i], b[i]);
    poly_trim(r);
    return r;
}

Poly poly_sub(const FieldTower& F, const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()), F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = F.sub(r[i], b[i]);
    poly_trim(r);
    return r;
}

Poly poly_mul(const FieldTower& F, const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, F.zero());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].code == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(a[i], b[j]));
    }
    poly_trim(r);
    return r;
}

Poly poly_scale(const FieldTower& F, const Poly& a, Fe c) {
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.mul(a[i], c);
    poly_trim(r);
    return r;
}

std::pair<Poly, Poly> poly_divmod(const FieldTower& F, const Poly& a, const Poly& b) {
    if (b.empty()) throw std::domain_error("polynomial division by zero");
    Poly r = a;
    poly_trim(r);
    if (r.size() < b.size()) return {{}, r};
    Poly quo(r.size() - b.size() + 1, F.zero());
    const Fe lead_inv = F.inv(b.back());
    while (r.size() >= b.size()) {
        const std::size_t shift = r.size() - b.size();
        const Fe c = F.mul(r.back(), lead_inv);
        quo[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] = F.sub(r[shift + i], F.mul(c, b[i]));
        poly_trim(r);
    }
    poly_trim(quo);
    return {quo, r};
}

Poly poly_monic(const FieldTower& F, const Poly& a) {
    if (a.empty()) return a;
    return poly_scale(F, a, F.inv(a.back()));
}

Poly poly_gcd(const FieldTower& F, Poly a, Poly b) {
    poly_trim(a);
    poly_trim(b);
    while (!b.empty()) {
        Poly r = poly_divmod(F, a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return poly_monic(F, a);
}

Poly poly_powmod(const FieldTower& F, Poly base, std::uint64_t k, const Poly& mod) {
    Poly result{F.one()};
    result = poly_divmod(F, result, mod).second;
    base = poly_divmod(F, base, mod).second;
    while (k) {
        if (k & 1) result = poly_divmod(F, poly_mul(F, result, base), mod).second;
        k >>= 1;
        if (k) base = poly_divmod(F, poly_mul(F, base, base), mod).second;
    }
    return result;
}

Poly poly_frob(const FieldTower& F, const Poly& a, int i) {
    Poly r(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) r[k] = F.frob(a[k], i);
    return r;
}

namespace {

constexpr std::uint32_t brute_force_limit = 4096;

int root_multiplicity(const FieldTower& F, Poly f, Fe x) {
    const Poly lin{F.neg(x), F.one()};
    int m = 0;
    while (!f.empty()) {
        auto [quo, rem] = poly_divmod(F, f, lin);
        if (!rem.empty()) break;
        f = std::move(quo);
        ++m;
    }
    return m;
}

// Splits a monic squarefree product of distinct linear factors over GF(Q).
void split_linear(const FieldTower& F, const Poly& g, std::uint32_t Q, std::mt19937_64& rng,
                  std::vector<Fe>& out) {
    const int d = poly_degree(g);
    if (d <= 0) return;
    if (d == 1) {
        out.push_back(F.neg(g[0]));
        return;
    }
    for (;;) {
        // a random slope matters in characteristic 2: Tr(x + b) splits
        // x1, x2 only when Tr(x1 - x2) != 0, independent of b
        const Fe a{static_cast<std::uint32_t>(1 + rng() % (Q - 1))};
        const Fe b{static_cast<std::uint32_t>(rng() % Q)};
        const Poly h{b, a};
        Poly t;
        if (F.p() == 2) {
            // absolute trace of h modulo g
            Poly term = poly_divmod(F, h, g).second;
            t = term;
            for (std::uint32_t s = 2; s < Q; s *= 2) {
                term = poly_divmod(F, poly_mul(F, term, term), g).second;
                t = poly_add(F, t, term);
            }
        } else {
            t = poly_powmod(F, h, (Q - 1) / 2, g);
            t = poly_sub(F, t, Poly{F.one()});
        }
        Poly c = poly_gcd(F, g, t);
        const int dc = poly_degree(c);
        if (dc > 0 && dc < d) {
            split_linear(F, c, Q, rng, out);
            split_linear(F, poly_divmod(F, g, c).first, Q, rng, out);
            return;
        }
    }
}

}  // namespace

std::vector<Root> roots(const FieldTower& F, const Poly& poly, Level target) {
    Poly f = poly;
    poly_trim(f);
    if (f.empty()) throw std::invalid_argument("roots of the zero polynomial");
    for (Fe c : f)
        if (degree(F.level_of(c)) > degree(target))
            throw std::invalid_argument("polynomial coefficients lie above the target level");
    const std::uint32_t Q = F.size(target);
    std::vector<Root> out;
    if (poly_degree(f) == 0) return out;
    if (Q <= brute_force_limit) {
        for (std::uint32_t c = 0; c < Q; ++c) {
            if (poly_eval(F, f, Fe{c}).code != 0) continue;
            out.push_back({Fe{c}, root_multiplicity(F, f, Fe{c})});
        }
        return out;
    }
    const Poly fm = poly_monic(F, f);
    Poly xq = poly_powmod(F, Poly{F.zero(), F.one()}, Q, fm);
    Poly g = poly_gcd(F, fm, poly_sub(F, xq, Poly{F.zero(), F.one()}));
    std::vector<Fe> found;
    std::mt19937_64 rng(0x5eed5eedULL + Q);
    split_linear(F, g, Q, rng, found);
    std::sort(found.begin(), found.end());
    for (Fe x : found) out.push_back({x, root_multiplicity(F, f, x)});
    return out;
}

}  // namespace bbkit
