#include "bbkit/field.hpp"

#include <algorithm>
#include <sstream>

namespace bbkit {

Level level_from_int(int l) {
    switch (l) {
        case 1: return Level::base;
        case 3: return Level::cubic;
        case 6: return Level::sextic;
        default: throw std::invalid_argument("level must be 1, 3 or 6, got " + std::to_string(l));
    }
}

namespace {

bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d) continue;
        out.push_back(d);
        while (n % d == 0) n /= d;
    }
    if (n > 1) out.push_back(n);
    return out;
}

// Dense polynomials over GF(p), constant term first.
using IntPoly = std::vector<std::uint32_t>;

void trim(IntPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

IntPoly int_mod(IntPoly a, const IntPoly& m, std::uint32_t p) {
    trim(a);
    const std::size_t dm = m.size() - 1;
    std::uint32_t lead_inv = 1;
    while (lead_inv * m.back() % p != 1) ++lead_inv;
    while (a.size() > dm) {
        const std::uint32_t c = a.back() * lead_inv % p;
        const std::size_t shift = a.size() - 1 - dm;
        for (std::size_t i = 0; i <= dm; ++i)
            a[shift + i] = (a[shift + i] + (p - c) * m[i]) % p;
        trim(a);
    }
    return a;
}

IntPoly monic_from_index(std::uint64_t idx, std::uint32_t deg, std::uint32_t p) {
    IntPoly f(deg + 1, 0);
    for (std::uint32_t i = 0; i < deg; ++i) {
        f[i] = static_cast<std::uint32_t>(idx % p);
        idx /= p;
    }
    f[deg] = 1;
    return f;
}

bool int_irreducible(const IntPoly& f, std::uint32_t p) {
    const std::uint32_t n = static_cast<std::uint32_t>(f.size() - 1);
    for (std::uint32_t d = 1; 2 * d <= n; ++d) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx)
            if (int_mod(f, monic_from_index(idx, d, p), p).empty()) return false;
    }
    return true;
}

// Arithmetic used only while the dense tables are being built.
struct SlowTower {
    std::uint32_t p, e, q, q3;
    IntPoly base_mod;  // monic, degree e
    std::vector<std::uint32_t> addq, mulq;
    std::vector<std::uint32_t> cubic;   // c0,c1,c2 of x^3 + c2 x^2 + c1 x + c0 over GF(q)
    std::vector<std::uint32_t> sextic;  // d0,d1 of x^2 + d1 x + d0 over GF(q^3)

    std::uint32_t aq(std::uint32_t a, std::uint32_t b) const { return addq[a * q + b]; }
    std::uint32_t mq(std::uint32_t a, std::uint32_t b) const { return mulq[a * q + b]; }
    std::uint32_t nq(std::uint32_t a) const {
        for (std::uint32_t b = 0; b < q; ++b)
            if (aq(a, b) == 0) return b;
        return 0;
    }

    void build_base() {
        addq.assign(q * q, 0);
        mulq.assign(q * q, 0);
        auto digits = [&](std::uint32_t c) {
            IntPoly d(e, 0);
            for (std::uint32_t i = 0; i < e; ++i) { d[i] = c % p; c /= p; }
            return d;
        };
        auto code = [&](const IntPoly& d) {
            std::uint32_t c = 0;
            for (std::size_t i = d.size(); i-- > 0;) c = c * p + d[i];
            return c;
        };
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b) {
                const IntPoly da = digits(a), db = digits(b);
                IntPoly s(e);
                for (std::uint32_t i = 0; i < e; ++i) s[i] = (da[i] + db[i]) % p;
                addq[a * q + b] = code(s);
                IntPoly prod(2 * e, 0);
                for (std::uint32_t i = 0; i < e; ++i)
                    for (std::uint32_t j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                IntPoly r = e == 1 ? IntPoly{prod[0]} : int_mod(prod, base_mod, p);
                r.resize(e, 0);
                mulq[a * q + b] = code(r);
            }
    }

    // GF(q^3) as triples of GF(q) codes.
    std::uint32_t add3(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t out = 0, scale = 1;
        for (int i = 0; i < 3; ++i) {
            out += scale * aq(a % q, b % q);
            a /= q; b /= q; scale *= q;
        }
        return out;
    }
    std::uint32_t mul3(std::uint32_t a, std::uint32_t b) const {
        std::uint32_t x[3], y[3], z[5] = {0, 0, 0, 0, 0};
        for (int i = 0; i < 3; ++i) { x[i] = a % q; a /= q; y[i] = b % q; b /= q; }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) z[i + j] = aq(z[i + j], mq(x[i], y[j]));
        for (int k = 4; k >= 3; --k) {
            const std::uint32_t t = nq(z[k]);
            z[k] = 0;
            for (int i = 0; i < 3; ++i) z[k - 3 + i] = aq(z[k - 3 + i], mq(t, cubic[i]));
        }
        return z[0] + q * z[1] + q * q * z[2];
    }
    std::uint32_t neg3(std::uint32_t a) const {
        std::uint32_t out = 0, scale = 1;
        for (int i = 0; i < 3; ++i) { out += scale * nq(a % q); a /= q; scale *= q; }
        return out;
    }

    std::uint32_t add6(std::uint32_t a, std::uint32_t b) const {
        return add3(a % q3, b % q3) + q3 * add3(a / q3, b / q3);
    }
    std::uint32_t mul6(std::uint32_t a, std::uint32_t b) const {
        const std::uint32_t a0 = a % q3, a1 = a / q3, b0 = b % q3, b1 = b / q3;
        std::uint32_t c0 = mul3(a0, b0);
        std::uint32_t c1 = add3(mul3(a0, b1), mul3(a1, b0));
        const std::uint32_t c2 = mul3(a1, b1);
        // x^2 = -d1 x - d0
        const std::uint32_t t = neg3(c2);
        c0 = add3(c0, mul3(t, sextic[0]));
        c1 = add3(c1, mul3(t, sextic[1]));
        return c0 + q3 * c1;
    }
    std::uint32_t pow6(std::uint32_t a, std::uint64_t k) const {
        std::uint32_t r = 1;
        while (k) {
            if (k & 1) r = mul6(r, a);
            a = mul6(a, a);
            k >>= 1;
        }
        return r;
    }
};

}  // namespace

std::shared_ptr<const FieldTower> FieldTower::build(std::uint32_t p, std::uint32_t e) {
    if (!is_prime(p)) throw std::invalid_argument("characteristic " + std::to_string(p) + " is not prime");
    if (e < 1) throw std::invalid_argument("extension degree must be at least 1");
    std::uint64_t q = 1;
    for (std::uint32_t i = 0; i < e; ++i) {
        q *= p;
        if (q > 1000) break;
    }
    const std::uint64_t q6 = q * q * q * q * q * q;
    if (q > 1000 || q6 > max_top_size)
        throw std::invalid_argument("q^6 exceeds the supported table size of " + std::to_string(max_top_size));

    auto tower = std::shared_ptr<FieldTower>(new FieldTower());
    FieldTower& t = *tower;
    t.p_ = p;
    t.e_ = e;
    t.q_ = static_cast<std::uint32_t>(q);
    t.q3_ = t.q_ * t.q_ * t.q_;
    t.q6_ = static_cast<std::uint32_t>(q6);
    t.order_ = t.q6_ - 1;

    SlowTower s{p, e, t.q_, t.q3_, {}, {}, {}, {}, {}};
    if (e > 1) {
        std::uint64_t count = 1;
        for (std::uint32_t i = 0; i < e; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            IntPoly f = monic_from_index(idx, e, p);
            if (f[0] != 0 && int_irreducible(f, p)) {
                s.base_mod = f;
                break;
            }
        }
        t.base_mod_.assign(s.base_mod.begin(), s.base_mod.end() - 1);
    }
    s.build_base();

    // Least monic cubic over GF(q) without roots in GF(q).
    for (std::uint32_t idx = 0; idx < t.q3_ && s.cubic.empty(); ++idx) {
        const std::uint32_t c0 = idx % t.q_, c1 = (idx / t.q_) % t.q_, c2 = idx / (t.q_ * t.q_);
        bool has_root = false;
        for (std::uint32_t x = 0; x < t.q_ && !has_root; ++x) {
            const std::uint32_t x2 = s.mq(x, x);
            const std::uint32_t v = s.aq(s.aq(s.mq(x2, x), s.mq(c2, x2)), s.aq(s.mq(c1, x), c0));
            has_root = v == 0;
        }
        if (!has_root) s.cubic = {c0, c1, c2};
    }
    // Least monic quadratic over GF(q^3) without roots in GF(q^3).
    {
        std::vector<std::uint32_t> sq(t.q3_);
        for (std::uint32_t x = 0; x < t.q3_; ++x) sq[x] = s.mul3(x, x);
        const std::uint64_t n = static_cast<std::uint64_t>(t.q3_) * t.q3_;
        for (std::uint64_t idx = 0; idx < n && s.sextic.empty(); ++idx) {
            const std::uint32_t d0 = static_cast<std::uint32_t>(idx % t.q3_);
            const std::uint32_t d1 = static_cast<std::uint32_t>(idx / t.q3_);
            bool has_root = false;
            for (std::uint32_t x = 0; x < t.q3_ && !has_root; ++x)
                has_root = s.add3(s.add3(sq[x], s.mul3(d1, x)), d0) == 0;
            if (!has_root) s.sextic = {d0, d1};
        }
    }
    for (auto c : s.cubic) t.cubic_mod_.push_back({c});
    for (auto c : s.sextic) t.sextic_mod_.push_back({c});

    // Primitive element of GF(q^6), smallest code.
    const auto factors = prime_factors(t.order_);
    std::uint32_t g = 0;
    for (std::uint32_t cand = 2; cand < t.q6_; ++cand) {
        bool ok = true;
        for (auto r : factors)
            if (s.pow6(cand, t.order_ / r) == 1) { ok = false; break; }
        if (ok) { g = cand; break; }
    }
    if (t.order_ == 1) g = 1;
    if (g == 0) throw ConsistencyError("no primitive element found");

    t.exp_.assign(2 * static_cast<std::size_t>(t.order_), 0);
    t.log_.assign(t.q6_, 0);
    std::uint32_t x = 1;
    for (std::uint32_t k = 0; k < t.order_; ++k) {
        t.exp_[k] = x;
        t.exp_[k + t.order_] = x;
        t.log_[x] = k;
        x = s.mul6(x, g);
    }
    if (x != 1) throw ConsistencyError("generator order mismatch");

    if (p != 2) {
        t.add_half_.assign(static_cast<std::size_t>(t.q3_) * t.q3_, 0);
        for (std::uint32_t a = 0; a < t.q3_; ++a)
            for (std::uint32_t b = 0; b < t.q3_; ++b) t.add_half_[a * t.q3_ + b] = s.add3(a, b);
    }
    t.neg_.assign(t.q6_, 0);
    for (std::uint32_t a = 0; a < t.q6_; ++a) t.neg_[a] = s.neg3(a % t.q3_) + t.q3_ * s.neg3(a / t.q3_);

    std::uint64_t m = 1;
    for (int i = 0; i < 6; ++i) {
        t.frob_mult_[i] = m;
        m = (m * t.q_) % t.order_;
    }
    return tower;
}

std::uint32_t FieldTower::size(Level l) const {
    switch (l) {
        case Level::base: return q_;
        case Level::cubic: return q3_;
        case Level::sextic: return q6_;
    }
    return q6_;
}

Fe FieldTower::from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    if (r < 0) r += p_;
    return {static_cast<std::uint32_t>(r)};
}

Fe FieldTower::element(std::uint32_t code) const {
    if (code >= q6_) throw std::invalid_argument("element code out of range");
    return {code};
}

Fe FieldTower::inv(Fe a) const {
    if (a.code == 0) throw std::domain_error("inverse of zero");
    return {exp_[(order_ - log_[a.code]) % order_]};
}

Fe FieldTower::pow(Fe a, std::uint64_t k) const {
    if (k == 0) return one();
    if (a.code == 0) return zero();
    return {exp_[(static_cast<std::uint64_t>(log_[a.code]) * (k % order_)) % order_]};
}

Fe FieldTower::frob(Fe a, int i) const {
    if (a.code == 0) return a;
    const int k = ((i % 6) + 6) % 6;
    return {exp_[(log_[a.code] * frob_mult_[k]) % order_]};
}

Level FieldTower::level_of(Fe a) const {
    if (a.code < q_) return Level::base;
    if (a.code < q3_) return Level::cubic;
    return Level::sextic;
}

std::vector<std::uint32_t> FieldTower::coords(Fe a) const {
    std::vector<std::uint32_t> d(6 * e_);
    std::uint32_t c = a.code;
    for (auto& x : d) {
        x = c % p_;
        c /= p_;
    }
    return d;
}

Fe FieldTower::from_coords(const std::vector<std::uint32_t>& digits) const {
    if (digits.size() > 6 * e_) throw std::invalid_argument("too many coordinates");
    std::uint32_t c = 0;
    for (std::size_t i = digits.size(); i-- > 0;) {
        if (digits[i] >= p_) throw std::invalid_argument("coordinate not reduced mod p");
        c = c * p_ + digits[i];
    }
    return {c};
}

std::array<Fe, 3> FieldTower::vec(Fe a) const {
    if (a.code >= q3_) throw std::invalid_argument("vec expects an element of GF(q^3)");
    return {Fe{a.code % q_}, Fe{(a.code / q_) % q_}, Fe{a.code / (q_ * q_)}};
}

Fe FieldTower::unvec(Fe c0, Fe c1, Fe c2) const {
    if (c0.code >= q_ || c1.code >= q_ || c2.code >= q_)
        throw std::invalid_argument("unvec expects GF(q) coordinates");
    return {c0.code + q_ * c1.code + q_ * q_ * c2.code};
}

Fe FieldTower::generator(Level l) const {
    return {exp_[order_ / (size(l) - 1)]};
}

std::string FieldTower::describe() const {
    std::ostringstream os;
    os << "GF(" << p_ << "^" << e_ << ") tower, q=" << q_;
    return os.str();
}

}  // namespace bbkit
