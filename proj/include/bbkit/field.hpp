#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace bbkit {

// Field element of the top level GF(q^6). The code is the base-p integer of the
// GF(p)-coordinates, least significant first, so GF(q) and GF(q^3) are exactly
// the codes below q and q^3 and embedding between levels is the identity.
struct Fe {
    std::uint32_t code = 0;
    friend constexpr auto operator<=>(Fe, Fe) = default;
};

enum class Level : int { base = 1, cubic = 3, sextic = 6 };

constexpr int degree(Level l) { return static_cast<int>(l); }
Level level_from_int(int l);

// Thrown when an internal invariant that the mathematics guarantees is violated.
struct ConsistencyError : std::logic_error {
    using std::logic_error::logic_error;
};

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class FieldTower {
public:
    // Largest supported q^6; the tables are dense over GF(q^6).
    static constexpr std::uint64_t max_top_size = 5'000'000;

    static std::shared_ptr<const FieldTower> build(std::uint32_t p, std::uint32_t e);

    std::uint32_t p() const { return p_; }
    std::uint32_t e() const { return e_; }
    std::uint32_t q() const { return q_; }
    std::uint32_t size(Level l) const;

    Fe zero() const { return {0}; }
    Fe one() const { return {1}; }
    Fe from_int(long long v) const;
    Fe element(std::uint32_t code) const;
    // Generator of GF(q^3) over GF(q); vec/unvec use the basis {1, w, w^2}.
    Fe omega() const { return {q_}; }

    Fe add(Fe a, Fe b) const {
        if (p_ == 2) return {a.code ^ b.code};
        const std::uint32_t lo = add_half_[(a.code % q3_) * q3_ + b.code % q3_];
        const std::uint32_t hi = add_half_[(a.code / q3_) * q3_ + b.code / q3_];
        return {lo + q3_ * hi};
    }
    Fe neg(Fe a) const { return {neg_[a.code]}; }
    Fe sub(Fe a, Fe b) const { return add(a, neg(b)); }
    Fe mul(Fe a, Fe b) const {
        if (a.code == 0 || b.code == 0) return {0};
        return {exp_[log_[a.code] + log_[b.code]]};
    }
    Fe inv(Fe a) const;
    Fe div(Fe a, Fe b) const { return mul(a, inv(b)); }
    Fe pow(Fe a, std::uint64_t k) const;
    // x^(q^i); i may be any integer, reduced mod 6.
    Fe frob(Fe a, int i = 1) const;

    // Least L in {1,3,6} with x^(q^L) = x.
    Level level_of(Fe a) const;
    bool in_level(Fe a, Level l) const { return a.code < size(l); }

    // GF(p)-coordinates, least significant first; length 6e.
    std::vector<std::uint32_t> coords(Fe a) const;
    Fe from_coords(const std::vector<std::uint32_t>& digits) const;

    // Coordinates of a GF(q^3) element over GF(q) in the basis {1, w, w^2}.
    std::array<Fe, 3> vec(Fe a) const;
    Fe unvec(Fe c0, Fe c1, Fe c2) const;

    // Defining polynomials, constant term first, monic leading term omitted.
    // base: over GF(p) as integers; cubic: over GF(q); sextic: over GF(q^3).
    const std::vector<std::uint32_t>& base_modulus() const { return base_mod_; }
    const std::vector<Fe>& cubic_modulus() const { return cubic_mod_; }
    const std::vector<Fe>& sextic_modulus() const { return sextic_mod_; }

    // A multiplicative generator of the given level.
    Fe generator(Level l) const;

    std::string describe() const;

private:
    FieldTower() = default;

    std::uint32_t p_ = 0, e_ = 0, q_ = 0, q3_ = 0, q6_ = 0;
    std::uint32_t order_ = 0;  // q^6 - 1
    std::vector<std::uint32_t> exp_;  // length 2*order_ so log sums need no reduction
    std::vector<std::uint32_t> log_;
    std::vector<std::uint32_t> add_half_;
    std::vector<std::uint32_t> neg_;
    std::uint64_t frob_mult_[6] = {};
    std::vector<std::uint32_t> base_mod_;
    std::vector<Fe> cubic_mod_;
    std::vector<Fe> sextic_mod_;
};

using TowerPtr = std::shared_ptr<const FieldTower>;

}  // namespace bbkit
