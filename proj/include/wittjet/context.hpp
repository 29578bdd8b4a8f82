#pragma once

#include <cstdint>
#include <string>

#include "wittjet/bigint.hpp"
#include "wittjet/errors.hpp"

namespace wittjet {

// Arithmetic context: the ring Z/p^{n+1} ("level n" means modulus p^{n+1}).
struct PrimeLevel {
    std::int64_t p = 2;
    int n = 0;
    Bigint modulus = 4;

    PrimeLevel() = default;
    PrimeLevel(std::int64_t p_, int n_) : p(p_), n(n_) {
        if (p_ < 2 || !is_prime_u64(static_cast<std::uint64_t>(p_)))
            throw BadPrime("p = " + std::to_string(p_) + " is not prime");
        if (n_ < 0) throw PreconditionError("level must be >= 0");
        modulus = big_pow(Bigint(p_), static_cast<unsigned>(n_ + 1));
    }

    PrimeLevel at_level(int m) const { return PrimeLevel(p, m); }
    PrimeLevel lower() const {
        if (n == 0) throw LevelUnderflow("no level below 0");
        return PrimeLevel(p, n - 1);
    }

    bool operator==(const PrimeLevel& o) const { return p == o.p && n == o.n; }
    bool operator!=(const PrimeLevel& o) const { return !(*this == o); }
};

// Element of Z/p^{n+1}, stored as its least nonnegative representative.
class Residue {
public:
    Residue() = default;
    Residue(Bigint v, PrimeLevel ctx) : ctx_(std::move(ctx)), v_(mod_reduce(v, ctx_.modulus)) {}

    const Bigint& value() const { return v_; }
    const PrimeLevel& ctx() const { return ctx_; }
    bool is_zero() const { return v_ == 0; }

    Residue operator+(const Residue& o) const { return Residue(v_ + same(o).v_, ctx_); }
    Residue operator-(const Residue& o) const { return Residue(v_ - same(o).v_, ctx_); }
    Residue operator*(const Residue& o) const { return Residue(v_ * same(o).v_, ctx_); }
    Residue operator-() const { return Residue(-v_, ctx_); }
    bool operator==(const Residue& o) const { return ctx_ == o.ctx_ && v_ == o.v_; }
    bool operator!=(const Residue& o) const { return !(*this == o); }

    Residue pow(const Bigint& e) const { return Residue(mod_pow(v_, e, ctx_.modulus), ctx_); }
    Residue inverse() const { return Residue(mod_inverse(v_, ctx_.modulus), ctx_); }

    // Largest e <= n+1 with p^e | value; n+1 for the zero class.
    int valuation() const { return p_valuation(v_, ctx_.p, ctx_.n + 1); }

    std::string str() const { return v_.str(); }

private:
    const Residue& same(const Residue& o) const {
        if (ctx_ != o.ctx_) throw MixedContext("residues from different (p, level) contexts");
        return o;
    }

    PrimeLevel ctx_;
    Bigint v_ = 0;
};

// The map [1/p]: pR_n -> R_{n-1}.
inline Residue div_p(const Residue& a) {
    const PrimeLevel& c = a.ctx();
    if (c.n == 0) throw LevelUnderflow("div_p needs level >= 1");
    if (a.value() % c.p != 0)
        throw NotDivisible("div_p: value " + a.value().str() + " not divisible by p");
    return Residue(a.value() / c.p, c.lower());
}

// The unique p-derivation R_n -> R_{n-1}: a |-> (a - a^p)/p.
inline Residue delta_scalar(const Residue& a) {
    const PrimeLevel& c = a.ctx();
    if (c.n == 0) throw LevelUnderflow("delta needs level >= 1");
    Residue diff = a - a.pow(c.p);
    return div_p(diff);
}

// a^p + p*delta(a), the induced Frobenius lift on R_n.
inline Residue frobenius_endo(const Residue& a) {
    const PrimeLevel& c = a.ctx();
    if (c.n == 0) return a.pow(c.p);
    Residue d = delta_scalar(a);
    return a.pow(c.p) + Residue(d.value() * c.p, c);
}

}  // namespace wittjet
