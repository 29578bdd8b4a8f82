#pragma once

#include <string>
#include <vector>

#include "wittjet/curvering.hpp"

namespace wittjet {

// Polynomial in the fiber coordinate T with LocalizedElem coefficients.
class FiberPoly {
public:
    FiberPoly() = default;
    explicit FiberPoly(CurvePtr curve) : c_(std::move(curve)) {}
    FiberPoly(CurvePtr curve, std::vector<LocalizedElem> coeffs)
        : c_(std::move(curve)), a_(std::move(coeffs)) {
        trim();
    }

    static FiberPoly constant(CurvePtr curve, LocalizedElem v) {
        FiberPoly r(curve);
        r.a_.push_back(std::move(v));
        r.trim();
        return r;
    }
    static FiberPoly identity(CurvePtr curve) {
        FiberPoly r(curve);
        r.a_.push_back(LocalizedElem::zero(curve));
        r.a_.push_back(LocalizedElem::one(curve));
        return r;
    }

    const CurvePtr& curve() const { return c_; }
    int degree() const { return static_cast<int>(a_.size()) - 1; }
    bool is_zero() const { return a_.empty(); }
    LocalizedElem coeff(std::size_t d) const {
        return d < a_.size() ? a_[d] : LocalizedElem::zero(c_);
    }
    const std::vector<LocalizedElem>& coeffs() const { return a_; }

    void set_coeff(std::size_t d, LocalizedElem v) {
        while (a_.size() <= d) a_.push_back(LocalizedElem::zero(c_));
        a_[d] = std::move(v);
        trim();
    }

    FiberPoly operator+(const FiberPoly& o) const {
        FiberPoly r(c_);
        std::size_t n = std::max(a_.size(), o.a_.size());
        for (std::size_t i = 0; i < n; ++i) r.a_.push_back(coeff(i) + o.coeff(i));
        r.trim();
        return r;
    }
    FiberPoly operator-(const FiberPoly& o) const {
        FiberPoly r(c_);
        std::size_t n = std::max(a_.size(), o.a_.size());
        for (std::size_t i = 0; i < n; ++i) r.a_.push_back(coeff(i) - o.coeff(i));
        r.trim();
        return r;
    }
    FiberPoly operator*(const FiberPoly& o) const {
        FiberPoly r(c_);
        if (is_zero() || o.is_zero()) return r;
        r.a_.assign(a_.size() + o.a_.size() - 1, LocalizedElem::zero(c_));
        for (std::size_t i = 0; i < a_.size(); ++i)
            for (std::size_t j = 0; j < o.a_.size(); ++j)
                r.a_[i + j] = r.a_[i + j] + a_[i] * o.a_[j];
        r.trim();
        return r;
    }
    FiberPoly scale(const LocalizedElem& s) const {
        FiberPoly r(c_);
        for (const auto& v : a_) r.a_.push_back(v * s);
        r.trim();
        return r;
    }
    FiberPoly scale_int(const Bigint& s) const {
        FiberPoly r(c_);
        for (const auto& v : a_) r.a_.push_back(v.scale(s));
        r.trim();
        return r;
    }

    // T -> g(T)
    FiberPoly substitute(const FiberPoly& g) const {
        FiberPoly acc(c_);
        for (std::size_t i = a_.size(); i-- > 0;) {
            acc = acc * g;
            acc = acc + constant(c_, a_[i]);
        }
        return acc;
    }
    LocalizedElem eval(const LocalizedElem& v) const {
        LocalizedElem acc = LocalizedElem::zero(c_);
        for (std::size_t i = a_.size(); i-- > 0;) acc = acc * v + a_[i];
        return acc;
    }

    bool eq(const FiberPoly& o) const {
        std::size_t n = std::max(a_.size(), o.a_.size());
        for (std::size_t i = 0; i < n; ++i)
            if (!coeff(i).eq(o.coeff(i))) return false;
        return true;
    }

    FiberPoly truncated(int maxdeg) const {
        FiberPoly r(c_);
        for (std::size_t i = 0; i < a_.size() && static_cast<int>(i) <= maxdeg; ++i)
            r.a_.push_back(a_[i]);
        r.trim();
        return r;
    }

    FiberPoly at_level(int m) const {
        FiberPoly r(c_->at_level(m));
        for (const auto& v : a_) r.a_.push_back(v.at_level(m));
        r.trim();
        return r;
    }

    std::string str() const {
        if (a_.empty()) return "0";
        std::string s;
        for (std::size_t i = 0; i < a_.size(); ++i) {
            if (!s.empty()) s += " + ";
            s += "[" + a_[i].str() + "]";
            if (i == 1) s += "*T";
            if (i > 1) s += "*T^" + std::to_string(i);
        }
        return s;
    }

private:
    void trim() {
        while (!a_.empty() && a_.back().is_zero()) a_.pop_back();
    }

    CurvePtr c_;
    std::vector<LocalizedElem> a_;
};

// Truncated automorphism a_0 + a_1 T + ... + a_D T^D of the affine line over
// the localized curve ring at level n, with a_1 a unit (witness stored) and
// v_p(a_d) >= d-1 for d >= 2; D <= n+1. Composition is g.compose(f) = g(f(T)).
class BoundedAut {
public:
    // `a1_witness` only needs to invert a_1 mod p; it is upgraded to the
    // exact inverse here (and post-checked by invert_unit).
    BoundedAut(FiberPoly poly, const LocalizedElem& a1_witness)
        : f_(std::move(poly)), a1inv_(invert_unit(f_.coeff(1), a1_witness)) {
        validate();
    }

    static BoundedAut identity(const CurvePtr& c) {
        return BoundedAut(FiberPoly::identity(c), LocalizedElem::one(c));
    }

    const CurvePtr& curve() const { return f_.curve(); }
    const FiberPoly& poly() const { return f_; }
    const LocalizedElem& a1_inverse() const { return a1inv_; }
    int degree() const { return f_.degree(); }
    LocalizedElem coeff(std::size_t d) const { return f_.coeff(d); }

    // g.compose(h) = g(h(T)), truncated to degree n+1 with the valuation
    // pattern re-verified.
    BoundedAut compose(const BoundedAut& h) const {
        check(h);
        FiberPoly comp = f_.substitute(h.f_);
        // a_1(g o h) = a_1(g) a_1(h); witness multiplies
        LocalizedElem w = a1inv_ * h.a1inv_;
        return BoundedAut(bounded_truncate(comp), w);
    }

    // Solves g(f(T)) = T by the contraction T -> a1^{-1}(T - a0 - h(g)):
    // the tail h has every coefficient divisible by p, so the iteration is
    // stationary mod p^{n+1} after n+1 steps.
    BoundedAut inverse() const {
        const CurvePtr& c = curve();
        int n = c->ctx().n;
        FiberPoly tail = f_;
        tail.set_coeff(0, LocalizedElem::zero(c));
        tail.set_coeff(1, LocalizedElem::zero(c));

        FiberPoly g(c);  // start: a1^{-1}(T - a0)
        g.set_coeff(0, -(a1inv_ * f_.coeff(0)));
        g.set_coeff(1, a1inv_);
        for (int it = 0; it < n + 1; ++it) {
            FiberPoly t = tail.substitute(g);
            FiberPoly next(c);
            next.set_coeff(1, LocalizedElem::one(c));
            next = next - FiberPoly::constant(c, f_.coeff(0)) - t;
            g = next.scale(a1inv_).truncated(n + 2);
        }
        BoundedAut inv(bounded_truncate(g), f_.coeff(1));
        // two-sided post-check
        FiberPoly id = FiberPoly::identity(c);
        if (!inv.f_.substitute(f_).eq(id) || !f_.substitute(inv.f_).eq(id))
            throw InvariantViolation("automorphism inversion post-check failed");
        return inv;
    }

    bool is_AL1() const { return degree() <= 1; }

    // Membership in M_{m,r}: degree <= r and p^m | a_d for 2 <= d <= r.
    // Default stage m is the working level.
    bool is_in_M(int r, int m = -1) const {
        if (m < 0) m = curve()->ctx().n;
        if (degree() > r) return false;
        for (int d = 2; d <= degree(); ++d)
            if (!f_.coeff(static_cast<std::size_t>(d)).divisible_by_ppow(m)) return false;
        return true;
    }

    // tau_r = (a_r / p^m) / a_1 mod p.
    LocalizedElem tau_r(int r, int m = -1) const {
        if (m < 0) m = curve()->ctx().n;
        if (!is_in_M(r, m)) throw NotInSubgroup("tau_r: element not in M at this stage");
        LocalizedElem ar = f_.coeff(static_cast<std::size_t>(r));
        LocalizedElem br = ar.div_ppow(m);
        return (br * a1inv_).at_level(0);
    }

    struct Sigma {
        LocalizedElem m;      // a_1^{r-1} mod p
        LocalizedElem m_inv;  // its inverse mod p
        LocalizedElem a;      // tau_r mod p
    };

    Sigma sigma_r(int r, int m = -1) const {
        LocalizedElem a1 = f_.coeff(1).at_level(0);
        LocalizedElem a1i = a1inv_.at_level(0);
        unsigned e = static_cast<unsigned>(r - 1);
        return Sigma{a1.pow(e), a1i.pow(e), tau_r(r, m)};
    }

    BoundedAut at_level(int lvl) const {
        return BoundedAut(f_.at_level(lvl), a1inv_.at_level(lvl));
    }

    bool eq(const BoundedAut& o) const { return f_.eq(o.f_); }

    // Prints `a0 + a1*T + p^{d-1}*b_d*T^d + ...` with b_d = a_d / p^{d-1}.
    std::string str() const {
        const CurvePtr& c = curve();
        if (f_.is_zero()) return "0";
        std::string s;
        for (int d = 0; d <= degree(); ++d) {
            LocalizedElem a = f_.coeff(static_cast<std::size_t>(d));
            if (a.is_zero() && d > 1) continue;
            if (!s.empty()) s += " + ";
            if (d >= 2) {
                LocalizedElem b = a.div_ppow(d - 1).at_level(c->ctx().n - std::min(c->ctx().n, d - 1));
                s += "p^" + std::to_string(d - 1) + "*[" + b.str() + "]";
            } else {
                s += "[" + a.str() + "]";
            }
            if (d == 1) s += "*T";
            if (d > 1) s += "*T^" + std::to_string(d);
        }
        return s;
    }

private:
    void check(const BoundedAut& o) const {
        if (!(curve() == o.curve()) && !curve()->same_ring(*o.curve()))
            throw MixedContext("automorphisms over different curves or levels");
    }

    // Coefficients beyond degree n+1 must already vanish mod p^{n+1}.
    FiberPoly bounded_truncate(const FiberPoly& g) const {
        int n = g.curve()->ctx().n;
        for (int d = n + 2; d <= g.degree(); ++d)
            if (!g.coeff(static_cast<std::size_t>(d)).is_zero())
                throw InvariantViolation("bounded automorphism has live coefficient at degree " +
                                         std::to_string(d));
        return g.truncated(n + 1);
    }

    void validate() const {
        const CurvePtr& c = curve();
        if (!c) throw PreconditionError("bounded automorphism needs a curve");
        int n = c->ctx().n;
        if (degree() > n + 1)
            throw InvariantViolation("bounded automorphism degree exceeds level + 1");
        for (int d = 2; d <= degree(); ++d)
            if (!f_.coeff(static_cast<std::size_t>(d)).divisible_by_ppow(d - 1))
                throw InvariantViolation("coefficient of T^" + std::to_string(d) +
                                         " violates the p-valuation pattern");
    }

    FiberPoly f_;
    LocalizedElem a1inv_;
};

}  // namespace wittjet
