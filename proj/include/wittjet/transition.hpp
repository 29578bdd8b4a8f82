#pragma once

#include <vector>

#include "wittjet/jetaut.hpp"
#include "wittjet/jetring.hpp"

namespace wittjet {

// The jet relation of a plane curve organized for fiberwise evaluation:
// fdot = r + sum_{d>=1} p^{d-1} h_d(dx, dy), with each h_d split by
// dy-exponent into polynomials in dx over the localized curve ring.
class JetRelation {
public:
    explicit JetRelation(CurvePtr curve) : c_(std::move(curve)) {
        const PrimeLevel& ctx = c_->ctx();
        MultiPoly fdot = jet_polynomial_exact(c_->f_integer(), c_->base_vars(), ctx.p);
        auto dec = jet_decompose(fdot, c_->base_vars(), ctx.p);
        r_fiber_ = FiberPoly::constant(c_, LocalizedElem(c_, project_base(dec.r)));
        for (std::size_t d = 1; d < dec.h.size(); ++d) h_.push_back(split_by_dy(dec.h[d]));
    }

    const CurvePtr& curve() const { return c_; }

    // fdot evaluated at (dx = T, dy = Y).
    FiberPoly eval(const FiberPoly& Y) const {
        const PrimeLevel& ctx = c_->ctx();
        FiberPoly acc = r_fiber_;
        std::vector<FiberPoly> ypow{FiberPoly::constant(c_, LocalizedElem::one(c_))};
        for (std::size_t d = 1; d <= h_.size(); ++d) {
            if (static_cast<int>(d) - 1 > ctx.n) break;  // p^{d-1} = 0
            Bigint pd = big_pow(Bigint(ctx.p), static_cast<unsigned>(d - 1));
            FiberPoly term(c_);
            for (std::size_t k = 0; k < h_[d - 1].size(); ++k) {
                if (h_[d - 1][k].is_zero()) continue;
                while (ypow.size() <= k) ypow.push_back(ypow.back() * Y);
                term = term + h_[d - 1][k] * ypow[k];
            }
            acc = acc + term.scale_int(pd);
        }
        return acc;
    }

    // d(fdot)/d(dy) at dy = 0, as a polynomial in dx; equals
    // f_y(x^p,y^p) + p*(...)  on every chart overlap.
    FiberPoly dy_linearization() const {
        const PrimeLevel& ctx = c_->ctx();
        FiberPoly acc(c_);
        for (std::size_t d = 1; d <= h_.size(); ++d) {
            if (static_cast<int>(d) - 1 > ctx.n) break;
            if (h_[d - 1].size() < 2) continue;
            Bigint pd = big_pow(Bigint(ctx.p), static_cast<unsigned>(d - 1));
            acc = acc + h_[d - 1][1].scale_int(pd);
        }
        return acc;
    }

    // Inverse of an element G = fy_frob + p*(tail) of the fiber ring,
    // as a truncated Neumann series.
    FiberPoly invert_linearization(const FiberPoly& G) const {
        const PrimeLevel& ctx = c_->ctx();
        LocalizedElem F(c_, c_->fy_frob());
        LocalizedElem Finv = invert_unit(F, fy_frob_witness(c_));
        FiberPoly E = G - FiberPoly::constant(c_, F);
        // E is divisible by p
        FiberPoly Ew(c_);
        for (int d = 0; d <= E.degree(); ++d) {
            LocalizedElem cd = E.coeff(static_cast<std::size_t>(d));
            if (cd.is_zero()) continue;
            if (!cd.divisible_by_ppow(1))
                throw InvariantViolation("dy-linearization tail not divisible by p");
            Ew.set_coeff(static_cast<std::size_t>(d), cd.div_ppow(1));
        }
        FiberPoly finv_c = FiberPoly::constant(c_, Finv);
        FiberPoly step = Ew.scale(Finv).scale_int(-ctx.p);
        FiberPoly acc = FiberPoly::constant(c_, LocalizedElem::one(c_));
        FiberPoly term = acc;
        for (int j = 1; j <= ctx.n; ++j) {
            term = term * step;
            if (term.is_zero()) break;
            acc = acc + term;
        }
        return finv_c * acc;
    }

private:
    MultiPoly project_base(const MultiPoly& P) const {
        // P has no dotted variables; re-embed into the 2-variable space
        std::vector<std::pair<std::string, MultiPoly>> sub;
        for (const auto& v : P.vars()) {
            bool is_base = std::find(c_->base_vars().begin(), c_->base_vars().end(), v) !=
                           c_->base_vars().end();
            sub.emplace_back(v, is_base ? MultiPoly::variable(c_->base_vars(), v)
                                        : MultiPoly::zero(c_->base_vars()));
        }
        return P.substitute(sub);
    }

    std::vector<FiberPoly> split_by_dy(const MultiPoly& hd) const {
        std::string dxn = dot_name(c_->xname()), dyn = dot_name(c_->yname());
        std::size_t dxi = hd.var_index(dxn), dyi = hd.var_index(dyn);
        std::size_t xi = hd.var_index(c_->xname()), yi = hd.var_index(c_->yname());
        std::vector<std::map<std::uint32_t, MultiPoly>> slices;  // [k][dx-exp] -> base poly
        std::vector<FiberPoly> out;
        for (const auto& [m, coef] : hd.terms()) {
            std::uint32_t k = m[dyi], a = m[dxi];
            while (out.size() <= k) out.emplace_back(c_);
            Mono base{m[xi], m[yi]};
            MultiPoly mono(c_->base_vars());
            mono.add_term(std::move(base), coef);
            LocalizedElem cur = out[k].coeff(a);
            out[k].set_coeff(a, cur + LocalizedElem(c_, mono));
        }
        return out;
    }

    CurvePtr c_;
    FiberPoly r_fiber_;
    std::vector<std::vector<FiberPoly>> h_;  // h_[d-1][k]: dy^k slice of h_d, in dx
};

// True iff fdot(dx=T, dy=psi(T)) vanishes identically at `level`.
inline bool verify_transition(const CurvePtr& curve, const BoundedAut& psi, int level) {
    CurvePtr c = curve->at_level(level);
    JetRelation rel(c);
    FiberPoly val = rel.eval(psi.at_level(level).poly());
    for (int d = 0; d <= val.degree(); ++d)
        if (!val.coeff(static_cast<std::size_t>(d)).is_zero()) return false;
    return true;
}

// The unique mod-p solution dy = -(r + f_x(x^p,y^p) dx)/f_y(x^p,y^p): the
// transition at level 0, which is already affine-linear.
inline BoundedAut transition_mod_p(const CurvePtr& curve) {
    CurvePtr c = curve->at_level(0);
    LocalizedElem F(c, c->fy_frob());
    LocalizedElem Finv = invert_unit(F, fy_frob_witness(c));
    LocalizedElem fx(c, c->fx_frob());
    LocalizedElem fxinv = invert_unit(fx, fx_frob_witness(c));  // chart overlap needs a unit a_1
    LocalizedElem r(c, c->r_part());
    FiberPoly psi(c);
    psi.set_coeff(0, -(r * Finv));
    psi.set_coeff(1, -(fx * Finv));
    return BoundedAut(psi, -(F * fxinv));
}

// One inductive step: given the transition at level n-1, produce it at level
// n by writing dy = A + p^n B and solving the linearized relation
// C + f_y(x^p,y^p) B = 0 mod p.
inline BoundedAut lift_transition(const CurvePtr& curve, const BoundedAut& psi_prev) {
    int n = psi_prev.curve()->ctx().n + 1;
    CurvePtr c = curve->at_level(n);
    JetRelation rel(c);

    BoundedAut A = psi_prev.at_level(n);
    FiberPoly E = rel.eval(A.poly());

    // E = p^n * C with C defined mod p; coefficients beyond degree n+1 must
    // die outright (their valuation exceeds n).
    CurvePtr c0 = c->at_level(0);
    FiberPoly C(c0);
    for (int d = 0; d <= E.degree(); ++d) {
        LocalizedElem ed = E.coeff(static_cast<std::size_t>(d));
        if (ed.is_zero()) continue;
        if (!ed.divisible_by_ppow(n))
            throw RelationViolated("previous-level transition fails mod p^" + std::to_string(n));
        if (d > n + 1) {
            throw RelationViolated("level correction has live coefficient at degree " +
                                   std::to_string(d));
        }
        C.set_coeff(static_cast<std::size_t>(d), ed.div_ppow(n).at_level(0));
    }

    LocalizedElem F0(c0, c0->fy_frob());
    LocalizedElem F0inv = invert_unit(F0, fy_frob_witness(c0));
    FiberPoly B = C.scale(-F0inv);

    FiberPoly next = A.poly();
    Bigint pn = big_pow(Bigint(c->ctx().p), static_cast<unsigned>(n));
    for (int d = 0; d <= B.degree(); ++d) {
        LocalizedElem bd = B.coeff(static_cast<std::size_t>(d));
        if (bd.is_zero()) continue;
        LocalizedElem lifted = LocalizedElem(c, bd.num(), bd.denom_exp()).scale(pn);
        next.set_coeff(static_cast<std::size_t>(d),
                       next.coeff(static_cast<std::size_t>(d)) + lifted);
    }
    BoundedAut psi(next, A.a1_inverse());
    if (!verify_transition(curve, psi, n))
        throw RelationViolated("lifted transition fails its defining relation");
    return psi;
}

// The tower of transitions for levels 0..curve->ctx().n.
inline std::vector<BoundedAut> transition_chain(const CurvePtr& curve) {
    std::vector<BoundedAut> chain;
    chain.push_back(transition_mod_p(curve));
    for (int m = 1; m <= curve->ctx().n; ++m)
        chain.push_back(lift_transition(curve, chain.back()));
    return chain;
}

inline BoundedAut compute_transition(const CurvePtr& curve) {
    return transition_chain(curve).back();
}

// Independent oracle: solve fdot(dx, dy) = 0 for dy by the p-adically
// contracting fixed-point map dy <- -(fdot(dy) - G*dy) * G^{-1} with
// G = d(fdot)/d(dy)(0), starting from the unique mod-p solution.
inline BoundedAut hensel_oracle(const CurvePtr& curve, int level) {
    CurvePtr c = curve->at_level(level);
    int n = level;
    JetRelation rel(c);
    FiberPoly G = rel.dy_linearization();
    FiberPoly Ginv = rel.invert_linearization(G);

    BoundedAut seed = transition_mod_p(curve);
    FiberPoly Y(c);
    for (int d = 0; d <= seed.degree(); ++d) {
        LocalizedElem v = seed.coeff(static_cast<std::size_t>(d));
        Y.set_coeff(static_cast<std::size_t>(d), LocalizedElem(c, v.num(), v.denom_exp()));
    }

    // Coefficients at degree <= n+1 of the update depend only on the same
    // range of Y, so the iterates may be truncated; the last pass is kept
    // whole so the degree bound is verified, not assumed.
    for (int it = 0; it <= n; ++it) {
        FiberPoly val = rel.eval(Y);
        Y = ((G * Y - val) * Ginv).truncated(n + 1);
    }
    FiberPoly last = (G * Y - rel.eval(Y)) * Ginv;
    if (!last.truncated(n + 1).eq(Y))
        throw InvariantViolation("fixed-point iteration did not stabilize");
    for (int d = n + 2; d <= last.degree(); ++d)
        if (!last.coeff(static_cast<std::size_t>(d)).is_zero())
            throw InvariantViolation("oracle solution has live coefficient at degree " +
                                     std::to_string(d));
    BoundedAut psi(last.truncated(n + 1), seed.a1_inverse().at_level(level));
    if (!verify_transition(curve, psi, level))
        throw RelationViolated("oracle output fails the defining relation");
    return psi;
}

// Closed forms for the level-1 transition T -> alpha + beta T + p gamma T^2,
// from the quadratic truncation of the jet relation. The halved second
// partials are integral, so this is valid for every p.
inline BoundedAut base_case_transition(const CurvePtr& curve) {
    CurvePtr c = curve->at_level(1);
    const PrimeLevel& ctx = c->ctx();
    std::int64_t p = ctx.p;

    const MultiPoly& f = c->f_integer();
    auto frob_nf = [&](const MultiPoly& g) { return c->normal_form(g.frobenius_sub(p)); };
    MultiPoly fxy = frob_nf(f.partial(c->xname()).partial(c->yname()));
    MultiPoly halfxx = frob_nf(f.partial(c->xname()).partial(c->xname()).exact_div(2));
    MultiPoly halfyy = frob_nf(f.partial(c->yname()).partial(c->yname()).exact_div(2));

    LocalizedElem F(c, c->fy_frob());
    LocalizedElem Finv = invert_unit(F, fy_frob_witness(c));
    LocalizedElem fx(c, c->fx_frob());
    LocalizedElem fxinv = invert_unit(fx, fx_frob_witness(c));
    LocalizedElem R(c, c->r_part());
    LocalizedElem Fi2 = Finv * Finv, Fi3 = Fi2 * Finv;
    LocalizedElem Exy(c, fxy), Hxx(c, halfxx), Hyy(c, halfyy);

    LocalizedElem alpha = -(R * Finv) - (Hyy * R * R * Fi3).scale(p);
    LocalizedElem beta = -(fx * Finv) + (Exy * R * Fi2).scale(p) - (Hyy * fx * R * Fi3).scale(2 * p);
    LocalizedElem gamma = -(Hxx * Finv) + Exy * fx * Fi2 - Hyy * fx * fx * Fi3;

    FiberPoly psi(c);
    psi.set_coeff(0, alpha);
    psi.set_coeff(1, beta);
    psi.set_coeff(2, gamma.scale(p));
    return BoundedAut(psi, -(F * fxinv));
}

}  // namespace wittjet
