#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "wittjet/context.hpp"
#include "wittjet/multipoly.hpp"

namespace wittjet {

// Minimal ring glue so the Witt laws can run over Z, Z/p^{n+1} and Z[vars].
inline Bigint ring_scale(const Bigint& a, const Bigint& c) { return a * c; }
inline Residue ring_scale(const Residue& a, const Bigint& c) { return Residue(a.value() * c, a.ctx()); }
inline MultiPoly ring_scale(const MultiPoly& a, const Bigint& c) { return a.scale(c); }

inline Bigint ring_pow(const Bigint& a, unsigned e) { return big_pow(a, e); }
inline Residue ring_pow(const Residue& a, unsigned e) { return a.pow(Bigint(e)); }
inline MultiPoly ring_pow(const MultiPoly& a, unsigned e) { return a.pow(e); }

inline void check_same_ring(const Bigint&, const Bigint&) {}
inline void check_same_ring(const Residue& a, const Residue& b) {
    if (a.ctx() != b.ctx()) throw MixedContext("Witt components from different contexts");
}
inline void check_same_ring(const MultiPoly& a, const MultiPoly& b) {
    if (a.vars() != b.vars()) throw MixedContext("Witt components over different variable lists");
}

// C_p(a, b) evaluated coefficientwise in the ring R.
template <class R>
R cp_value(std::int64_t p, const R& a, const R& b) {
    check_same_ring(a, b);
    MultiPoly cp = cp_poly(p);
    R acc = ring_scale(a, 0);  // zero of R
    for (const auto& [m, c] : cp.terms())
        acc = acc + ring_scale(ring_pow(a, m[0]) * ring_pow(b, m[1]), c);
    return acc;
}

// Length-two p-typical Witt vector over a coefficient ring R.
template <class R>
struct WittVec2 {
    std::int64_t p;
    R x0, x1;

    bool operator==(const WittVec2& o) const { return p == o.p && x0 == o.x0 && x1 == o.x1; }
};

template <class R>
WittVec2<R> make_witt(std::int64_t p, R x0, R x1) {
    check_same_ring(x0, x1);
    return WittVec2<R>{p, std::move(x0), std::move(x1)};
}

template <class R>
void check_same_witt(const WittVec2<R>& a, const WittVec2<R>& b) {
    if (a.p != b.p) throw MixedContext("Witt vectors with different primes");
    check_same_ring(a.x0, b.x0);
    check_same_ring(a.x1, b.x1);
}

// (x0,x1) + (y0,y1) = (x0+y0, x1+y1+C_p(x0,y0))
template <class R>
WittVec2<R> witt_add(const WittVec2<R>& a, const WittVec2<R>& b) {
    check_same_witt(a, b);
    return {a.p, a.x0 + b.x0, a.x1 + b.x1 + cp_value(a.p, a.x0, b.x0)};
}

// (x0,x1)(y0,y1) = (x0*y0, x0^p*y1 + y0^p*x1 + p*x1*y1)
template <class R>
WittVec2<R> witt_mul(const WittVec2<R>& a, const WittVec2<R>& b) {
    check_same_witt(a, b);
    unsigned p = static_cast<unsigned>(a.p);
    R mixed = ring_pow(a.x0, p) * b.x1 + ring_pow(b.x0, p) * a.x1 +
              ring_scale(a.x1 * b.x1, Bigint(a.p));
    return {a.p, a.x0 * b.x0, mixed};
}

template <class R>
WittVec2<R> witt_neg(const WittVec2<R>& a) {
    // -(x0,x1) solves a + (-a) = 0: first component -x0, second forced.
    R n0 = ring_scale(a.x0, -1);
    R n1 = ring_scale(a.x1 + cp_value(a.p, a.x0, n0), -1);
    return {a.p, n0, n1};
}

// Ghost components (x0, x0^p + p*x1); the verification oracle over
// p-torsion-free rings, where it is a ring map to the product ring.
inline std::pair<Bigint, Bigint> ghost(const WittVec2<Bigint>& a) {
    return {a.x0, big_pow(a.x0, static_cast<unsigned>(a.p)) + a.p * a.x1};
}
inline std::pair<MultiPoly, MultiPoly> ghost(const WittVec2<MultiPoly>& a) {
    return {a.x0, a.x0.pow(static_cast<unsigned>(a.p)) + a.x1.scale(a.p)};
}
inline std::pair<Residue, Residue> ghost(const WittVec2<Residue>&) {
    throw UnsupportedRing("ghost requires a p-torsion-free coefficient ring");
}

// V_p(a) = (0, a); takes the ring's zero from `a` itself.
template <class R>
WittVec2<R> verschiebung(std::int64_t p, const R& a) {
    return {p, ring_scale(a, 0), a};
}

// a |-> (a mod p^n, delta(a)): the section R_n -> W_{p,1}(R_{n-1}).
inline WittVec2<Residue> witt_section(const Residue& a) {
    Residue d = delta_scalar(a);
    return {a.ctx().p, Residue(a.value(), d.ctx()), d};
}

// Exhaustively checks that (x0,x1) |-> x0~^p + p*x1~ mod p^2 (canonical
// lifts) is a ring isomorphism W_{p,1}(F_p) -> Z/p^2.
inline bool wittfp_iso_check(std::int64_t p) {
    PrimeLevel f(p, 0), z2(p, 1);
    auto theta = [&](const WittVec2<Residue>& w) {
        return Residue(mod_pow(w.x0.value(), Bigint(p), z2.modulus) + p * w.x1.value(), z2);
    };
    std::vector<WittVec2<Residue>> all;
    for (std::int64_t i = 0; i < p; ++i)
        for (std::int64_t j = 0; j < p; ++j)
            all.push_back(make_witt(p, Residue(i, f), Residue(j, f)));

    std::vector<bool> hit(static_cast<std::size_t>(p) * static_cast<std::size_t>(p), false);
    for (const auto& w : all) {
        auto v = static_cast<std::size_t>(theta(w).value().convert_to<std::int64_t>());
        if (hit[v]) return false;  // not injective
        hit[v] = true;
    }
    WittVec2<Residue> one = make_witt(p, Residue(1, f), Residue(0, f));
    if (theta(one) != Residue(1, z2)) return false;
    for (const auto& a : all)
        for (const auto& b : all) {
            if (theta(witt_add(a, b)) != theta(a) + theta(b)) return false;
            if (theta(witt_mul(a, b)) != theta(a) * theta(b)) return false;
        }
    return true;
}

}  // namespace wittjet
