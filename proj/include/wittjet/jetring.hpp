#pragma once

#include <map>
#include <string>
#include <vector>

#include "wittjet/multipoly.hpp"

namespace wittjet {

// Naming convention for the fiber coordinates: x -> dx.
inline std::string dot_name(const std::string& v) { return "d" + v; }

// Jet variable order puts the dotted coordinates first, so graded-lex
// groups terms by dotted degree.
inline std::vector<std::string> jet_vars(const std::vector<std::string>& base) {
    std::vector<std::string> all;
    for (const auto& v : base) all.push_back(dot_name(v));
    for (const auto& v : base) all.push_back(v);
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j)
            if (all[i] == all[j])
                throw PreconditionError("variable '" + all[i] + "' collides with a fiber coordinate name");
    return all;
}

// The universal dotted relation (f(x^p + p*dx, ...) - f^p)/p, exact over Z.
// `f` may be given over the base variables or over the full jet list.
inline MultiPoly jet_polynomial_exact(const MultiPoly& f, const std::vector<std::string>& base,
                                      std::int64_t p) {
    std::vector<std::string> all = jet_vars(base);
    MultiPoly fj = f.vars() == all ? f : f.aligned(all);
    std::vector<std::pair<std::string, MultiPoly>> sub;
    for (const auto& v : all) {
        if (std::find(base.begin(), base.end(), v) != base.end()) {
            MultiPoly img = MultiPoly::variable(all, v).pow(static_cast<unsigned>(p)) +
                            MultiPoly::variable(all, dot_name(v)).scale(p);
            sub.emplace_back(v, std::move(img));
        } else {
            sub.emplace_back(v, MultiPoly::variable(all, v));
        }
    }
    MultiPoly shifted = fj.substitute(sub);
    MultiPoly diff = shifted - fj.pow(static_cast<unsigned>(p));
    return diff.exact_div_p(p);  // divisibility is the Frobenius congruence
}

inline MultiPoly jet_polynomial(const MultiPoly& f, const std::vector<std::string>& base,
                                const PrimeLevel& ctx) {
    return jet_polynomial_exact(f, base, ctx.p).reduce_mod(ctx);
}

// fdot = r + sum_{d>=1} p^{d-1} h_d with h_d homogeneous of degree d in the
// dotted variables; input must be the exact (unreduced) jet polynomial.
struct JetDecomposition {
    MultiPoly r;
    std::vector<MultiPoly> h;  // h[d], d >= 1; h[0] unused (zero)
};

inline JetDecomposition jet_decompose(const MultiPoly& fdot_exact,
                                      const std::vector<std::string>& base, std::int64_t p) {
    std::vector<std::string> dotted;
    for (const auto& v : base) dotted.push_back(dot_name(v));
    std::vector<MultiPoly> parts = fdot_exact.homog_parts(dotted);
    JetDecomposition out{parts[0], {}};
    out.h.push_back(MultiPoly::zero(fdot_exact.vars()));
    for (std::size_t d = 1; d < parts.size(); ++d)
        out.h.push_back(parts[d].exact_div(big_pow(Bigint(p), static_cast<unsigned>(d - 1))));
    // Reassembly is an internal contract of the decomposition.
    MultiPoly back = out.r;
    for (std::size_t d = 1; d < out.h.size(); ++d)
        back += out.h[d].scale(big_pow(Bigint(p), static_cast<unsigned>(d - 1)));
    if (back != fdot_exact) throw InvariantViolation("jet decomposition failed to reassemble");
    return out;
}

// A finitely presented algebra with its first jet presentation.
struct JetPresentation {
    PrimeLevel ctx;
    std::vector<std::string> base_vars;
    std::vector<std::string> all_vars;  // dotted first, then base
    std::vector<MultiPoly> relations;   // aligned to all_vars
    std::vector<MultiPoly> dotted;      // jet polynomials, reduced mod p^{n+1}

    static JetPresentation make(const PrimeLevel& ctx, const std::vector<std::string>& base,
                                const std::vector<MultiPoly>& rels) {
        JetPresentation pres;
        pres.ctx = ctx;
        pres.base_vars = base;
        pres.all_vars = jet_vars(base);
        for (const auto& f : rels) {
            pres.relations.push_back(f.vars() == pres.all_vars ? f : f.aligned(pres.all_vars));
            pres.dotted.push_back(jet_polynomial(f, base, ctx));
        }
        return pres;
    }
};

// delta(1/g) as a truncated series: num / g^{(n+2)p} with
// num = -gdot * sum_{j=0..n} (-p)^j gdot^j g^{(n-j)p}.
struct DotFraction {
    MultiPoly num;       // over jet_vars of g's variables
    MultiPoly den_base;  // g, aligned to the same list
    unsigned den_exp;
};

inline DotFraction localization_inverse_dot(const MultiPoly& g,
                                            const std::vector<std::string>& base,
                                            const PrimeLevel& ctx) {
    std::int64_t p = ctx.p;
    unsigned n = static_cast<unsigned>(ctx.n);
    std::vector<std::string> all = jet_vars(base);
    MultiPoly gj = g.vars() == all ? g : g.aligned(all);
    MultiPoly gdot = jet_polynomial_exact(g, base, p);
    MultiPoly gp = gj.pow(static_cast<unsigned>(p));

    MultiPoly num = MultiPoly::zero(all);
    for (unsigned j = 0; j <= n; ++j) {
        Bigint c = big_pow(Bigint(-p), j);
        num += gdot.pow(j).scale(c) * gp.pow(n - j);
    }
    num = (-gdot * num).reduce_mod(ctx);
    return DotFraction{num, gj, (n + 2) * static_cast<unsigned>(p)};
}

// True iff every dotted relation vanishes after substituting the images for
// the fiber coordinates, modulo the relations and p^{n+1}. Exact for a
// single relation with unit leading coefficient; successive reduction
// otherwise.
inline bool validate_pderivation(const JetPresentation& pres,
                                 const std::map<std::string, MultiPoly>& images) {
    std::vector<std::pair<std::string, MultiPoly>> sub;
    for (const auto& v : pres.all_vars) {
        auto it = images.find(v);
        if (it != images.end()) {
            const MultiPoly& img = it->second;
            if (img.vars() != pres.all_vars)
                throw LevelMismatch("image for '" + v + "' uses a different variable list");
            sub.emplace_back(v, img);
        } else {
            sub.emplace_back(v, MultiPoly::variable(pres.all_vars, v));
        }
    }
    for (const auto& dv : pres.base_vars)
        if (!images.count(dot_name(dv)))
            throw PreconditionError("images must cover fiber coordinate '" + dot_name(dv) + "'");

    // The target ideal is (f, fdot); dotted relations matter only when the
    // substituted value still carries fiber coordinates.
    std::vector<const MultiPoly*> rels;
    for (const auto& r : pres.relations) rels.push_back(&r);
    for (const auto& r : pres.dotted) rels.push_back(&r);

    for (const auto& fd : pres.dotted) {
        MultiPoly val = fd.substitute(sub).reduce_mod(pres.ctx);
        bool changed = true;
        while (changed && !val.is_zero()) {
            changed = false;
            for (const MultiPoly* rel : rels) {
                MultiPoly next = val.reduce_by(*rel, &pres.ctx);
                if (next != val) {
                    val = next;
                    changed = true;
                }
            }
        }
        if (!val.is_zero()) return false;
    }
    return true;
}

}  // namespace wittjet
