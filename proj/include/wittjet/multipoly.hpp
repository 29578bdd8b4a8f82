#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "wittjet/bigint.hpp"
#include "wittjet/context.hpp"
#include "wittjet/errors.hpp"

namespace wittjet {

using Mono = std::vector<std::uint32_t>;

// Descending graded-lex: higher total degree first, lex tiebreak in declared
// variable order. Map iteration order is therefore the canonical print order.
struct GradedLexGreater {
    bool operator()(const Mono& a, const Mono& b) const {
        std::uint64_t da = 0, db = 0;
        for (auto e : a) da += e;
        for (auto e : b) db += e;
        if (da != db) return da > db;
        return a > b;
    }
};

// Sparse exact polynomial over Z in a declared, ordered variable list.
// No zero coefficients are ever stored; equality is structural.
class MultiPoly {
public:
    using TermMap = std::map<Mono, Bigint, GradedLexGreater>;

    MultiPoly() = default;
    explicit MultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

    static MultiPoly zero(std::vector<std::string> vars) { return MultiPoly(std::move(vars)); }

    static MultiPoly constant(std::vector<std::string> vars, Bigint c) {
        MultiPoly r(std::move(vars));
        if (c != 0) r.terms_.emplace(Mono(r.vars_.size(), 0), std::move(c));
        return r;
    }

    static MultiPoly variable(std::vector<std::string> vars, const std::string& name) {
        MultiPoly r(std::move(vars));
        Mono m(r.vars_.size(), 0);
        m[r.var_index(name)] = 1;
        r.terms_.emplace(std::move(m), 1);
        return r;
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    std::size_t var_index(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i] == name) return i;
        throw UnknownVariable("unknown variable '" + name + "'");
    }
    bool has_var(const std::string& name) const {
        return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
    }

    Bigint coeff(const Mono& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Bigint(0) : it->second;
    }
    Bigint constant_term() const { return coeff(Mono(vars_.size(), 0)); }

    void add_term(Mono m, const Bigint& c) {
        if (c == 0) return;
        auto [it, fresh] = terms_.emplace(std::move(m), c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r(vars_);
        for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
        return r;
    }
    MultiPoly operator+(const MultiPoly& o) const {
        check_vars(o);
        MultiPoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, c);
        return r;
    }
    MultiPoly operator-(const MultiPoly& o) const {
        check_vars(o);
        MultiPoly r = *this;
        for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
        return r;
    }
    MultiPoly operator*(const MultiPoly& o) const {
        check_vars(o);
        MultiPoly r(vars_);
        for (const auto& [ma, ca] : terms_) {
            for (const auto& [mb, cb] : o.terms_) {
                Mono m(ma);
                for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
                r.add_term(std::move(m), ca * cb);
            }
        }
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
    MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    bool operator==(const MultiPoly& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }

    MultiPoly scale(const Bigint& c) const {
        MultiPoly r(vars_);
        if (c == 0) return r;
        for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
        return r;
    }

    MultiPoly pow(unsigned e) const {
        MultiPoly r = constant(vars_, 1);
        MultiPoly b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            if (e >>= 1u) b = b * b;
        }
        return r;
    }

    // Simultaneous substitution. The assignment must cover every variable of
    // this polynomial; all images must share one variable list.
    MultiPoly substitute(const std::vector<std::pair<std::string, MultiPoly>>& assignment) const {
        if (assignment.empty()) throw PreconditionError("empty substitution");
        const std::vector<std::string>& tvars = assignment.front().second.vars_;
        std::vector<const MultiPoly*> image(vars_.size(), nullptr);
        for (const auto& [name, img] : assignment) {
            if (img.vars_ != tvars) throw MixedContext("substitution images use differing variable lists");
            image[var_index(name)] = &img;
        }
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (!image[i]) throw UnknownVariable("substitution misses variable '" + vars_[i] + "'");

        // Per-variable power tables.
        std::vector<std::vector<MultiPoly>> powers(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i)
            powers[i].push_back(constant(tvars, 1));

        MultiPoly r(tvars);
        for (const auto& [m, c] : terms_) {
            MultiPoly t = constant(tvars, c);
            for (std::size_t i = 0; i < m.size(); ++i) {
                while (powers[i].size() <= m[i]) powers[i].push_back(powers[i].back() * *image[i]);
                if (m[i]) t = t * powers[i][m[i]];
            }
            r += t;
        }
        return r;
    }

    MultiPoly partial(const std::string& var) const {
        std::size_t i = var_index(var);
        MultiPoly r(vars_);
        for (const auto& [m, c] : terms_) {
            if (m[i] == 0) continue;
            Mono d(m);
            --d[i];
            r.add_term(std::move(d), c * m[i]);
        }
        return r;
    }

    MultiPoly reduce_mod(const PrimeLevel& ctx) const {
        MultiPoly r(vars_);
        for (const auto& [m, c] : terms_) r.add_term(m, mod_reduce(c, ctx.modulus));
        return r;
    }

    bool divisible_by(const Bigint& k) const {
        for (const auto& [m, c] : terms_)
            if (c % k != 0) return false;
        return true;
    }

    MultiPoly exact_div(const Bigint& k) const {
        MultiPoly r(vars_);
        for (const auto& [m, c] : terms_) {
            if (c % k != 0)
                throw NotDivisible("coefficient of " + mono_str(m) + " not divisible by " + k.str());
            r.terms_.emplace(m, c / k);
        }
        return r;
    }
    MultiPoly exact_div_p(std::int64_t p) const { return exact_div(Bigint(p)); }

    // Every variable v -> v^p.
    MultiPoly frobenius_sub(std::int64_t p) const {
        MultiPoly r(vars_);
        for (const auto& [m, c] : terms_) {
            Mono e(m);
            for (auto& x : e) x *= static_cast<std::uint32_t>(p);
            r.terms_.emplace(std::move(e), c);
        }
        return r;
    }

    std::uint32_t degree_in(const std::string& var) const {
        std::size_t i = var_index(var);
        std::uint32_t d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, m[i]);
        return d;
    }
    std::uint64_t total_degree() const {
        std::uint64_t d = 0;
        for (const auto& [m, c] : terms_) {
            std::uint64_t s = 0;
            for (auto e : m) s += e;
            d = std::max(d, s);
        }
        return d;
    }

    // Homogeneous components by total degree in `subset`; index = degree.
    std::vector<MultiPoly> homog_parts(std::span<const std::string> subset) const {
        std::vector<std::size_t> idx;
        for (const auto& v : subset) idx.push_back(var_index(v));
        std::vector<MultiPoly> parts;
        for (const auto& [m, c] : terms_) {
            std::uint64_t d = 0;
            for (auto i : idx) d += m[i];
            while (parts.size() <= d) parts.emplace_back(vars_);
            parts[d].add_term(m, c);
        }
        if (parts.empty()) parts.emplace_back(vars_);
        return parts;
    }

    // Re-embed into a superset variable list (positions may change).
    MultiPoly aligned(const std::vector<std::string>& newvars) const {
        std::vector<std::size_t> pos;
        pos.reserve(vars_.size());
        for (const auto& v : vars_) {
            auto it = std::find(newvars.begin(), newvars.end(), v);
            if (it == newvars.end())
                throw UnknownVariable("aligned: target lacks variable '" + v + "'");
            pos.push_back(static_cast<std::size_t>(it - newvars.begin()));
        }
        MultiPoly r(newvars);
        for (const auto& [m, c] : terms_) {
            Mono e(newvars.size(), 0);
            for (std::size_t i = 0; i < m.size(); ++i) e[pos[i]] = m[i];
            r.terms_.emplace(std::move(e), c);
        }
        return r;
    }

    MultiPoly renamed(const std::vector<std::pair<std::string, std::string>>& map) const {
        std::vector<std::string> nv = vars_;
        for (auto& v : nv)
            for (const auto& [from, to] : map)
                if (v == from) {
                    v = to;
                    break;
                }
        MultiPoly r(std::move(nv));
        r.terms_ = terms_;
        return r;
    }

    // Remainder of division by `rel` treated as monic in `var` (unit leading
    // coefficient required); the remainder has var-degree < deg_var(rel).
    // Coefficients are reduced mod p^{n+1} when a context is supplied.
    MultiPoly divrem_in_var(const MultiPoly& rel, const std::string& var, const PrimeLevel* ctx) const {
        check_vars(rel);
        std::size_t vi = var_index(var);
        std::uint32_t d = rel.degree_in(var);
        if (d == 0) throw PreconditionError("relation has degree 0 in '" + var + "'");

        // Leading coefficient in var must be a unit (constant, invertible).
        MultiPoly lead(vars_);
        for (const auto& [m, c] : rel.terms_)
            if (m[vi] == d) {
                Mono e(m);
                e[vi] = 0;
                lead.add_term(std::move(e), c);
            }
        Bigint lc;
        {
            Mono zero(vars_.size(), 0);
            if (lead.term_count() != 1 || lead.terms_.begin()->first != zero)
                throw NonMonic("relation is not monic in '" + var + "' (non-constant leading coefficient)");
            lc = lead.constant_term();
        }
        Bigint lcinv;
        if (lc == 1) lcinv = 1;
        else if (lc == -1) lcinv = -1;
        else if (ctx) lcinv = mod_inverse(lc, ctx->modulus);
        else throw NonMonic("relation leading coefficient " + lc.str() + " is not a unit over Z");

        MultiPoly rem = ctx ? reduce_mod(*ctx) : *this;
        for (;;) {
            // Highest var-degree term still >= d.
            const Mono* top = nullptr;
            for (const auto& [m, c] : rem.terms_)
                if (m[vi] >= d && (!top || m[vi] > (*top)[vi])) top = &m;
            if (!top) break;
            std::uint32_t t = (*top)[vi];
            // Collect the full var-degree-t slice as the cofactor.
            MultiPoly slice(vars_);
            for (const auto& [m, c] : rem.terms_)
                if (m[vi] == t) {
                    Mono e(m);
                    e[vi] = t - d;
                    slice.add_term(std::move(e), c);
                }
            rem -= slice.scale(lcinv) * rel;
            if (ctx) rem = rem.reduce_mod(*ctx);
        }
        return rem;
    }

    // Remainder under graded-lex division by `rel`; requires rel's leading
    // coefficient to be a unit. Exact membership test for a single relation.
    MultiPoly reduce_by(const MultiPoly& rel, const PrimeLevel* ctx) const {
        check_vars(rel);
        if (rel.is_zero()) throw PreconditionError("cannot reduce by the zero relation");
        const Mono& lmono = rel.terms_.begin()->first;
        const Bigint& lc = rel.terms_.begin()->second;
        Bigint lcinv;
        if (lc == 1) lcinv = 1;
        else if (lc == -1) lcinv = -1;
        else if (ctx) lcinv = mod_inverse(lc, ctx->modulus);
        else throw NonMonic("relation leading coefficient " + lc.str() + " is not a unit over Z");

        MultiPoly rem = ctx ? reduce_mod(*ctx) : *this;
        for (;;) {
            const Mono* hit = nullptr;
            const Bigint* hc = nullptr;
            for (const auto& [m, c] : rem.terms_) {
                bool div = true;
                for (std::size_t i = 0; i < m.size(); ++i)
                    if (m[i] < lmono[i]) {
                        div = false;
                        break;
                    }
                if (div) {
                    hit = &m;
                    hc = &c;
                    break;  // map order: largest reducible first
                }
            }
            if (!hit) break;
            Mono q(*hit);
            for (std::size_t i = 0; i < q.size(); ++i) q[i] -= lmono[i];
            MultiPoly t(vars_);
            t.add_term(std::move(q), *hc * lcinv);
            rem -= t * rel;
            if (ctx) rem = rem.reduce_mod(*ctx);
        }
        return rem;
    }

    std::string mono_str(const Mono& m) const {
        std::string s;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!s.empty()) s += "*";
            s += vars_[i];
            if (m[i] > 1) s += "^" + std::to_string(m[i]);
        }
        return s;
    }

    // Canonical text: descending graded-lex, explicit `*` and `^`.
    std::string str() const {
        if (terms_.empty()) return "0";
        std::ostringstream out;
        bool first = true;
        for (const auto& [m, c] : terms_) {
            Bigint a = c;
            if (first) {
                if (a < 0) {
                    out << "-";
                    a = -a;
                }
            } else {
                out << (a < 0 ? " - " : " + ");
                if (a < 0) a = -a;
            }
            std::string ms = mono_str(m);
            if (ms.empty()) {
                out << a.str();
            } else {
                if (a != 1) out << a.str() << "*";
                out << ms;
            }
            first = false;
        }
        return out.str();
    }

private:
    void check_vars(const MultiPoly& o) const {
        if (vars_ != o.vars_) throw MixedContext("polynomials use differing variable lists");
    }

    std::vector<std::string> vars_;
    TermMap terms_;
};

// C_p(S,T) = (S^p + T^p - (S+T)^p)/p, the universal additivity correction.
inline MultiPoly cp_poly(std::int64_t p) {
    if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
        throw BadPrime("cp_poly: p = " + std::to_string(p) + " is not prime");
    MultiPoly r({"S", "T"});
    for (std::uint32_t k = 1; k < static_cast<std::uint32_t>(p); ++k) {
        Bigint c = -binomial(static_cast<unsigned>(p), k) / p;
        r.add_term(Mono{k, static_cast<std::uint32_t>(p) - k}, c);
    }
    return r;
}

// C_p evaluated at two polynomials in their common variable space.
inline MultiPoly cp_eval(std::int64_t p, const MultiPoly& a, const MultiPoly& b) {
    MultiPoly cp = cp_poly(p);
    return cp.substitute({{"S", a}, {"T", b}});
}

}  // namespace wittjet
