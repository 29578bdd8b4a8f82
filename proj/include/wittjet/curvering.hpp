#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "wittjet/fpsolve.hpp"
#include "wittjet/jetring.hpp"
#include "wittjet/multipoly.hpp"

namespace wittjet {

// The coordinate ring of an affine plane curve V(f), f monic in y, localized
// at f_x*f_y and truncated at a fixed p-level. Immutable after construction;
// share via shared_ptr.
class PlaneCurve : public std::enable_shared_from_this<PlaneCurve> {
public:
    static std::shared_ptr<const PlaneCurve> make(const PrimeLevel& ctx, const MultiPoly& f,
                                                  std::vector<std::string> base = {"x", "y"}) {
        return std::shared_ptr<const PlaneCurve>(new PlaneCurve(ctx, f, std::move(base)));
    }

    const PrimeLevel& ctx() const { return ctx_; }
    const std::vector<std::string>& base_vars() const { return base_; }
    const std::string& xname() const { return base_[0]; }
    const std::string& yname() const { return base_[1]; }
    const MultiPoly& f() const { return f_; }
    // The integer lift defining the curve. Jet data depends on this lift,
    // not just on f mod p^{n+1}, so jet computation must start here.
    const MultiPoly& f_integer() const { return f_raw_; }
    const MultiPoly& fx() const { return fx_; }
    const MultiPoly& fy() const { return fy_; }
    const MultiPoly& denom() const { return denom_; }  // f_x * f_y, normal form
    std::uint32_t ydeg() const { return ydeg_; }

    // f, f_x, f_y evaluated at (x^p, y^p), in normal form.
    const MultiPoly& f_frob() const { return f_frob_; }
    const MultiPoly& fx_frob() const { return fx_frob_; }
    const MultiPoly& fy_frob() const { return fy_frob_; }
    // r = (f(x^p,y^p) - f^p)/p, normal form mod p^{n+1}
    const MultiPoly& r_part() const { return r_; }

    bool coverage_certified() const { return coverage_ok_; }
    const std::string& coverage_note() const { return coverage_note_; }

    // Unique remainder of division by f as a monic polynomial in y,
    // coefficients reduced mod p^{n+1}; idempotent.
    MultiPoly normal_form(const MultiPoly& P) const {
        return P.divrem_in_var(f_, yname(), &ctx_);
    }

    std::shared_ptr<const PlaneCurve> at_level(int m) const {
        if (m == ctx_.n) return shared_from_this();
        std::lock_guard<std::mutex> lock(mu_);
        auto it = level_cache_.find(m);
        if (it != level_cache_.end()) return it->second;
        auto c = make(ctx_.at_level(m), f_raw_, base_);
        level_cache_.emplace(m, c);
        return c;
    }

    bool same_ring(const PlaneCurve& o) const {
        return ctx_ == o.ctx_ && base_ == o.base_ && f_ == o.f_;
    }

    // Cached normal-form powers of f_x*f_y (thread-safe memo).
    MultiPoly denom_pow(unsigned k) const {
        std::lock_guard<std::mutex> lock(mu_);
        while (denom_pows_.size() <= k)
            denom_pows_.push_back(nf_mul_impl(denom_pows_.back(), denom_));
        return denom_pows_[k];
    }

    // Normal form of a product, through a dense int64 engine when the
    // modulus allows (the generic route otherwise).
    MultiPoly nf_mul(const MultiPoly& a, const MultiPoly& b) const { return nf_mul_impl(a, b); }

private:
    // Dense coefficient slices: rows[j] holds the x-coefficients of y^j.
    struct Dense {
        std::vector<std::vector<std::int64_t>> rows;
    };

    bool dense_usable() const { return ctx_.modulus < (Bigint(1) << 30); }

    Dense to_dense(const MultiPoly& P) const {
        Dense d;
        std::size_t xi = P.var_index(xname()), yi = P.var_index(yname());
        for (const auto& [m, c] : P.terms()) {
            if (d.rows.size() <= m[yi]) d.rows.resize(m[yi] + 1);
            auto& row = d.rows[m[yi]];
            if (row.size() <= m[xi]) row.resize(m[xi] + 1, 0);
            std::int64_t v = (c % mod64_).convert_to<std::int64_t>();
            row[m[xi]] = v < 0 ? v + mod64i_ : v;
        }
        return d;
    }

    MultiPoly from_dense(const Dense& d) const {
        MultiPoly r(base_);
        for (std::size_t j = 0; j < d.rows.size(); ++j)
            for (std::size_t i = 0; i < d.rows[j].size(); ++i)
                if (d.rows[j][i] != 0)
                    r.add_term(Mono{static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)},
                               Bigint(d.rows[j][i]));
        return r;
    }

    void dense_axpy(std::vector<std::int64_t>& dst, const std::vector<std::int64_t>& a,
                    std::int64_t scale, const std::vector<std::int64_t>& b) const {
        // dst += scale * conv(a, b)
        if (a.empty() || b.empty() || scale == 0) return;
        if (dst.size() < a.size() + b.size() - 1) dst.resize(a.size() + b.size() - 1, 0);
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (a[i] == 0) continue;
            std::int64_t ai = a[i] * scale % mod64i_;
            if (ai < 0) ai += mod64i_;
            if (ai == 0) continue;
            for (std::size_t j = 0; j < b.size(); ++j) {
                if (b[j] == 0) continue;
                dst[i + j] = (dst[i + j] + ai * b[j]) % mod64i_;
            }
        }
    }

    // y-reduction by the monic relation: y^d = -sum_j c_j(x) y^j.
    void dense_reduce(Dense& d) const {
        std::uint32_t deg = ydeg_;
        while (d.rows.size() > deg) {
            std::size_t t = d.rows.size() - 1;
            std::vector<std::int64_t> top = std::move(d.rows[t]);
            d.rows.pop_back();
            bool live = false;
            for (auto v : top)
                if (v != 0) {
                    live = true;
                    break;
                }
            if (!live) continue;
            for (std::uint32_t j = 0; j < deg; ++j) {
                if (fdense_[j].empty()) continue;
                dense_axpy(d.rows[t - deg + j], top, -1, fdense_[j]);
            }
        }
    }

    MultiPoly nf_mul_impl(const MultiPoly& a, const MultiPoly& b) const {
        if (!dense_usable()) return normal_form(a * b);
        Dense da = to_dense(a), db = to_dense(b);
        Dense prod;
        if (!da.rows.empty() && !db.rows.empty()) {
            prod.rows.resize(da.rows.size() + db.rows.size() - 1);
            for (std::size_t i = 0; i < da.rows.size(); ++i)
                for (std::size_t j = 0; j < db.rows.size(); ++j)
                    dense_axpy(prod.rows[i + j], da.rows[i], 1, db.rows[j]);
        }
        dense_reduce(prod);
        return from_dense(prod);
    }

    PlaneCurve(const PrimeLevel& ctx, const MultiPoly& f, std::vector<std::string> base)
        : ctx_(ctx), base_(std::move(base)) {
        if (base_.size() != 2) throw PreconditionError("plane curve needs exactly two variables");
        f_raw_ = f.vars() == base_ ? f : f.aligned(base_);
        ydeg_ = f_raw_.degree_in(yname());
        if (ydeg_ < 1) throw NonMonic("curve polynomial has y-degree 0");
        // leading y-coefficient must be the constant 1
        MultiPoly lead(base_);
        std::size_t yi = f_raw_.var_index(yname());
        for (const auto& [m, c] : f_raw_.terms())
            if (m[yi] == ydeg_) {
                Mono e(m);
                e[yi] = 0;
                lead.add_term(std::move(e), c);
            }
        if (!(lead == MultiPoly::constant(base_, 1)))
            throw NonMonic("curve polynomial is not monic in '" + yname() + "'");

        f_ = f_raw_.reduce_mod(ctx_);
        fx_ = f_raw_.partial(xname()).reduce_mod(ctx_);
        fy_ = f_raw_.partial(yname()).reduce_mod(ctx_);
        if (fx_.is_zero() && fy_.is_zero())
            throw NotAUnit("both partial derivatives vanish mod p^{n+1}");

        mod64_ = ctx_.modulus;
        mod64i_ = dense_usable() ? ctx_.modulus.convert_to<std::int64_t>() : 0;
        if (dense_usable()) {
            Dense df = to_dense(f_);
            fdense_.assign(ydeg_, {});
            for (std::size_t j = 0; j < ydeg_ && j < df.rows.size(); ++j) fdense_[j] = df.rows[j];
        }
        denom_ = nf_mul_impl(fx_, fy_);

        unsigned p = static_cast<unsigned>(ctx_.p);
        f_frob_ = normal_form(f_raw_.frobenius_sub(ctx_.p));
        fx_frob_ = normal_form(f_raw_.partial(xname()).frobenius_sub(ctx_.p));
        fy_frob_ = normal_form(f_raw_.partial(yname()).frobenius_sub(ctx_.p));
        MultiPoly rnum = f_raw_.frobenius_sub(ctx_.p) - f_raw_.pow(p);
        r_ = normal_form(rnum.exact_div_p(ctx_.p));

        denom_pows_.push_back(MultiPoly::constant(base_, 1));
        run_coverage_certificate();
    }

    // Advisory smoothness/coverage certificate: gcd of Res_y(f, f_x) and
    // Res_y(f, f_y) over F_p must be a nonzero constant. Sufficient, not
    // necessary; failure is a warning recorded on the curve.
    void run_coverage_certificate() {
        std::int64_t p = ctx_.p;
        MultiPoly f0 = f_raw_.reduce_mod(PrimeLevel(p, 0));
        MultiPoly fx0 = f_raw_.partial(xname()).reduce_mod(PrimeLevel(p, 0));
        MultiPoly fy0 = f_raw_.partial(yname()).reduce_mod(PrimeLevel(p, 0));
        if (fx0.is_zero() || fy0.is_zero()) {
            coverage_ok_ = false;
            coverage_note_ = "a partial derivative vanishes identically mod p";
            return;
        }
        FpPoly r1 = resultant_y(f0, fx0);
        FpPoly r2 = resultant_y(f0, fy0);
        if (r1.is_zero() || r2.is_zero()) {
            coverage_ok_ = false;
            coverage_note_ = "resultant vanishes; certificate inconclusive";
            return;
        }
        FpPoly g = r1.gcd(r2);
        coverage_ok_ = g.is_nonzero_constant();
        coverage_note_ = coverage_ok_ ? "resultant certificate holds"
                                      : "resultants share a common factor; certificate inconclusive";
    }

    FpPoly coeff_fp(const MultiPoly& P, std::uint32_t j) const {
        // coefficient of y^j as an FpPoly in x
        std::size_t yi = P.var_index(yname());
        std::size_t xi = P.var_index(xname());
        std::vector<std::int64_t> c;
        for (const auto& [m, v] : P.terms()) {
            if (m[yi] != j) continue;
            if (c.size() <= m[xi]) c.resize(m[xi] + 1, 0);
            c[m[xi]] = (v % ctx_.p).convert_to<std::int64_t>();
        }
        return FpPoly(ctx_.p, std::move(c));
    }

    FpPoly resultant_y(const MultiPoly& A, const MultiPoly& B) const {
        std::int64_t p = ctx_.p;
        std::uint32_t m = A.degree_in(yname()), n = B.degree_in(yname());
        if (m == 0 && n == 0) return FpPoly::constant(p, 1);
        if (n == 0) {
            FpPoly b = coeff_fp(B, 0), r = FpPoly::constant(p, 1);
            for (std::uint32_t i = 0; i < m; ++i) r = r * b;
            return r;
        }
        if (m == 0) {
            FpPoly a = coeff_fp(A, 0), r = FpPoly::constant(p, 1);
            for (std::uint32_t i = 0; i < n; ++i) r = r * a;
            return r;
        }
        std::size_t size = m + n;
        std::vector<std::vector<FpPoly>> s(size, std::vector<FpPoly>(size, FpPoly::zero(p)));
        for (std::uint32_t row = 0; row < n; ++row)
            for (std::uint32_t j = 0; j <= m; ++j) s[row][row + j] = coeff_fp(A, m - j);
        for (std::uint32_t row = 0; row < m; ++row)
            for (std::uint32_t j = 0; j <= n; ++j) s[n + row][row + j] = coeff_fp(B, n - j);
        return fppoly_det(std::move(s), p);
    }

    PrimeLevel ctx_;
    std::vector<std::string> base_;
    Bigint mod64_;
    std::int64_t mod64i_ = 0;
    std::vector<std::vector<std::int64_t>> fdense_;  // y^j slices of f below the lead
    MultiPoly f_raw_;  // integer coefficients, pre-reduction
    MultiPoly f_, fx_, fy_, denom_;
    MultiPoly f_frob_, fx_frob_, fy_frob_, r_;
    std::uint32_t ydeg_ = 0;
    bool coverage_ok_ = false;
    std::string coverage_note_;
    mutable std::mutex mu_;
    mutable std::vector<MultiPoly> denom_pows_;
    mutable std::map<int, std::shared_ptr<const PlaneCurve>> level_cache_;
};

using CurvePtr = std::shared_ptr<const PlaneCurve>;

// Element num/(f_x*f_y)^k of the localized coordinate ring, with num in
// y-normal form reduced mod p^{n+1}. Denominator exponents are not
// normalized; equality is by cross-multiplication (faithful since f_x*f_y is
// invertible in this ring).
class LocalizedElem {
public:
    LocalizedElem() = default;
    LocalizedElem(CurvePtr curve, const MultiPoly& num, unsigned k = 0)
        : c_(std::move(curve)), num_(c_->normal_form(num)), k_(k) {}

    static LocalizedElem constant(CurvePtr curve, const Bigint& v) {
        return LocalizedElem(curve, MultiPoly::constant(curve->base_vars(), v));
    }
    static LocalizedElem zero(CurvePtr curve) { return constant(std::move(curve), 0); }
    static LocalizedElem one(CurvePtr curve) { return constant(std::move(curve), 1); }
    static LocalizedElem coordinate(CurvePtr curve, const std::string& name) {
        return LocalizedElem(curve, MultiPoly::variable(curve->base_vars(), name));
    }

    const CurvePtr& curve() const { return c_; }
    const MultiPoly& num() const { return num_; }
    unsigned denom_exp() const { return k_; }
    bool is_zero() const { return num_.is_zero(); }

    LocalizedElem operator+(const LocalizedElem& o) const {
        check(o);
        unsigned k = std::max(k_, o.k_);
        MultiPoly n = shifted_num(k) + o.shifted_num_on(c_, k);
        return LocalizedElem(c_, n, k);
    }
    LocalizedElem operator-(const LocalizedElem& o) const { return *this + (-o); }
    LocalizedElem operator-() const {
        LocalizedElem r = *this;
        r.num_ = (-r.num_).reduce_mod(c_->ctx());
        return r;
    }
    LocalizedElem operator*(const LocalizedElem& o) const {
        check(o);
        LocalizedElem r;
        r.c_ = c_;
        r.num_ = c_->nf_mul(num_, o.num_);
        r.k_ = k_ + o.k_;
        return r;
    }
    LocalizedElem scale(const Bigint& v) const { return LocalizedElem(c_, num_.scale(v), k_); }
    LocalizedElem pow(unsigned e) const {
        LocalizedElem r = one(c_), b = *this;
        while (e) {
            if (e & 1u) r = r * b;
            if (e >>= 1u) b = b * b;
        }
        return r;
    }

    bool eq(const LocalizedElem& o) const {
        check(o);
        unsigned k = std::max(k_, o.k_);
        MultiPoly d = shifted_num(k) - o.shifted_num_on(c_, k);
        return c_->normal_form(d).is_zero();
    }

    // p-divisibility and exact division on the canonical numerator.
    bool divisible_by_ppow(int e) const {
        return num_.divisible_by(big_pow(Bigint(c_->ctx().p), static_cast<unsigned>(e)));
    }
    LocalizedElem div_ppow(int e) const {
        // exact on the representative; the result is canonical only modulo
        // p^{n+1-e}, so callers usually reduce the level afterwards
        MultiPoly q = num_.exact_div(big_pow(Bigint(c_->ctx().p), static_cast<unsigned>(e)));
        return LocalizedElem(c_, q, k_);
    }
    int num_valuation() const {
        if (num_.is_zero()) return c_->ctx().n + 1;
        int v = c_->ctx().n + 1;
        for (const auto& [m, coef] : num_.terms())
            v = std::min(v, p_valuation(coef, c_->ctx().p, c_->ctx().n + 1));
        return v;
    }

    LocalizedElem at_level(int m) const {
        return LocalizedElem(c_->at_level(m), num_, k_);
    }

    // Multiplies numerator and denominator by (f_x*f_y)^j.
    LocalizedElem with_denom_exp(unsigned k) const {
        if (k < k_) throw PreconditionError("cannot lower denominator exponent");
        return LocalizedElem(c_, shifted_num(k), k);
    }

    std::string str() const {
        if (k_ == 0) return num_.str();
        return "(" + num_.str() + ")/(fx*fy)^" + std::to_string(k_);
    }

private:
    void check(const LocalizedElem& o) const {
        if (!c_ || !o.c_) throw MixedCurve("uninitialized localized element");
        if (c_ != o.c_ && !c_->same_ring(*o.c_))
            throw MixedCurve("localized elements over different curves or levels");
    }

    MultiPoly shifted_num(unsigned k) const {
        return k == k_ ? num_ : c_->nf_mul(num_, c_->denom_pow(k - k_));
    }
    // Same, but computed with another (ring-equal) curve's caches.
    MultiPoly shifted_num_on(const CurvePtr& c, unsigned k) const {
        return k == k_ ? num_ : c->nf_mul(num_, c->denom_pow(k - k_));
    }

    CurvePtr c_;
    MultiPoly num_;
    unsigned k_ = 0;
};

// A function known to be regular on one chart: num / g^e with g = f_y on
// chart 1 (= D(f_y)) and g = f_x on chart 2 (= D(f_x)).
struct ChartFn {
    int chart = 1;  // 1 or 2
    MultiPoly num;
    unsigned e = 0;

    LocalizedElem to_localized(const CurvePtr& curve) const {
        const MultiPoly& other = chart == 1 ? curve->fx() : curve->fy();
        MultiPoly n = curve->normal_form(num);
        for (unsigned i = 0; i < e; ++i) n = curve->nf_mul(n, other);
        return LocalizedElem(curve, n, e);
    }
};

// Inverts u given a witness v0 for the inverse of u mod p:
// u*v0 = 1 + p*E, so u^{-1} = v0 * sum_{j<=n} (-p*E)^j. Post-checked.
inline LocalizedElem invert_unit(const LocalizedElem& u, const LocalizedElem& v0) {
    const CurvePtr& c = u.curve();
    const PrimeLevel& ctx = c->ctx();
    LocalizedElem w = u * v0 - LocalizedElem::one(c);
    if (!w.divisible_by_ppow(1))
        throw NotAUnit("invert_unit: witness fails mod p");
    LocalizedElem E = w.div_ppow(1);
    LocalizedElem acc = LocalizedElem::one(c);
    LocalizedElem pe = E.scale(-ctx.p);
    LocalizedElem term = LocalizedElem::one(c);
    for (int j = 1; j <= ctx.n; ++j) {
        term = term * pe;
        if (term.is_zero()) break;
        acc = acc + term;
    }
    LocalizedElem v = v0 * acc;
    if (!(u * v).eq(LocalizedElem::one(c)))
        throw InvariantViolation("invert_unit post-check failed");
    return v;
}

// Inverse witness mod p for f_y(x^p, y^p): since f_y(x^p,y^p) = f_y^p mod p,
// take f_x^p/(f_x f_y)^p.
inline LocalizedElem fy_frob_witness(const CurvePtr& c) {
    unsigned p = static_cast<unsigned>(c->ctx().p);
    return LocalizedElem(c, c->fx().pow(p), p);
}
inline LocalizedElem fx_frob_witness(const CurvePtr& c) {
    unsigned p = static_cast<unsigned>(c->ctx().p);
    return LocalizedElem(c, c->fy().pow(p), p);
}

}  // namespace wittjet
