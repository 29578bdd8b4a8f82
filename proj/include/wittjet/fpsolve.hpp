#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wittjet/bigint.hpp"

namespace wittjet {

// Dense linear algebra over Z/p^L (L >= 1). Entries are kept as int64
// representatives in [0, p^L); p^L must stay well below 2^31 so products
// fit in int64.
class ModMatrix {
public:
    ModMatrix(std::size_t rows, std::size_t cols, std::int64_t p, int L)
        : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
        mod_ = 1;
        for (int i = 0; i < L; ++i) mod_ *= p;
    }

    std::int64_t& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    std::int64_t at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::int64_t modulus() const { return mod_; }

    void set(std::size_t r, std::size_t c, const Bigint& v) {
        at(r, c) = (v % mod_).convert_to<std::int64_t>() + ((v % mod_) < 0 ? mod_ : 0);
    }

    // Solves A x = b over Z/p^L by echelon reduction with valuation-minimal
    // pivoting (valid over the chain ring Z/p^L). Returns the canonical
    // particular solution, or nullopt when the system is inconsistent.
    std::optional<std::vector<std::int64_t>> solve(std::vector<std::int64_t> b) const {
        std::vector<std::int64_t> work = data_;
        auto entry = [&](std::size_t r, std::size_t c) -> std::int64_t& { return work[r * cols_ + c]; };

        std::vector<std::size_t> pivot_row, pivot_col;
        std::vector<int> pivot_val;
        std::vector<bool> used(rows_, false);

        for (std::size_t c = 0; c < cols_; ++c) {
            // valuation-minimal entry in column c among unused rows
            int best_v = -1;
            std::size_t best_r = 0;
            for (std::size_t r = 0; r < rows_; ++r) {
                if (used[r] || entry(r, c) == 0) continue;
                int v = val(entry(r, c));
                if (best_v < 0 || v < best_v) {
                    best_v = v;
                    best_r = r;
                    if (v == 0) break;
                }
            }
            if (best_v < 0) continue;
            used[best_r] = true;
            pivot_row.push_back(best_r);
            pivot_col.push_back(c);
            pivot_val.push_back(best_v);

            // normalize the pivot row so the pivot becomes p^v
            std::int64_t pv = entry(best_r, c);
            std::int64_t unit = pv / pw(best_v);
            std::int64_t uinv = inv_unit(unit);
            for (std::size_t j = 0; j < cols_; ++j) entry(best_r, j) = mul(entry(best_r, j), uinv);
            b[best_r] = mul(b[best_r], uinv);

            // eliminate the column everywhere else; other entries have
            // valuation >= v by pivot choice within unused rows, and rows
            // already used have pivots in earlier columns.
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == best_r) continue;
                std::int64_t e = entry(r, c);
                if (e == 0) continue;
                if (val(e) < best_v) continue;  // used row with smaller valuation: leave
                std::int64_t q = e / pw(best_v);
                for (std::size_t j = 0; j < cols_; ++j)
                    entry(r, j) = sub(entry(r, j), mul(q, entry(best_r, j)));
                b[r] = sub(b[r], mul(q, b[best_r]));
            }
        }

        // consistency: untouched rows must have zero rhs
        for (std::size_t r = 0; r < rows_; ++r)
            if (!used[r] && b[r] % mod_ != 0) return std::nullopt;

        std::vector<std::int64_t> x(cols_, 0);
        // back substitution in reverse pivot order
        for (std::size_t k = pivot_row.size(); k-- > 0;) {
            std::size_t r = pivot_row[k], c = pivot_col[k];
            std::int64_t rhs = b[r];
            for (std::size_t j = 0; j < cols_; ++j)
                if (j != c && entry(r, j) != 0) rhs = sub(rhs, mul(entry(r, j), x[j]));
            // row reads p^v * x_c = rhs
            if (rhs % pw(pivot_val[k]) != 0) return std::nullopt;
            x[c] = (rhs / pw(pivot_val[k])) % mod_;
            if (x[c] < 0) x[c] += mod_;
        }
        return x;
    }

private:
    std::int64_t pw(int v) const {
        std::int64_t r = 1;
        while (v--) r *= p_;
        return r;
    }
    int val(std::int64_t e) const {
        int v = 0;
        while (e % p_ == 0) {
            e /= p_;
            ++v;
        }
        return v;
    }
    std::int64_t mul(std::int64_t a, std::int64_t b) const { return (a % mod_) * (b % mod_) % mod_; }
    std::int64_t sub(std::int64_t a, std::int64_t b) const {
        std::int64_t r = (a - b) % mod_;
        return r < 0 ? r + mod_ : r;
    }
    std::int64_t inv_unit(std::int64_t u) const {
        return mod_inverse(Bigint(u), Bigint(mod_)).convert_to<std::int64_t>();
    }

    std::size_t rows_, cols_;
    std::int64_t p_, mod_;
    std::vector<std::int64_t> data_;
};

// Dense univariate polynomials over F_p; just enough for the resultant
// certificate.
class FpPoly {
public:
    FpPoly(std::int64_t p) : p_(p) {}
    FpPoly(std::int64_t p, std::vector<std::int64_t> coeffs) : p_(p), c_(std::move(coeffs)) {
        trim();
    }

    static FpPoly zero(std::int64_t p) { return FpPoly(p); }
    static FpPoly constant(std::int64_t p, std::int64_t v) { return FpPoly(p, {v}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    std::int64_t p() const { return p_; }

    FpPoly operator+(const FpPoly& o) const {
        std::vector<std::int64_t> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = (r[i] + o.c_[i]) % p_;
        return FpPoly(p_, std::move(r));
    }
    FpPoly operator-(const FpPoly& o) const {
        std::vector<std::int64_t> r(std::max(c_.size(), o.c_.size()), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] = ((r[i] - o.c_[i]) % p_ + p_) % p_;
        return FpPoly(p_, std::move(r));
    }
    FpPoly operator*(const FpPoly& o) const {
        if (is_zero() || o.is_zero()) return FpPoly(p_);
        std::vector<std::int64_t> r(c_.size() + o.c_.size() - 1, 0);
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j)
                r[i + j] = (r[i + j] + c_[i] * o.c_[j]) % p_;
        return FpPoly(p_, std::move(r));
    }

    // remainder of *this by o (o nonzero)
    FpPoly rem(const FpPoly& o) const {
        FpPoly r = *this;
        std::int64_t lcinv =
            mod_inverse(Bigint(o.c_.back()), Bigint(p_)).convert_to<std::int64_t>();
        while (!r.is_zero() && r.degree() >= o.degree()) {
            std::int64_t q = r.c_.back() * lcinv % p_;
            int shift = r.degree() - o.degree();
            for (std::size_t i = 0; i < o.c_.size(); ++i) {
                auto& t = r.c_[i + static_cast<std::size_t>(shift)];
                t = ((t - q * o.c_[i]) % p_ + p_) % p_;
            }
            r.trim();
        }
        return r;
    }

    // exact quotient (caller guarantees divisibility)
    FpPoly exact_div(const FpPoly& o) const {
        FpPoly r = *this;
        std::vector<std::int64_t> q(is_zero() ? 1 : static_cast<std::size_t>(std::max(0, degree() - o.degree())) + 1, 0);
        std::int64_t lcinv =
            mod_inverse(Bigint(o.c_.back()), Bigint(p_)).convert_to<std::int64_t>();
        while (!r.is_zero() && r.degree() >= o.degree()) {
            std::int64_t qc = r.c_.back() * lcinv % p_;
            int shift = r.degree() - o.degree();
            q[static_cast<std::size_t>(shift)] = qc;
            for (std::size_t i = 0; i < o.c_.size(); ++i) {
                auto& t = r.c_[i + static_cast<std::size_t>(shift)];
                t = ((t - qc * o.c_[i]) % p_ + p_) % p_;
            }
            r.trim();
        }
        if (!r.is_zero()) throw NotDivisible("FpPoly::exact_div: remainder nonzero");
        return FpPoly(p_, std::move(q));
    }

    FpPoly gcd(const FpPoly& o) const {
        FpPoly a = *this, b = o;
        while (!b.is_zero()) {
            FpPoly r = a.rem(b);
            a = b;
            b = r;
        }
        return a;
    }

    bool is_nonzero_constant() const { return c_.size() == 1; }

private:
    void trim() {
        for (auto& v : c_) v = (v % p_ + p_) % p_;
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::int64_t p_;
    std::vector<std::int64_t> c_;
};

// Determinant of a square FpPoly matrix by Bareiss fraction-free elimination
// (divisions are exact over the domain F_p[x]).
inline FpPoly fppoly_det(std::vector<std::vector<FpPoly>> m, std::int64_t p) {
    std::size_t n = m.size();
    if (n == 0) return FpPoly::constant(p, 1);
    FpPoly prev = FpPoly::constant(p, 1);
    std::int64_t sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t s = k + 1;
            while (s < n && m[s][k].is_zero()) ++s;
            if (s == n) return FpPoly::zero(p);
            std::swap(m[k], m[s]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[k][k] * m[i][j] - m[i][k] * m[k][j]).exact_div(prev);
        prev = m[k][k];
    }
    FpPoly det = m[n - 1][n - 1];
    if (sign < 0) det = FpPoly::zero(p) - det;
    return det;
}

}  // namespace wittjet
