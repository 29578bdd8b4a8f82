#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

#include "wittjet/errors.hpp"

namespace wittjet {

using Bigint = boost::multiprecision::cpp_int;

inline Bigint big_pow(const Bigint& base, unsigned e) {
    Bigint r = 1, b = base;
    while (e) {
        if (e & 1u) r *= b;
        b *= b;
        e >>= 1u;
    }
    return r;
}

// Least nonnegative representative.
inline Bigint mod_reduce(const Bigint& a, const Bigint& m) {
    Bigint r = a % m;
    if (r < 0) r += m;
    return r;
}

inline Bigint mod_pow(const Bigint& base, const Bigint& e, const Bigint& m) {
    return boost::multiprecision::powm(mod_reduce(base, m), e, m);
}

// Inverse mod m via extended Euclid; throws NotAUnit when gcd != 1.
inline Bigint mod_inverse(const Bigint& a, const Bigint& m) {
    Bigint r0 = m, r1 = mod_reduce(a, m), s0 = 0, s1 = 1;
    while (r1 != 0) {
        Bigint q = r0 / r1;
        Bigint r2 = r0 - q * r1;
        Bigint s2 = s0 - q * s1;
        r0 = r1; r1 = r2;
        s0 = s1; s1 = s2;
    }
    if (r0 != 1) throw NotAUnit("element not invertible modulo given modulus");
    return mod_reduce(s0, m);
}

inline Bigint binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    Bigint r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

// p-adic valuation of a nonzero integer; `cap` is returned for zero.
inline int p_valuation(const Bigint& a, std::int64_t p, int cap) {
    if (a == 0) return cap;
    Bigint v = a;
    int e = 0;
    while (e < cap && v % p == 0) {
        v /= p;
        ++e;
    }
    return e;
}

inline bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    auto mulmod = [](std::uint64_t a, std::uint64_t b, std::uint64_t m) -> std::uint64_t {
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
    };
    auto powmod = [&](std::uint64_t a, std::uint64_t e, std::uint64_t m) {
        std::uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1u) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1u;
        }
        return r;
    };
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1u) == 0) {
        d >>= 1u;
        ++s;
    }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

}  // namespace wittjet
