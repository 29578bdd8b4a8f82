#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "wittjet/context.hpp"
#include "wittjet/multipoly.hpp"
#include "wittjet/witt.hpp"

using namespace wittjet;

TEST_CASE("prime level construction") {
    PrimeLevel c(3, 2);
    CHECK(c.modulus == 27);
    CHECK_THROWS_AS(PrimeLevel(4, 1), BadPrime);
    CHECK_THROWS_AS(PrimeLevel(1, 0), BadPrime);
    CHECK_NOTHROW(PrimeLevel(7919, 0));
}

TEST_CASE("residue canonical representatives") {
    PrimeLevel c(5, 1);
    Residue a(Bigint(-3), c);
    CHECK(a.value() == 22);
    CHECK((a + Residue(3, c)).is_zero());
    CHECK_THROWS_AS(a + Residue(1, PrimeLevel(5, 2)), MixedContext);
}

TEST_CASE("div_p") {
    // 3/3 = 1 at (p=3, n=2 -> 1)
    CHECK(div_p(Residue(3, PrimeLevel(3, 2))) == Residue(1, PrimeLevel(3, 1)));
    CHECK(div_p(Residue(0, PrimeLevel(3, 2))) == Residue(0, PrimeLevel(3, 1)));
    // oracle: plain integer division, 50/5 = 10 mod 125
    CHECK(div_p(Residue(50, PrimeLevel(5, 3))) == Residue(10, PrimeLevel(5, 2)));
    CHECK_THROWS_AS(div_p(Residue(1, PrimeLevel(3, 2))), NotDivisible);
    CHECK_THROWS_AS(div_p(Residue(0, PrimeLevel(3, 0))), LevelUnderflow);
}

TEST_CASE("cp_poly small primes") {
    CHECK(cp_poly(2).str() == "-S*T");
    CHECK(cp_poly(3).str() == "-S^2*T - S*T^2");
    // coefficient of S^4*T at p=5 equals -binom(5,4)/5 = -1
    CHECK(cp_poly(5).coeff(Mono{4, 1}) == -1);
    // C_p(S,0) = 0 and total degree p
    for (std::int64_t p : {2, 3, 5, 7}) {
        MultiPoly cp = cp_poly(p);
        CHECK(cp.total_degree() == static_cast<std::uint64_t>(p));
        auto at_zero = cp.substitute({{"S", MultiPoly::variable({"S", "T"}, "S")},
                                      {"T", MultiPoly::zero({"S", "T"})}});
        CHECK(at_zero.is_zero());
    }
}

TEST_CASE("delta_scalar examples") {
    PrimeLevel c32(3, 2);
    CHECK(delta_scalar(Residue(1, c32)).is_zero());
    // (2 - 8)/3 = -2 = 7 mod 9
    CHECK(delta_scalar(Residue(2, c32)) == Residue(7, PrimeLevel(3, 1)));
    // delta(p) = p^0 * unit: (3 - 27)/3 = -8 = 1 mod 9
    Residue d3 = delta_scalar(Residue(3, c32));
    CHECK(d3 == Residue(1, PrimeLevel(3, 1)));
    CHECK(d3.valuation() == 0);
}

TEST_CASE("delta axioms on random samples") {
    std::mt19937_64 rng(20260811);
    for (std::int64_t p : {2, 3, 5, 7}) {
        for (int n = 1; n <= 4; ++n) {
            PrimeLevel c(p, n);
            PrimeLevel low(p, n - 1);
            for (int t = 0; t < 50; ++t) {
                Residue a(Bigint(rng() % 1000000), c);
                Residue b(Bigint(rng() % 1000000), c);
                Residue lhs_sum = delta_scalar(a + b);
                Residue cp = cp_value(p, Residue(a.value(), low), Residue(b.value(), low));
                CHECK(lhs_sum == delta_scalar(a) + delta_scalar(b) + cp);

                Residue da = delta_scalar(a), db = delta_scalar(b);
                Residue ap(mod_pow(a.value(), Bigint(p), low.modulus), low);
                Residue bp(mod_pow(b.value(), Bigint(p), low.modulus), low);
                Residue lhs_mul = delta_scalar(a * b);
                CHECK(lhs_mul == da * bp + ap * db + Residue(Bigint(p), low) * da * db);
            }
            CHECK(delta_scalar(Residue(1, c)).is_zero());
        }
    }
}

TEST_CASE("iterated delta valuations") {
    // v_p(delta^r(p^m * u)) = m - r for 1 <= r <= m <= n
    for (std::int64_t p : {2, 3, 5, 7}) {
        int n = 3;
        for (int m = 1; m <= n; ++m) {
            for (Bigint u : {Bigint(1), Bigint(p + 1), Bigint(2 * p - 1)}) {
                Residue a(big_pow(Bigint(p), static_cast<unsigned>(m)) * u, PrimeLevel(p, n));
                for (int r = 1; r <= m; ++r) {
                    a = delta_scalar(a);
                    CHECK(a.valuation() == m - r);
                }
            }
        }
    }
}

TEST_CASE("frobenius endomorphism on residues") {
    std::mt19937_64 rng(7);
    for (std::int64_t p : {2, 3, 5}) {
        PrimeLevel c(p, 3);
        for (int t = 0; t < 40; ++t) {
            Residue a(Bigint(rng() % 100000), c);
            Residue b(Bigint(rng() % 100000), c);
            Residue fa = frobenius_endo(a), fb = frobenius_endo(b);
            CHECK(frobenius_endo(a + b) == fa + fb);
            CHECK(frobenius_endo(a * b) == fa * fb);
            // reduces to the p-power map mod p
            CHECK((fa - a.pow(c.p)).value() % p == 0);
        }
        CHECK(frobenius_endo(Residue(1, c)) == Residue(1, c));
    }
}
