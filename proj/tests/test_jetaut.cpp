#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "wittjet/jetaut.hpp"
#include "wittjet/parser.hpp"

using namespace wittjet;

namespace {

const std::vector<std::string> XY{"x", "y"};

CurvePtr line(std::int64_t p, int n) {
    return PlaneCurve::make(PrimeLevel(p, n), parse_poly("y - x", XY));
}

LocalizedElem small_elem(std::mt19937_64& rng, const CurvePtr& c) {
    MultiPoly r(XY);
    int terms = 1 + static_cast<int>(rng() % 2);
    for (int t = 0; t < terms; ++t)
        r.add_term(Mono{static_cast<std::uint32_t>(rng() % 3), 0},
                   Bigint(static_cast<std::int64_t>(rng() % 9) - 4));
    return LocalizedElem(c, r);
}

// Random element with the A-pattern: unit a_1 = u*(1 + p*e), a_d = p^{d-1}*b_d.
BoundedAut random_aut(std::mt19937_64& rng, const CurvePtr& c, int maxdeg = -1) {
    const PrimeLevel& ctx = c->ctx();
    if (maxdeg < 0) maxdeg = ctx.n + 1;
    std::int64_t u = 1 + static_cast<std::int64_t>(rng() % (ctx.p - 1));
    LocalizedElem a1 =
        LocalizedElem::constant(c, u) + small_elem(rng, c).scale(ctx.p);
    LocalizedElem witness = LocalizedElem::constant(c, mod_inverse(u, ctx.modulus));
    LocalizedElem a1inv = invert_unit(a1, witness);

    FiberPoly f(c);
    f.set_coeff(0, small_elem(rng, c));
    f.set_coeff(1, a1);
    for (int d = 2; d <= maxdeg; ++d)
        if (rng() % 2)
            f.set_coeff(static_cast<std::size_t>(d),
                        small_elem(rng, c).scale(big_pow(Bigint(ctx.p), d - 1)));
    return BoundedAut(f, a1inv);
}

// Random element of M_{m,r}: degree <= r, a_d = p^m * b_d for d >= 2.
BoundedAut random_in_M(std::mt19937_64& rng, const CurvePtr& c, int r, int m) {
    const PrimeLevel& ctx = c->ctx();
    std::int64_t u = 1 + static_cast<std::int64_t>(rng() % (ctx.p - 1));
    LocalizedElem a1 =
        LocalizedElem::constant(c, u) + small_elem(rng, c).scale(ctx.p);
    LocalizedElem witness = LocalizedElem::constant(c, mod_inverse(u, ctx.modulus));
    FiberPoly f(c);
    f.set_coeff(0, small_elem(rng, c));
    f.set_coeff(1, a1);
    Bigint pm = big_pow(Bigint(ctx.p), m);
    for (int d = 2; d <= r; ++d) f.set_coeff(static_cast<std::size_t>(d), small_elem(rng, c).scale(pm));
    return BoundedAut(f, invert_unit(a1, witness));
}

BoundedAut constants_aut(const CurvePtr& c, std::vector<std::int64_t> coeffs) {
    FiberPoly f(c);
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        f.set_coeff(i, LocalizedElem::constant(c, coeffs[i]));
    LocalizedElem a1 = f.coeff(1);
    return BoundedAut(f, LocalizedElem::constant(c, mod_inverse(a1.num().constant_term(),
                                                                c->ctx().modulus)));
}

}  // namespace

TEST_CASE("identity laws") {
    auto c = line(3, 2);
    std::mt19937_64 rng(1);
    BoundedAut id = BoundedAut::identity(c);
    for (int t = 0; t < 10; ++t) {
        BoundedAut f = random_aut(rng, c);
        CHECK(id.compose(f).eq(f));
        CHECK(f.compose(id).eq(f));
    }
}

TEST_CASE("worked composition mod 27") {
    auto c = line(3, 2);
    BoundedAut f = constants_aut(c, {1, 1, 3});
    BoundedAut g = constants_aut(c, {0, 1, 3});
    BoundedAut gf = g.compose(f);
    BoundedAut expect = constants_aut(c, {4, 7, 24, 18});
    CHECK(gf.eq(expect));
    // valuation pattern: 24 = 3*8, 18 = 9*2
    CHECK(gf.coeff(2).divisible_by_ppow(1));
    CHECK(gf.coeff(3).divisible_by_ppow(2));
}

TEST_CASE("composition over constants only shifts") {
    auto c = line(5, 1);
    BoundedAut f = constants_aut(c, {2, 1});
    BoundedAut g = constants_aut(c, {3, 1});
    CHECK(g.compose(f).eq(constants_aut(c, {5, 1})));
}

TEST_CASE("closure and associativity") {
    std::mt19937_64 rng(2);
    for (std::int64_t p : {3, 5}) {
        for (int n : {1, 2, 3}) {
            auto c = line(p, n);
            for (int t = 0; t < 15; ++t) {
                BoundedAut f = random_aut(rng, c);
                BoundedAut g = random_aut(rng, c);
                BoundedAut h = random_aut(rng, c);
                // closure: constructor re-validates the pattern
                BoundedAut gf = g.compose(f);
                CHECK(gf.degree() <= n + 2 - 1);
                CHECK(h.compose(gf).eq(h.compose(g).compose(f)));
            }
        }
    }
}

TEST_CASE("inverses") {
    std::mt19937_64 rng(3);
    auto c = line(3, 2);
    BoundedAut id = BoundedAut::identity(c);

    // invert(a + T) = T - a
    BoundedAut shift = constants_aut(c, {5, 1});
    CHECK(shift.inverse().eq(constants_aut(c, {-5, 1})));

    // invert(a1*T) = a1^{-1}*T
    BoundedAut lin = constants_aut(c, {0, 2});
    CHECK(lin.inverse().eq(constants_aut(c, {0, 14})));  // 2*14 = 28 = 1 mod 27

    for (int t = 0; t < 12; ++t) {
        BoundedAut f = random_aut(rng, c);
        BoundedAut g = f.inverse();
        CHECK(g.compose(f).eq(id));
        CHECK(f.compose(g).eq(id));
    }
}

TEST_CASE("predicates and tau") {
    auto c = line(5, 2);
    BoundedAut id = BoundedAut::identity(c);
    CHECK(id.is_AL1());
    CHECK(id.is_in_M(3));
    CHECK(id.tau_r(3).is_zero());
    CHECK(id.tau_r(2).is_zero());

    std::mt19937_64 rng(4);
    BoundedAut f = random_aut(rng, c);
    // A-pattern elements sit in M at stage 1 automatically
    CHECK(f.is_in_M(c->ctx().n + 1, 1));
}

TEST_CASE("tau is a crossed homomorphism and sigma a homomorphism") {
    std::mt19937_64 rng(5);
    for (std::int64_t p : {3, 5}) {
        auto c = line(p, 2);
        int n = c->ctx().n;
        for (int r = 2; r <= n + 1; ++r) {
            for (int t = 0; t < 10; ++t) {
                BoundedAut a = random_in_M(rng, c, r, n);
                BoundedAut b = random_in_M(rng, c, r, n);
                BoundedAut ab = a.compose(b);
                REQUIRE(ab.is_in_M(r, n));
                LocalizedElem lhs = ab.tau_r(r, n);
                LocalizedElem b1 = b.poly().coeff(1).at_level(0);
                LocalizedElem rhs =
                    a.tau_r(r, n) * b1.pow(static_cast<unsigned>(r - 1)) + b.tau_r(r, n);
                CHECK(lhs.eq(rhs));

                // sigma multiplies in the semidirect product (m,a)(m~,a~) = (mm~, a m~ + a~)
                auto sa = a.sigma_r(r, n), sb = b.sigma_r(r, n), sab = ab.sigma_r(r, n);
                CHECK(sab.m.eq(sa.m * sb.m));
                CHECK(sab.a.eq(sa.a * sb.m + sb.a));
            }
        }
    }
}

TEST_CASE("sigma kernel composes inside the kernel") {
    std::mt19937_64 rng(6);
    auto c = line(5, 2);
    int n = 2, r = 3;
    auto kernel_elem = [&] {
        // a1 = 1 + p*e and tau_r = 0: omit the T^r coefficient
        LocalizedElem a1 =
            LocalizedElem::one(c) + small_elem(rng, c).scale(c->ctx().p);
        FiberPoly f(c);
        f.set_coeff(0, small_elem(rng, c));
        f.set_coeff(1, a1);
        f.set_coeff(2, small_elem(rng, c).scale(big_pow(Bigint(c->ctx().p), n)));
        return BoundedAut(f, invert_unit(a1, LocalizedElem::one(c)));
    };
    for (int t = 0; t < 8; ++t) {
        BoundedAut a = kernel_elem(), b = kernel_elem();
        BoundedAut ab = a.compose(b);
        CHECK(ab.tau_r(r, n).is_zero());
        CHECK((ab.poly().coeff(1) - LocalizedElem::one(c)).divisible_by_ppow(1));
    }
}

TEST_CASE("bounded automorphisms over the quartic") {
    auto c = PlaneCurve::make(PrimeLevel(5, 1), parse_poly("y^4 + x^4 - 1", XY));
    // a1 = f_y(x^p,y^p), a genuinely non-constant unit
    LocalizedElem a1(c, c->fy_frob());
    LocalizedElem a1inv = invert_unit(a1, fy_frob_witness(c));
    FiberPoly f(c);
    f.set_coeff(0, LocalizedElem::coordinate(c, "x"));
    f.set_coeff(1, a1);
    f.set_coeff(2, LocalizedElem::coordinate(c, "y").scale(5));
    BoundedAut psi(f, a1inv);
    BoundedAut id = BoundedAut::identity(c);
    CHECK(psi.inverse().compose(psi).eq(id));
    CHECK(psi.compose(psi.inverse()).eq(id));
}

TEST_CASE("invariant violations are caught") {
    auto c = line(3, 1);
    FiberPoly f(c);
    f.set_coeff(0, LocalizedElem::zero(c));
    f.set_coeff(1, LocalizedElem::one(c));
    f.set_coeff(2, LocalizedElem::one(c));  // needs v_p >= 1
    CHECK_THROWS_AS(BoundedAut(f, LocalizedElem::one(c)), InvariantViolation);

    FiberPoly g(c);
    g.set_coeff(0, LocalizedElem::zero(c));
    g.set_coeff(1, LocalizedElem::constant(c, 3));  // not a unit
    CHECK_THROWS_AS(BoundedAut(g, LocalizedElem::one(c)), NotAUnit);
}

TEST_CASE("printing") {
    auto c = line(3, 2);
    BoundedAut f = constants_aut(c, {1, 2, 3});
    CHECK(f.str() == "[1] + [2]*T + p^1*[1]*T^2");
}
