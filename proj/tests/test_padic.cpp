#include <doctest.h>

#include <random>

#include "iwasawa/padic.hpp"

using namespace iwasawa;

namespace {

// Exact rational oracle: p-adic valuation and unit of num/den, reduced to
// the digit count the implementation claims.
struct RationalOracle {
    long long num, den;  // den != 0, may share p-powers with num

    long long valuation(long long p) const {
        long long n = num < 0 ? -num : num, d = den < 0 ? -den : den;
        long long v = 0;
        while (n % p == 0) { n /= p; ++v; }
        while (d % p == 0) { d /= p; --v; }
        return v;
    }

    // Unit representative mod p^digits.
    long long unit(long long p, int digits) const {
        long long n = num, d = den;
        while (n % p == 0) n /= p;
        while (d % p == 0) d /= p;
        long long mod = detail::pow_ll(p, digits);
        long long nn = ((n % mod) + mod) % mod;
        long long dd = ((d % mod) + mod) % mod;
        return static_cast<long long>(static_cast<unsigned __int128>(nn) *
                                      static_cast<unsigned __int128>(detail::mod_inverse(dd, mod)) %
                                      static_cast<unsigned __int128>(mod));
    }
};

void check_matches(const PadicNumber& x, const RationalOracle& q) {
    if (q.num == 0) {
        CHECK(x.is_zero());
        return;
    }
    REQUIRE_FALSE(x.is_zero());
    CHECK(x.exponent() == q.valuation(x.context().p));
    CHECK(x.unit() == q.unit(x.context().p, static_cast<int>(x.digits())));
}

} // namespace

TEST_CASE("context validation") {
    CHECK_NOTHROW(PadicContext(3, 12));
    CHECK_NOTHROW(PadicContext(7, 12));
    CHECK_THROWS_AS(PadicContext(2, 4), PreconditionViolated);   // even
    CHECK_THROWS_AS(PadicContext(9, 4), PreconditionViolated);   // composite
    CHECK_THROWS_AS(PadicContext(3, 0), PreconditionViolated);
    CHECK_THROWS_AS(PadicContext(3, 64), PreconditionViolated);  // p^n too large
}

TEST_CASE("integer arithmetic matches the worked values") {
    PadicContext ctx(3, 4);
    PadicNumber three = PadicNumber::from_integer(ctx, 3);
    PadicNumber six = PadicNumber::from_integer(ctx, 6);
    PadicNumber sum = three + six;  // 9 = 3^2 * 1
    REQUIRE_FALSE(sum.is_zero());
    CHECK(sum.exponent() == 2);
    CHECK(sum.unit() == 1);

    PadicNumber one = PadicNumber::from_integer(ctx, 1);
    CHECK((one - one).is_zero());

    PadicNumber third = PadicNumber::from_rational(ctx, 1, 3);
    PadicNumber prod = third * six;  // 2
    CHECK(prod.exponent() == 0);
    CHECK(prod.unit() == 2);
}

TEST_CASE("valuation") {
    PadicContext ctx(3, 4);
    CHECK(PadicNumber::from_integer(ctx, 9).valuation() == 2);
    CHECK(PadicNumber::from_integer(ctx, 2).valuation() == 0);
    CHECK(PadicNumber::from_rational(ctx, 2, 9).valuation() == -2);
    CHECK_FALSE(PadicNumber::zero(ctx).valuation().has_value());
}

TEST_CASE("arithmetic agrees with the rational oracle") {
    std::mt19937_64 rng(20240611);
    for (long long p : {3LL, 5LL, 7LL}) {
        PadicContext ctx(p, 6);
        for (int trial = 0; trial < 300; ++trial) {
            long long an = static_cast<long long>(rng() % 401) - 200;
            long long bn = static_cast<long long>(rng() % 401) - 200;
            long long ad = 1 + static_cast<long long>(rng() % 60);
            long long bd = 1 + static_cast<long long>(rng() % 60);
            if (ad % p == 0) ++ad;
            if (bd % p == 0) ++bd;
            PadicNumber a = PadicNumber::from_rational(ctx, an, ad);
            PadicNumber b = PadicNumber::from_rational(ctx, bn, bd);
            check_matches(a + b, {an * bd + bn * ad, ad * bd});
            check_matches(a - b, {an * bd - bn * ad, ad * bd});
            check_matches(a * b, {an * bn, ad * bd});
            if (bn != 0) check_matches(a / b, {an * bd, ad * bn});

            // valuation is additive under multiplication
            if (an != 0 && bn != 0) {
                PadicNumber prod = a * b;
                REQUIRE(prod.valuation().has_value());
                CHECK(*prod.valuation() == *a.valuation() + *b.valuation());
            }
        }
    }
}

TEST_CASE("addition of mismatched valuations loses digits honestly") {
    PadicContext ctx(3, 4);
    PadicNumber big = PadicNumber::from_integer(ctx, 28);  // 1 + 3^3
    PadicNumber one = PadicNumber::from_integer(ctx, 1);
    PadicNumber diff = big - one;  // 27, but only one digit of the unit is certain
    REQUIRE_FALSE(diff.is_zero());
    CHECK(diff.exponent() == 3);
    CHECK(diff.unit() == 1);
    CHECK(diff.known_to() == 4);
    CHECK(diff.digits() == 1);

    // Exact zero keeps the full absolute precision.
    CHECK((one - one).known_to() == 4);
}

TEST_CASE("neutral operations leave values canonical") {
    PadicContext ctx(5, 6);
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        long long v = static_cast<long long>(rng() % 10000) - 5000;
        PadicNumber a = PadicNumber::from_integer(ctx, v);
        PadicNumber same = a + PadicNumber::zero(ctx) * PadicNumber::from_integer(ctx, 1);
        if (a.is_zero()) {
            CHECK(same.is_zero());
            continue;
        }
        // adding O(p^6) keeps every certain digit
        CHECK(same.exponent() == a.exponent());
        CHECK(same.unit() % ctx.pow(static_cast<int>(same.digits())) ==
              a.unit() % ctx.pow(static_cast<int>(same.digits())));
    }
}

TEST_CASE("division guards") {
    PadicContext ctx(3, 4);
    PadicNumber one = PadicNumber::from_integer(ctx, 1);
    CHECK_THROWS_AS(one / PadicNumber::zero(ctx), DivisionByZero);
    PadicContext other(5, 4);
    CHECK_THROWS_AS(one + PadicNumber::from_integer(other, 1), ContextMismatch);
}

TEST_CASE("cyclotomic generator image") {
    PadicContext c3(3, 4), c5(5, 4);
    CHECK(cyclotomic_u(c3).unit() == 4);
    CHECK(cyclotomic_u(c5).unit() == 6);
    // 13 = 1 mod 3 and 13 = 4 mod 9: a valid override.
    CHECK(cyclotomic_u(c3, 13).unit() == 13);
    // 10 = 1 mod 9 fails the generator condition, 8 = 2 mod 3 fails too.
    CHECK_THROWS_AS(cyclotomic_u(c3, 10), InvalidGenerator);
    CHECK_THROWS_AS(cyclotomic_u(c3, 8), InvalidGenerator);
}

TEST_CASE("powers of the generator stay units") {
    PadicContext ctx(3, 12);
    PadicNumber u = cyclotomic_u(ctx);
    PadicNumber um = u.pow(-5) * u.pow(5);
    CHECK(um.exponent() == 0);
    CHECK(um.unit() == 1);
    // val(u^s - 1) = 1 for s prime to p
    PadicNumber one = PadicNumber::from_integer(ctx, 1);
    CHECK((u.pow(2) - one).exponent() == 1);
    CHECK((u.pow(3) - one).exponent() == 2);  // val(u^3 - 1) = 1 + val(3)
}
