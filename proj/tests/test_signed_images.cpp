#include <doctest.h>

#include <random>

#include "iwasawa/signed_images.hpp"

using namespace iwasawa;

namespace {

const PadicContext kCtx(3, 12);
constexpr int kM = 32;

IwasawaSeries S(std::initializer_list<long long> coeffs) {
    return IwasawaSeries::from_integers(kCtx, kM, std::vector<long long>(coeffs));
}

ImageConstant IC(long long num, long long den) {
    return ImageConstant::finite(PadicNumber::from_rational(kCtx, num, den));
}

} // namespace

TEST_CASE("image membership on worked pairs") {
    PadicNumber u = cyclotomic_u(kCtx);
    SignedImageSpec k2(2, 0, u, {IC(1, 1)});
    CHECK(contains(k2, S({1, 1}), S({1, 1})));
    CHECK_FALSE(contains(k2, S({0, 1}), S({1})));

    SignedImageSpec k3(3, 0, u, {IC(1, 1), IC(2, 1)});
    IwasawaSeries f = from_linear_factors(
        kCtx, kM, {PadicNumber::zero(kCtx), PadicNumber::from_integer(kCtx, 3)}, 0);
    CHECK(contains(k3, f, IwasawaSeries(kCtx, kM)));
}

TEST_CASE("membership is closed under the module structure") {
    std::mt19937_64 rng(2024);
    PadicNumber u = cyclotomic_u(kCtx);
    SignedImageSpec spec(3, 1, u, {IC(2, 3), ImageConstant::infinity()});
    IwasawaSeries full = from_linear_factors(
        kCtx, kM,
        {PadicNumber::zero(kCtx), u - PadicNumber::from_integer(kCtx, 1)}, 0);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<long long> ca(3), cb(3), ch(3);
        for (int t = 0; t < 3; ++t) {
            ca[static_cast<size_t>(t)] = static_cast<long long>(rng() % kCtx.pn());
            cb[static_cast<size_t>(t)] = static_cast<long long>(rng() % kCtx.pn());
            ch[static_cast<size_t>(t)] = static_cast<long long>(rng() % kCtx.pn());
        }
        IwasawaSeries f = full * IwasawaSeries::from_residues(kCtx, kM, ca);
        IwasawaSeries g = full * IwasawaSeries::from_residues(kCtx, kM, cb);
        IwasawaSeries h = IwasawaSeries::from_residues(kCtx, kM, ch);
        REQUIRE(contains(spec, f, g));
        IwasawaSeries f2 = full * h;
        IwasawaSeries g2 = full * IwasawaSeries::from_residues(kCtx, kM, ca);
        REQUIRE(contains(spec, f2, g2));
        CHECK(contains(spec, f + f2, g + g2));
        CHECK(contains(spec, f * h, g * h));
    }
}

TEST_CASE("quotient invariants of the paired image") {
    PadicNumber u = cyclotomic_u(kCtx);
    SUBCASE("k = 2, any constant") {
        QuotientInvariants q = quotient_invariants(SignedImageSpec(2, 0, u, {IC(5, 7)}), kM);
        CHECK(q.mu == 0);
        CHECK(q.lambda == 1);
        CHECK(q.char_element.value() == IwasawaSeries::monomial(kCtx, kM, 1));
    }
    SUBCASE("k = 3 with the worked constants") {
        QuotientInvariants q =
            quotient_invariants(SignedImageSpec(3, 0, u, {IC(1, 1), IC(2, 1)}), kM);
        CHECK(q.mu == 0);
        CHECK(q.lambda == 2);
        CHECK(q.char_element.value() == S({0, -3, 1}));
    }
    SUBCASE("all constants zero: the split case") {
        for (int k : {2, 3, 4}) {
            std::vector<ImageConstant> cs(static_cast<size_t>(k - 1), IC(0, 1));
            QuotientInvariants q = quotient_invariants(SignedImageSpec(k, 0, u, cs), kM);
            CHECK(q.mu == 0);
            CHECK(q.lambda == k - 1);
        }
    }
    SUBCASE("char does not depend on the constants") {
        QuotientInvariants qa = quotient_invariants(
            SignedImageSpec(4, 2, u, {IC(1, 3), ImageConstant::infinity(), IC(0, 1)}), kM);
        QuotientInvariants qb =
            quotient_invariants(SignedImageSpec(4, 2, u, {IC(7, 1), IC(5, 9), IC(2, 1)}), kM);
        CHECK(qa.char_element.same_class(qb.char_element));
    }
}

TEST_CASE("eta worked examples") {
    PadicNumber u = cyclotomic_u(kCtx);
    CHECK(eta_element(2, 1, u, kM).value() == IwasawaSeries::monomial(kCtx, kM, 1));
    CHECK(eta_element(2, 0, u, kM).value() == S({-3, 1}));
    CHECK(eta_element(3, 2, u, kM).value() == S({0, -3, 1}));
}

TEST_CASE("eta root shift and mu") {
    PadicNumber u = cyclotomic_u(kCtx);
    PadicNumber one = PadicNumber::from_integer(kCtx, 1);
    IwasawaSeries p_series = IwasawaSeries::constant(kCtx, kM, kCtx.p);
    for (int k = 2; k <= 5; ++k) {
        for (int i = -3; i <= 3; ++i) {
            CharElement eta = eta_element(k, i, u, kM);
            CHECK(eta.mu() == 0);
            CHECK(eta.lambda() == k - 1);
            for (int j = 0; j <= k - 2; ++j) {
                PadicNumber root = u.pow(j + k - 1 - i) - one;
                CHECK(eval_at(eta.value(), root).is_zero());
            }
            CHECK_FALSE(divides(p_series, eta.value()).divides);
        }
    }
}

TEST_CASE("spec validation") {
    PadicNumber u = cyclotomic_u(kCtx);
    CHECK_THROWS_AS(SignedImageSpec(1, 0, u, {}), PreconditionViolated);
    CHECK_THROWS_AS(SignedImageSpec(3, 0, u, {IC(1, 1)}), PreconditionViolated);
    PadicNumber bad_u = PadicNumber::from_integer(kCtx, 10);  // 10 = 1 mod 9
    CHECK_THROWS_AS(SignedImageSpec(2, 0, bad_u, {IC(1, 1)}), InvalidGenerator);
}
