#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "padyn/semiconj.hpp"

using namespace padyn;

namespace {

TruncSeries from_qseries0(const RingPtr& R, long cap, const oracles::QSeries& q) {
    TruncSeries out = TruncSeries::zero(R, cap);
    for (long k = 0; k <= cap && k < (long)q.size(); ++k)
        out.set_coeff(k, PadicScalar::from_rational(R, q[k]));
    return out;
}

TruncSeries expand_in_xm(const TruncSeries& s, long m, long cap) {
    TruncSeries out = TruncSeries::zero(s.config(), cap);
    for (long k = 0; k <= s.cap() && k * m <= cap; ++k) out.set_coeff(k * m, s.coeff(k));
    return out;
}

} // namespace

TEST_CASE("chebyshev-type descent through X^2") {
    auto R = make_zp(3, 32);
    TruncSeries f = TruncSeries::from_longs(R, 24, {9, 6, 1}); // X(X+3)^2
    SemiConjugacy sc = build_f0(f, 2);
    CHECK(sc.rel_degree == 1);
    CHECK(!sc.embedding.has_value());
    CHECK(agrees(sc.f0, TruncSeries::from_longs(R, 24, {3, 0, 1})));
    CHECK(sc.f0.coeff(1).agrees_with(PadicScalar::from_long(R, 3)));
    // the unit-root scalar is 1 here: f = X (X+3)^2 already has unit part with v(0) = 1
    CHECK(sc.c.agrees_with(PadicScalar::one(R)));
    // f(X^2) = f0(X)^2, here exactly
    TruncSeries lhs = expand_in_xm(f, 2, 24);
    CHECK(agrees(lhs, pow_trunc(sc.f0, 2)));
    // the advertised semi-conjugacy: f o X^2 = X^2 o f0
    TruncSeries x2 = TruncSeries::monomial(R, 24, 2, PadicScalar::one(R));
    SemiConjReport rep = verify_semiconjugacy(f, x2, sc.f0);
    CHECK(rep.ok);
}

TEST_CASE("commuter lift through the chebyshev descent") {
    auto R = make_zp(3, 32);
    TruncSeries f = TruncSeries::from_longs(R, 24, {9, 6, 1});
    SemiConjugacy sc = build_f0(f, 2);
    TruncSeries u = TruncSeries::from_longs(R, 24, {4, 1}); // 4X + X^2 commutes with f
    REQUIRE(check_commute(f, u).ok);
    TruncSeries u0 = build_u0(sc, u);
    // the lift has derivative -2, the square root of 4 that is = 1 mod 3
    CHECK(u0.coeff(1).agrees_with(PadicScalar::from_long(R, -2)));
    // the commuter of 3X + X^3 with derivative -2 is -2 sinh(2 arcsinh(X/2)),
    // whose cubic coefficient is -1/4
    CHECK(u0.coeff(3).agrees_with(PadicScalar::from_rational(R, mpq_class(-1, 4))));
    CHECK(check_commute(sc.f0, u0).ok);
    // u0(X)^2 = u(X^2)
    CHECK(agrees(pow_trunc(u0, 2), expand_in_xm(u, 2, 24)));
    // a commuter whose derivative is not 1 mod m cannot be lifted directly
    CommutingSolution bad = solve_commuting(f, PadicScalar::from_long(R, 2));
    CHECK_THROWS_AS(build_u0(sc, bad.g), NormalizationRequiredError);
}

TEST_CASE("verification-only mode on the rational isogeny example") {
    auto R = make_zp(2, 32);
    TruncSeries f = TruncSeries::from_longs(R, 20, {4, 1});  // 4X + X^2
    TruncSeries fS = TruncSeries::from_longs(R, 20, {2, 1}); // (1+X)^2 - 1
    // h = X^2 / (1+X), expanded by the rational oracle
    oracles::QSeries h_q = oracles::rational_expand({0, 0, 1}, {1, 1}, 21);
    TruncSeries h = from_qseries0(R, 20, h_q);
    SemiConjReport rep = verify_semiconjugacy(f, h, fS);
    CHECK(rep.ok);
    // both compositions expand X^2 (2+X)^2 / (1+X)^2
    oracles::QSeries both = oracles::rational_expand(
        oracles::qmul({0, 0, 1}, oracles::qmul({2, 1}, {2, 1}, 21), 21),
        oracles::qmul({1, 1}, {1, 1}, 21), 21);
    CHECK(agrees(compose(f, h), from_qseries0(R, 20, both)));
    // and the iterate sanity check on f itself
    CHECK(agrees(iterate(f, 2), TruncSeries::from_longs(R, 20, {16, 20, 8, 1})));
    // perturbing f_S breaks the intertwining
    TruncSeries wrong = TruncSeries::from_longs(R, 20, {2, 2});
    CHECK(!verify_semiconjugacy(f, h, wrong).ok);
}

TEST_CASE("descent roundtrip on randomly generated inputs") {
    auto R = make_zp(3, 24);
    std::mt19937_64 rng(0x5c01);
    std::uniform_int_distribution<long> small(-6, 6);
    int built = 0;
    for (int trial = 0; trial < 400 && built < 200; ++trial) {
        long m = 2; // m = 3 would collide with p here
        long d = 1 + trial % 2;
        // random separable monic g0 with g0(0) in pO \ {0}
        TruncSeries g0 = TruncSeries::zero(R, 12);
        long c0 = 3 * small(rng);
        while (c0 == 0) c0 = 3 * small(rng);
        g0.set_coeff(0, PadicScalar::from_long(R, c0));
        for (long k = 1; k < d; ++k) g0.set_coeff(k, PadicScalar::from_long(R, 3 * small(rng)));
        g0.set_coeff(d, PadicScalar::one(R));
        g0.set_polynomial(true);
        if (!is_separable(g0)) continue;
        // random unit series with constant term 1
        TruncSeries y = TruncSeries::zero(R, 12);
        y.set_coeff(0, PadicScalar::one(R));
        for (long k = 1; k <= 12; ++k) y.set_coeff(k, PadicScalar::from_long(R, small(rng)));
        // f(Z) = Z (g0(Z) y(Z))^m descends with f0(X) = X g0(X^m) y(X^m)
        TruncSeries f = mul(TruncSeries::identity(R, 12), pow_trunc(mul(g0, y), m));
        ++built;
        SemiConjugacy sc = build_f0(f, m);
        CHECK(sc.rel_degree == 1);
        TruncSeries expect = mul(TruncSeries::identity(R, 12),
                                 mul(expand_in_xm(g0, m, 12), expand_in_xm(y, m, 12)));
        CHECK(agrees(sc.f0, expect));
        // f0 lives at cap 11, so the identity is compared at the shared cap
        CHECK(agrees(expand_in_xm(f, m, 12), pow_trunc(sc.f0, m)));
    }
    CHECK(built >= 200);
}

TEST_CASE("descent that needs an unramified extension") {
    auto R = make_zp(5, 24);
    TruncSeries f = TruncSeries::from_longs(R, 20, {50, 0, 20, 0, 2}); // 2 X (5 + X^2)^2
    SemiConjugacy sc = build_f0(f, 2);
    CHECK(sc.rel_degree == 2); // 2 is not a square mod 5
    REQUIRE(sc.embedding.has_value());
    CHECK(sc.ring->residue_degree() == 2);
    // c^2 = 2 up in the extension
    CHECK((sc.c * sc.c).agrees_with(PadicScalar::from_long(sc.ring, 2)));
    // f0 = c (5X + X^5): check the X and X^5 coefficients
    CHECK(sc.f0.coeff(1).agrees_with(sc.c * PadicScalar::from_long(sc.ring, 5)));
    CHECK(sc.f0.coeff(5).agrees_with(sc.c));
    // the defining identity up in the extension
    TruncSeries fup = TruncSeries::zero(sc.ring, 20);
    for (long k = 0; k <= 20; ++k) fup.set_coeff(k, sc.embedding->apply(f.coeff(k)));
    TruncSeries lhs = TruncSeries::zero(sc.ring, 20);
    for (long k = 0; 2 * k <= 20; ++k) lhs.set_coeff(2 * k, fup.coeff(k));
    CHECK(agrees(lhs, pow_trunc(sc.f0, 2)));
}

TEST_CASE("ramified descents are refused") {
    auto R = make_zp(3, 24);
    TruncSeries f = TruncSeries::from_longs(R, 12, {3, 0, 3}); // 3X(1 + X^2)
    CHECK_THROWS_AS(build_f0(f, 2), UnsupportedRamifiedError);
}

TEST_CASE("multiplicity transport across the descent") {
    auto R = make_zp(3, 32);
    TruncSeries f = TruncSeries::from_longs(R, 24, {9, 6, 1});
    SemiConjugacy sc = build_f0(f, 2);
    for (long n = 1; n <= 2; ++n) {
        TransportReport tr = multiplicity_transport_check(sc, n);
        CHECK(!tr.skipped);
        CHECK(tr.iterate_identity);
        CHECK(tr.upstairs_separable);
    }
    // wideg f0 = 3, so n with 3^n > cap is reported as skipped
    TransportReport far = multiplicity_transport_check(sc, 4);
    CHECK(far.skipped);
}
