#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "padyn/dynamics.hpp"

using namespace padyn;

namespace {

bool matches_qseries(const TruncSeries& f, const oracles::QSeries& q, long from_degree) {
    for (long k = 0; k <= f.cap(); ++k) {
        long i = k - from_degree;
        mpq_class want = (i >= 0 && i < (long)q.size()) ? q[i] : mpq_class(0);
        if (!f.coeff(k).agrees_with(PadicScalar::from_rational(f.config(), want)))
            return false;
    }
    return true;
}

// random noninvertible stable series p*a X + p*b X^2 + c X^3 + ... with unit
// coefficient exactly at degree q = p^e
TruncSeries random_noninvertible(const RingPtr& R, long cap, long q,
                                 std::mt19937_64& rng, bool polynomial) {
    std::uniform_int_distribution<long> c(-9, 9);
    long p = R->p();
    TruncSeries f = TruncSeries::zero(R, cap);
    long f1 = c(rng);
    while (f1 % p == 0) f1 = c(rng);
    f.set_coeff(1, PadicScalar::from_long(R, p * f1));
    for (long k = 2; k < q; ++k) f.set_coeff(k, PadicScalar::from_long(R, p * c(rng)));
    long lead = c(rng);
    while (lead % p == 0) lead = c(rng);
    f.set_coeff(q, PadicScalar::from_long(R, lead));
    if (!polynomial)
        for (long k = q + 1; k <= cap; ++k)
            f.set_coeff(k, PadicScalar::from_long(R, c(rng)));
    f.set_polynomial(polynomial);
    return f;
}

} // namespace

TEST_CASE("commutation check") {
    auto R = make_zp(3, 16);
    TruncSeries f = TruncSeries::from_longs(R, 12, {9, 6, 1}); // X (X+3)^2
    TruncSeries u = TruncSeries::from_longs(R, 12, {4, 1});    // X (X+4)
    CommuteReport ok = check_commute(f, u);
    CHECK(ok.ok);
    CHECK(ok.exact);
    // 3X + X^3 commutes with itself and with -X, but not with -2X + X^2
    TruncSeries g = TruncSeries::from_longs(R, 12, {3, 0, 1});
    CHECK(check_commute(g, g).ok);
    TruncSeries negx = TruncSeries::from_longs(R, 12, {-1});
    CHECK(check_commute(g, negx).ok);
    TruncSeries w = TruncSeries::from_longs(R, 12, {-2, 1});
    CommuteReport bad = check_commute(g, w);
    CHECK(!bad.ok);
    REQUIRE(bad.first_fail_degree.has_value());
    CHECK(*bad.first_fail_degree == 2);
}

TEST_CASE("stability classification") {
    auto R = make_zp(3, 16);
    auto mk = [&](long a) {
        TruncSeries g = TruncSeries::from_longs(R, 8, {a, 0, 1});
        return g;
    };
    CHECK(is_stable(mk(3)) == Stability::Stable);  // val > 0
    CHECK(is_stable(mk(2)) == Stability::Stable);  // 2 is not -1 in Z_3
    CHECK(is_stable(mk(-1)) == Stability::Unstable);
    CHECK(is_stable(mk(1)) == Stability::Unstable);
    TruncSeries z = TruncSeries::from_longs(R, 8, {0, 1}); // g'(0) = 0
    CHECK(is_stable(z) == Stability::Unstable);

    // p = 2: -1 counts as a root of unity beyond the Teichmuller ones
    auto R2 = make_zp(2, 16);
    TruncSeries m1 = TruncSeries::from_longs(R2, 8, {-1, 1});
    CHECK(is_stable(m1) == Stability::Unstable);
    TruncSeries three = TruncSeries::from_longs(R2, 8, {3, 1});
    CHECK(is_stable(three) == Stability::Stable);
}

TEST_CASE("solve_commuting reproduces the known cubic commuter") {
    auto R = make_zp(3, 24);
    TruncSeries f0 = TruncSeries::from_longs(R, 12, {3, 0, 1});
    CommutingSolution sol = solve_commuting(f0, PadicScalar::from_long(R, 2));
    CHECK(sol.g.coeff(1).agrees_with(PadicScalar::from_long(R, 2)));
    CHECK(sol.g.coeff(3).agrees_with(PadicScalar::from_rational(R, mpq_class(1, 4))));
    CHECK(check_commute(f0, sol.g).ok);
    CHECK(sol.integral); // 1/4 is a 3-adic unit
    // the commuter with derivative -2 is the negative of the one above
    CommutingSolution neg = solve_commuting(f0, PadicScalar::from_long(R, -2));
    CHECK(neg.g.coeff(3).agrees_with(PadicScalar::from_rational(R, mpq_class(-1, 4))));
    CHECK(agrees(neg.g, scalar_mul(PadicScalar::from_long(R, -1), sol.g)));
}

TEST_CASE("solve_commuting is multiplicative in the derivative") {
    auto R = make_zp(3, 24);
    std::mt19937_64 rng(0x50de);
    std::uniform_int_distribution<long> pick(-20, 20);
    for (int trial = 0; trial < 200; ++trial) {
        TruncSeries f = random_noninvertible(R, 10, 3, rng, trial % 2 == 0);
        long a = pick(rng), b = pick(rng);
        while (a % 3 == 0) a = pick(rng);
        while (b % 3 == 0) b = pick(rng);
        CommutingSolution ga = solve_commuting(f, PadicScalar::from_long(R, a));
        CommutingSolution gb = solve_commuting(f, PadicScalar::from_long(R, b));
        CommutingSolution gab = solve_commuting(f, PadicScalar::from_long(R, a * b));
        CHECK(agrees(compose(ga.g, gb.g), gab.g));
        CHECK(agrees(compose(ga.g, gb.g), compose(gb.g, ga.g)));
        CHECK(check_commute(f, ga.g).ok);
    }
}

TEST_CASE("lubin logarithm of 3X + X^3") {
    auto R = make_zp(3, 32);
    TruncSeries f = TruncSeries::from_longs(R, 12, {3, 0, 1});
    LubinLog ll = lubin_log(f);
    CHECK(ll.L.coeff(1).agrees_with(PadicScalar::one(R)));
    CHECK(ll.L.coeff(3).agrees_with(PadicScalar::from_rational(R, mpq_class(-1, 24))));
    // functional equation L(f(X)) = 3 L(X)
    CHECK(agrees(compose(ll.L, f), scalar_mul(PadicScalar::from_long(R, 3), ll.L)));
    // the iterate-limit construction found the same series
    CHECK(agrees(ll.L, ll.L_limit));
    CHECK(ll.limit_iterations > 0);
    CHECK(log_derivative_report(ll.L).integral);
}

TEST_CASE("lubin logarithm of the multiplicative-group endomorphism") {
    auto R = make_zp(5, 24);
    // (1+X)^5 - 1: its logarithm is log(1+X)
    oracles::QSeries pow5 = oracles::binomial_series(5, 13);
    TruncSeries f = TruncSeries::zero(R, 12);
    for (long k = 1; k <= 12; ++k)
        f.set_coeff(k, PadicScalar::from_rational(R, pow5[k]));
    LubinLog ll = lubin_log(f);
    CHECK(matches_qseries(ll.L, oracles::log1p_series(12), 1));
    CHECK(agrees(ll.L, ll.L_limit));
}

TEST_CASE("both logarithm algorithms agree on a nonpolynomial example") {
    auto R = make_zp(5, 24);
    TruncSeries f = TruncSeries::from_longs(R, 14, {5, 0, 0, 0, 1, 0, 5});
    LubinLog ll = lubin_log(f);
    CHECK(agrees(ll.L, ll.L_limit));
    CHECK(agrees(compose(ll.L, f), scalar_mul(PadicScalar::from_long(R, 5), ll.L)));

    std::mt19937_64 rng(0x10c);
    for (int trial = 0; trial < 40; ++trial) {
        TruncSeries g = random_noninvertible(R, 10, 5, rng, false);
        LubinLog l2 = lubin_log(g);
        CHECK(agrees(l2.L, l2.L_limit));
        CHECK(agrees(compose(l2.L, g), scalar_mul(g.coeff(1), l2.L)));
    }
}

TEST_CASE("criterion A fixtures") {
    auto R = make_zp(3, 24);
    CriterionAReport a1 = criterion_A(TruncSeries::from_longs(R, 12, {3, 0, 1}));
    CHECK(a1.holds);
    CriterionAReport a2 = criterion_A(TruncSeries::from_longs(R, 12, {9, 6, 1}));
    CHECK(!a2.holds);
    REQUIRE(a2.witness.has_value());
    CHECK(*a2.witness == 1);
    CriterionAReport a3 = criterion_A(TruncSeries::from_longs(R, 12, {9, 3, 0, 0, 0, 0, 0, 0, 1}));
    CHECK(!a3.holds);
    CHECK(*a3.witness == 1);
}

TEST_CASE("criterion A forces an integral logarithm derivative") {
    auto R = make_zp(3, 24);
    std::mt19937_64 rng(0xa11);
    int held = 0;
    for (int trial = 0; trial < 200; ++trial) {
        TruncSeries f = random_noninvertible(R, 10, 3, rng, true);
        CriterionAReport rep = criterion_A(f);
        if (!rep.holds) continue;
        ++held;
        TruncSeries L = lubin_log_recursion(f);
        CHECK(log_derivative_report(L).integral);
    }
    CHECK(held >= 150); // cubic polynomials with unit f'(0)/p mostly qualify
}

TEST_CASE("criterion A forces separable iterates") {
    auto R = make_zp(3, 24);
    std::mt19937_64 rng(0x5e9a);
    int held = 0;
    for (int trial = 0; trial < 60 && held < 30; ++trial) {
        TruncSeries f = random_noninvertible(R, 12, 3, rng, true);
        if (!criterion_A(f).holds) continue;
        ++held;
        for (long n = 1; n <= 2; ++n) {
            WeierstrassSplit sp = weierstrass_prep(iterate(f, n));
            CHECK(is_separable(sp.distinguished));
        }
    }
    CHECK(held >= 30);
}

TEST_CASE("iterate root valuations respect the polygon bound") {
    auto R = make_zp(3, 24);
    std::mt19937_64 rng(0x900d);
    for (int trial = 0; trial < 200; ++trial) {
        TruncSeries f = random_noninvertible(R, 20, 3, rng, true);
        for (long n = 1; n <= 2; ++n) {
            long qn = n == 1 ? 3 : 9;
            for (const auto& [v, count] : root_valuations(iterate(f, n))) {
                // every nonzero root of f^{on} has val >= 1/(q^n - 1)
                CHECK(v.num * (qn - 1) >= v.den);
                CHECK(count >= 1);
            }
        }
    }
}

TEST_CASE("criterion B fixtures") {
    auto R = make_zp(3, 32);
    TruncSeries cheb = TruncSeries::from_longs(R, 24, {9, 6, 1});
    CriterionBReport b1 = criterion_B(cheb, 2);
    CHECK(b1.holds);
    REQUIRE(b1.g0.has_value());
    CHECK(agrees(*b1.g0, TruncSeries::from_longs(R, 24, {3, 1}, 0)));

    // wideg 3, m = 2 does not divide 3 - 1 = 2... it does; but g = (X+3)(X+6)
    // is not a square
    TruncSeries notsq = TruncSeries::from_longs(R, 24, {18, 9, 1});
    CriterionBReport b2 = criterion_B(notsq, 2);
    CHECK(!b2.holds);

    // p = 2 example: g = X + 4 has degree 1, not divisible by m = 2
    auto R2 = make_zp(2, 32);
    TruncSeries f2 = TruncSeries::from_longs(R2, 24, {4, 1});
    CriterionBReport b3 = criterion_B(f2, 2);
    CHECK(!b3.holds);

    // inseparable g0 is rejected: f/X with distinguished part (X+3)^4
    TruncSeries insep = mul(TruncSeries::identity(R, 24),
                            pow_trunc(TruncSeries::from_longs(R, 24, {3, 1}, 0), 4));
    CriterionBReport b4 = criterion_B(insep, 2);
    CHECK(!b4.holds);
}

TEST_CASE("weierstrass-degree shape check") {
    auto R = make_zp(3, 24);
    WidegShapeReport s1 = wideg_shape_check(TruncSeries::from_longs(R, 12, {3, 0, 1}));
    CHECK(s1.d == 1);
    CHECK(s1.holds);
    WidegShapeReport s2 = wideg_shape_check(TruncSeries::from_longs(R, 12, {9, 3, 0, 0, 0, 0, 0, 0, 1}));
    CHECK(s2.d == 2);
    CHECK(s2.holds); // 9 and 3 both lie in the maximal ideal
    // unit coefficient above q at an index not divisible by q breaks the shape
    TruncSeries off = TruncSeries::from_longs(R, 12, {3, 0, 1, 0, 2});
    WidegShapeReport s3 = wideg_shape_check(off);
    CHECK(s3.d == 1);
    CHECK(!s3.holds);
    REQUIRE(s3.witness.has_value());
    CHECK(*s3.witness == 5);
    TruncSeries bad = TruncSeries::from_longs(R, 12, {3, 1});
    CHECK_THROWS_AS(wideg_shape_check(bad), TheoremViolationError); // wideg 2 not a 3-power
}

TEST_CASE("normalizing an invertible series") {
    auto R = make_zp(3, 24);
    TruncSeries u = TruncSeries::from_longs(R, 12, {2, 1});
    TruncSeries w = normalize_invertible(u);
    // u^{o(p-1)} has derivative 4, a 1-unit
    CHECK(w.coeff(1).agrees_with(PadicScalar::from_long(R, 4)));
    CHECK(agrees(w, compose(u, u)));
}
