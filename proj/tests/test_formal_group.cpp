#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "padyn/formal_group.hpp"

using namespace padyn;

namespace {

// the multiplicative group over Z_p: L = log(1+X)
GroupLaw gm_law(const RingPtr& R, long T) {
    oracles::QSeries lg = oracles::log1p_series((size_t)T);
    TruncSeries L = TruncSeries::zero(R, T);
    for (long k = 1; k <= T; ++k)
        L.set_coeff(k, PadicScalar::from_rational(R, lg[k - 1]));
    return build_group_law(L, T);
}

TruncSeries one_plus_x_pow(const RingPtr& R, long cap, long e) {
    oracles::QSeries q = oracles::binomial_series(e, (size_t)cap + 1);
    TruncSeries out = TruncSeries::zero(R, cap);
    for (long k = 1; k <= cap; ++k)
        out.set_coeff(k, PadicScalar::from_rational(R, q[k]));
    return out; // (1+X)^e - 1
}

} // namespace

TEST_CASE("multiplicative group law is X + Y + XY") {
    auto R = make_zp(5, 24);
    GroupLaw G = gm_law(R, 10);
    for (long i = 0; i + 0 <= 10; ++i)
        for (long j = 0; i + j <= 10; ++j) {
            long want = ((i == 1 && j == 0) || (i == 0 && j == 1) || (i == 1 && j == 1)) ? 1 : 0;
            CHECK(G.S.coeff(i, j).agrees_with(PadicScalar::from_long(R, want)));
        }
    AxiomReport ax = check_group_axioms(G);
    CHECK(ax.ok());
    LawIntegralityReport li = law_integrality(G.S);
    CHECK(li.integral);
    CHECK(factorial_bound_check(G).holds);
}

TEST_CASE("multiplicative group endomorphisms") {
    auto R = make_zp(5, 24);
    GroupLaw G = gm_law(R, 12);
    TruncSeries two = endomorphism(G, PadicScalar::from_long(R, 2));
    CHECK(agrees(two, TruncSeries::from_longs(R, 12, {2, 1}))); // (1+X)^2 - 1
    CHECK(is_endomorphism(G, two));
    CHECK(is_endomorphism(G, one_plus_x_pow(R, 12, 5)));
    // -2X + ... is not an endomorphism of Gm unless it is [-2]
    TruncSeries rogue = TruncSeries::from_longs(R, 12, {2, 2});
    CHECK(!is_endomorphism(G, rogue));
}

TEST_CASE("endomorphisms give a ring action") {
    auto R = make_zp(5, 24);
    GroupLaw G = gm_law(R, 10);
    std::mt19937_64 rng(0xac7);
    std::uniform_int_distribution<long> pick(-30, 30);
    for (int trial = 0; trial < 200; ++trial) {
        long a = pick(rng), b = pick(rng);
        PadicScalar pa = PadicScalar::from_long(R, a);
        PadicScalar pb = PadicScalar::from_long(R, b);
        TruncSeries ea = endomorphism(G, pa), eb = endomorphism(G, pb);
        // multiplicative: [a] o [b] = [ab]
        CHECK(agrees(compose(ea, eb), endomorphism(G, pa * pb)));
        // additive: S([a](X), [b](X)) = [a+b](X)
        CHECK(agrees(G.S.substitute(ea, eb), endomorphism(G, pa + pb)));
    }
}

TEST_CASE("law from the Lubin log of a Lubin-Tate series") {
    auto R = make_zp(3, 32);
    TruncSeries f = TruncSeries::from_longs(R, 16, {3, 0, 1});
    TruncSeries L = lubin_log_recursion(f);
    GroupLaw G = build_group_law(L, 8);
    AxiomReport ax = check_group_axioms(G);
    CHECK(ax.identity);
    CHECK(ax.commutative);
    CHECK(ax.associative);
    // f is an endomorphism of its own law, as is the cubic commuter
    CHECK(is_endomorphism(G, f.truncated(8)));
    CommutingSolution u = solve_commuting(f, PadicScalar::from_long(R, 2));
    CHECK(is_endomorphism(G, u.g.truncated(8)));
    CHECK(law_integrality(G.S).integral);
    CHECK(factorial_bound_check(G).holds);
}

TEST_CASE("negative control: a non-Lubin-Tate log gives a nonintegral law") {
    auto R = make_zp(3, 32);
    TruncSeries f = TruncSeries::from_longs(R, 16, {9, 6, 1}); // X(X+3)^2 shape
    TruncSeries L = lubin_log_recursion(f);
    GroupLaw G = build_group_law(L, 8);
    LawIntegralityReport li = law_integrality(G.S);
    CHECK(!li.integral);
    CHECK(li.min_val < 0);
    CHECK(check_group_axioms(G).ok());
}

TEST_CASE("translation commuters u_n = X +_G f^{on}") {
    auto R = make_zp(3, 32);
    TruncSeries f = TruncSeries::from_longs(R, 16, {3, 0, 1});
    GroupLaw G = build_group_law(lubin_log_recursion(f), 16);
    for (long n = 1; n <= 2; ++n) {
        UnCommuterReport rep = un_commuter_check(G, f, n);
        CHECK(rep.deriv_matches);
        long want = n == 1 ? 4 : 10; // 1 + 3^n
        CHECK(rep.deriv.agrees_with(PadicScalar::from_long(R, want)));
        CHECK(rep.commutes_with_f);
    }
}

TEST_CASE("p-adic iteration interpolates composition powers") {
    auto R = make_zp(3, 32);
    TruncSeries f = TruncSeries::from_longs(R, 12, {3, 0, 1});
    GroupLaw G = build_group_law(lubin_log_recursion(f), 12);
    UnCommuterReport u1 = un_commuter_check(G, f, 1); // derivative 4, a 1-unit
    const TruncSeries& u = u1.u_n;
    CHECK(agrees(padic_iterate(G, u, 1), u));
    CHECK(agrees(padic_iterate(G, u, 2), compose(u, u)));
    CHECK(agrees(padic_iterate(G, u, -1), comp_inverse(u)));
    // half iterate squares back to u
    TruncSeries half = padic_iterate(G, u, mpq_class(1, 2));
    CHECK(agrees(compose(half, half), u));
    CHECK(check_commute(f, half).ok);
}
