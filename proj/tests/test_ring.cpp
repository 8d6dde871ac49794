#include "doctest.h"
#include "padyn/ring.hpp"

using namespace padyn;

TEST_CASE("primality guard") {
    CHECK_NOTHROW(make_zp(2));
    CHECK_NOTHROW(make_zp(97));
    CHECK_THROWS_AS(make_zp(1), InputError);
    CHECK_THROWS_AS(make_zp(4), InputError);
    CHECK_THROWS_AS(make_zp(91), InputError); // 7 * 13
}

TEST_CASE("canonical irreducible moduli for small fields") {
    // lexicographically least monic irreducibles (constant coefficient first)
    CHECK(canonical_irreducible(2, 2) == std::vector<long>{1, 1, 1});
    CHECK(canonical_irreducible(2, 3) == std::vector<long>{1, 0, 1, 1}); // x^3 + x^2 + 1
    CHECK(canonical_irreducible(3, 2) == std::vector<long>{1, 0, 1});    // x^2 + 1
    CHECK(canonical_irreducible(5, 2) == std::vector<long>{1, 1, 1});    // x^2 + x + 1
    // determinism
    CHECK(canonical_irreducible(3, 3) == canonical_irreducible(3, 3));
}

TEST_CASE("modulus validation") {
    CHECK_THROWS_AS(make_ring(3, 2, {1, 0, 2}, 8), InputError);  // not monic
    CHECK_THROWS_AS(make_ring(3, 2, {2, 0, 1}, 8), InputError);  // x^2+2 = (x+1)(x+2) mod 3
    CHECK_NOTHROW(make_ring(3, 2, {1, 0, 1}, 8));
}

TEST_CASE("residue field arithmetic in F_9") {
    auto R = make_unramified(3, 2, 8); // F_9 = F_3[x]/(x^2+1)
    const RingConfig& cfg = *R;
    FqElem x{0, 1};
    FqElem x2 = fq::mul(cfg, x, x);
    CHECK(x2 == FqElem{2, 0}); // x^2 = -1
    // multiplicative order of every nonzero element divides 8
    for (long i = 1; i < 9; ++i) {
        FqElem a = fq::from_lex_index(cfg, i);
        CHECK(fq::eq(fq::pow(cfg, a, 8), fq::one(cfg)));
        CHECK(fq::eq(fq::mul(cfg, a, fq::inv(cfg, a)), fq::one(cfg)));
    }
}

TEST_CASE("field axioms by exhaustion in F_8") {
    auto R = make_unramified(2, 3, 8);
    const RingConfig& cfg = *R;
    for (long i = 0; i < 8; ++i)
        for (long j = 0; j < 8; ++j) {
            FqElem a = fq::from_lex_index(cfg, i), b = fq::from_lex_index(cfg, j);
            CHECK(fq::eq(fq::mul(cfg, a, b), fq::mul(cfg, b, a)));
            for (long k = 0; k < 8; ++k) {
                FqElem c = fq::from_lex_index(cfg, k);
                CHECK(fq::eq(fq::mul(cfg, a, fq::mul(cfg, b, c)),
                             fq::mul(cfg, fq::mul(cfg, a, b), c)));
                CHECK(fq::eq(fq::mul(cfg, a, fq::add(cfg, b, c)),
                             fq::add(cfg, fq::mul(cfg, a, b), fq::mul(cfg, a, c))));
            }
        }
}

TEST_CASE("m-th roots in residue fields") {
    auto z5 = make_zp(5, 8);
    // squares mod 5: 1, 4
    CHECK(fq::is_mth_power(*z5, {1}, 2));
    CHECK(fq::is_mth_power(*z5, {4}, 2));
    CHECK(!fq::is_mth_power(*z5, {2}, 2));
    CHECK(!fq::is_mth_power(*z5, {3}, 2));
    FqElem r = fq::mth_root(*z5, {4}, 2);
    CHECK(fq::eq(fq::mul(*z5, r, r), FqElem{4}));
    // the lexicographic tie-break picks the smaller of the two roots
    CHECK(r == FqElem{2});

    // extension degree needed for sqrt(2) over F_5 is 2
    CHECK(fq::mth_root_extension_degree(*z5, {2}, 2) == 2);
    CHECK(fq::mth_root_extension_degree(*z5, {4}, 2) == 1);
    // cube roots over F_7: gcd(3, 6) = 3, cubes are {1, 6}
    auto z7 = make_zp(7, 8);
    CHECK(fq::mth_root_extension_degree(*z7, {6}, 3) == 1);
    CHECK(fq::mth_root_extension_degree(*z7, {2}, 3) == 3); // 3 | (7^t-1)/gcd... first t with 2 a cube
}

TEST_CASE("every m-th root claim verifies") {
    auto R = make_unramified(3, 2, 8);
    for (long i = 1; i < 9; ++i) {
        FqElem a = fq::from_lex_index(*R, i);
        for (long m : {2, 4, 5}) {
            if (!fq::is_mth_power(*R, a, m)) continue;
            FqElem r = fq::mth_root(*R, a, m);
            CHECK(fq::eq(fq::pow(*R, r, m), a));
        }
    }
}
