#include "padyn/formal_group.hpp"

namespace padyn {

namespace {

long val_p_factorial(long j, long p) {
    long v = 0;
    while (j > 0) {
        j /= p;
        v += j;
    }
    return v;
}

/// S(x(X), y(Y)) for univariate substitutions into the two slots.
BivarTrunc substitute_two(const BivarTrunc& S, const TruncSeries& x, const TruncSeries& y) {
    const RingPtr& cfg = S.config();
    long T = S.total_cap();
    if (!x.coeff(0).is_zero() || !y.coeff(0).is_zero())
        throw DomainError("substitute_two: arguments need zero constant term");
    BivarTrunc X = BivarTrunc::from_univariate(x.truncated(std::min(T, x.cap())), T, 0);
    BivarTrunc Y = BivarTrunc::from_univariate(y.truncated(std::min(T, y.cap())), T, 1);
    BivarTrunc acc(cfg, T);
    for (long i = T; i >= 0; --i) {
        BivarTrunc row(cfg, T);
        for (long j = T - i; j >= 0; --j) {
            row = mul(row, Y);
            row.set_coeff(0, 0, row.coeff(0, 0) + S.coeff(i, j));
        }
        acc = add(mul(acc, X), row);
    }
    return acc;
}

} // namespace

GroupLaw build_group_law(const TruncSeries& L, long total_cap) {
    if (!L.coeff(0).is_zero()) throw DomainError("build_group_law: L(0) must be 0");
    if (!L.coeff(1).is_unit_kind() || !L.coeff(1).agrees_with(PadicScalar::one(L.config())))
        throw DomainError("build_group_law: L'(0) must be 1");
    const RingPtr& cfg = L.config();
    TruncSeries Linv = comp_inverse(L);
    BivarTrunc B = add(BivarTrunc::from_univariate(L.truncated(std::min(total_cap, L.cap())),
                                                   total_cap, 0),
                       BivarTrunc::from_univariate(L.truncated(std::min(total_cap, L.cap())),
                                                   total_cap, 1));
    BivarTrunc S(cfg, total_cap);
    for (long k = std::min(total_cap, Linv.cap()); k >= 0; --k) {
        S = mul(S, B);
        S.set_coeff(0, 0, S.coeff(0, 0) + Linv.coeff(k));
    }
    return GroupLaw{S, L, Linv};
}

LawIntegralityReport law_integrality(const BivarTrunc& S) {
    LawIntegralityReport rep{PadicScalar::VAL_INF, std::nullopt, true};
    for (long i = 0; i <= S.total_cap(); ++i)
        for (long j = 0; i + j <= S.total_cap(); ++j) {
            const PadicScalar& c = S.coeff(i, j);
            if (c.is_unit_kind()) {
                if (c.valuation() < rep.min_val) {
                    rep.min_val = c.valuation();
                    rep.worst_index = std::make_pair(i, j);
                }
            } else if (!c.is_zero() && c.val_lower_bound() < 0) {
                throw PrecisionExhaustedError("law_integrality: coefficient (" +
                                              std::to_string(i) + "," + std::to_string(j) +
                                              ") uncertified");
            }
        }
    rep.integral = rep.min_val >= 0;
    return rep;
}

FactorialBoundReport factorial_bound_check(const GroupLaw& G) {
    long p = G.S.config()->p();
    FactorialBoundReport rep{true, std::nullopt};
    for (long j = 0; j <= G.S.total_cap(); ++j) {
        long bound = -val_p_factorial(j, p);
        for (long i = 0; i + j <= G.S.total_cap(); ++i) {
            const PadicScalar& c = G.S.coeff(i, j);
            if (c.is_unit_kind() && c.valuation() < bound) {
                rep.holds = false;
                rep.witness = j;
                return rep;
            }
            if (!c.is_unit_kind() && !c.is_zero() && c.val_lower_bound() < bound)
                throw PrecisionExhaustedError("factorial_bound_check: column " +
                                              std::to_string(j) + " uncertified");
        }
    }
    return rep;
}

AxiomReport check_group_axioms(const GroupLaw& G) {
    const BivarTrunc& S = G.S;
    const RingPtr& cfg = S.config();
    AxiomReport rep;
    rep.identity = true;
    for (long i = 0; i <= S.total_cap(); ++i) {
        PadicScalar want = i == 1 ? PadicScalar::one(cfg) : PadicScalar::zero(cfg);
        if (!S.coeff(i, 0).agrees_with(want)) rep.identity = false;
        if (!S.coeff(0, i).agrees_with(want)) rep.identity = false;
    }
    rep.commutative = true;
    for (long i = 0; i <= S.total_cap(); ++i)
        for (long j = i + 1; i + j <= S.total_cap(); ++j)
            if (!S.coeff(i, j).agrees_with(S.coeff(j, i))) rep.commutative = false;
    // associativity at full exactness is hopeless after L^{-1} substitution;
    // certified digits are what the law carries
    BivarTrunc Sd = S.dropped_exact();
    TrivarTrunc lhs = substitute_pair(Sd, Sd, true);
    TrivarTrunc rhs = substitute_pair(Sd, Sd, false);
    auto bad = TrivarTrunc::first_disagreement(lhs, rhs);
    rep.associative = !bad.has_value();
    rep.assoc_witness = bad;
    return rep;
}

TruncSeries endomorphism(const GroupLaw& G, const PadicScalar& a) {
    return compose(G.Linv, scalar_mul(a, G.L));
}

bool is_endomorphism(const GroupLaw& G, const TruncSeries& g) {
    const BivarTrunc& S = G.S;
    long T = S.total_cap();
    TruncSeries gt = g.truncated(std::min(T, g.cap())).dropped_exact();
    // g(S(X,Y))
    BivarTrunc lhs(S.config(), T);
    for (long k = gt.cap(); k >= 0; --k) {
        lhs = mul(lhs, S);
        lhs.set_coeff(0, 0, lhs.coeff(0, 0) + gt.coeff(k));
    }
    BivarTrunc rhs = substitute_two(S, gt, gt);
    for (long i = 0; i <= T; ++i)
        for (long j = 0; i + j <= T; ++j)
            if (!lhs.coeff(i, j).agrees_with(rhs.coeff(i, j))) return false;
    return true;
}

UnCommuterReport un_commuter_check(const GroupLaw& G, const TruncSeries& f, long n) {
    long T = G.S.total_cap();
    TruncSeries fn = iterate(f, n).truncated(std::min(T, f.cap()));
    TruncSeries un = G.S.substitute(TruncSeries::identity(f.config(), fn.cap()), fn).truncated(
        std::min(T, fn.cap()));
    UnCommuterReport rep{un, un.coeff(1), false, false};
    PadicScalar want = PadicScalar::one(f.config()) + f.coeff(1).pow_int(n);
    rep.deriv_matches = rep.deriv.agrees_with(want);
    rep.commutes_with_f = check_commute(un, f.truncated(un.cap())).ok;
    return rep;
}

TruncSeries padic_iterate(const GroupLaw& G, const TruncSeries& u, const mpq_class& a) {
    const PadicScalar& u1 = u.coeff(1);
    return endomorphism(G, pow_1unit(u1, a));
}

} // namespace padyn
