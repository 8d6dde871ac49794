#include "padyn/dynamics.hpp"

#include <numeric>

namespace padyn {

namespace {

void require_zero_constant(const TruncSeries& f, const char* where) {
    const PadicScalar& c0 = f.coeff(0);
    if (c0.kind() == ScalarKind::ZeroAtPrec)
        throw PrecisionExhaustedError(std::string(where) + ": f(0) not certifiably zero");
    if (!c0.is_zero()) throw DomainError(std::string(where) + ": requires f(0) = 0");
}

/// f'(0) for a noninvertible stable series: a certified unit multiple of p.
PadicScalar noninvertible_derivative(const TruncSeries& f, const char* where) {
    require_zero_constant(f, where);
    const PadicScalar& f1 = f.coeff(1);
    if (f1.is_zero()) throw DomainError(std::string(where) + ": f'(0) = 0");
    if (!f1.is_unit_kind())
        throw PrecisionExhaustedError(std::string(where) + ": f'(0) not certified nonzero");
    if (f1.valuation() < 1)
        throw DomainError(std::string(where) + ": f'(0) must lie in the maximal ideal");
    return f1;
}

/// f'(0)^k - f'(0); nonzero of valuation exactly val f'(0) when f is
/// noninvertible stable.
PadicScalar recursion_pivot(const PadicScalar& f1, long k) {
    return f1.pow_int(k) - f1;
}

} // namespace

CommuteReport check_commute(const TruncSeries& f, const TruncSeries& g) {
    TruncSeries d = sub(compose(f, g), compose(g, f));
    CommuteReport rep;
    rep.ok = true;
    rep.exact = true;
    for (long k = 0; k <= d.cap(); ++k) {
        const PadicScalar& c = d.coeff(k);
        if (c.is_unit_kind()) {
            rep.ok = false;
            rep.exact = false;
            rep.first_fail_degree = k;
            return rep;
        }
        if (!c.is_zero()) rep.exact = false;
    }
    return rep;
}

Stability is_stable(const TruncSeries& g) {
    require_zero_constant(g, "is_stable");
    const PadicScalar& a = g.coeff(1);
    if (a.is_zero()) return Stability::Unstable; // 0 is excluded alongside roots of unity
    if (!a.is_unit_kind())
        throw PrecisionExhaustedError("is_stable: g'(0) not certified nonzero");
    if (a.valuation() > 0) return Stability::Stable;
    if (a.valuation() < 0) return Stability::Stable;
    const RingPtr& cfg = a.config();
    // roots of unity in the unramified ring are mu_{q-1} (p odd) or
    // mu_{q-1} x {+-1} (p = 2)
    mpz_class n = cfg->q() - 1;
    if (cfg->p() == 2) n *= 2;
    PadicScalar b = a.pow_int(n);
    PadicScalar d = b - PadicScalar::one(cfg);
    if (d.is_unit_kind()) return Stability::Stable; // b not even in 1 + m, or 1-unit != 1
    if (d.is_zero()) return Stability::Unstable;
    return Stability::UnstableAtPrecision;
}

CommutingSolution solve_commuting(const TruncSeries& f, const PadicScalar& a) {
    require_same_ring(*f.config(), *a.config(), "solve_commuting");
    PadicScalar f1 = noninvertible_derivative(f, "solve_commuting");
    if (a.is_zero()) throw DomainError("solve_commuting: a = 0");
    long cap = f.cap();
    TruncSeries g(f.config(), cap);
    if (cap >= 1) g.set_coeff(1, a);
    for (long k = 2; k <= cap; ++k) {
        TruncSeries r = sub(compose(g.truncated(k), f.truncated(k)),
                            compose(f.truncated(k), g.truncated(k)));
        PadicScalar pivot = recursion_pivot(f1, k);
        if (!pivot.is_unit_kind())
            throw PrecisionExhaustedError("solve_commuting: recursion pivot uncertified at degree " +
                                          std::to_string(k));
        g.set_coeff(k, -(r.coeff(k) * pivot.inv()));
    }
    g.set_polynomial(false);
    CommutingSolution sol{g, 0, true};
    IntegralityReport ir = integrality(g);
    sol.min_coeff_val = ir.min_val;
    sol.integral = ir.integral;
    return sol;
}

TruncSeries lubin_log_recursion(const TruncSeries& f) {
    PadicScalar f1 = noninvertible_derivative(f, "lubin_log");
    long cap = f.cap();
    TruncSeries L = TruncSeries::identity(f.config(), cap);
    for (long k = 2; k <= cap; ++k) {
        TruncSeries r = sub(compose(L.truncated(k), f.truncated(k)),
                            scalar_mul(f1, L.truncated(k)));
        PadicScalar pivot = recursion_pivot(f1, k);
        if (!pivot.is_unit_kind())
            throw PrecisionExhaustedError("lubin_log: recursion pivot uncertified at degree " +
                                          std::to_string(k));
        L.set_coeff(k, -(r.coeff(k) * pivot.inv()));
    }
    L.set_polynomial(false);
    return L;
}

TruncSeries lubin_log_limit(const TruncSeries& f, long* iterations) {
    PadicScalar f1 = noninvertible_derivative(f, "lubin_log");
    long cap = f.cap();
    PadicScalar f1inv = f1.inv();
    // floating-only: consecutive iterates differ as exact rationals, the limit
    // is about agreement of certified digits
    TruncSeries h = TruncSeries::identity(f.config(), cap).dropped_exact();
    PadicScalar scale = PadicScalar::one(f.config());       // f'(0)^{-n}
    TruncSeries prev = h;
    bool have_match = false;
    long guard = 8 * ((long)f.config()->rel_precision() + cap) + 16;
    for (long n = 1; n <= guard; ++n) {
        h = compose(f, h);
        scale = scale * f1inv;
        TruncSeries cur = scalar_mul(scale, h);
        if (agrees(cur, prev)) {
            if (have_match) {
                if (iterations) *iterations = n;
                return cur;
            }
            have_match = true;
        } else {
            have_match = false;
        }
        prev = cur;
    }
    throw InternalInvariantError("lubin_log: iterate limit did not stabilize");
}

LubinLog lubin_log(const TruncSeries& f) {
    LubinLog out{lubin_log_recursion(f), TruncSeries::identity(f.config(), f.cap()), 0};
    out.L_limit = lubin_log_limit(f, &out.limit_iterations);
    if (auto bad = first_disagreement(out.L, out.L_limit))
        throw InternalInvariantError("lubin_log: recursion and limit disagree at degree " +
                                     std::to_string(*bad));
    return out;
}

IntegralityReport integrality(const TruncSeries& f) {
    IntegralityReport rep{PadicScalar::VAL_INF, std::nullopt, true};
    for (long k = 0; k <= f.cap(); ++k) {
        const PadicScalar& c = f.coeff(k);
        if (c.is_unit_kind()) {
            if (c.valuation() < rep.min_val) {
                rep.min_val = c.valuation();
                rep.worst_index = k;
            }
        } else if (!c.is_zero() && c.val_lower_bound() < 0) {
            throw PrecisionExhaustedError("integrality: coefficient " + std::to_string(k) +
                                          " has uncertified sign of valuation");
        }
    }
    rep.integral = rep.min_val >= 0;
    return rep;
}

IntegralityReport log_derivative_report(const TruncSeries& L) {
    return integrality(derivative(L));
}

CriterionAReport criterion_A(const TruncSeries& f) {
    PadicScalar f1 = noninvertible_derivative(f, "criterion_A");
    long v0 = f1.valuation();
    TruncSeries fp = derivative(f);
    CriterionAReport rep;
    rep.exact = true;
    for (long k = 1; k <= fp.cap(); ++k) {
        const PadicScalar& c = fp.coeff(k);
        if (c.is_zero()) continue;
        if (!c.has_exact()) rep.exact = false;
        Tri ok = c.val_ge(v0);
        if (ok == Tri::Unknown)
            throw PrecisionExhaustedError("criterion_A: valuation comparison uncertified at degree " +
                                          std::to_string(k));
        if (ok == Tri::False) {
            rep.holds = false;
            rep.witness = k;
            return rep;
        }
    }
    rep.holds = true;
    return rep;
}

namespace {

/// Remainder of A modulo a monic polynomial d (degrees stay below deg d).
TruncSeries reduce_mod_monic(const TruncSeries& A, const TruncSeries& d, long degd) {
    TruncSeries w = A;
    for (long i = w.cap(); i >= degd; --i) {
        PadicScalar t = w.coeff(i);
        if (t.is_zero()) continue;
        for (long j = 0; j <= degd; ++j)
            w.set_coeff(i - degd + j, w.coeff(i - degd + j) - t * d.coeff(j));
        w.set_coeff(i, PadicScalar::zero(A.config()));
    }
    return w;
}

} // namespace

CriterionBReport criterion_B(const TruncSeries& f, long m) {
    if (m < 2) throw InputError("criterion_B: m must be >= 2");
    CriterionBReport rep;
    WeierstrassSplit wp = weierstrass_prep(f);
    const TruncSeries& g = wp.distinguished;
    long degg = g.degree();
    if (degg % m != 0) {
        rep.reason = "m does not divide wideg(f) - 1";
        return rep;
    }
    if (m % f.config()->p() == 0)
        throw UnsupportedRamifiedError("criterion_B: p divides m");
    TruncSeries g0 = TruncSeries::identity(f.config(), f.cap());
    try {
        g0 = poly_mth_root(g, m);
    } catch (const NotAnMthPowerError&) {
        rep.reason = "distinguished part of f/X is not an m-th power";
        return rep;
    }
    rep.g0 = g0;
    if (!is_separable(g0)) {
        rep.reason = "m-th root of the distinguished part is not separable";
        return rep;
    }
    // open-disk roots of f' must be roots of X*g0: the distinguished part d of
    // f' has to divide (X*g0)^{deg d}, tested as (X*g0)^{deg d} = 0 mod d
    TruncSeries fp = derivative(f);
    WeierstrassSplit dp = weierstrass_prep_general(fp);
    const TruncSeries& d = dp.distinguished;
    long degd = d.degree();
    if (degd > 0) {
        TruncSeries R = reduce_mod_monic(g0.shifted_up(1), d, degd);
        TruncSeries acc = TruncSeries::constant(PadicScalar::one(f.config()), f.cap());
        for (long e = 0; e < degd; ++e) acc = reduce_mod_monic(mul(acc, R), d, degd);
        for (long k = 0; k < degd; ++k) {
            // zero-at-precision counts as divisible: the test certifies at
            // working precision
            if (acc.coeff(k).is_unit_kind()) {
                rep.reason = "f' has an open-disk root that is not a root of X*g0";
                return rep;
            }
        }
    }
    rep.holds = true;
    return rep;
}

WidegShapeReport wideg_shape_check(const TruncSeries& f) {
    WidegResult w = weierstrass_degree(f);
    if (!w.finite()) throw DomainError("wideg_shape_check: finite wideg within cap required");
    long q = w.value;
    long p = f.config()->p();
    long d = 0, t = q;
    while (t > 1 && t % p == 0) {
        t /= p;
        ++d;
    }
    if (t != 1 || q < 1)
        throw TheoremViolationError("wideg_shape_check: wideg " + std::to_string(q) +
                                    " is not a power of p = " + std::to_string(p));
    WidegShapeReport rep;
    rep.d = d;
    long pd = 1;
    for (long i = 0; i < d; ++i) pd *= p;
    for (long i = 0; i <= f.cap(); ++i) {
        if (i % pd == 0) continue;
        const PadicScalar& c = f.coeff(i);
        if (c.is_zero()) continue;
        Tri ok = c.val_ge(1);
        if (ok == Tri::Unknown)
            throw PrecisionExhaustedError("wideg_shape_check: coefficient " + std::to_string(i) +
                                          " uncertified");
        if (ok == Tri::False) {
            rep.holds = false;
            rep.witness = i;
            return rep;
        }
    }
    rep.holds = true;
    return rep;
}

TruncSeries normalize_invertible(const TruncSeries& u, long exponent) {
    long p = u.config()->p();
    long e = exponent > 0 ? exponent : (p == 2 ? 2 : p - 1);
    return iterate(u, e);
}

} // namespace padyn
