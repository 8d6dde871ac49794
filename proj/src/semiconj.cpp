#include "padyn/semiconj.hpp"

namespace padyn {

namespace {

TruncSeries embed_series(const std::optional<Embedding>& emb, const TruncSeries& s,
                         const RingPtr& target) {
    if (!emb) return s;
    TruncSeries out(target, s.cap());
    for (long k = 0; k <= s.cap(); ++k) out.set_coeff(k, emb->apply(s.coeff(k)));
    out.set_polynomial(s.is_polynomial());
    return out;
}

/// s(X^m) truncated at cap.
TruncSeries expand_pm(const TruncSeries& s, long m, long cap) {
    TruncSeries out(s.config(), cap);
    for (long j = 0; j <= s.cap() && j * m <= cap; ++j) out.set_coeff(j * m, s.coeff(j));
    out.set_polynomial(s.is_polynomial());
    return out;
}

void require_noninvertible(const TruncSeries& f, const char* where) {
    if (!f.coeff(0).is_zero()) throw DomainError(std::string(where) + ": requires f(0) = 0");
    const PadicScalar& f1 = f.coeff(1);
    if (!f1.is_unit_kind())
        throw PrecisionExhaustedError(std::string(where) + ": f'(0) not certified nonzero");
    if (f1.valuation() < 1)
        throw DomainError(std::string(where) + ": f'(0) must lie in the maximal ideal");
}

} // namespace

SemiConjugacy build_f0(const TruncSeries& f, long m) {
    if (m < 1) throw InputError("build_f0: m must be positive");
    require_noninvertible(f, "build_f0");
    const RingPtr& cfg = f.config();
    if (m % cfg->p() == 0) throw UnsupportedRamifiedError("build_f0: p divides m");
    long cap = f.cap();

    WeierstrassSplit wsp = weierstrass_prep(f); // f = X * p^t * g * v
    long t = wsp.content_valuation;
    if (t % m != 0)
        throw UnsupportedRamifiedError("build_f0: content p^" + std::to_string(t) +
                                       " has no unramified m-th root");
    TruncSeries g0 = poly_mth_root(wsp.distinguished, m);

    // unit part: v = v(0) * (1 + w); the 1-unit series has a root with residue 1
    PadicScalar v0 = wsp.unit.coeff(0);
    TruncSeries v_norm = scalar_mul(v0.inv(), wsp.unit);
    TruncSeries y = series_mth_root_unit(v_norm, m, fq::one(*cfg));

    // scalar part: c^m = p^t * v(0), passing to an unramified extension when
    // the residue of v(0) has no m-th root
    ResidueRootResult rr = residue_mth_root(v0.residue(), m, cfg);
    SemiConjugacy sc{f, m, f, PadicScalar::one(cfg), rr.ring, rr.rel_degree, rr.embedding,
                     wsp.distinguished, g0, y};
    PadicScalar v0_up = rr.embedding ? rr.embedding->apply(v0) : v0;
    PadicScalar c = mth_root_unit(v0_up, m, rr.root).shifted(t / m);
    sc.c = c;

    TruncSeries A = mul(embed_series(rr.embedding, g0, rr.ring),
                        embed_series(rr.embedding, y, rr.ring));
    TruncSeries f0 = scalar_mul(c, expand_pm(A, m, cap - 1).shifted_up(1));
    f0.set_polynomial(false);
    sc.f0 = f0;

    // f(X^m) = f0(X)^m and f0'(0)^m = f'(0)
    TruncSeries lhs = expand_pm(embed_series(rr.embedding, f, rr.ring), m, cap);
    if (!agrees(lhs, pow_trunc(f0, m)))
        throw TheoremViolationError("build_f0: f(X^m) != f0(X)^m at working precision");
    PadicScalar f1_up = rr.embedding ? rr.embedding->apply(f.coeff(1)) : f.coeff(1);
    if (!sc.f0.coeff(1).pow_int(m).agrees_with(f1_up))
        throw TheoremViolationError("build_f0: f0'(0)^m != f'(0)");
    return sc;
}

TruncSeries build_u0(const SemiConjugacy& sc, const TruncSeries& u) {
    require_same_ring(*sc.f.config(), *u.config(), "build_u0");
    if (!u.coeff(0).is_zero()) throw DomainError("build_u0: u(0) must be 0");
    const PadicScalar& u1 = u.coeff(1);
    if (!u1.is_unit_kind() || u1.valuation() != 0)
        throw DomainError("build_u0: u'(0) must be a unit");
    PadicScalar d = u1 - PadicScalar::one(u.config());
    if (d.is_unit_kind() && d.valuation() == 0)
        throw NormalizationRequiredError(
            "build_u0: u'(0) is not a 1-unit; normalize u (compose-power) first");
    long m = sc.m, cap = u.cap();
    // u(X^m) = X^m * W(X^m) with W(T) = sum u_{j+1} T^j; u0 = X * W^{1/m}(X^m)
    TruncSeries W(u.config(), cap - 1 >= 0 ? cap - 1 : 0);
    for (long j = 0; j + 1 <= cap; ++j) W.set_coeff(j, u.coeff(j + 1));
    W.set_polynomial(false);
    TruncSeries y = series_mth_root_unit(W, m, fq::one(*u.config()));
    TruncSeries y_up = embed_series(sc.embedding, y, sc.ring);
    TruncSeries u0 = expand_pm(y_up, m, cap - 1).shifted_up(1);
    u0.set_polynomial(false);

    TruncSeries lhs = expand_pm(embed_series(sc.embedding, u, sc.ring), m, cap);
    if (!agrees(lhs, pow_trunc(u0, m)))
        throw TheoremViolationError("build_u0: u(X^m) != u0(X)^m at working precision");
    CommuteReport cr = check_commute(u0, sc.f0);
    if (!cr.ok)
        throw TheoremViolationError("build_u0: u0 does not commute with f0 (degree " +
                                    std::to_string(*cr.first_fail_degree) + ")");
    return u0;
}

SemiConjReport verify_semiconjugacy(const TruncSeries& f, const TruncSeries& h,
                                    const TruncSeries& f_S) {
    TruncSeries diff = sub(compose(f, h), compose(h, f_S));
    SemiConjReport rep;
    rep.ok = true;
    for (long k = 0; k <= diff.cap(); ++k)
        if (diff.coeff(k).is_unit_kind()) {
            rep.ok = false;
            rep.first_fail_degree = k;
            return rep;
        }
    return rep;
}

TransportReport multiplicity_transport_check(const SemiConjugacy& sc, long n) {
    TransportReport rep{n, false, false, false};
    if (n < 1) throw InputError("multiplicity_transport_check: n must be >= 1");
    long q0 = sc.m * sc.g0.degree() + 1; // wideg of f0: its g-part is g0(X^m)
    long Q = 1;
    for (long i = 0; i < n; ++i) {
        Q *= q0;
        if (Q > sc.f0.cap()) {
            rep.skipped = true;
            return rep;
        }
    }
    TruncSeries fn0 = iterate(sc.f0, n);
    WeierstrassSplit wsp = weierstrass_prep(fn0);
    rep.upstairs_separable = is_separable(wsp.distinguished);

    TruncSeries fn = iterate(sc.f, n);
    TruncSeries lhs = expand_pm(embed_series(sc.embedding, fn, sc.ring), sc.m, sc.f0.cap());
    rep.iterate_identity = agrees(lhs, pow_trunc(fn0, sc.m));
    return rep;
}

} // namespace padyn
