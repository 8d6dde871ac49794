#pragma once

#include "padyn/dynamics.hpp"

namespace padyn {

struct SemiConjugacy {
    TruncSeries f;  // the downstairs series, in the base ring
    long m = 1;
    TruncSeries f0; // the upstairs series with f(X^m) = f0(X)^m
    PadicScalar c;  // scalar factor of f0: c^m = p^t v(0) for f = X p^t g v
    RingPtr ring;   // ring of f0 (extension of the base when needed)
    int rel_degree = 1;
    std::optional<Embedding> embedding; // base -> ring when rel_degree > 1

    // Weierstrass pieces of the construction
    TruncSeries g;  // distinguished part of f/X
    TruncSeries g0; // monic m-th root of g
    TruncSeries w0; // m-th root of the unit part (residue 1 normalization)
};

/// Descent construction: given f whose g-part is an m-th power, build f0
/// with f(X^m) = f0(X)^m and f0'(0)^m = f'(0), passing to an unramified
/// extension when f'(0)/p^0-content has no m-th root downstairs.
SemiConjugacy build_f0(const TruncSeries& f, long m);

/// Lift of an invertible commuter u of f (u'(0) = 1 mod m required) to a
/// commuter u0 of f0 with u0(X)^m = u(X^m).
TruncSeries build_u0(const SemiConjugacy& sc, const TruncSeries& u);

struct SemiConjReport {
    bool ok = false;
    std::optional<long> first_fail_degree;
};

/// Does f(h(X)) = h(f_S(X)) hold at working precision?
SemiConjReport verify_semiconjugacy(const TruncSeries& f, const TruncSeries& h,
                                    const TruncSeries& f_S);

struct TransportReport {
    long n;
    bool iterate_identity = false; // f^{on}(X^m) = f0^{on}(X)^m
    bool upstairs_separable = false; // distinguished part of f0^{on} is separable
    bool skipped = false;          // cap too small for wideg(f0^{on})
};

/// Multiplicity transport: upstairs iterates have simple open-disk roots, and
/// the semi-conjugacy intertwines the iterates.
TransportReport multiplicity_transport_check(const SemiConjugacy& sc, long n);

} // namespace padyn
