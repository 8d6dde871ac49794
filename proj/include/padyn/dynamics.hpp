#pragma once

#include "padyn/series.hpp"

namespace padyn {

struct CommuteReport {
    bool ok = false;
    std::optional<long> first_fail_degree; // least certified mismatch of f.g - g.f
    bool exact = false;                    // difference vanished exactly
};

/// Does f(g(X)) = g(f(X)) hold at working precision?
CommuteReport check_commute(const TruncSeries& f, const TruncSeries& g);

enum class Stability { Stable, Unstable, UnstableAtPrecision };

/// Stable: g'(0) is not a root of unity (including 0 and the p = 2 sign case).
Stability is_stable(const TruncSeries& g);

struct CommutingSolution {
    TruncSeries g;        // the unique series with g'(0) = a commuting with f
    long min_coeff_val;   // min valuation over certified-nonzero coefficients
    bool integral;        // min_coeff_val >= 0 (all coefficients in O)
};

/// Unique g commuting with f (noninvertible: 0 < val f'(0) < inf) with the
/// prescribed derivative a at 0.
CommutingSolution solve_commuting(const TruncSeries& f, const PadicScalar& a);

struct LubinLog {
    TruncSeries L;          // L(0) = 0, L'(0) = 1, L(f(X)) = f'(0) L(X)
    TruncSeries L_limit;    // the same series from the iterate limit
    long limit_iterations;  // iterations until the limit stabilized
};

/// Both constructions of the logarithm of a stable noninvertible series; they
/// must agree on all certified digits.
LubinLog lubin_log(const TruncSeries& f);
TruncSeries lubin_log_recursion(const TruncSeries& f);
TruncSeries lubin_log_limit(const TruncSeries& f, long* iterations = nullptr);

struct IntegralityReport {
    long min_val;            // min valuation over certified coefficients
    std::optional<long> worst_index;
    bool integral;           // min_val >= 0
};

/// Coefficient integrality of a univariate series.
IntegralityReport integrality(const TruncSeries& f);

/// Is L'(X) integral (all derivative coefficients in O)?
IntegralityReport log_derivative_report(const TruncSeries& L);

struct CriterionAReport {
    bool holds = false;
    std::optional<long> witness; // least k >= 1 with val f'_k < val f'(0)
    bool exact = false;          // decided from exact coefficient data
};

/// val of every higher coefficient of f' is >= val f'(0).
CriterionAReport criterion_A(const TruncSeries& f);

struct CriterionBReport {
    bool holds = false;
    std::string reason;            // set when the criterion fails
    std::optional<TruncSeries> g0; // monic m-th root of the distinguished part
};

/// Weierstrass-side criterion for f to descend through X^m: the distinguished
/// part g of f/X is an m-th power g0^m with g0 separable, m | q - 1 for
/// q = wideg f, and the distinguished part of f' divides a power of X g0.
CriterionBReport criterion_B(const TruncSeries& f, long m);

struct WidegShapeReport {
    long d = 0; // wideg f = p^d
    bool holds = false;
    std::optional<long> witness; // index i (not 0 mod p^d) with val f_i = 0
};

/// For wideg f = q = p^d: coefficients at indices not divisible by p^d lie in m.
WidegShapeReport wideg_shape_check(const TruncSeries& f);

/// u^{e} composition power used to push an invertible series into the 1-unit
/// derivative case (e defaults to p - 1, and to 2 when p = 2).
TruncSeries normalize_invertible(const TruncSeries& u, long exponent = 0);

} // namespace padyn
