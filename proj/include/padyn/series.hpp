#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padyn/scalar.hpp"

namespace padyn {

/// Small exact fraction for Newton-polygon slopes / root valuations.
struct Frac {
    long num = 0;
    long den = 1;
    Frac() = default;
    Frac(long n, long d);
    bool operator==(const Frac&) const = default;
    bool operator<(const Frac& o) const { return num * o.den < o.num * den; }
    std::string str() const;
};

/// Univariate power series truncated at X^{cap}, coefficients in the ring.
class TruncSeries {
public:
    TruncSeries(RingPtr cfg, long cap);

    static TruncSeries zero(RingPtr cfg, long cap) { return TruncSeries(std::move(cfg), cap); }
    static TruncSeries constant(const PadicScalar& c, long cap);
    static TruncSeries identity(RingPtr cfg, long cap); // X
    static TruncSeries monomial(RingPtr cfg, long cap, long deg, const PadicScalar& c);
    /// Polynomial from integer coefficients starting at the given degree.
    static TruncSeries from_longs(RingPtr cfg, long cap, const std::vector<long>& coeffs,
                                  long from_degree = 1);
    static TruncSeries from_coeffs(RingPtr cfg, long cap, std::vector<PadicScalar> coeffs,
                                   bool is_polynomial);

    const RingPtr& config() const { return cfg_; }
    long cap() const { return cap_; }
    bool is_polynomial() const { return poly_; }
    void set_polynomial(bool b) { poly_ = b; }

    const PadicScalar& coeff(long k) const;
    void set_coeff(long k, PadicScalar c);

    /// Degree of a polynomial (last certainly-nonzero index; exact zeros above).
    long degree() const;

    TruncSeries truncated(long new_cap) const;
    TruncSeries dropped_exact() const;
    /// Divide by X^k; requires the low coefficients to be exactly zero.
    TruncSeries shifted_down(long k) const;
    /// Multiply by X^k.
    TruncSeries shifted_up(long k) const;

    std::string str(const std::string& var = "X") const;

private:
    RingPtr cfg_;
    long cap_;
    std::vector<PadicScalar> c_;
    bool poly_ = false;
};

// ---- arithmetic ------------------------------------------------------------

TruncSeries add(const TruncSeries& a, const TruncSeries& b);
TruncSeries sub(const TruncSeries& a, const TruncSeries& b);
TruncSeries neg(const TruncSeries& a);
TruncSeries mul(const TruncSeries& a, const TruncSeries& b);
TruncSeries scalar_mul(const PadicScalar& c, const TruncSeries& a);
TruncSeries derivative(const TruncSeries& f);
TruncSeries pow_trunc(const TruncSeries& f, long n);

/// outer(inner); inner must have exactly-zero constant term.
TruncSeries compose(const TruncSeries& outer, const TruncSeries& inner);
/// Compositional inverse: g with f(g) = g(f) = X mod X^{cap+1}.
TruncSeries comp_inverse(const TruncSeries& f);
/// n-fold composition of f with itself (n = 0 gives X).
TruncSeries iterate(const TruncSeries& f, long n);
/// Multiplicative inverse 1/u for a series with unit constant term.
TruncSeries mul_inverse(const TruncSeries& u);

/// All certified digits equal (no coefficient of a - b certifiably nonzero).
bool agrees(const TruncSeries& a, const TruncSeries& b);
/// Least degree where a and b certifiably differ, if any.
std::optional<long> first_disagreement(const TruncSeries& a, const TruncSeries& b);

// ---- Weierstrass theory ----------------------------------------------------

struct WidegResult {
    enum class Kind { Finite, AtLeastCap, InfinitePolynomial } kind;
    long value = 0; // Finite: the Weierstrass degree; AtLeastCap: the cap
    bool finite() const { return kind == Kind::Finite; }
};

/// Index of the first certified-unit coefficient.
WidegResult weierstrass_degree(const TruncSeries& f);

struct WeierstrassSplit {
    TruncSeries distinguished; // monic polynomial, non-leading coeffs in m
    TruncSeries unit;          // unit power series
    long content_valuation;    // t: input = p^t * X^{x_split} * g * v
    bool exact;                // residual vanished exactly
};

/// f(0) = 0; factor f = X * g(X) * v(X) (content must be trivial after the X
/// is split off, i.e. finite wideg within cap).
WeierstrassSplit weierstrass_prep(const TruncSeries& f);
/// General series: split content p^t first, then prepare.
WeierstrassSplit weierstrass_prep_general(const TruncSeries& f);

struct NewtonPolygon {
    std::vector<std::pair<long, long>> vertices; // (index, valuation)
    std::vector<std::pair<Frac, long>> slopes;   // (slope, horizontal length)
};

/// Lower convex hull of (i, val c_i) over the certified coefficients of the
/// index window [lo, hi].
NewtonPolygon newton_polygon(const TruncSeries& f, long lo, long hi);
NewtonPolygon newton_polygon(const TruncSeries& f);

/// Valuations of the nonzero open-disk roots (positive valuations only),
/// as (valuation, count) with counts from Newton-polygon segment lengths.
std::vector<std::pair<Frac, long>> root_valuations(const TruncSeries& f);

/// Monic m-th root of a monic polynomial; throws NotAnMthPowerError when the
/// input is not an exact m-th power at certified precision.
TruncSeries poly_mth_root(const TruncSeries& g, long m);

/// Unique m-th root of a unit series with constant-term residue = target.
/// Requires gcd(m, p) = 1.
TruncSeries series_mth_root_unit(const TruncSeries& v, long m, const FqElem& target);

/// Resultant of two polynomials (Sylvester determinant with p-adic pivoting).
PadicScalar resultant(const TruncSeries& a, const TruncSeries& b);

/// Certified separability (nonzero resultant of g and g') of a polynomial.
bool is_separable(const TruncSeries& g);

} // namespace padyn
