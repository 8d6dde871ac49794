#pragma once

#include <array>

#include "padyn/series.hpp"

namespace padyn {

/// Bivariate series truncated in total degree: sum over i + j <= total_cap.
class BivarTrunc {
public:
    BivarTrunc(RingPtr cfg, long total_cap);

    static BivarTrunc zero(RingPtr cfg, long total_cap) {
        return BivarTrunc(std::move(cfg), total_cap);
    }
    /// f(X) viewed bivariately (var = 0 for X, 1 for Y).
    static BivarTrunc from_univariate(const TruncSeries& f, long total_cap, int var);

    const RingPtr& config() const { return cfg_; }
    long total_cap() const { return cap_; }

    const PadicScalar& coeff(long i, long j) const;
    void set_coeff(long i, long j, PadicScalar c);

    BivarTrunc dropped_exact() const;

    /// Column s_j(X) = sum_i c_{ij} X^i as a univariate series (cap = T - j).
    TruncSeries column(long j) const;

    /// Substitute univariate series with zero constant term for X and Y.
    TruncSeries substitute(const TruncSeries& x, const TruncSeries& y) const;

    std::string str() const;

private:
    RingPtr cfg_;
    long cap_;
    std::vector<PadicScalar> c_; // row-major over i + j <= cap
    size_t idx(long i, long j) const;
};

BivarTrunc add(const BivarTrunc& a, const BivarTrunc& b);
BivarTrunc sub(const BivarTrunc& a, const BivarTrunc& b);
BivarTrunc mul(const BivarTrunc& a, const BivarTrunc& b);
BivarTrunc scalar_mul(const PadicScalar& c, const BivarTrunc& a);

/// Trivariate series truncated in total degree, for associativity checks.
class TrivarTrunc {
public:
    TrivarTrunc(RingPtr cfg, long total_cap);

    const RingPtr& config() const { return cfg_; }
    long total_cap() const { return cap_; }

    const PadicScalar& coeff(long i, long j, long k) const;
    void set_coeff(long i, long j, long k, PadicScalar c);

    /// Least (lex) index where a and b certifiably differ, if any.
    static std::optional<std::array<long, 3>> first_disagreement(const TrivarTrunc& a,
                                                                const TrivarTrunc& b);

private:
    RingPtr cfg_;
    long cap_;
    std::vector<PadicScalar> c_;
    size_t idx(long i, long j, long k) const;

    friend TrivarTrunc add(const TrivarTrunc&, const TrivarTrunc&);
    friend TrivarTrunc mul(const TrivarTrunc&, const TrivarTrunc&);
};

TrivarTrunc add(const TrivarTrunc& a, const TrivarTrunc& b);
TrivarTrunc mul(const TrivarTrunc& a, const TrivarTrunc& b);

/// Substitute S(.,.) into the given pair of variable slots of a bivariate
/// series: slots (0,1) gives F(S(X,Y), Z) style plumbing.  `outer` is consumed
/// as F(U, V) with U the substituted pair variable and V the remaining one.
TrivarTrunc substitute_pair(const BivarTrunc& outer, const BivarTrunc& inner, bool inner_first);

} // namespace padyn
