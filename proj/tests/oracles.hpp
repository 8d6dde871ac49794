// Independent reference computations for the test suite: exact rational
// power-series manipulation kept deliberately separate from the library code
// it is used to check.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

namespace oracles {

using QSeries = std::vector<mpq_class>; // coefficients from degree 0

inline QSeries qmul(const QSeries& a, const QSeries& b, size_t cap1) {
    QSeries out(cap1, mpq_class(0));
    for (size_t i = 0; i < a.size() && i < cap1; ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size() && i + j < cap1; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

/// 1/u for a series with nonzero constant term.
inline QSeries qinv(const QSeries& u, size_t cap1) {
    if (u.empty() || u[0] == 0) throw std::invalid_argument("qinv: zero constant term");
    QSeries z(cap1, mpq_class(0));
    z[0] = 1 / u[0];
    for (size_t k = 1; k < cap1; ++k) {
        mpq_class acc = 0;
        for (size_t j = 1; j <= k && j < u.size(); ++j) acc += u[j] * z[k - j];
        z[k] = -z[0] * acc;
    }
    return z;
}

/// Lagrange inversion: coefficients of the compositional inverse of
/// f = f1 X + f2 X^2 + ... (f given from degree 1, f1 != 0); result from
/// degree 1 with n terms: b_n = (1/n) [w^{n-1}] (w / f(w))^n.
inline QSeries lagrange_inverse(const QSeries& f_from_deg1, size_t n_terms) {
    QSeries base(f_from_deg1.begin(), f_from_deg1.end()); // w/f(w) pre-inverse
    QSeries winv = qinv(base, n_terms);                   // (f(w)/w)^{-1}
    QSeries out;
    QSeries pw{mpq_class(1)};
    for (size_t n = 1; n <= n_terms; ++n) {
        pw = qmul(pw, winv, n_terms);
        out.push_back(pw[n - 1] / (long)n);
    }
    return out;
}

/// log(1 + X) coefficients from degree 1.
inline QSeries log1p_series(size_t n_terms) {
    QSeries out;
    for (size_t k = 1; k <= n_terms; ++k) out.emplace_back(k % 2 ? 1 : -1, (long)k);
    return out;
}

/// Power-series expansion of a rational function num/den (both from degree 0).
inline QSeries rational_expand(const QSeries& num, const QSeries& den, size_t cap1) {
    return qmul(num, qinv(den, cap1), cap1);
}

/// (1 + X)^{a/b} by the binomial series (from degree 0).
inline QSeries binomial_series(const mpq_class& e, size_t cap1) {
    QSeries out(cap1, mpq_class(0));
    mpq_class c = 1;
    out[0] = 1;
    for (size_t k = 1; k < cap1; ++k) {
        c *= (e - (long)(k - 1));
        c /= (long)k;
        out[k] = c;
    }
    return out;
}

/// Substitute g (from degree 1) into f (from degree 0): f(g(X)), from degree 0.
inline QSeries qcompose(const QSeries& f, const QSeries& g_from_deg1, size_t cap1) {
    QSeries g(cap1, mpq_class(0));
    for (size_t i = 0; i < g_from_deg1.size() && i + 1 < cap1; ++i) g[i + 1] = g_from_deg1[i];
    QSeries acc(cap1, mpq_class(0));
    for (size_t k = f.size(); k-- > 0;) {
        acc = qmul(acc, g, cap1);
        acc[0] += f[k];
    }
    return acc;
}

/// val_p of a rational; requires v != 0.
inline long qval(const mpq_class& v, long p) {
    if (v == 0) throw std::invalid_argument("qval of 0");
    long out = 0;
    mpz_class n = v.get_num(), d = v.get_den();
    while (n % p == 0) {
        n /= p;
        ++out;
    }
    while (d % p == 0) {
        d /= p;
        --out;
    }
    return out;
}

/// Modular inverse by extended Euclid (asserts gcd = 1).
inline mpz_class mod_inverse(const mpz_class& a, const mpz_class& mod) {
    mpz_class r0 = mod, r1 = ((a % mod) + mod) % mod, s0 = 0, s1 = 1;
    while (r1 != 0) {
        mpz_class q = r0 / r1;
        mpz_class r2 = r0 - q * r1;
        mpz_class s2 = s0 - q * s1;
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    if (r0 != 1) throw std::invalid_argument("mod_inverse: not coprime");
    return ((s0 % mod) + mod) % mod;
}

} // namespace oracles
