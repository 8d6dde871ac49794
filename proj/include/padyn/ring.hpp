#pragma once

#include <gmpxx.h>

#include <memory>
#include <string>
#include <vector>

#include "padyn/errors.hpp"

namespace padyn {

/// An element of the residue field F_{p^s}, as coefficients of the generator
/// powers 1, x, ..., x^{s-1}, each reduced into [0, p).
using FqElem = std::vector<long>;

/// Fixed arithmetic context: the unramified ring Z_p[x]/(modulus) with units
/// carried modulo p^rel_precision.  Immutable after construction; scalars hold
/// a shared_ptr to it and are compatible only if their configs are equal.
class RingConfig {
public:
    RingConfig(long p, int residue_degree, std::vector<long> modulus, int rel_precision);

    long p() const { return p_; }
    int residue_degree() const { return s_; }
    const std::vector<long>& modulus() const { return modulus_; }
    int rel_precision() const { return r_; }

    /// p^k for k >= 0 (cached for the common window).
    mpz_class pk(long k) const;

    /// p^s as an mpz (residue field cardinality).
    const mpz_class& q() const { return q_; }
    /// Residue field cardinality as long, or -1 if it exceeds 2^62.
    long q_long() const { return q_long_; }

    bool same_as(const RingConfig& other) const;

    std::string describe() const;

private:
    long p_;
    int s_;
    std::vector<long> modulus_; // monic, length s_+1, integer coefficients
    int r_;
    mpz_class q_;
    long q_long_;
    std::vector<mpz_class> pk_cache_;
};

using RingPtr = std::shared_ptr<const RingConfig>;

/// Base ring Z_p (residue degree 1, modulus X).
RingPtr make_zp(long p, int rel_precision = 32);

/// Unramified extension with an explicit modulus; the modulus must be monic of
/// the given degree and irreducible modulo p (verified).
RingPtr make_ring(long p, int residue_degree, std::vector<long> modulus, int rel_precision = 32);

/// Unramified extension of degree s with the canonical (lexicographically
/// smallest) monic irreducible modulus.
RingPtr make_unramified(long p, int residue_degree, int rel_precision = 32);

void require_same_ring(const RingConfig& a, const RingConfig& b, const char* where);

// ---- residue field F_{p^s} -------------------------------------------------

namespace fq {

FqElem zero(const RingConfig& R);
FqElem one(const RingConfig& R);
FqElem from_int(const RingConfig& R, long c);
bool is_zero(const FqElem& a);
bool eq(const FqElem& a, const FqElem& b);

FqElem add(const RingConfig& R, const FqElem& a, const FqElem& b);
FqElem neg(const RingConfig& R, const FqElem& a);
FqElem mul(const RingConfig& R, const FqElem& a, const FqElem& b);
FqElem pow(const RingConfig& R, const FqElem& a, const mpz_class& e);
FqElem inv(const RingConfig& R, const FqElem& a);

/// Enumeration index in the lexicographic order of coefficient tuples
/// (c_0 most significant).  Requires p^s <= 2^16-scale fields.
long lex_index(const RingConfig& R, const FqElem& a);
FqElem from_lex_index(const RingConfig& R, long idx);

/// Whether a nonzero c is an m-th power in F_{p^s}.
bool is_mth_power(const RingConfig& R, const FqElem& c, const mpz_class& m);

/// Lexicographically smallest m-th root of c in F_{p^s}; requires one to
/// exist.  Exhaustive search, so p^s must be desk-scale (<= 2^16).
FqElem mth_root(const RingConfig& R, const FqElem& c, const mpz_class& m);

/// Smallest t >= 1 such that c acquires an m-th root in F_{p^{s t}}.
int mth_root_extension_degree(const RingConfig& R, const FqElem& c, const mpz_class& m);

/// Lexicographically smallest root of a monic polynomial (coefficients given
/// modulo p over the base ring's F_p) in this residue field, if any.
bool find_root(const RingConfig& R, const std::vector<long>& poly_mod_p, FqElem& root_out);

} // namespace fq

// ---- small number theory helpers ------------------------------------------

bool is_prime_long(long n);

/// Canonical irreducible: lexicographically smallest monic irreducible of the
/// given degree over F_p, by coefficient tuple (c_0, ..., c_{deg-1}).
std::vector<long> canonical_irreducible(long p, int degree);

/// Is the monic polynomial (integer coefficients) irreducible modulo p?
bool is_irreducible_mod_p(long p, const std::vector<long>& monic_poly);

} // namespace padyn
