#pragma once

#include <gmpxx.h>

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "padyn/ring.hpp"

namespace padyn {

enum class ScalarKind {
    Zero,       // exactly zero
    ZeroAtPrec, // all known digits vanish: value in p^bound * O, digits unknown
    Unit        // p^val * (invertible unit known to `prec` digits)
};

enum class Tri { True, False, Unknown };

/// Element of the unramified ring/field at finite precision (floating p-adic
/// model).  A nonzero scalar is p^val * u with u known modulo p^prec.  Scalars
/// built from integer/rational data additionally carry their exact value and
/// propagate it through ring operations, which makes predicates on polynomial
/// inputs exact.
class PadicScalar {
public:
    static constexpr long VAL_INF = std::numeric_limits<long>::max() / 4;

    static PadicScalar zero(RingPtr cfg);
    static PadicScalar zero_at_precision(RingPtr cfg, long bound);
    static PadicScalar one(RingPtr cfg);
    static PadicScalar from_long(RingPtr cfg, long v);
    static PadicScalar from_integer(RingPtr cfg, const mpz_class& v);
    static PadicScalar from_rational(RingPtr cfg, const mpq_class& v);
    /// Exact element of the extension: coordinates w.r.t. 1, x, ..., x^{s-1}.
    static PadicScalar from_exact_coords(RingPtr cfg, std::vector<mpq_class> coords);
    /// Floating value p^val * u with u given modulo p^prec (no exact sidecar).
    static PadicScalar from_unit(RingPtr cfg, long val, std::vector<mpz_class> unit, long prec);

    const RingPtr& config() const { return cfg_; }
    ScalarKind kind() const { return kind_; }
    bool is_zero() const { return kind_ == ScalarKind::Zero; }
    bool is_unit_kind() const { return kind_ == ScalarKind::Unit; }
    bool is_cert_nonzero() const { return kind_ == ScalarKind::Unit; }

    /// Valuation of a certified-nonzero scalar (throws otherwise).
    long valuation() const;
    /// Lower bound on the valuation, VAL_INF for exact zero.
    long val_lower_bound() const;
    /// Number of known unit digits (Unit only).
    long known_precision() const;
    const std::vector<mpz_class>& unit_coords() const;

    bool has_exact() const { return exact_.has_value(); }
    const std::vector<mpq_class>& exact_coords() const;
    PadicScalar dropped_exact() const;
    /// Discard digits at or above p^abs_prec (certified digits only up to the
    /// given absolute precision; exact sidecar is dropped when anything goes).
    PadicScalar capped_abs_precision(long abs_prec) const;

    /// Three-valued "val >= n".
    Tri val_ge(long n) const;

    PadicScalar operator-() const;
    friend PadicScalar operator+(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator-(const PadicScalar& a, const PadicScalar& b);
    friend PadicScalar operator*(const PadicScalar& a, const PadicScalar& b);
    PadicScalar inv() const;
    PadicScalar pow_int(const mpz_class& e) const;
    PadicScalar shifted(long k) const; // multiply by p^k

    /// Equality of all digits both sides certify (difference not certifiably
    /// nonzero).
    bool agrees_with(const PadicScalar& other) const;

    /// Residue in F_{p^s}; requires the image in O/m to be certified.
    FqElem residue() const;

    std::string str() const;

private:
    PadicScalar(RingPtr cfg, ScalarKind k) : cfg_(std::move(cfg)), kind_(k) {}

    RingPtr cfg_;
    ScalarKind kind_;
    long val_ = 0;  // Unit: valuation; ZeroAtPrec: lower bound
    long prec_ = 0; // Unit only
    std::vector<mpz_class> u_;
    std::optional<std::vector<mpq_class>> exact_;

    void rebuild_floating_from_exact();
};

// ---- lifting primitives ----------------------------------------------------

/// Teichmüller lift of a nonzero residue-field element: the root of unity of
/// order dividing p^s - 1 reducing to c, to full rel_precision.
PadicScalar teichmuller(const FqElem& c, const RingPtr& cfg);

/// Unique unit root x of x^m = a with residue(x) = target (Hensel/Newton).
/// Requires a a unit, gcd(m, p) = 1 and target^m = residue(a).
PadicScalar mth_root_unit(const PadicScalar& a, long m, const FqElem& target);

/// Ring homomorphism from an unramified ring into an extension of it, given by
/// the image of the generator.
struct Embedding {
    RingPtr from;
    RingPtr to;
    PadicScalar gen_image;
    PadicScalar apply(const PadicScalar& a) const;
};

/// Extension of cfg of relative residue degree t with the canonical modulus,
/// plus the (canonical) embedding.
Embedding make_unramified_extension(const RingPtr& cfg, int rel_degree);

struct ResidueRootResult {
    FqElem root;     // lives in `ring`
    int rel_degree;  // t; 1 when no extension was needed
    RingPtr ring;    // cfg itself when t = 1
    std::optional<Embedding> embedding; // present when t > 1
};

/// m-th root of c in the smallest unramified extension containing one.
ResidueRootResult residue_mth_root(const FqElem& c, const mpz_class& m, const RingPtr& cfg);

/// x^a for a 1-unit x and a Z_p exponent a (given as a rational with p not
/// dividing the denominator).  For p = 2 requires x = 1 mod 4.
PadicScalar pow_1unit(const PadicScalar& x, const mpq_class& a);

/// val_p of a rational (0 -> VAL_INF sentinel).
long rational_valuation(const mpq_class& v, long p);

} // namespace padyn
