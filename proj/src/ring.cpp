#include "padyn/ring.hpp"

#include <algorithm>
#include <sstream>

namespace padyn {

namespace {

// ---- dense polynomials over F_p (vector<long>, index = degree) -------------

using Poly = std::vector<long>;

long mod_p(long a, long p) {
    long r = a % p;
    return r < 0 ? r + p : r;
}

void strip(Poly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, long p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    }
    strip(c);
    return c;
}

long inv_mod_p(long a, long p) {
    long t = 0, nt = 1, r = p, nr = mod_p(a, p);
    while (nr != 0) {
        long q = r / nr;
        std::swap(t -= q * nt, nt);
        std::swap(r -= q * nr, nr);
    }
    return mod_p(t, p);
}

// a mod m, m monic
Poly poly_rem(Poly a, const Poly& m, long p) {
    strip(a);
    long dm = (long)m.size() - 1;
    while ((long)a.size() - 1 >= dm) {
        long d = (long)a.size() - 1;
        long c = a.back();
        if (c != 0) {
            for (long i = 0; i <= dm; ++i)
                a[d - dm + i] = mod_p(a[d - dm + i] - c * m[i], p);
        }
        a.pop_back();
        strip(a);
    }
    return a;
}

Poly poly_powmod(Poly base, mpz_class e, const Poly& m, long p) {
    Poly result{1};
    base = poly_rem(std::move(base), m, p);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t()))
            result = poly_rem(poly_mul(result, base, p), m, p);
        base = poly_rem(poly_mul(base, base, p), m, p);
        e >>= 1;
    }
    return result;
}

Poly poly_gcd(Poly a, Poly b, long p) {
    strip(a);
    strip(b);
    while (!b.empty()) {
        // make b monic before reducing
        long lc = b.back();
        if (lc != 1) {
            long il = inv_mod_p(lc, p);
            for (auto& c : b) c = mod_p(c * il, p);
        }
        Poly r = poly_rem(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

Poly reduce_mod_p(const std::vector<long>& a, long p) {
    Poly r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = mod_p(a[i], p);
    strip(r);
    return r;
}

} // namespace

bool is_prime_long(long n) {
    if (n < 2) return false;
    for (long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

bool is_irreducible_mod_p(long p, const std::vector<long>& monic_poly) {
    Poly m = reduce_mod_p(monic_poly, p);
    long n = (long)m.size() - 1;
    if (n < 1 || m.back() != 1) return false;
    if (n == 1) return true;
    // x^{p^n} == x mod m, and gcd(x^{p^{n/l}} - x, m) = 1 for prime l | n
    Poly x{0, 1};
    mpz_class pn;
    mpz_ui_pow_ui(pn.get_mpz_t(), (unsigned long)p, (unsigned long)n);
    Poly xp = poly_powmod(x, pn, m, p);
    if (xp != x) return false;
    for (long l = 2; l <= n; ++l) {
        if (n % l != 0 || !is_prime_long(l)) continue;
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), (unsigned long)p, (unsigned long)(n / l));
        Poly y = poly_powmod(x, e, m, p);
        // y - x
        Poly d = y;
        if (d.size() < 2) d.resize(2, 0);
        d[1] = mod_p(d[1] - 1, p);
        strip(d);
        Poly g = poly_gcd(m, d, p);
        if ((long)g.size() - 1 != 0) return false;
    }
    return true;
}

std::vector<long> canonical_irreducible(long p, int degree) {
    if (degree == 1) return {0, 1}; // X
    // enumerate coefficient tuples (c_0, ..., c_{deg-1}) lexicographically
    std::vector<long> c(degree, 0);
    for (;;) {
        std::vector<long> cand(c);
        cand.push_back(1);
        if (is_irreducible_mod_p(p, cand)) return cand;
        int i = degree - 1;
        while (i >= 0 && c[i] == p - 1) c[i--] = 0;
        if (i < 0) break;
        ++c[i];
    }
    throw InternalInvariantError("no irreducible polynomial found (impossible)");
}

RingConfig::RingConfig(long p, int residue_degree, std::vector<long> modulus, int rel_precision)
    : p_(p), s_(residue_degree), modulus_(std::move(modulus)), r_(rel_precision) {
    if (!is_prime_long(p_))
        throw InputError("RingConfig: p = " + std::to_string(p_) + " is not prime");
    if (s_ < 1) throw InputError("RingConfig: residue_degree must be positive");
    if (r_ < 1) throw InputError("RingConfig: rel_precision must be positive");
    if ((long)modulus_.size() != s_ + 1 || modulus_.back() != 1)
        throw InputError("RingConfig: modulus must be monic of degree residue_degree");
    if (s_ > 1 && !is_irreducible_mod_p(p_, modulus_))
        throw InputError("RingConfig: modulus is reducible modulo p");
    mpz_ui_pow_ui(q_.get_mpz_t(), (unsigned long)p_, (unsigned long)s_);
    q_long_ = q_.fits_slong_p() ? q_.get_si() : -1;
    pk_cache_.reserve(2 * r_ + 65);
    mpz_class v = 1;
    for (int k = 0; k <= 2 * r_ + 64; ++k) {
        pk_cache_.push_back(v);
        v *= p_;
    }
}

mpz_class RingConfig::pk(long k) const {
    if (k < 0) throw InternalInvariantError("pk: negative exponent");
    if (k < (long)pk_cache_.size()) return pk_cache_[k];
    mpz_class v;
    mpz_ui_pow_ui(v.get_mpz_t(), (unsigned long)p_, (unsigned long)k);
    return v;
}

bool RingConfig::same_as(const RingConfig& other) const {
    return p_ == other.p_ && s_ == other.s_ && modulus_ == other.modulus_ && r_ == other.r_;
}

std::string RingConfig::describe() const {
    std::ostringstream os;
    if (s_ == 1) {
        os << "Z_" << p_;
    } else {
        os << "Z_" << p_ << "[x]/(";
        bool first = true;
        for (int i = s_; i >= 0; --i) {
            if (modulus_[i] == 0) continue;
            if (!first) os << (modulus_[i] > 0 ? " + " : " - ");
            long a = std::abs(modulus_[i]);
            if (first && modulus_[i] < 0) os << "-";
            if (i == 0 || a != 1) os << a;
            if (i >= 1) os << (a != 1 ? "*x" : "x");
            if (i >= 2) os << "^" << i;
            first = false;
        }
        os << ")";
    }
    os << " @ O(p^" << r_ << ")";
    return os.str();
}

RingPtr make_zp(long p, int rel_precision) {
    return std::make_shared<RingConfig>(p, 1, std::vector<long>{0, 1}, rel_precision);
}

RingPtr make_ring(long p, int residue_degree, std::vector<long> modulus, int rel_precision) {
    return std::make_shared<RingConfig>(p, residue_degree, std::move(modulus), rel_precision);
}

RingPtr make_unramified(long p, int residue_degree, int rel_precision) {
    return make_ring(p, residue_degree, canonical_irreducible(p, residue_degree), rel_precision);
}

void require_same_ring(const RingConfig& a, const RingConfig& b, const char* where) {
    if (!a.same_as(b))
        throw ConfigMismatchError(std::string(where) + ": incompatible ring configs (" +
                                  a.describe() + " vs " + b.describe() + ")");
}

// ---- residue field ---------------------------------------------------------

namespace fq {

FqElem zero(const RingConfig& R) { return FqElem(R.residue_degree(), 0); }

FqElem one(const RingConfig& R) {
    FqElem e(R.residue_degree(), 0);
    e[0] = 1;
    return e;
}

FqElem from_int(const RingConfig& R, long c) {
    FqElem e(R.residue_degree(), 0);
    e[0] = mod_p(c, R.p());
    return e;
}

bool is_zero(const FqElem& a) {
    return std::all_of(a.begin(), a.end(), [](long c) { return c == 0; });
}

bool eq(const FqElem& a, const FqElem& b) { return a == b; }

FqElem add(const RingConfig& R, const FqElem& a, const FqElem& b) {
    FqElem c(R.residue_degree());
    for (int i = 0; i < R.residue_degree(); ++i) c[i] = mod_p(a[i] + b[i], R.p());
    return c;
}

FqElem neg(const RingConfig& R, const FqElem& a) {
    FqElem c(R.residue_degree());
    for (int i = 0; i < R.residue_degree(); ++i) c[i] = mod_p(-a[i], R.p());
    return c;
}

FqElem mul(const RingConfig& R, const FqElem& a, const FqElem& b) {
    Poly m = reduce_mod_p(R.modulus(), R.p());
    Poly pa(a.begin(), a.end());
    Poly pb(b.begin(), b.end());
    strip(pa);
    strip(pb);
    Poly c = poly_rem(poly_mul(pa, pb, R.p()), m, R.p());
    c.resize(R.residue_degree(), 0);
    return FqElem(c.begin(), c.end());
}

FqElem pow(const RingConfig& R, const FqElem& a, const mpz_class& e) {
    if (e < 0) return pow(R, inv(R, a), -e);
    Poly m = reduce_mod_p(R.modulus(), R.p());
    Poly pa(a.begin(), a.end());
    Poly c = poly_powmod(pa, e, m, R.p());
    c.resize(R.residue_degree(), 0);
    return FqElem(c.begin(), c.end());
}

FqElem inv(const RingConfig& R, const FqElem& a) {
    if (is_zero(a)) throw DivisionByZeroError("fq::inv of zero");
    return pow(R, a, R.q() - 2);
}

long lex_index(const RingConfig& R, const FqElem& a) {
    long idx = 0;
    for (int i = 0; i < R.residue_degree(); ++i) idx = idx * R.p() + a[i];
    return idx;
}

FqElem from_lex_index(const RingConfig& R, long idx) {
    FqElem a(R.residue_degree(), 0);
    for (int i = R.residue_degree() - 1; i >= 0; --i) {
        a[i] = idx % R.p();
        idx /= R.p();
    }
    return a;
}

bool is_mth_power(const RingConfig& R, const FqElem& c, const mpz_class& m) {
    if (is_zero(c)) throw DomainError("fq::is_mth_power: c must be nonzero");
    mpz_class qm1 = R.q() - 1;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), qm1.get_mpz_t());
    FqElem t = pow(R, c, qm1 / g);
    return eq(t, one(R));
}

FqElem mth_root(const RingConfig& R, const FqElem& c, const mpz_class& m) {
    long q = R.q_long();
    if (q < 0 || q > (1L << 16))
        throw DomainError("fq::mth_root: residue field too large for exhaustive search");
    for (long idx = 0; idx < q; ++idx) {
        FqElem x = from_lex_index(R, idx);
        if (is_zero(x)) continue;
        if (eq(pow(R, x, m), c)) return x;
    }
    throw NotAnMthPowerError("fq::mth_root: no m-th root in this residue field");
}

int mth_root_extension_degree(const RingConfig& R, const FqElem& c, const mpz_class& m) {
    if (is_zero(c)) throw DomainError("fq::mth_root_extension_degree: c must be nonzero");
    if (mpz_divisible_ui_p(m.get_mpz_t(), (unsigned long)R.p()))
        throw UnsupportedRamifiedError("m-th root with p | m is ramified");
    // order of c divides q-1; c is an m-th power in F_{q^t} iff
    // ord(c) divides (q^t - 1)/gcd(m, q^t - 1)
    mpz_class qm1 = R.q() - 1;
    mpz_class ord = qm1;
    mpz_class rest = qm1;
    std::vector<mpz_class> primes;
    for (mpz_class f = 2; f * f <= rest; f += 1) {
        if (mpz_divisible_p(rest.get_mpz_t(), f.get_mpz_t())) {
            primes.push_back(f);
            while (mpz_divisible_p(rest.get_mpz_t(), f.get_mpz_t())) rest /= f;
        }
    }
    if (rest > 1) primes.push_back(rest);
    for (const auto& f : primes) {
        while (mpz_divisible_p(ord.get_mpz_t(), f.get_mpz_t()) &&
               eq(pow(R, c, ord / f), one(R)))
            ord /= f;
    }
    for (int t = 1;; ++t) {
        mpz_class qt;
        mpz_pow_ui(qt.get_mpz_t(), R.q().get_mpz_t(), (unsigned long)t);
        mpz_class qtm1 = qt - 1;
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), m.get_mpz_t(), qtm1.get_mpz_t());
        if (mpz_divisible_p(mpz_class(qtm1 / g).get_mpz_t(), ord.get_mpz_t())) return t;
        if (t > 64) throw InternalInvariantError("mth_root_extension_degree: no t found");
    }
}

bool find_root(const RingConfig& R, const std::vector<long>& poly_mod_p, FqElem& root_out) {
    long q = R.q_long();
    if (q < 0 || q > (1L << 16))
        throw DomainError("fq::find_root: residue field too large for exhaustive search");
    Poly f = reduce_mod_p(poly_mod_p, R.p());
    for (long idx = 0; idx < q; ++idx) {
        FqElem x = from_lex_index(R, idx);
        // evaluate f at x (Horner over F_{p^s})
        FqElem acc = zero(R);
        for (long i = (long)f.size() - 1; i >= 0; --i) {
            acc = mul(R, acc, x);
            acc = add(R, acc, from_int(R, f[i]));
        }
        if (is_zero(acc)) {
            root_out = x;
            return true;
        }
    }
    return false;
}

} // namespace fq

} // namespace padyn
