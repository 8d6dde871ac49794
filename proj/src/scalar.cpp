#include "padyn/scalar.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace padyn {

namespace {

mpz_class mod_pk(const mpz_class& v, const mpz_class& pk) {
    mpz_class r = v % pk;
    if (r < 0) r += pk;
    return r;
}

long mpz_val_p(const mpz_class& v, long p) {
    if (v == 0) return PadicScalar::VAL_INF;
    mpz_class tmp, pz(p);
    return (long)mpz_remove(tmp.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t());
}

// unit-part coordinate vectors, coefficients mod p^k, reduced by the monic
// integer modulus
std::vector<mpz_class> vec_mulmod(const RingConfig& R, const std::vector<mpz_class>& a,
                                  const std::vector<mpz_class>& b, long k) {
    int s = R.residue_degree();
    mpz_class pk = R.pk(k);
    std::vector<mpz_class> c(2 * s - 1, 0);
    for (int i = 0; i < s; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < s; ++j) c[i + j] += a[i] * b[j];
    }
    const auto& M = R.modulus();
    for (int i = 2 * s - 2; i >= s; --i) {
        mpz_class lead = c[i];
        if (lead != 0)
            for (int j = 0; j < s; ++j) c[i - s + j] -= lead * M[j];
        c[i] = 0;
    }
    c.resize(s);
    for (auto& x : c) x = mod_pk(x, pk);
    return c;
}

std::vector<mpz_class> vec_powmod(const RingConfig& R, std::vector<mpz_class> base,
                                  mpz_class e, long k) {
    int s = R.residue_degree();
    std::vector<mpz_class> r(s, 0);
    r[0] = 1;
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) r = vec_mulmod(R, r, base, k);
        base = vec_mulmod(R, base, base, k);
        e >>= 1;
    }
    return r;
}

// inverse of a unit coordinate vector mod (p^k, modulus): residue-field
// inverse followed by Hensel doubling
std::vector<mpz_class> vec_invmod(const RingConfig& R, const std::vector<mpz_class>& a, long k) {
    int s = R.residue_degree();
    FqElem ar(s);
    for (int i = 0; i < s; ++i) ar[i] = mpz_class(a[i] % R.p()).get_si();
    FqElem ir = fq::inv(R, ar);
    std::vector<mpz_class> x(s);
    for (int i = 0; i < s; ++i) x[i] = ir[i];
    long have = 1;
    while (have < k) {
        have = std::min(2 * have, k);
        // x <- x (2 - a x) mod p^have
        std::vector<mpz_class> ax = vec_mulmod(R, a, x, have);
        for (auto& c : ax) c = -c;
        ax[0] += 2;
        mpz_class pk = R.pk(have);
        for (auto& c : ax) c = mod_pk(c, pk);
        x = vec_mulmod(R, x, ax, have);
    }
    return x;
}

// ---- exact (rational) coordinate arithmetic --------------------------------

std::vector<mpq_class> exact_mul(const RingConfig& R, const std::vector<mpq_class>& a,
                                 const std::vector<mpq_class>& b) {
    int s = R.residue_degree();
    std::vector<mpq_class> c(2 * s - 1, 0);
    for (int i = 0; i < s; ++i) {
        if (a[i] == 0) continue;
        for (int j = 0; j < s; ++j) c[i + j] += a[i] * b[j];
    }
    const auto& M = R.modulus();
    for (int i = 2 * s - 2; i >= s; --i) {
        mpq_class lead = c[i];
        if (lead != 0)
            for (int j = 0; j < s; ++j) c[i - s + j] -= lead * M[j];
        c[i] = 0;
    }
    c.resize(s);
    return c;
}

using QPoly = std::vector<mpq_class>; // dense, index = degree

void qstrip(QPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly qmul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    qstrip(c);
    return c;
}

QPoly qsub(QPoly a, const QPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    qstrip(a);
    return a;
}

// a = q*b + r over Q, b nonzero
void qdivmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
    q.clear();
    qstrip(a);
    long db = (long)b.size() - 1;
    while ((long)a.size() - 1 >= db) {
        long da = (long)a.size() - 1;
        mpq_class c = a.back() / b.back();
        if ((long)q.size() < da - db + 1) q.resize(da - db + 1, 0);
        q[da - db] += c;
        for (long i = 0; i <= db; ++i) a[da - db + i] -= c * b[i];
        a.pop_back();
        qstrip(a);
    }
    r = std::move(a);
}

// inverse of `a` in Q[x]/(M) (M irreducible over Q) via extended Euclid
std::vector<mpq_class> exact_inv_ext(const RingConfig& R, const std::vector<mpq_class>& a) {
    int s = R.residue_degree();
    QPoly M(R.modulus().begin(), R.modulus().end());
    QPoly A(a.begin(), a.end());
    qstrip(A);
    if (A.empty()) throw DivisionByZeroError("exact inverse of zero");
    QPoly r0 = M, r1 = A, t0 = {}, t1 = {mpq_class(1)};
    while (!r1.empty() && (long)r1.size() - 1 > 0) {
        QPoly q, r;
        qdivmod(r0, r1, q, r);
        QPoly t = qsub(t0, qmul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    if (r1.empty())
        throw InternalInvariantError("exact_inv_ext: modulus not irreducible over Q?");
    mpq_class lead = r1[0];
    std::vector<mpq_class> inv(s, 0);
    for (size_t i = 0; i < t1.size() && (int)i < s; ++i) inv[i] = t1[i] / lead;
    return inv;
}

std::vector<mpq_class> exact_inv(const RingConfig& R, const std::vector<mpq_class>& a) {
    if (R.residue_degree() == 1) {
        if (a[0] == 0) throw DivisionByZeroError("exact inverse of zero");
        return {1 / a[0]};
    }
    return exact_inv_ext(R, a);
}

} // namespace

long rational_valuation(const mpq_class& v, long p) {
    if (v == 0) return PadicScalar::VAL_INF;
    return mpz_val_p(v.get_num(), p) - mpz_val_p(v.get_den(), p);
}

// ---- construction ----------------------------------------------------------

PadicScalar PadicScalar::zero(RingPtr cfg) { return PadicScalar(std::move(cfg), ScalarKind::Zero); }

PadicScalar PadicScalar::zero_at_precision(RingPtr cfg, long bound) {
    PadicScalar s(std::move(cfg), ScalarKind::ZeroAtPrec);
    s.val_ = bound;
    return s;
}

PadicScalar PadicScalar::one(RingPtr cfg) { return from_long(std::move(cfg), 1); }

PadicScalar PadicScalar::from_long(RingPtr cfg, long v) {
    return from_integer(std::move(cfg), mpz_class(v));
}

PadicScalar PadicScalar::from_integer(RingPtr cfg, const mpz_class& v) {
    std::vector<mpq_class> c(cfg->residue_degree(), 0);
    c[0] = v;
    return from_exact_coords(std::move(cfg), std::move(c));
}

PadicScalar PadicScalar::from_rational(RingPtr cfg, const mpq_class& v) {
    std::vector<mpq_class> c(cfg->residue_degree(), 0);
    c[0] = v;
    return from_exact_coords(std::move(cfg), std::move(c));
}

void PadicScalar::rebuild_floating_from_exact() {
    const auto& R = *cfg_;
    const auto& c = *exact_;
    long v = VAL_INF;
    for (const auto& x : c) v = std::min(v, rational_valuation(x, R.p()));
    if (v == VAL_INF) {
        kind_ = ScalarKind::Zero;
        exact_.reset();
        return;
    }
    kind_ = ScalarKind::Unit;
    val_ = v;
    prec_ = R.rel_precision();
    mpz_class pk = R.pk(prec_);
    u_.assign(R.residue_degree(), 0);
    for (int i = 0; i < R.residue_degree(); ++i) {
        if (c[i] == 0) continue;
        // c[i] / p^v = num' / den' with p coprime to den'
        mpq_class w = c[i];
        long wv = rational_valuation(w, R.p());
        mpz_class num = w.get_num(), den = w.get_den();
        // pull p^v out of the fraction
        long shift = v;
        if (shift >= 0) {
            long nv = mpz_val_p(num, R.p());
            long take = std::min(nv, shift);
            mpz_class tmp = R.pk(take);
            num /= tmp;
            shift -= take;
            if (shift > 0) den *= R.pk(shift);
        } else {
            long dv = mpz_val_p(den, R.p());
            long take = std::min(dv, -shift);
            den /= R.pk(take);
            shift += take;
            if (shift < 0) num *= R.pk(-shift);
        }
        (void)wv;
        mpz_class deninv;
        if (mpz_invert(deninv.get_mpz_t(), mpz_class(den % pk).get_mpz_t(), pk.get_mpz_t()) == 0)
            throw InternalInvariantError("rebuild_floating_from_exact: denominator not a unit");
        u_[i] = mod_pk(num * deninv, pk);
    }
}

PadicScalar PadicScalar::from_exact_coords(RingPtr cfg, std::vector<mpq_class> coords) {
    if ((int)coords.size() != cfg->residue_degree())
        throw InputError("from_exact_coords: wrong coordinate count");
    PadicScalar s(std::move(cfg), ScalarKind::Unit);
    s.exact_ = std::move(coords);
    s.rebuild_floating_from_exact();
    if (s.kind_ == ScalarKind::Unit) {
        // keep the exact coords
        ;
    }
    return s;
}

PadicScalar PadicScalar::from_unit(RingPtr cfg, long val, std::vector<mpz_class> unit, long prec) {
    if (prec < 1 || prec > cfg->rel_precision())
        throw InputError("from_unit: precision out of range");
    if ((int)unit.size() != cfg->residue_degree())
        throw InputError("from_unit: wrong coordinate count");
    mpz_class pk = cfg->pk(prec);
    bool unit_ok = false;
    for (auto& c : unit) {
        c = mod_pk(c, pk);
        if (c % cfg->p() != 0) unit_ok = true;
    }
    if (!unit_ok) throw InputError("from_unit: unit part is divisible by p");
    PadicScalar s(std::move(cfg), ScalarKind::Unit);
    s.val_ = val;
    s.prec_ = prec;
    s.u_ = std::move(unit);
    return s;
}

// ---- accessors -------------------------------------------------------------

long PadicScalar::valuation() const {
    if (kind_ != ScalarKind::Unit)
        throw PrecisionExhaustedError("valuation of a scalar with no certified digits");
    return val_;
}

long PadicScalar::val_lower_bound() const {
    switch (kind_) {
        case ScalarKind::Zero: return VAL_INF;
        case ScalarKind::ZeroAtPrec: return val_;
        default: return val_;
    }
}

long PadicScalar::known_precision() const {
    if (kind_ != ScalarKind::Unit) throw DomainError("known_precision of non-unit scalar");
    return prec_;
}

const std::vector<mpz_class>& PadicScalar::unit_coords() const {
    if (kind_ != ScalarKind::Unit) throw DomainError("unit_coords of non-unit scalar");
    return u_;
}

const std::vector<mpq_class>& PadicScalar::exact_coords() const {
    if (!exact_) throw DomainError("exact_coords: scalar has no exact representation");
    return *exact_;
}

PadicScalar PadicScalar::dropped_exact() const {
    PadicScalar s = *this;
    s.exact_.reset();
    return s;
}

PadicScalar PadicScalar::capped_abs_precision(long abs_prec) const {
    switch (kind_) {
        case ScalarKind::Zero: return *this;
        case ScalarKind::ZeroAtPrec:
            return zero_at_precision(cfg_, std::min(val_, abs_prec));
        default: break;
    }
    if (val_ >= abs_prec) return zero_at_precision(cfg_, abs_prec);
    long prec = std::min(prec_, abs_prec - val_);
    if (prec >= prec_) return dropped_exact();
    PadicScalar s(cfg_, ScalarKind::Unit);
    s.val_ = val_;
    s.prec_ = prec;
    s.u_ = u_;
    mpz_class pk = cfg_->pk(prec);
    for (auto& c : s.u_) c = mod_pk(c, pk);
    return s;
}

Tri PadicScalar::val_ge(long n) const {
    switch (kind_) {
        case ScalarKind::Zero: return Tri::True;
        case ScalarKind::ZeroAtPrec: return val_ >= n ? Tri::True : Tri::Unknown;
        default: return val_ >= n ? Tri::True : Tri::False;
    }
}

// ---- arithmetic ------------------------------------------------------------

PadicScalar PadicScalar::operator-() const {
    switch (kind_) {
        case ScalarKind::Zero:
        case ScalarKind::ZeroAtPrec: return *this;
        default: break;
    }
    if (exact_) {
        std::vector<mpq_class> c = *exact_;
        for (auto& x : c) x = -x;
        return from_exact_coords(cfg_, std::move(c));
    }
    PadicScalar s = *this;
    mpz_class pk = cfg_->pk(prec_);
    for (auto& c : s.u_) c = mod_pk(-c, pk);
    return s;
}

namespace {

PadicScalar add_floating(const PadicScalar& a, const PadicScalar& b) {
    const RingPtr& cfg = a.config();
    const RingConfig& R = *cfg;
    using K = ScalarKind;
    K ka = a.kind(), kb = b.kind();
    if (ka == K::Zero) return b.dropped_exact();
    if (kb == K::Zero) return a.dropped_exact();
    if (ka == K::ZeroAtPrec && kb == K::ZeroAtPrec)
        return PadicScalar::zero_at_precision(cfg, std::min(a.val_lower_bound(), b.val_lower_bound()));
    if (ka == K::ZeroAtPrec || kb == K::ZeroAtPrec) {
        const PadicScalar& z = (ka == K::ZeroAtPrec) ? a : b;
        const PadicScalar& u = (ka == K::ZeroAtPrec) ? b : a;
        long N = z.val_lower_bound();
        long v = u.valuation();
        if (v >= N) return PadicScalar::zero_at_precision(cfg, std::min(N, v));
        long k = std::min(u.known_precision(), N - v);
        std::vector<mpz_class> coords = u.unit_coords();
        mpz_class pk = R.pk(k);
        for (auto& c : coords) c = mod_pk(c, pk);
        return PadicScalar::from_unit(cfg, v, std::move(coords), k);
    }
    // Unit + Unit
    const PadicScalar& x = (a.valuation() <= b.valuation()) ? a : b;
    const PadicScalar& y = (a.valuation() <= b.valuation()) ? b : a;
    long vx = x.valuation(), vy = y.valuation();
    long A = std::min(vx + x.known_precision(), vy + y.known_precision());
    long window = A - vx; // >= 1
    mpz_class pk = R.pk(window);
    mpz_class shift = (vy - vx < window) ? R.pk(vy - vx) : pk;
    int s = R.residue_degree();
    std::vector<mpz_class> sum(s);
    for (int i = 0; i < s; ++i) sum[i] = mod_pk(x.unit_coords()[i] + y.unit_coords()[i] * shift, pk);
    long t = window;
    for (int i = 0; i < s; ++i)
        if (sum[i] != 0) t = std::min(t, mpz_val_p(sum[i], R.p()));
    if (t >= window) return PadicScalar::zero_at_precision(cfg, A);
    mpz_class pt = R.pk(t);
    for (auto& c : sum) c /= pt;
    return PadicScalar::from_unit(cfg, vx + t, std::move(sum), window - t);
}

} // namespace

PadicScalar operator+(const PadicScalar& a, const PadicScalar& b) {
    require_same_ring(*a.config(), *b.config(), "scalar add");
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.has_exact() && b.has_exact()) {
        std::vector<mpq_class> c = a.exact_coords();
        const auto& d = b.exact_coords();
        for (size_t i = 0; i < c.size(); ++i) c[i] += d[i];
        return PadicScalar::from_exact_coords(a.config(), std::move(c));
    }
    return add_floating(a, b);
}

PadicScalar operator-(const PadicScalar& a, const PadicScalar& b) { return a + (-b); }

PadicScalar operator*(const PadicScalar& a, const PadicScalar& b) {
    require_same_ring(*a.config(), *b.config(), "scalar mul");
    using K = ScalarKind;
    if (a.is_zero() || b.is_zero()) return PadicScalar::zero(a.config());
    if (a.has_exact() && b.has_exact())
        return PadicScalar::from_exact_coords(a.config(),
                                              exact_mul(*a.config(), a.exact_coords(), b.exact_coords()));
    if (a.kind() == K::ZeroAtPrec || b.kind() == K::ZeroAtPrec)
        return PadicScalar::zero_at_precision(a.config(),
                                              a.val_lower_bound() + b.val_lower_bound());
    long k = std::min(a.known_precision(), b.known_precision());
    const RingConfig& R = *a.config();
    std::vector<mpz_class> c = vec_mulmod(R, a.unit_coords(), b.unit_coords(), k);
    return PadicScalar::from_unit(a.config(), a.valuation() + b.valuation(), std::move(c), k);
}

PadicScalar PadicScalar::inv() const {
    switch (kind_) {
        case ScalarKind::Zero: throw DivisionByZeroError("inverse of exact zero");
        case ScalarKind::ZeroAtPrec:
            throw PrecisionExhaustedError("inverse of a scalar with no certified digits");
        default: break;
    }
    if (exact_) return from_exact_coords(cfg_, exact_inv(*cfg_, *exact_));
    std::vector<mpz_class> iu = vec_invmod(*cfg_, u_, prec_);
    return from_unit(cfg_, -val_, std::move(iu), prec_);
}

PadicScalar PadicScalar::pow_int(const mpz_class& e) const {
    if (e < 0) return inv().pow_int(-e);
    PadicScalar r = one(cfg_);
    if (e == 0) return r;
    PadicScalar base = *this;
    mpz_class k = e;
    while (k > 0) {
        if (mpz_odd_p(k.get_mpz_t())) r = r * base;
        k >>= 1;
        if (k > 0) base = base * base;
    }
    return r;
}

PadicScalar PadicScalar::shifted(long k) const {
    switch (kind_) {
        case ScalarKind::Zero: return *this;
        case ScalarKind::ZeroAtPrec: return zero_at_precision(cfg_, val_ + k);
        default: break;
    }
    if (exact_) {
        std::vector<mpq_class> c = *exact_;
        mpq_class f;
        if (k >= 0)
            f = mpq_class(cfg_->pk(k));
        else
            f = mpq_class(1) / mpq_class(cfg_->pk(-k));
        for (auto& x : c) x *= f;
        return from_exact_coords(cfg_, std::move(c));
    }
    PadicScalar s = *this;
    s.val_ += k;
    return s;
}

bool PadicScalar::agrees_with(const PadicScalar& other) const {
    return (*this - other).kind() != ScalarKind::Unit;
}

FqElem PadicScalar::residue() const {
    const RingConfig& R = *cfg_;
    switch (kind_) {
        case ScalarKind::Zero: return fq::zero(R);
        case ScalarKind::ZeroAtPrec:
            if (val_ >= 1) return fq::zero(R);
            throw PrecisionExhaustedError("residue: no certified digit at valuation 0");
        default: break;
    }
    if (val_ > 0) return fq::zero(R);
    if (val_ < 0) throw DomainError("residue of an element outside O");
    FqElem r(R.residue_degree());
    for (int i = 0; i < R.residue_degree(); ++i) r[i] = mpz_class(u_[i] % R.p()).get_si();
    return r;
}

std::string PadicScalar::str() const {
    const RingConfig& R = *cfg_;
    std::ostringstream os;
    switch (kind_) {
        case ScalarKind::Zero: return "0";
        case ScalarKind::ZeroAtPrec:
            os << "O(" << R.p() << "^" << val_ << ")";
            return os.str();
        default: break;
    }
    if (val_ != 0) os << R.p() << "^" << val_ << "*";
    if (R.residue_degree() == 1) {
        os << u_[0].get_str();
    } else {
        os << "[";
        for (int i = 0; i < R.residue_degree(); ++i) {
            if (i) os << ",";
            os << u_[i].get_str();
        }
        os << "]";
    }
    os << " + O(" << R.p() << "^" << (val_ + prec_) << ")";
    return os.str();
}

// ---- lifting primitives ----------------------------------------------------

PadicScalar teichmuller(const FqElem& c, const RingPtr& cfg) {
    const RingConfig& R = *cfg;
    if (fq::is_zero(c)) throw DomainError("teichmuller: c must be nonzero");
    if (fq::eq(c, fq::one(R))) return PadicScalar::one(cfg);
    bool is_minus_one = (c[0] == R.p() - 1);
    for (size_t i = 1; i < c.size(); ++i) is_minus_one = is_minus_one && c[i] == 0;
    if (is_minus_one && R.p() != 2) return PadicScalar::from_long(cfg, -1);
    long r = R.rel_precision();
    std::vector<mpz_class> x(R.residue_degree());
    for (int i = 0; i < R.residue_degree(); ++i) x[i] = c[i];
    for (long it = 0; it <= 2 * r + 4; ++it) {
        std::vector<mpz_class> nx = vec_powmod(R, x, R.q(), r);
        if (nx == x) return PadicScalar::from_unit(cfg, 0, std::move(x), r);
        x = std::move(nx);
    }
    throw InternalInvariantError("teichmuller: iteration did not stabilize");
}

PadicScalar mth_root_unit(const PadicScalar& a, long m, const FqElem& target) {
    const RingPtr& cfg = a.config();
    const RingConfig& R = *cfg;
    if (m < 1) throw InputError("mth_root_unit: m must be positive");
    if (m % R.p() == 0) throw UnsupportedRamifiedError("mth_root_unit: p divides m");
    if (a.kind() == ScalarKind::Zero) throw DomainError("mth_root_unit: a must be a unit");
    if (a.kind() == ScalarKind::ZeroAtPrec)
        throw PrecisionExhaustedError("mth_root_unit: a has no certified digits");
    if (a.valuation() != 0) throw DomainError("mth_root_unit: a must have valuation 0");
    if (!fq::eq(fq::pow(R, target, m), a.residue()))
        throw NotAnMthPowerError("mth_root_unit: target^m does not match residue(a)");

    // exact rational m-th roots, when the input is an exact rational
    if (a.has_exact() && R.residue_degree() >= 1) {
        bool rational = true;
        for (int i = 1; i < R.residue_degree(); ++i) rational = rational && a.exact_coords()[i] == 0;
        if (rational) {
            mpq_class q = a.exact_coords()[0];
            mpz_class num = q.get_num(), den = q.get_den();
            bool neg = num < 0;
            mpz_class anum = abs(num), rn, rd;
            bool ok_n = mpz_root(rn.get_mpz_t(), anum.get_mpz_t(), (unsigned long)m) != 0;
            bool ok_d = mpz_root(rd.get_mpz_t(), den.get_mpz_t(), (unsigned long)m) != 0;
            if (ok_n && ok_d && (!neg || m % 2 == 1)) {
                std::vector<mpq_class> cands;
                if (m % 2 == 1) {
                    cands.push_back(mpq_class(neg ? -rn : rn, rd));
                } else {
                    cands.push_back(mpq_class(rn, rd));
                    cands.push_back(mpq_class(-rn, rd));
                }
                for (const auto& cand : cands) {
                    PadicScalar x = PadicScalar::from_rational(cfg, cand);
                    if (x.is_unit_kind() && x.valuation() == 0 && fq::eq(x.residue(), target))
                        return x;
                }
            }
        }
    }

    // Newton lifting from the target residue
    PadicScalar af = a.dropped_exact();
    long k = af.known_precision();
    std::vector<mpz_class> lift(R.residue_degree());
    for (int i = 0; i < R.residue_degree(); ++i) lift[i] = target[i];
    PadicScalar x = PadicScalar::from_unit(cfg, 0, std::move(lift), k);
    PadicScalar mm = PadicScalar::from_long(cfg, m).dropped_exact();
    long max_it = 4 * (long)(std::log2((double)k) + 3);
    for (long it = 0; it < max_it; ++it) {
        PadicScalar fx = x.pow_int(m) - af;
        if (fx.kind() != ScalarKind::Unit) {
            if (!fq::eq(x.residue(), target))
                throw InternalInvariantError("mth_root_unit: wrong residue after lifting");
            return x;
        }
        PadicScalar delta = fx * (mm * x.pow_int(m - 1)).inv();
        x = x - delta;
    }
    throw InternalInvariantError("mth_root_unit: Newton iteration did not converge");
}

PadicScalar Embedding::apply(const PadicScalar& a) const {
    require_same_ring(*a.config(), *from, "Embedding::apply");
    const RingConfig& R2 = *to;
    switch (a.kind()) {
        case ScalarKind::Zero: return PadicScalar::zero(to);
        case ScalarKind::ZeroAtPrec: return PadicScalar::zero_at_precision(to, a.val_lower_bound());
        default: break;
    }
    if (from->residue_degree() == 1) {
        if (a.has_exact()) return PadicScalar::from_rational(to, a.exact_coords()[0]);
        std::vector<mpz_class> c(R2.residue_degree(), 0);
        c[0] = a.unit_coords()[0];
        return PadicScalar::from_unit(to, a.valuation(), std::move(c), a.known_precision());
    }
    // Horner: sum u_i * g^i, then shift by the valuation
    long prec = a.known_precision();
    PadicScalar acc = PadicScalar::zero(to);
    const auto& u = a.unit_coords();
    for (int i = from->residue_degree() - 1; i >= 0; --i) {
        acc = acc * gen_image;
        // coefficient known modulo p^prec only
        PadicScalar coeff = PadicScalar::zero(to);
        if (u[i] != 0) {
            long v = mpz_val_p(u[i], R2.p());
            if (v >= prec) {
                coeff = PadicScalar::zero_at_precision(to, prec);
            } else {
                std::vector<mpz_class> cc(R2.residue_degree(), 0);
                cc[0] = u[i] / R2.pk(v);
                coeff = PadicScalar::from_unit(to, v, std::move(cc), prec - v);
            }
        } else {
            coeff = PadicScalar::zero_at_precision(to, prec);
        }
        acc = acc + coeff;
    }
    return acc.shifted(a.valuation());
}

Embedding make_unramified_extension(const RingPtr& cfg, int rel_degree) {
    const RingConfig& R = *cfg;
    if (rel_degree < 1) throw InputError("make_unramified_extension: degree must be >= 1");
    int s2 = R.residue_degree() * rel_degree;
    RingPtr to = (rel_degree == 1)
                     ? cfg
                     : make_ring(R.p(), s2, canonical_irreducible(R.p(), s2), R.rel_precision());
    if (rel_degree == 1) return Embedding{cfg, to, PadicScalar::zero(to)};
    if (R.residue_degree() == 1) {
        // base Z_p, modulus X: generator maps to 0
        return Embedding{cfg, to, PadicScalar::zero(to)};
    }
    // residue root of the old modulus in the new residue field, Hensel-lifted
    FqElem alpha;
    if (!fq::find_root(*to, R.modulus(), alpha))
        throw InternalInvariantError("make_unramified_extension: modulus has no root upstairs");
    long r = R.rel_precision();
    std::vector<mpz_class> lift(s2);
    for (int i = 0; i < s2; ++i) lift[i] = alpha[i];
    PadicScalar x = PadicScalar::from_unit(to, 0, std::move(lift), r);
    const auto& M = R.modulus();
    auto eval = [&](const PadicScalar& z, bool deriv) {
        PadicScalar acc = PadicScalar::zero(to);
        if (!deriv) {
            for (int i = (int)M.size() - 1; i >= 0; --i)
                acc = acc * z + PadicScalar::from_long(to, M[i]).dropped_exact();
        } else {
            for (int i = (int)M.size() - 1; i >= 1; --i)
                acc = acc * z + PadicScalar::from_long(to, (long)i * M[i]).dropped_exact();
        }
        return acc;
    };
    for (long it = 0; it < 4 * (long)(std::log2((double)r) + 3); ++it) {
        PadicScalar fx = eval(x, false);
        if (fx.kind() != ScalarKind::Unit) return Embedding{cfg, to, x};
        x = x - fx * eval(x, true).inv();
    }
    throw InternalInvariantError("make_unramified_extension: Hensel lift did not converge");
}

ResidueRootResult residue_mth_root(const FqElem& c, const mpz_class& m, const RingPtr& cfg) {
    const RingConfig& R = *cfg;
    if (fq::is_zero(c)) throw DomainError("residue_mth_root: c must be nonzero");
    if (mpz_divisible_ui_p(m.get_mpz_t(), (unsigned long)R.p()))
        throw UnsupportedRamifiedError("residue_mth_root: p divides m");
    int t = fq::mth_root_extension_degree(R, c, m);
    if (t == 1) return ResidueRootResult{fq::mth_root(R, c, m), 1, cfg, std::nullopt};
    Embedding emb = make_unramified_extension(cfg, t);
    const RingConfig& R2 = *emb.to;
    // embed c: evaluate its coordinate polynomial at the image of the generator
    FqElem g = (R.residue_degree() == 1) ? fq::zero(R2) : emb.gen_image.residue();
    FqElem cc = fq::zero(R2);
    for (int i = R.residue_degree() - 1; i >= 0; --i) {
        cc = fq::mul(R2, cc, g);
        cc = fq::add(R2, cc, fq::from_int(R2, c[i]));
    }
    FqElem root = fq::mth_root(R2, cc, m);
    return ResidueRootResult{root, t, emb.to, emb};
}

PadicScalar pow_1unit(const PadicScalar& x, const mpq_class& a) {
    const RingConfig& R = *x.config();
    if (x.kind() != ScalarKind::Unit || x.valuation() != 0)
        throw DomainError("pow_1unit: base must be a unit");
    if (!fq::eq(x.residue(), fq::one(R)))
        throw DomainError("pow_1unit: base must be a 1-unit");
    PadicScalar xm1 = x - PadicScalar::one(x.config());
    if (R.p() == 2 && xm1.val_lower_bound() < 2)
        throw DomainError("pow_1unit: for p = 2 the base must be 1 mod 4");
    mpz_class den = a.get_den();
    if (mpz_divisible_ui_p(den.get_mpz_t(), (unsigned long)R.p()))
        throw DomainError("pow_1unit: exponent is not in Z_p");
    if (den == 1) return x.pow_int(a.get_num());
    mpz_class pk = R.pk(R.rel_precision());
    mpz_class deninv;
    if (mpz_invert(deninv.get_mpz_t(), mpz_class(den % pk).get_mpz_t(), pk.get_mpz_t()) == 0)
        throw InternalInvariantError("pow_1unit: denominator not invertible");
    mpz_class e = mod_pk(a.get_num() * deninv, pk);
    // the reduced exponent is huge; exact tracking would be astronomical
    return x.dropped_exact().pow_int(e);
}

} // namespace padyn
