#include "padyn/series.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace padyn {

Frac::Frac(long n, long d) {
    if (d == 0) throw InternalInvariantError("Frac: zero denominator");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    long g = std::gcd(std::abs(n), d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    num = n;
    den = d;
}

std::string Frac::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

TruncSeries::TruncSeries(RingPtr cfg, long cap) : cfg_(std::move(cfg)), cap_(cap) {
    if (cap_ < 0) throw InputError("TruncSeries: cap must be >= 0");
    c_.assign(cap_ + 1, PadicScalar::zero(cfg_));
    poly_ = true;
}

TruncSeries TruncSeries::constant(const PadicScalar& c, long cap) {
    TruncSeries s(c.config(), cap);
    s.c_[0] = c;
    return s;
}

TruncSeries TruncSeries::identity(RingPtr cfg, long cap) {
    TruncSeries s(cfg, cap);
    if (cap >= 1) s.c_[1] = PadicScalar::one(cfg);
    return s;
}

TruncSeries TruncSeries::monomial(RingPtr cfg, long cap, long deg, const PadicScalar& c) {
    TruncSeries s(std::move(cfg), cap);
    if (deg < 0 || deg > cap) throw InputError("monomial: degree out of range");
    s.c_[deg] = c;
    return s;
}

TruncSeries TruncSeries::from_longs(RingPtr cfg, long cap, const std::vector<long>& coeffs,
                                    long from_degree) {
    TruncSeries s(cfg, cap);
    for (size_t i = 0; i < coeffs.size(); ++i) {
        long d = from_degree + (long)i;
        if (d > cap) throw InputError("from_longs: coefficient beyond cap");
        s.c_[d] = PadicScalar::from_long(cfg, coeffs[i]);
    }
    return s;
}

TruncSeries TruncSeries::from_coeffs(RingPtr cfg, long cap, std::vector<PadicScalar> coeffs,
                                     bool is_polynomial) {
    TruncSeries s(std::move(cfg), cap);
    if ((long)coeffs.size() != cap + 1) throw InputError("from_coeffs: wrong length");
    s.c_ = std::move(coeffs);
    s.poly_ = is_polynomial;
    return s;
}

const PadicScalar& TruncSeries::coeff(long k) const {
    if (k < 0 || k > cap_) throw InputError("coeff: index out of range");
    return c_[k];
}

void TruncSeries::set_coeff(long k, PadicScalar c) {
    if (k < 0 || k > cap_) throw InputError("set_coeff: index out of range");
    require_same_ring(*cfg_, *c.config(), "set_coeff");
    c_[k] = std::move(c);
}

long TruncSeries::degree() const {
    if (!poly_) throw DomainError("degree: series is not a polynomial");
    for (long k = cap_; k >= 0; --k)
        if (!c_[k].is_zero()) return k;
    return -1; // zero polynomial
}

TruncSeries TruncSeries::truncated(long new_cap) const {
    if (new_cap == cap_) return *this;
    TruncSeries s(cfg_, new_cap);
    for (long k = 0; k <= std::min(new_cap, cap_); ++k) s.c_[k] = c_[k];
    bool poly_ok = poly_;
    for (long k = new_cap + 1; k <= cap_; ++k) poly_ok = poly_ok && c_[k].is_zero();
    s.poly_ = poly_ok;
    return s;
}

TruncSeries TruncSeries::dropped_exact() const {
    TruncSeries s = *this;
    for (auto& c : s.c_) c = c.dropped_exact();
    return s;
}

TruncSeries TruncSeries::shifted_down(long k) const {
    for (long i = 0; i < k; ++i)
        if (!c_[i].is_zero())
            throw DomainError("shifted_down: low coefficients are not exactly zero");
    TruncSeries s(cfg_, cap_ - k);
    for (long i = 0; i + k <= cap_; ++i) s.c_[i] = c_[i + k];
    s.poly_ = poly_;
    return s;
}

TruncSeries TruncSeries::shifted_up(long k) const {
    TruncSeries s(cfg_, cap_);
    for (long i = 0; i + k <= cap_; ++i) s.c_[i + k] = c_[i];
    bool poly_ok = poly_;
    if (poly_ok) {
        long d = degree();
        poly_ok = (d + k <= cap_);
    }
    s.poly_ = poly_ok;
    return s;
}

std::string TruncSeries::str(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (long k = 0; k <= cap_; ++k) {
        if (c_[k].is_zero()) continue;
        if (!first) os << " + ";
        os << "(" << c_[k].str() << ")";
        if (k >= 1) os << "*" << var;
        if (k >= 2) os << "^" << k;
        first = false;
    }
    if (first) os << "0";
    if (!poly_) os << " + O(" << var << "^" << (cap_ + 1) << ")";
    return os.str();
}

// ---- arithmetic ------------------------------------------------------------

namespace {

long common_cap(const TruncSeries& a, const TruncSeries& b, const char* where) {
    require_same_ring(*a.config(), *b.config(), where);
    return std::min(a.cap(), b.cap());
}

} // namespace

TruncSeries add(const TruncSeries& a, const TruncSeries& b) {
    long cap = common_cap(a, b, "series add");
    TruncSeries s(a.config(), cap);
    for (long k = 0; k <= cap; ++k) s.set_coeff(k, a.coeff(k) + b.coeff(k));
    s.set_polynomial(a.is_polynomial() && b.is_polynomial() && a.truncated(cap).is_polynomial() &&
                     b.truncated(cap).is_polynomial());
    return s;
}

TruncSeries neg(const TruncSeries& a) {
    TruncSeries s(a.config(), a.cap());
    for (long k = 0; k <= a.cap(); ++k) s.set_coeff(k, -a.coeff(k));
    s.set_polynomial(a.is_polynomial());
    return s;
}

TruncSeries sub(const TruncSeries& a, const TruncSeries& b) { return add(a, neg(b)); }

TruncSeries mul(const TruncSeries& a, const TruncSeries& b) {
    long cap = common_cap(a, b, "series mul");
    TruncSeries s(a.config(), cap);
    for (long i = 0; i <= cap; ++i) {
        if (a.coeff(i).is_zero()) continue;
        for (long j = 0; i + j <= cap; ++j) {
            if (b.coeff(j).is_zero()) continue;
            s.set_coeff(i + j, s.coeff(i + j) + a.coeff(i) * b.coeff(j));
        }
    }
    bool poly = a.is_polynomial() && b.is_polynomial();
    if (poly) {
        long da = a.degree(), db = b.degree();
        poly = (da < 0 || db < 0 || da + db <= cap);
    }
    s.set_polynomial(poly);
    return s;
}

TruncSeries scalar_mul(const PadicScalar& c, const TruncSeries& a) {
    require_same_ring(*c.config(), *a.config(), "scalar_mul");
    TruncSeries s(a.config(), a.cap());
    for (long k = 0; k <= a.cap(); ++k) s.set_coeff(k, c * a.coeff(k));
    s.set_polynomial(a.is_polynomial());
    return s;
}

TruncSeries derivative(const TruncSeries& f) {
    long cap = f.is_polynomial() ? f.cap() : f.cap() - 1;
    if (cap < 0) throw DomainError("derivative: cap too small");
    TruncSeries s(f.config(), cap);
    for (long k = 0; k <= cap; ++k) {
        if (k + 1 > f.cap()) break;
        s.set_coeff(k, PadicScalar::from_long(f.config(), k + 1) * f.coeff(k + 1));
    }
    s.set_polynomial(f.is_polynomial());
    return s;
}

TruncSeries pow_trunc(const TruncSeries& f, long n) {
    if (n < 0) throw InputError("pow_trunc: negative exponent");
    TruncSeries r = TruncSeries::constant(PadicScalar::one(f.config()), f.cap());
    TruncSeries base = f;
    while (n > 0) {
        if (n & 1) r = mul(r, base);
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return r;
}

TruncSeries compose(const TruncSeries& outer, const TruncSeries& inner) {
    long cap = common_cap(outer, inner, "compose");
    const PadicScalar& c0 = inner.coeff(0);
    if (c0.kind() == ScalarKind::ZeroAtPrec)
        throw PrecisionExhaustedError("compose: inner constant term not certifiably zero");
    if (!c0.is_zero()) throw DomainError("compose: inner series has nonzero constant term");
    TruncSeries in = inner.truncated(cap);
    TruncSeries acc(outer.config(), cap);
    for (long k = cap; k >= 0; --k) {
        acc = mul(acc, in);
        acc.set_coeff(0, acc.coeff(0) + outer.coeff(k));
    }
    bool poly = outer.is_polynomial() && inner.is_polynomial();
    if (poly) {
        long dout = outer.degree(), din = in.is_polynomial() ? in.degree() : -2;
        poly = (dout < 0 || din == -1 || (din >= 0 && dout * std::max(din, 0L) <= cap));
    }
    acc.set_polynomial(poly);
    return acc;
}

TruncSeries comp_inverse(const TruncSeries& f) {
    const PadicScalar& c0 = f.coeff(0);
    if (c0.kind() == ScalarKind::ZeroAtPrec)
        throw PrecisionExhaustedError("comp_inverse: constant term not certifiably zero");
    if (!c0.is_zero()) throw DomainError("comp_inverse: constant term must be zero");
    const PadicScalar& f1 = f.coeff(1);
    if (f1.kind() != ScalarKind::Unit)
        throw PrecisionExhaustedError("comp_inverse: f'(0) not certifiably nonzero");
    if (f1.valuation() != 0) throw DomainError("comp_inverse: f'(0) is not a unit");
    long cap = f.cap();
    PadicScalar f1inv = f1.inv();
    TruncSeries g(f.config(), cap);
    if (cap >= 1) g.set_coeff(1, f1inv);
    for (long k = 2; k <= cap; ++k) {
        TruncSeries h = compose(f.truncated(k), g.truncated(k));
        g.set_coeff(k, -(f1inv * h.coeff(k)));
    }
    g.set_polynomial(false);
    return g;
}

TruncSeries iterate(const TruncSeries& f, long n) {
    if (n < 0) throw InputError("iterate: n must be nonnegative");
    TruncSeries r = TruncSeries::identity(f.config(), f.cap());
    for (long i = 0; i < n; ++i) r = compose(f, r);
    return r;
}

TruncSeries mul_inverse(const TruncSeries& u) {
    const PadicScalar& u0 = u.coeff(0);
    if (u0.kind() != ScalarKind::Unit)
        throw PrecisionExhaustedError("mul_inverse: constant term not certifiably nonzero");
    PadicScalar z0 = u0.inv();
    long cap = u.cap();
    TruncSeries z(u.config(), cap);
    z.set_coeff(0, z0);
    for (long k = 1; k <= cap; ++k) {
        PadicScalar acc = PadicScalar::zero(u.config());
        for (long j = 1; j <= k; ++j) acc = acc + u.coeff(j) * z.coeff(k - j);
        z.set_coeff(k, -(z0 * acc));
    }
    z.set_polynomial(false);
    return z;
}

bool agrees(const TruncSeries& a, const TruncSeries& b) { return !first_disagreement(a, b); }

std::optional<long> first_disagreement(const TruncSeries& a, const TruncSeries& b) {
    long cap = common_cap(a, b, "series comparison");
    for (long k = 0; k <= cap; ++k)
        if (!a.coeff(k).agrees_with(b.coeff(k))) return k;
    return std::nullopt;
}

// ---- Weierstrass theory ----------------------------------------------------

WidegResult weierstrass_degree(const TruncSeries& f) {
    for (long i = 0; i <= f.cap(); ++i) {
        const PadicScalar& c = f.coeff(i);
        switch (c.kind()) {
            case ScalarKind::Zero: continue;
            case ScalarKind::ZeroAtPrec:
                if (c.val_lower_bound() >= 1) continue;
                throw PrecisionExhaustedError(
                    "weierstrass_degree: coefficient " + std::to_string(i) +
                    " is zero-at-precision and blocks unit certification");
            default: break;
        }
        if (c.valuation() < 0)
            throw DomainError("weierstrass_degree: series is not over O (negative valuation)");
        if (c.valuation() == 0) return {WidegResult::Kind::Finite, i};
    }
    if (f.is_polynomial()) return {WidegResult::Kind::InfinitePolynomial, 0};
    return {WidegResult::Kind::AtLeastCap, f.cap()};
}

namespace {

// divide A by a monic polynomial g (degree n): A = g*B + C with deg C < n
void divmod_monic(const TruncSeries& A, const TruncSeries& g, long n, TruncSeries& B,
                  TruncSeries& C) {
    long cap = A.cap();
    TruncSeries work = A;
    B = TruncSeries::zero(A.config(), cap);
    for (long i = cap; i >= n; --i) {
        PadicScalar t = work.coeff(i);
        if (t.is_zero()) continue;
        B.set_coeff(i - n, t);
        // work -= t * X^{i-n} * g
        for (long j = 0; j <= n; ++j)
            work.set_coeff(i - n + j, work.coeff(i - n + j) - t * g.coeff(j));
        // force the leading position to exact zero (it cancels by construction)
        work.set_coeff(i, PadicScalar::zero(A.config()));
    }
    C = work;
}

WeierstrassSplit prep_core(const TruncSeries& Fin) {
    const RingPtr& cfg = Fin.config();
    long cap = Fin.cap();
    // content
    long t = PadicScalar::VAL_INF;
    for (long i = 0; i <= cap; ++i) {
        const PadicScalar& c = Fin.coeff(i);
        if (c.is_unit_kind()) t = std::min(t, c.valuation());
    }
    if (t == PadicScalar::VAL_INF) {
        bool all_zero = true;
        for (long i = 0; i <= cap; ++i) all_zero = all_zero && Fin.coeff(i).is_zero();
        if (all_zero) throw DomainError("weierstrass_prep: zero series");
        throw PrecisionExhaustedError("weierstrass_prep: content indeterminate");
    }
    for (long i = 0; i <= cap; ++i)
        if (Fin.coeff(i).kind() == ScalarKind::ZeroAtPrec && Fin.coeff(i).val_lower_bound() < t)
            throw PrecisionExhaustedError("weierstrass_prep: content indeterminate");
    TruncSeries F(cfg, cap);
    for (long i = 0; i <= cap; ++i) F.set_coeff(i, Fin.coeff(i).shifted(-t));
    F.set_polynomial(Fin.is_polynomial());

    WidegResult w = weierstrass_degree(F);
    if (!w.finite())
        throw DomainError("weierstrass_prep: infinite or undetermined Weierstrass degree");
    long n = w.value;

    // certified-precision target for the residual
    long wp = cfg->rel_precision();
    for (long i = 0; i <= cap; ++i)
        if (F.coeff(i).is_unit_kind())
            wp = std::min(wp, F.coeff(i).valuation() + F.coeff(i).known_precision());
    wp = std::max(wp, 1L);

    if (n == 0) {
        TruncSeries g = TruncSeries::constant(PadicScalar::one(cfg), cap);
        return WeierstrassSplit{g, F, t, true};
    }

    TruncSeries g(cfg, cap);
    g.set_coeff(n, PadicScalar::one(cfg));
    TruncSeries v(cfg, cap);
    for (long i = n; i <= cap; ++i) v.set_coeff(i - n, F.coeff(i));
    v.set_polynomial(false);

    auto residual = [&]() { return sub(F, mul(g, v)); };
    TruncSeries R = residual();
    long last_min = -1;
    bool dropped = false;
    for (long it = 0; it < 4 * (long)cfg->rel_precision() + 16; ++it) {
        // exact rationals explode under the correction (denominators multiply
        // every round); keep them only while the residual can still terminate
        if (it == 2 && !dropped) {
            F = F.dropped_exact();
            g = g.dropped_exact();
            v = v.dropped_exact();
            R = R.dropped_exact();
            dropped = true;
        }
        long rmin = PadicScalar::VAL_INF;
        for (long i = 0; i <= cap; ++i) rmin = std::min(rmin, R.coeff(i).val_lower_bound());
        if (rmin >= wp) {
            bool exact = true;
            for (long i = 0; i <= cap; ++i) exact = exact && R.coeff(i).is_zero();
            if (!exact) {
                // Two limits on the certified digits: the residual error p^wp,
                // and the X-truncation itself.  Mod X^{cap+1} the top n
                // coefficients of v are not determined at all, and perturbing
                // v_{j+i} feeds into v_j weighted by g_{n-i} (valuation >=
                // i*lambda, lambda the smallest root valuation of g).  So v_j
                // is only unique up to p^{(cap+1-n-j)*lambda}, and g up to
                // p^{(cap+1-n)*lambda}.
                Frac lambda(0, 1);
                bool have_lambda = false;
                NewtonPolygon np = newton_polygon(F, 0, n);
                for (const auto& [slope, len] : np.slopes) {
                    if (slope.num >= 0) continue;
                    Frac lam(-slope.num, slope.den);
                    if (!have_lambda || lam < lambda) lambda = lam;
                    have_lambda = true;
                }
                auto trunc_limit = [&](long steps) {
                    if (!have_lambda) return wp;
                    long lim = (steps * lambda.num) / lambda.den;
                    return std::min(wp, std::max(lim, 0L));
                };
                long wp_g = std::max(trunc_limit(cap + 1 - n), 1L);
                for (long i = 0; i <= cap; ++i) {
                    g.set_coeff(i, g.coeff(i).capped_abs_precision(wp_g));
                    v.set_coeff(i, v.coeff(i).capped_abs_precision(trunc_limit(cap + 1 - n - i)));
                }
            }
            g.set_polynomial(true);
            for (long i = 0; i < n; ++i) {
                Tri in_m = g.coeff(i).val_ge(1);
                if (in_m == Tri::False)
                    throw InternalInvariantError("weierstrass_prep: g not distinguished");
                if (in_m == Tri::Unknown)
                    throw PrecisionExhaustedError("weierstrass_prep: distinguishedness uncertifiable");
            }
            return WeierstrassSplit{g, v, t, exact};
        }
        if (rmin <= last_min)
            throw InternalInvariantError("weierstrass_prep: residual not decreasing");
        last_min = rmin;
        TruncSeries A = mul(R, mul_inverse(v));
        TruncSeries B(cfg, cap), C(cfg, cap);
        divmod_monic(A, g, n, B, C);
        g = add(g, C);
        g.set_polynomial(true);
        v = add(v, mul(B, v));
        v.set_polynomial(false);
        R = residual();
    }
    throw InternalInvariantError("weierstrass_prep: iteration did not converge");
}

} // namespace

WeierstrassSplit weierstrass_prep(const TruncSeries& f) {
    const PadicScalar& c0 = f.coeff(0);
    if (c0.kind() == ScalarKind::ZeroAtPrec)
        throw PrecisionExhaustedError("weierstrass_prep: f(0) not certifiably zero");
    if (!c0.is_zero()) throw DomainError("weierstrass_prep: requires f(0) = 0");
    return prep_core(f.shifted_down(1));
}

WeierstrassSplit weierstrass_prep_general(const TruncSeries& f) { return prep_core(f); }

// ---- Newton polygons -------------------------------------------------------

NewtonPolygon newton_polygon(const TruncSeries& f, long lo, long hi) {
    hi = std::min(hi, f.cap());
    std::vector<std::pair<long, long>> pts;
    std::vector<std::pair<long, long>> bounds; // zero-at-precision constraints
    for (long i = lo; i <= hi; ++i) {
        const PadicScalar& c = f.coeff(i);
        switch (c.kind()) {
            case ScalarKind::Zero: break;
            case ScalarKind::ZeroAtPrec: bounds.push_back({i, c.val_lower_bound()}); break;
            default: pts.push_back({i, c.valuation()});
        }
    }
    if (pts.empty()) throw DomainError("newton_polygon: no certified nonzero coefficients");
    // lower convex hull (points already sorted by index)
    std::vector<std::pair<long, long>> hull;
    for (const auto& p : pts) {
        while (hull.size() >= 2) {
            auto& a = hull[hull.size() - 2];
            auto& b = hull[hull.size() - 1];
            // keep b only if it lies strictly below segment a-p
            __int128 lhs = (__int128)(b.second - a.second) * (p.first - a.first);
            __int128 rhs = (__int128)(p.second - a.second) * (b.first - a.first);
            if (lhs < rhs) break;
            hull.pop_back();
        }
        hull.push_back(p);
    }
    // zero-at-precision coefficients must lie on or above the hull
    auto hull_cmp_below = [&](long i, long bound) {
        // is (i, bound) strictly below the hull?
        if (i <= hull.front().first)
            return i == hull.front().first && bound < hull.front().second;
        if (i >= hull.back().first)
            return i == hull.back().first && bound < hull.back().second;
        for (size_t k = 0; k + 1 < hull.size(); ++k) {
            auto [x1, y1] = hull[k];
            auto [x2, y2] = hull[k + 1];
            if (i < x1 || i > x2) continue;
            // bound < y1 + (y2-y1)(i-x1)/(x2-x1) ?
            __int128 lhs = (__int128)(bound - y1) * (x2 - x1);
            __int128 rhs = (__int128)(y2 - y1) * (i - x1);
            return lhs < rhs;
        }
        return false;
    };
    for (const auto& [i, bound] : bounds) {
        if (i > hull.front().first && i < hull.back().first && hull_cmp_below(i, bound))
            throw PrecisionExhaustedError("newton_polygon: hull membership indeterminate at index " +
                                          std::to_string(i));
        if ((i == hull.front().first || i == hull.back().first) && hull_cmp_below(i, bound))
            throw PrecisionExhaustedError("newton_polygon: hull membership indeterminate at index " +
                                          std::to_string(i));
    }
    NewtonPolygon np;
    np.vertices = hull;
    for (size_t k = 0; k + 1 < hull.size(); ++k) {
        long dx = hull[k + 1].first - hull[k].first;
        long dy = hull[k + 1].second - hull[k].second;
        np.slopes.push_back({Frac(dy, dx), dx});
    }
    return np;
}

NewtonPolygon newton_polygon(const TruncSeries& f) { return newton_polygon(f, 0, f.cap()); }

std::vector<std::pair<Frac, long>> root_valuations(const TruncSeries& f) {
    WidegResult w = weierstrass_degree(f);
    if (!w.finite())
        throw DomainError("root_valuations: finite Weierstrass degree within cap required");
    NewtonPolygon np = newton_polygon(f, 0, w.value);
    std::vector<std::pair<Frac, long>> out;
    for (const auto& [slope, len] : np.slopes) {
        if (slope.num >= 0) continue; // only open-disk (positive-valuation) roots
        out.push_back({Frac(-slope.num, slope.den), len});
    }
    return out;
}

// ---- roots of polynomials and unit series ----------------------------------

TruncSeries poly_mth_root(const TruncSeries& g, long m) {
    if (m < 1) throw InputError("poly_mth_root: m must be positive");
    if (!g.is_polynomial()) throw DomainError("poly_mth_root: input must be a polynomial");
    long n = g.degree();
    if (n < 0) throw DomainError("poly_mth_root: zero polynomial");
    const PadicScalar& lead = g.coeff(n);
    if (!lead.agrees_with(PadicScalar::one(g.config())))
        throw DomainError("poly_mth_root: polynomial must be monic");
    if (n % m != 0)
        throw NotAnMthPowerError("poly_mth_root: degree " + std::to_string(n) +
                                 " not divisible by m = " + std::to_string(m));
    long d = n / m;
    PadicScalar minv = PadicScalar::from_long(g.config(), m).inv();
    TruncSeries g0(g.config(), g.cap());
    g0.set_coeff(d, PadicScalar::one(g.config()));
    for (long k = 1; k <= d; ++k) {
        TruncSeries P = pow_trunc(g0, m);
        g0.set_coeff(d - k, minv * (g.coeff(n - k) - P.coeff(n - k)));
    }
    g0.set_polynomial(true);
    // the remaining coefficients certify (or refute) the m-th-power property
    TruncSeries P = pow_trunc(g0, m);
    if (auto bad = first_disagreement(P, g))
        throw NotAnMthPowerError("poly_mth_root: not an m-th power (mismatch at degree " +
                                 std::to_string(*bad) + ")");
    return g0;
}

TruncSeries series_mth_root_unit(const TruncSeries& v, long m, const FqElem& target) {
    const RingPtr& cfg = v.config();
    if (m % cfg->p() == 0)
        throw UnsupportedRamifiedError("series_mth_root_unit: p divides m");
    PadicScalar c0 = mth_root_unit(v.coeff(0), m, target);
    long cap = v.cap();
    PadicScalar pivot_inv = (PadicScalar::from_long(cfg, m) * c0.pow_int(m - 1)).inv();
    TruncSeries y(cfg, cap);
    y.set_coeff(0, c0);
    for (long k = 1; k <= cap; ++k) {
        TruncSeries P = pow_trunc(y, m);
        y.set_coeff(k, pivot_inv * (v.coeff(k) - P.coeff(k)));
    }
    y.set_polynomial(false);
    return y;
}

// ---- resultants ------------------------------------------------------------

PadicScalar resultant(const TruncSeries& a, const TruncSeries& b) {
    if (!a.is_polynomial() || !b.is_polynomial())
        throw DomainError("resultant: inputs must be polynomials");
    const RingPtr& cfg = a.config();
    long da = a.degree(), db = b.degree();
    if (da < 0 || db < 0) return PadicScalar::zero(cfg);
    if (da == 0) return a.coeff(0).pow_int(db);
    if (db == 0) return b.coeff(0).pow_int(da);
    long n = da + db;
    // Sylvester matrix; exact sidecars (when present) let exact cancellations
    // in the elimination come out as true zeros
    std::vector<std::vector<PadicScalar>> M(n, std::vector<PadicScalar>(n, PadicScalar::zero(cfg)));
    for (long r = 0; r < db; ++r)
        for (long j = 0; j <= da; ++j) M[r][r + j] = a.coeff(da - j);
    for (long r = 0; r < da; ++r)
        for (long j = 0; j <= db; ++j) M[db + r][r + j] = b.coeff(db - j);
    PadicScalar det = PadicScalar::one(cfg);
    int sign = 1;
    for (long col = 0; col < n; ++col) {
        long pivot = -1;
        long best_val = PadicScalar::VAL_INF;
        bool any_uncertified = false;
        for (long r = col; r < n; ++r) {
            const PadicScalar& e = M[r][col];
            if (e.is_unit_kind()) {
                if (e.valuation() < best_val) {
                    best_val = e.valuation();
                    pivot = r;
                }
            } else if (!e.is_zero()) {
                any_uncertified = true;
            }
        }
        if (pivot < 0) {
            if (any_uncertified)
                throw PrecisionExhaustedError("resultant: pivot column has no certified entry");
            return PadicScalar::zero(cfg);
        }
        if (pivot != col) {
            std::swap(M[pivot], M[col]);
            sign = -sign;
        }
        PadicScalar pv = M[col][col];
        det = det * pv;
        PadicScalar pvinv = pv.inv();
        for (long r = col + 1; r < n; ++r) {
            if (M[r][col].is_zero()) continue;
            PadicScalar factor = M[r][col] * pvinv;
            for (long c = col; c < n; ++c) M[r][c] = M[r][c] - factor * M[col][c];
        }
    }
    return sign == 1 ? det : -det;
}

bool is_separable(const TruncSeries& g) {
    PadicScalar res = resultant(g, derivative(g));
    if (res.is_unit_kind()) return true;
    if (res.is_zero()) return false;
    throw PrecisionExhaustedError("is_separable: resultant not certified at working precision");
}

} // namespace padyn
