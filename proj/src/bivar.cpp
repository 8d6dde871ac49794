#include "padyn/bivar.hpp"

#include <sstream>

namespace padyn {

BivarTrunc::BivarTrunc(RingPtr cfg, long total_cap) : cfg_(std::move(cfg)), cap_(total_cap) {
    if (cap_ < 0) throw InputError("BivarTrunc: cap must be >= 0");
    c_.assign((size_t)(cap_ + 1) * (cap_ + 1), PadicScalar::zero(cfg_));
}

size_t BivarTrunc::idx(long i, long j) const {
    if (i < 0 || j < 0 || i + j > cap_) throw InputError("BivarTrunc: index out of range");
    return (size_t)i * (cap_ + 1) + j;
}

const PadicScalar& BivarTrunc::coeff(long i, long j) const { return c_[idx(i, j)]; }

void BivarTrunc::set_coeff(long i, long j, PadicScalar c) {
    require_same_ring(*cfg_, *c.config(), "BivarTrunc::set_coeff");
    c_[idx(i, j)] = std::move(c);
}

BivarTrunc BivarTrunc::from_univariate(const TruncSeries& f, long total_cap, int var) {
    BivarTrunc s(f.config(), total_cap);
    for (long k = 0; k <= std::min(total_cap, f.cap()); ++k) {
        if (f.coeff(k).is_zero()) continue;
        if (var == 0)
            s.set_coeff(k, 0, f.coeff(k));
        else
            s.set_coeff(0, k, f.coeff(k));
    }
    return s;
}

BivarTrunc BivarTrunc::dropped_exact() const {
    BivarTrunc s = *this;
    for (auto& c : s.c_) c = c.dropped_exact();
    return s;
}

TruncSeries BivarTrunc::column(long j) const {
    if (j < 0 || j > cap_) throw InputError("column: index out of range");
    TruncSeries s(cfg_, cap_ - j);
    for (long i = 0; i + j <= cap_; ++i) s.set_coeff(i, coeff(i, j));
    s.set_polynomial(false);
    return s;
}

TruncSeries BivarTrunc::substitute(const TruncSeries& x, const TruncSeries& y) const {
    require_same_ring(*cfg_, *x.config(), "BivarTrunc::substitute");
    long cap = std::min(x.cap(), y.cap());
    if (!x.coeff(0).is_zero() || !y.coeff(0).is_zero())
        throw DomainError("BivarTrunc::substitute: arguments need zero constant term");
    TruncSeries xs = x.truncated(cap), ys = y.truncated(cap);
    TruncSeries acc(cfg_, cap);
    for (long i = cap_; i >= 0; --i) {
        TruncSeries row(cfg_, cap);
        for (long j = cap_ - i; j >= 0; --j) {
            row = mul(row, ys);
            row.set_coeff(0, row.coeff(0) + coeff(i, j));
        }
        acc = add(mul(acc, xs), row);
    }
    acc.set_polynomial(false);
    return acc;
}

std::string BivarTrunc::str() const {
    std::ostringstream os;
    bool first = true;
    for (long d = 0; d <= cap_; ++d)
        for (long i = d; i >= 0; --i) {
            long j = d - i;
            if (coeff(i, j).is_zero()) continue;
            if (!first) os << " + ";
            os << "(" << coeff(i, j).str() << ")";
            if (i) os << "*X" << (i > 1 ? "^" + std::to_string(i) : "");
            if (j) os << "*Y" << (j > 1 ? "^" + std::to_string(j) : "");
            first = false;
        }
    if (first) os << "0";
    return os.str();
}

BivarTrunc add(const BivarTrunc& a, const BivarTrunc& b) {
    require_same_ring(*a.config(), *b.config(), "bivar add");
    long cap = std::min(a.total_cap(), b.total_cap());
    BivarTrunc s(a.config(), cap);
    for (long i = 0; i <= cap; ++i)
        for (long j = 0; i + j <= cap; ++j) s.set_coeff(i, j, a.coeff(i, j) + b.coeff(i, j));
    return s;
}

BivarTrunc sub(const BivarTrunc& a, const BivarTrunc& b) {
    return add(a, scalar_mul(-PadicScalar::one(a.config()), b));
}

BivarTrunc mul(const BivarTrunc& a, const BivarTrunc& b) {
    require_same_ring(*a.config(), *b.config(), "bivar mul");
    long cap = std::min(a.total_cap(), b.total_cap());
    BivarTrunc s(a.config(), cap);
    for (long i = 0; i <= a.total_cap(); ++i)
        for (long j = 0; i + j <= a.total_cap(); ++j) {
            if (a.coeff(i, j).is_zero()) continue;
            for (long k = 0; i + j + k <= cap; ++k)
                for (long l = 0; i + j + k + l <= cap; ++l) {
                    if (b.coeff(k, l).is_zero()) continue;
                    s.set_coeff(i + k, j + l, s.coeff(i + k, j + l) + a.coeff(i, j) * b.coeff(k, l));
                }
        }
    return s;
}

BivarTrunc scalar_mul(const PadicScalar& c, const BivarTrunc& a) {
    BivarTrunc s(a.config(), a.total_cap());
    for (long i = 0; i <= a.total_cap(); ++i)
        for (long j = 0; i + j <= a.total_cap(); ++j) s.set_coeff(i, j, c * a.coeff(i, j));
    return s;
}

// ---- trivariate ------------------------------------------------------------

TrivarTrunc::TrivarTrunc(RingPtr cfg, long total_cap) : cfg_(std::move(cfg)), cap_(total_cap) {
    if (cap_ < 0) throw InputError("TrivarTrunc: cap must be >= 0");
    size_t n = (size_t)(cap_ + 1);
    c_.assign(n * n * n, PadicScalar::zero(cfg_));
}

size_t TrivarTrunc::idx(long i, long j, long k) const {
    if (i < 0 || j < 0 || k < 0 || i + j + k > cap_)
        throw InputError("TrivarTrunc: index out of range");
    size_t n = (size_t)(cap_ + 1);
    return ((size_t)i * n + j) * n + k;
}

const PadicScalar& TrivarTrunc::coeff(long i, long j, long k) const { return c_[idx(i, j, k)]; }

void TrivarTrunc::set_coeff(long i, long j, long k, PadicScalar c) { c_[idx(i, j, k)] = std::move(c); }

std::optional<std::array<long, 3>> TrivarTrunc::first_disagreement(const TrivarTrunc& a,
                                                                   const TrivarTrunc& b) {
    long cap = std::min(a.cap_, b.cap_);
    for (long i = 0; i <= cap; ++i)
        for (long j = 0; i + j <= cap; ++j)
            for (long k = 0; i + j + k <= cap; ++k)
                if (!a.coeff(i, j, k).agrees_with(b.coeff(i, j, k)))
                    return std::array<long, 3>{i, j, k};
    return std::nullopt;
}

TrivarTrunc add(const TrivarTrunc& a, const TrivarTrunc& b) {
    require_same_ring(*a.config(), *b.config(), "trivar add");
    long cap = std::min(a.cap_, b.cap_);
    TrivarTrunc s(a.config(), cap);
    for (long i = 0; i <= cap; ++i)
        for (long j = 0; i + j <= cap; ++j)
            for (long k = 0; i + j + k <= cap; ++k)
                s.set_coeff(i, j, k, a.coeff(i, j, k) + b.coeff(i, j, k));
    return s;
}

TrivarTrunc mul(const TrivarTrunc& a, const TrivarTrunc& b) {
    require_same_ring(*a.config(), *b.config(), "trivar mul");
    long cap = std::min(a.cap_, b.cap_);
    TrivarTrunc s(a.config(), cap);
    for (long i1 = 0; i1 <= a.cap_; ++i1)
        for (long j1 = 0; i1 + j1 <= a.cap_; ++j1)
            for (long k1 = 0; i1 + j1 + k1 <= a.cap_; ++k1) {
                const PadicScalar& x = a.coeff(i1, j1, k1);
                if (x.is_zero()) continue;
                long room = cap - (i1 + j1 + k1);
                if (room < 0) continue;
                for (long i2 = 0; i2 <= room; ++i2)
                    for (long j2 = 0; i2 + j2 <= room; ++j2)
                        for (long k2 = 0; i2 + j2 + k2 <= room; ++k2) {
                            const PadicScalar& y = b.coeff(i2, j2, k2);
                            if (y.is_zero()) continue;
                            s.set_coeff(i1 + i2, j1 + j2, k1 + k2,
                                        s.coeff(i1 + i2, j1 + j2, k1 + k2) + x * y);
                        }
            }
    return s;
}

TrivarTrunc substitute_pair(const BivarTrunc& outer, const BivarTrunc& inner, bool inner_first) {
    require_same_ring(*outer.config(), *inner.config(), "substitute_pair");
    const RingPtr& cfg = outer.config();
    long cap = std::min(outer.total_cap(), inner.total_cap());
    if (!inner.coeff(0, 0).is_zero())
        throw DomainError("substitute_pair: inner series needs zero constant term");
    // inner as trivariate: in (X, Y) when it fills the first slot, in (Y, Z)
    // when it fills the second
    TrivarTrunc A(cfg, cap);
    for (long i = 0; i <= cap; ++i)
        for (long j = 0; i + j <= cap; ++j) {
            if (inner.coeff(i, j).is_zero()) continue;
            if (inner_first)
                A.set_coeff(i, j, 0, inner.coeff(i, j));
            else
                A.set_coeff(0, i, j, inner.coeff(i, j));
        }
    // the bare variable filling the other slot
    TrivarTrunc V(cfg, cap);
    if (cap >= 1) {
        if (inner_first)
            V.set_coeff(0, 0, 1, PadicScalar::one(cfg)); // Z
        else
            V.set_coeff(1, 0, 0, PadicScalar::one(cfg)); // X
    }
    const TrivarTrunc& u_sub = inner_first ? A : V;
    const TrivarTrunc& w_sub = inner_first ? V : A;
    // Horner in the first slot: outer(U, W) = sum_u U^u (sum_w c_{uw} W^w)
    TrivarTrunc acc(cfg, cap);
    long U = outer.total_cap();
    for (long u = U; u >= 0; --u) {
        TrivarTrunc row(cfg, cap);
        for (long w = U - u; w >= 0; --w) {
            row = mul(row, w_sub);
            row.set_coeff(0, 0, 0, row.coeff(0, 0, 0) + outer.coeff(u, w));
        }
        acc = add(mul(acc, u_sub), row);
    }
    return acc;
}

} // namespace padyn
