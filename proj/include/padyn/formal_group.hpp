#pragma once

#include "padyn/bivar.hpp"
#include "padyn/dynamics.hpp"

namespace padyn {

struct GroupLaw {
    BivarTrunc S;     // S(X, Y) = L^{-1}(L(X) + L(Y)), total-degree truncated
    TruncSeries L;    // the logarithm used to build it
    TruncSeries Linv; // compositional inverse of L
};

/// Synthesize the formal group law from a logarithm (L(0) = 0, L'(0) = 1).
GroupLaw build_group_law(const TruncSeries& L, long total_cap);

struct LawIntegralityReport {
    long min_val;
    std::optional<std::pair<long, long>> worst_index;
    bool integral;
};

/// Coefficient integrality of the law over O.
LawIntegralityReport law_integrality(const BivarTrunc& S);

struct FactorialBoundReport {
    bool holds;
    std::optional<long> witness; // column j where min val s_j < -val_p(j!)
};

/// Denominator bound: every column s_j of S has min val >= -val_p(j!).
FactorialBoundReport factorial_bound_check(const GroupLaw& G);

struct AxiomReport {
    bool identity = false;
    bool commutative = false;
    bool associative = false;
    std::optional<std::array<long, 3>> assoc_witness;
    bool ok() const { return identity && commutative && associative; }
};

/// Identity S(X,0) = X, commutativity, associativity at total cap.
AxiomReport check_group_axioms(const GroupLaw& G);

/// [a](X) = L^{-1}(a L(X)), the unique endomorphism with derivative a at 0.
TruncSeries endomorphism(const GroupLaw& G, const PadicScalar& a);

/// Does g satisfy g(S(X,Y)) = S(g(X), g(Y)) at total cap?
bool is_endomorphism(const GroupLaw& G, const TruncSeries& g);

struct UnCommuterReport {
    TruncSeries u_n;   // sum_j s_j(X) f^{on}(X)^j, the paper's u_n = X +_G f^{on}
    PadicScalar deriv; // u_n'(0)
    bool deriv_matches;    // u_n'(0) = 1 + f'(0)^n
    bool commutes_with_f;
};

/// The translations u_n(X) = S(X, f^{on}(X)) commute with f and realize the
/// 1-units 1 + f'(0)^n as derivatives.
UnCommuterReport un_commuter_check(const GroupLaw& G, const TruncSeries& f, long n);

/// [a] for a Z_p exponent given as a rational: p-adic iteration u^{oa} of the
/// 1-unit-derivative flow, computed as endomorphism(G, u'(0)^a).
TruncSeries padic_iterate(const GroupLaw& G, const TruncSeries& u, const mpq_class& a);

} // namespace padyn
