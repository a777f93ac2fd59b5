#ifndef STABLEFRAC_INTEGRABILITY_HPP
#define STABLEFRAC_INTEGRABILITY_HPP

#include <optional>
#include <vector>

#include "stablefrac/localmodel.hpp"

namespace stablefrac {

// Per-branch outcome of the membership test.  actual == nullopt means the
// numerator reduced to an exact multiple of P (order +infinity).
struct MembershipReport {
    std::optional<Rat> p;  // nullopt = infinity (tested via K+1)
    bool verdict = false;
    bool vacuous = false;  // Q was a multiple of P
    bool numeric = false;
    struct Branch {
        int j = 0;
        std::optional<int> actual;
        int required = 0;
        bool ok = false;
    };
    std::vector<Branch> branches;
};

struct ExponentRange {
    std::optional<Rat> p_star;  // nullopt = infinity
    bool includes_infinity = false;
};

// ceil((2L+1)/p) in exact rational arithmetic
inline int ceil_2lp(int two_l_plus_1, const Rat& p) {
    return static_cast<int>(to_long(ceil_rat(Rat(two_l_plus_1) / p)));
}

// O(n, q, Q): highest power of x dividing Q(x, x^n y - q(x)).
template <class K>
int order_on_datum(int n, const Poly1<K>& q, const BiPolyT<K>& Q) {
    if (Q.is_zero()) throw ZeroNumerator("O(n,q,Q) undefined for Q = 0");
    BiPolyT<K> repl = BiPolyT<K>::monomial(n, 1);
    for (size_t k = 0; k < q.c.size(); ++k)
        repl.add_term(static_cast<int>(k), 0, -GComplex<K>(q.c[k]));
    return Q.substitute_y(repl).x_content_order();
}

// Remainder of Q modulo the model polynomial P (exact division in y).
template <class K>
BiPolyT<K> reduce_mod_model(const BiPolyT<K>& Q, const LocalModelT<K>& m) {
    return divide_y(Q, build_P_from_model(m)).second;
}

// Theorem-level membership test: Q/P in L^p near (0,0) iff every branch j
// satisfies O(2L_j, q_j, Q) >= sum_i O_ij - ceil((2L_j+1)/p) + 1.
template <class K>
MembershipReport is_in_Lp(const BiPolyT<K>& Q, const LocalModelT<K>& m, const Rat& p) {
    if (p < 1) throw InputError("membership test requires p >= 1");
    MembershipReport rep;
    rep.p = p;
    rep.numeric = !is_exact_scalar<K>;
    ContactMatrix cm = contact_matrix(m);
    BiPolyT<K> q0 = reduce_mod_model(Q, m);
    rep.vacuous = q0.is_zero();
    rep.verdict = true;
    for (int j = 0; j < m.size(); ++j) {
        MembershipReport::Branch b;
        b.j = j;
        int two_l = 2 * m.branches[static_cast<size_t>(j)].L;
        b.required = cm.row_sum(j) - ceil_2lp(two_l + 1, p) + 1;
        if (!rep.vacuous)
            b.actual = order_on_datum(two_l, m.branches[static_cast<size_t>(j)].q, q0);
        b.ok = !b.actual || *b.actual >= b.required;
        rep.verdict = rep.verdict && b.ok;
        rep.branches.push_back(std::move(b));
    }
    return rep;
}

// L^infty via the stabilization I^{K+1} = I^infty, K = max_j 2L_j.
template <class K>
bool is_in_Linfty(const BiPolyT<K>& Q, const LocalModelT<K>& m) {
    return is_in_Lp(Q, m, Rat(m.max_2l() + 1)).verdict;
}

template <class K>
MembershipReport linfty_report(const BiPolyT<K>& Q, const LocalModelT<K>& m) {
    MembershipReport rep = is_in_Lp(Q, m, Rat(m.max_2l() + 1));
    rep.p = std::nullopt;
    return rep;
}

// Critical exponent: membership holds exactly on [1, p_star).  p_star = 1
// encodes an empty membership range; nullopt encodes all finite p.
template <class K>
ExponentRange lp_threshold(const BiPolyT<K>& Q, const LocalModelT<K>& m) {
    ExponentRange r;
    ContactMatrix cm = contact_matrix(m);
    BiPolyT<K> q0 = reduce_mod_model(Q, m);
    r.includes_infinity = is_in_Linfty(Q, m);
    if (q0.is_zero()) {
        r.p_star = std::nullopt;
        return r;
    }
    std::optional<Rat> best;
    for (int j = 0; j < m.size(); ++j) {
        int two_l = 2 * m.branches[static_cast<size_t>(j)].L;
        int actual = order_on_datum(two_l, m.branches[static_cast<size_t>(j)].q, q0);
        int need = cm.row_sum(j) - actual + 1;  // membership iff ceil((2L+1)/p) >= need
        if (need <= 1) continue;                // satisfied for every p
        Rat bound = Rat(two_l + 1) / Rat(need - 1);
        if (!best || bound < *best) best = bound;
    }
    if (!best) {
        r.p_star = std::nullopt;
        return r;
    }
    r.p_star = *best < 1 ? Rat(1) : *best;
    return r;
}

// Direct product-ideal membership (Theorem "the ideal is the product ideal"),
// by exact linear algebra in C[x,y]/(g, x^T); cross-validation path only.
bool product_ideal_membership(const BiPoly& Q, const LocalModel& m);

// O(n, q, dQ/dy) together with the guaranteed inequality
// n + O(n,q,Q_y) >= O(n,q,Q).
template <class K>
int derivative_order_bound(int n, const Poly1<K>& q, const BiPolyT<K>& Q) {
    BiPolyT<K> qy = Q.derivative_y();
    if (qy.is_zero()) throw ZeroNumerator("dQ/dy vanishes identically");
    int dq = order_on_datum(n, q, qy);
    int oq = order_on_datum(n, q, Q);
    if (n + dq < oq) throw Error("derivative order inequality violated");
    return dq;
}

// Derivatives of locally bounded Q/P are in L^p for p < 1 + 1/K, and that
// threshold is exact for Im(P_y/P).
template <class K>
Rat derivative_lp_range(const LocalModelT<K>& m) {
    int k = m.max_2l();
    return Rat(1) + Rat(1, k);
}

// dim I^p_P/(P, reflect P) by the closed formula; p = nullopt means infinity.
template <class K>
int dim_Ip_quotient(const LocalModelT<K>& m, const std::optional<Rat>& p) {
    ContactMatrix cm = contact_matrix(m);
    int dim = cm.upper_sum();
    if (!p) return dim;
    if (*p < 1) throw InputError("dimension formula requires p >= 1");
    for (const auto& b : m.branches)
        dim += ceil_2lp(2 * b.L + 1, *p) - 1;
    return dim;
}

} // namespace stablefrac

#endif
