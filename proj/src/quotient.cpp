#include "stablefrac/quotient.hpp"

#include <algorithm>
#include <iostream>

namespace stablefrac {

namespace {

template <class K>
using CSeries = XSeries<GComplex<K>>;

template <class K>
struct Workspace {
    const LocalModelT<K>* model;
    std::vector<XSeries<K>> a;  // position-ordered branch series
    BiPolyT<K> big_b;           // imaginary part of P
    int trunc;
};

template <class K>
Workspace<K> make_workspace(const LocalModelT<K>& m, const std::vector<XSeries<K>>& branches,
                            const ProperTCertificate& cert,
                            const std::vector<int>& datum_order, int trunc) {
    Workspace<K> ws;
    ws.model = &m;
    ws.trunc = trunc;
    BiPolyT<K> p = build_P_from_model(m);
    ws.big_b = real_imag_parts(p).second;
    // datum -> branch
    std::vector<int> branch_of(datum_order.size(), -1);
    for (size_t b = 0; b < cert.matched.size(); ++b) {
        int d = cert.matched[b];
        if (branch_of[static_cast<size_t>(d)] >= 0) throw Error("matching is not a bijection");
        branch_of[static_cast<size_t>(d)] = static_cast<int>(b);
    }
    for (int d : datum_order) ws.a.push_back(branches[static_cast<size_t>(branch_of[static_cast<size_t>(d)])]);
    return ws;
}

template <class K>
void fill_basis(const Workspace<K>& ws, QuotientBasisT<K>& out) {
    using C = GComplex<K>;
    const int m = static_cast<int>(ws.a.size());
    out.a = ws.a;
    out.f.assign(static_cast<size_t>(m), YSeriesPoly<C>::one(ws.trunc));
    // f[m-1] = 1; f[pos-1] = (y - a_pos) f[pos]
    for (int pos = m - 1; pos > 0; --pos)
        out.f[static_cast<size_t>(pos - 1)] =
            out.f[static_cast<size_t>(pos)].times_linear(complexified(ws.a[static_cast<size_t>(pos)]));
}

template <class K>
std::vector<int> basis_mk(const LocalModelT<K>& m, const std::vector<int>& datum_order,
                          const Workspace<K>& ws) {
    ContactMatrix cm = contact_matrix(m);
    std::vector<int> mk;
    for (size_t pos = 0; pos < datum_order.size(); ++pos) {
        int d = datum_order[pos];
        int expected = cm.row_sum(d);
        int got = compose_on_branch(ws.big_b, ws.a[pos]).order_strict();
        if (got != expected)
            throw Inconclusive("Ord B along branch " + std::to_string(pos) + " is " +
                               std::to_string(got) + ", formula gives " +
                               std::to_string(expected));
        mk.push_back(expected);
    }
    return mk;
}

template <class K>
void subtract_const(YSeriesPoly<GComplex<K>>& f, const CSeries<K>& v) {
    if (f.yc.empty()) f.yc.push_back(CSeries<K>(v.trunc));
    f.yc[0] = f.yc[0] - v;
}

template <class K>
YSeriesPoly<GComplex<K>> scale_poly(const YSeriesPoly<GComplex<K>>& f, const CSeries<K>& s) {
    YSeriesPoly<GComplex<K>> out;
    for (const auto& yc : f.yc) out.yc.push_back(yc * s);
    return out;
}

template <class K>
YSeriesPoly<GComplex<K>> sub_polys(const YSeriesPoly<GComplex<K>>& a,
                                   const YSeriesPoly<GComplex<K>>& b) {
    YSeriesPoly<GComplex<K>> out = a;
    if (out.yc.size() < b.yc.size()) out.yc.resize(b.yc.size(), CSeries<K>(a.yc.empty() ? b.yc[0].trunc : a.yc[0].trunc));
    for (size_t k = 0; k < b.yc.size(); ++k) out.yc[k] = out.yc[k] - b.yc[k];
    return out;
}

// The constructive short-exact-sequence recursion: peel one branch at a
// time, H = B throughout.
template <class K>
void reduce_impl(const BiPolyT<K>& q, const Workspace<K>& ws, const std::vector<int>& mk,
                 std::vector<Poly1<GComplex<K>>>* coords,
                 std::vector<CSeries<K>>* betas, YSeriesPoly<GComplex<K>>* f0) {
    using C = GComplex<K>;
    const int m = static_cast<int>(ws.a.size());
    YSeriesPoly<C> f = yseries_from_bipoly(q, ws.trunc);
    coords->assign(static_cast<size_t>(m), Poly1<C>{});
    betas->assign(static_cast<size_t>(m), CSeries<K>(ws.trunc));
    for (int pos = m - 1; pos >= 0; --pos) {
        CSeries<K> ak = complexified(ws.a[static_cast<size_t>(pos)]);
        CSeries<K> v = f.eval(ak);
        int cap = std::min(mk[static_cast<size_t>(pos)], v.trunc);
        Poly1<C> ck;
        ck.c.assign(v.c.begin(), v.c.begin() + cap);
        ck.trim();
        (*coords)[static_cast<size_t>(pos)] = ck;
        CSeries<K> num = v - CSeries<K>::from_poly(ck, v.trunc);
        CSeries<K> bc = compose_on_branch(ws.big_b, ws.a[static_cast<size_t>(pos)]);
        CSeries<K> beta = divide_known_valuation(num, bc, mk[static_cast<size_t>(pos)]);
        (*betas)[static_cast<size_t>(pos)] = beta;
        // f <- (f - c_k - beta*B) / (y - a_k)
        YSeriesPoly<C> bterm = scale_poly(yseries_from_bipoly(ws.big_b, beta.trunc), beta);
        YSeriesPoly<C> g = sub_polys(f, bterm);
        subtract_const(g, CSeries<K>::from_poly(ck, beta.trunc));
        f = g.divide_linear(ak.truncated(beta.trunc));
    }
    *f0 = f;
}

template <class K>
std::optional<int> poly_order(const Poly1<GComplex<K>>& p) {
    return p.order();
}

} // namespace

QuotientBasis quotient_basis_ordered(const LocalModel& m, const BranchSystem& sys,
                                     const ProperTCertificate& cert,
                                     const std::vector<int>& datum_order) {
    validate_model(m);
    if (static_cast<int>(datum_order.size()) != m.size())
        throw InputError("datum order must list every branch datum once");
    QuotientBasis qb;
    qb.t = sys.t;
    qb.trunc = sys.trunc;
    qb.numeric = sys.numeric;
    qb.datum_order = datum_order;
    if (!sys.numeric) {
        auto ws = make_workspace(m, sys.exact, cert, datum_order, sys.trunc);
        qb.m_k = basis_mk(m, datum_order, ws);
        fill_basis(ws, qb.exact);
    } else {
        LocalModelBall mb = promote_model(m);
        auto ws = make_workspace(mb, sys.ball, cert, datum_order, sys.trunc);
        qb.m_k = basis_mk(mb, datum_order, ws);
        fill_basis(ws, qb.ball);
    }
    int sum = 0;
    for (int v : qb.m_k) sum += v;
    if (sum != intersection_multiplicity(m))
        throw Error("basis cardinality does not match intersection multiplicity");
    return qb;
}

QuotientBasis quotient_basis(const LocalModel& m, const BranchSystem& sys,
                             const ProperTCertificate& cert) {
    std::vector<int> order(static_cast<size_t>(m.size()));
    for (int k = 0; k < m.size(); ++k) order[static_cast<size_t>(k)] = k;
    return quotient_basis_ordered(m, sys, cert, order);
}

CoordinateVector reduce_mod_ideal(const BiPoly& q, const LocalModel& m,
                                  const QuotientBasis& basis) {
    CoordinateVector cv;
    cv.numeric = basis.numeric;
    if (!basis.numeric) {
        Workspace<Rat> ws;
        ws.model = &m;
        ws.trunc = basis.trunc;
        ws.a = basis.exact.a;
        ws.big_b = real_imag_parts(build_P_from_model(m)).second;
        std::vector<XSeries<GaussianRational>> betas;
        YSeriesPoly<GaussianRational> f0;
        reduce_impl(q, ws, basis.m_k, &cv.exact, &betas, &f0);
        for (auto& c : cv.exact) cv.orders.push_back(poly_order<Rat>(c));
    } else {
        LocalModelBall mb = promote_model(m);
        Workspace<Ball> ws;
        ws.model = &mb;
        ws.trunc = basis.trunc;
        ws.a = basis.ball.a;
        ws.big_b = real_imag_parts(build_P_from_model(mb)).second;
        std::vector<XSeries<BallComplex>> betas;
        YSeriesPoly<BallComplex> f0;
        reduce_impl(promote(q), ws, basis.m_k, &cv.ball, &betas, &f0);
        for (auto& c : cv.ball) cv.orders.push_back(poly_order<Ball>(c));
    }
    return cv;
}

namespace {

// Rebuild Q from the transcript and compare: Q = sum c_k F_k + B sum beta_k F_k
// + (prod (y - a_k)) f0, everything mod x^(trunc - slack).
template <class K>
bool verify_impl(const BiPolyT<K>& q, const LocalModelT<K>& m, const QuotientBasis& basis,
                 const QuotientBasisT<K>& qb, int slack) {
    using C = GComplex<K>;
    Workspace<K> ws;
    ws.model = &m;
    ws.trunc = basis.trunc;
    ws.a = qb.a;
    ws.big_b = real_imag_parts(build_P_from_model(m)).second;

    std::vector<Poly1<C>> coords;
    std::vector<CSeries<K>> betas;
    YSeriesPoly<C> f0;
    reduce_impl(q, ws, basis.m_k, &coords, &betas, &f0);

    auto yp_mul = [&](const YSeriesPoly<C>& lhs, const YSeriesPoly<C>& rhs) {
        YSeriesPoly<C> prod;
        if (lhs.yc.empty() || rhs.yc.empty()) return prod;
        prod.yc.assign(lhs.yc.size() + rhs.yc.size() - 1, CSeries<K>(basis.trunc));
        for (size_t i = 0; i < lhs.yc.size(); ++i)
            for (size_t j = 0; j < rhs.yc.size(); ++j)
                prod.yc[i + j] = prod.yc[i + j] + lhs.yc[i] * rhs.yc[j];
        return prod;
    };

    const int m_count = static_cast<int>(ws.a.size());
    YSeriesPoly<C> acc = yseries_from_bipoly(q, basis.trunc);
    YSeriesPoly<C> bpoly = yseries_from_bipoly(ws.big_b, basis.trunc);
    for (int pos = 0; pos < m_count; ++pos) {
        acc = sub_polys(acc,
                        scale_poly(qb.f[static_cast<size_t>(pos)],
                                   CSeries<K>::from_poly(coords[static_cast<size_t>(pos)], basis.trunc)));
        YSeriesPoly<C> bterm = scale_poly(bpoly, betas[static_cast<size_t>(pos)]);
        acc = sub_polys(acc, yp_mul(qb.f[static_cast<size_t>(pos)], bterm));
    }
    // subtract (prod over all branches)(y - a_j) * f0 = (A+tB) * f0
    acc = sub_polys(acc, yp_mul(qb.f[0].times_linear(complexified(ws.a[0])), f0));

    for (size_t row = 0; row < acc.yc.size(); ++row) {
        const auto& yc = acc.yc[row];
        int lim = yc.trunc - slack;
        for (int k = 0; k < lim; ++k)
            if (zero_status(yc.c[static_cast<size_t>(k)]) == ZeroStatus::NonZero) {
#ifdef STABLEFRAC_DEBUG_VERIFY
                std::cerr << "verify residual: row y^" << row << " at x^" << k
                          << " trunc " << yc.trunc << "\n";
#endif
                return false;
            }
    }
    return true;
}

} // namespace

bool verify_reduction(const BiPoly& q, const LocalModel& m, const QuotientBasis& basis,
                      int slack) {
    if (!basis.numeric) return verify_impl(q, m, basis, basis.exact, slack);
    return verify_impl(promote(q), promote_model(m), basis, basis.ball, slack);
}

int lk_of_p(int l, const Rat& p) {
    Rat v = Rat(2 * l + 1) * (Rat(1) - Rat(1) / p);
    return static_cast<int>(to_long(floor_rat(v)));
}

std::vector<int> relabel_for_p(const LocalModel& m, const std::optional<Rat>& p) {
    validate_model(m);
    Rat peff = p ? *p : Rat(m.max_2l() + 1);
    if (peff < 1) throw InputError("relabeling requires p >= 1");
    ContactMatrix cm = contact_matrix(m);
    const int n = m.size();
    std::vector<int> lk;
    for (const auto& b : m.branches) lk.push_back(lk_of_p(b.L, peff));

    std::vector<int> order(static_cast<size_t>(n));
    std::vector<char> used(static_cast<size_t>(n), 0);
    for (int pos = n - 1; pos >= 0; --pos) {
        int best = -1, best_score = 0;
        for (int k = 0; k < n; ++k) {
            if (used[static_cast<size_t>(k)]) continue;
            int score = lk[static_cast<size_t>(k)];
            for (int j = 0; j < n; ++j)
                if (!used[static_cast<size_t>(j)] && j != k) score += cm(k, j);
            if (best < 0 || score > best_score || (score == best_score && k > best)) {
                best = k;
                best_score = score;
            }
        }
        order[static_cast<size_t>(pos)] = best;
        used[static_cast<size_t>(best)] = 1;
    }
    return order;
}

IntegrabilityBasis integrability_basis(const LocalModel& m, const std::optional<Rat>& p,
                                       int trunc, unsigned seed) {
    if (trunc <= 0) trunc = default_truncation(m);
    IntegrabilityBasis ib;
    ib.p = p;
    ib.order = relabel_for_p(m, p);
    ProperTResult pt = find_proper_t(m, trunc, seed);
    ib.qb = quotient_basis_ordered(m, pt.sys, pt.cert, ib.order);
    Rat peff = p ? *p : Rat(m.max_2l() + 1);
    ContactMatrix cm = contact_matrix(m);
    ib.count = 0;
    for (size_t pos = 0; pos < ib.order.size(); ++pos) {
        int d = ib.order[pos];
        int lo = lk_of_p(m.branches[static_cast<size_t>(d)].L, peff);
        for (size_t q = 0; q < pos; ++q) lo += cm(ib.order[q], d);
        int hi = ib.qb.m_k[pos];
        if (lo > hi) throw Error("integrability basis bound exceeds m_k");
        ib.lower.push_back(lo);
        ib.upper.push_back(hi);
        ib.count += hi - lo;
    }
    if (ib.count != dim_Ip_quotient(m, p))
        throw Error("integrability basis count disagrees with dimension formula");
    return ib;
}

bool membership_via_coordinates(const BiPoly& q, const LocalModel& m, const Rat& p,
                                int trunc, unsigned seed) {
    if (p < 1) throw InputError("membership test requires p >= 1");
    IntegrabilityBasis ib = integrability_basis(m, p, trunc, seed);
    CoordinateVector cv = reduce_mod_ideal(q, m, ib.qb);
    for (size_t pos = 0; pos < ib.lower.size(); ++pos) {
        auto o = cv.orders[pos];
        if (o && *o < ib.lower[pos]) return false;
    }
    return true;
}

} // namespace stablefrac
