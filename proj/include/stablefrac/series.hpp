#ifndef STABLEFRAC_SERIES_HPP
#define STABLEFRAC_SERIES_HPP

#include <optional>
#include <vector>

#include "stablefrac/bipoly.hpp"
#include "stablefrac/poly1.hpp"

namespace stablefrac {

// Truncated power series in x: the value is known modulo x^trunc and nothing
// beyond trunc is ever assumed.  c.size() == trunc at all times.
template <class R>
struct XSeries {
    std::vector<R> c;
    int trunc = 0;

    XSeries() = default;
    explicit XSeries(int t) : c(static_cast<size_t>(t), R{}), trunc(t) {}
    XSeries(std::vector<R> cc, int t) : c(std::move(cc)), trunc(t) {
        c.resize(static_cast<size_t>(t), R{});
    }

    static XSeries from_poly(const Poly1<R>& p, int t) {
        XSeries s(t);
        for (size_t k = 0; k < p.c.size() && k < static_cast<size_t>(t); ++k)
            s.c[k] = p.c[k];
        return s;
    }
    static XSeries monomial(int k, R v, int t) {
        XSeries s(t);
        if (k < t) s.c[static_cast<size_t>(k)] = std::move(v);
        return s;
    }

    const R& operator[](size_t k) const { return c[k]; }
    R& operator[](size_t k) { return c[k]; }

    // Never extends: coefficients beyond trunc are undefined, not zero.
    XSeries truncated(int t) const {
        if (t > trunc) t = trunc;
        XSeries s(t);
        for (int k = 0; k < t; ++k) s.c[static_cast<size_t>(k)] = c[static_cast<size_t>(k)];
        return s;
    }

    friend XSeries operator+(const XSeries& a, const XSeries& b) {
        int t = std::min(a.trunc, b.trunc);
        XSeries s(t);
        for (int k = 0; k < t; ++k)
            s.c[static_cast<size_t>(k)] = a.c[static_cast<size_t>(k)] + b.c[static_cast<size_t>(k)];
        return s;
    }
    friend XSeries operator-(const XSeries& a, const XSeries& b) {
        int t = std::min(a.trunc, b.trunc);
        XSeries s(t);
        for (int k = 0; k < t; ++k)
            s.c[static_cast<size_t>(k)] = a.c[static_cast<size_t>(k)] - b.c[static_cast<size_t>(k)];
        return s;
    }
    XSeries operator-() const {
        XSeries s = *this;
        for (auto& v : s.c) v = -v;
        return s;
    }
    friend XSeries operator*(const XSeries& a, const XSeries& b) {
        int t = std::min(a.trunc, b.trunc);
        XSeries s(t);
        for (int i = 0; i < t; ++i) {
            if (zero_status(a.c[static_cast<size_t>(i)]) == ZeroStatus::Zero) continue;
            for (int j = 0; i + j < t; ++j)
                s.c[static_cast<size_t>(i + j)] =
                    s.c[static_cast<size_t>(i + j)] + a.c[static_cast<size_t>(i)] * b.c[static_cast<size_t>(j)];
        }
        return s;
    }
    XSeries operator*(const R& v) const {
        XSeries s = *this;
        for (auto& x : s.c) x = x * v;
        return s;
    }

    // First index with a certified nonzero coefficient; nullopt if every
    // stored coefficient is certified zero (order >= trunc, "above
    // truncation").  Throws when a coefficient cannot be certified.
    std::optional<int> order() const {
        for (int k = 0; k < trunc; ++k) {
            switch (zero_status(c[static_cast<size_t>(k)])) {
                case ZeroStatus::NonZero: return k;
                case ZeroStatus::Zero: break;
                default:
                    throw NumericInconclusive("series coefficient not certifiable at x^" +
                                              std::to_string(k));
            }
        }
        return std::nullopt;
    }

    // Order as a hard number; identically-zero-to-truncation is inconclusive.
    int order_strict() const {
        auto o = order();
        if (!o) throw Inconclusive("order of vanishing exceeds truncation " +
                                   std::to_string(trunc));
        return *o;
    }

    bool all_zero() const {
        for (const auto& v : c)
            if (zero_status(v) != ZeroStatus::Zero) return false;
        return true;
    }

    // Multiplicative inverse; requires a certified unit constant term.
    XSeries inverse() const {
        if (zero_status(c[0]) != ZeroStatus::NonZero)
            throw Error("series inverse of non-unit");
        XSeries s(trunc);
        R inv0 = scalar_from_long<R>(1) / c[0];
        s.c[0] = inv0;
        for (int k = 1; k < trunc; ++k) {
            R acc{};
            for (int j = 1; j <= k; ++j)
                acc = acc + c[static_cast<size_t>(j)] * s.c[static_cast<size_t>(k - j)];
            s.c[static_cast<size_t>(k)] = -(acc * inv0);
        }
        return s;
    }

    // Divide by a series of exact valuation e (certified); this valuation is
    // removed from both sides, so the result is truncated to trunc - e.
    friend XSeries divide_known_valuation(const XSeries& a, const XSeries& b, int e) {
        for (int k = 0; k < e; ++k) {
            if (zero_status(b.c[static_cast<size_t>(k)]) != ZeroStatus::Zero)
                throw Error("divisor valuation lower than promised");
            if (zero_status(a.c[static_cast<size_t>(k)]) == ZeroStatus::NonZero)
                throw Error("series division would produce a pole");
        }
        int t = std::min(a.trunc, b.trunc) - e;
        if (t <= 0) throw Inconclusive("series division exhausted truncation");
        XSeries num(t), den(t);
        for (int k = 0; k < t; ++k) {
            num.c[static_cast<size_t>(k)] = a.c[static_cast<size_t>(k + e)];
            den.c[static_cast<size_t>(k)] = b.c[static_cast<size_t>(k + e)];
        }
        return num * den.inverse();
    }
};

template <class R>
XSeries<GComplex<R>> complexified(const XSeries<R>& s) {
    XSeries<GComplex<R>> r(s.trunc);
    for (int k = 0; k < s.trunc; ++k) r.c[static_cast<size_t>(k)] = GComplex<R>(s.c[static_cast<size_t>(k)]);
    return r;
}

inline XSeries<Ball> promote_series(const XSeries<Rat>& s) {
    XSeries<Ball> r(s.trunc);
    for (int k = 0; k < s.trunc; ++k) r.c[static_cast<size_t>(k)] = Ball(s.c[static_cast<size_t>(k)]);
    return r;
}

// Substitute a series for y in a bivariate polynomial (Horner in y).
template <class K>
XSeries<GComplex<K>> compose_on_branch(const BiPolyT<K>& f, const XSeries<K>& a) {
    using C = GComplex<K>;
    XSeries<C> ac = complexified(a);
    XSeries<C> acc(a.trunc);
    for (int k = f.deg_y(); k >= 0; --k) {
        acc = acc * ac + XSeries<C>::from_poly(f.y_coeff(k), a.trunc);
    }
    return acc;
}

// --- polynomials in y with truncated-series coefficients --------------------

template <class R>
struct YSeriesPoly {
    std::vector<XSeries<R>> yc;  // index = y-degree

    int deg() const { return static_cast<int>(yc.size()) - 1; }

    static YSeriesPoly one(int trunc) {
        YSeriesPoly p;
        p.yc.push_back(XSeries<R>::monomial(0, scalar_from_long<R>(1), trunc));
        return p;
    }

    XSeries<R> eval(const XSeries<R>& a) const {
        XSeries<R> acc(a.trunc);
        for (size_t k = yc.size(); k-- > 0;) acc = acc * a + yc[k].truncated(a.trunc);
        return acc;
    }

    // Multiply by (y - a).
    YSeriesPoly times_linear(const XSeries<R>& a) const {
        YSeriesPoly p;
        p.yc.assign(yc.size() + 1, XSeries<R>(a.trunc));
        for (size_t k = 0; k < yc.size(); ++k) {
            p.yc[k + 1] = p.yc[k + 1] + yc[k].truncated(a.trunc);
            p.yc[k] = p.yc[k] - yc[k].truncated(a.trunc) * a;
        }
        return p;
    }

    // Exact synthetic division by (y - a) assuming a is a root; returns the
    // quotient and the (discarded) evaluation.
    YSeriesPoly divide_linear(const XSeries<R>& a) const {
        YSeriesPoly q;
        if (yc.empty()) return q;
        q.yc.assign(yc.size() - 1, XSeries<R>(a.trunc));
        XSeries<R> carry = yc.back().truncated(a.trunc);
        for (size_t k = yc.size() - 1; k-- > 0;) {
            q.yc[k] = carry;
            carry = yc[k].truncated(a.trunc) + carry * a;
        }
        return q;
    }
};

template <class K>
YSeriesPoly<GComplex<K>> yseries_from_bipoly(const BiPolyT<K>& p, int trunc) {
    YSeriesPoly<GComplex<K>> r;
    int d = p.deg_y();
    for (int k = 0; k <= d; ++k)
        r.yc.push_back(XSeries<GComplex<K>>::from_poly(p.y_coeff(k), trunc));
    return r;
}

// Weierstrass-style reduction: divide q by a y-monic p (unit leading series),
// all arithmetic mod x^trunc.  Returns {quotient, remainder} with
// deg_y(remainder) < deg_y(p).
template <class R>
std::pair<YSeriesPoly<R>, YSeriesPoly<R>> weierstrass_divide(const YSeriesPoly<R>& q,
                                                             const YSeriesPoly<R>& p) {
    int m = p.deg();
    if (m < 0) throw Error("weierstrass division by zero");
    if (zero_status(p.yc[static_cast<size_t>(m)].c[0]) != ZeroStatus::NonZero)
        throw NotMonicAtOrigin("leading y-coefficient is not a unit at x=0");
    XSeries<R> inv_lead = p.yc[static_cast<size_t>(m)].inverse();

    YSeriesPoly<R> rem = q, quot;
    int dq = q.deg();
    if (dq >= m) quot.yc.assign(static_cast<size_t>(dq - m) + 1, XSeries<R>(inv_lead.trunc));
    for (int d = dq; d >= m; --d) {
        XSeries<R> f = rem.yc[static_cast<size_t>(d)] * inv_lead;
        quot.yc[static_cast<size_t>(d - m)] = f;
        for (int k = 0; k <= m; ++k) {
            auto& tgt = rem.yc[static_cast<size_t>(d - m + k)];
            tgt = tgt - f * p.yc[static_cast<size_t>(k)];
        }
        rem.yc.pop_back();
    }
    return {quot, rem};
}

} // namespace stablefrac

#endif
