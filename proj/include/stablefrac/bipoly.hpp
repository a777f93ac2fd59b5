#ifndef STABLEFRAC_BIPOLY_HPP
#define STABLEFRAC_BIPOLY_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "stablefrac/poly1.hpp"
#include "stablefrac/scalar.hpp"

namespace stablefrac {

// Sparse bivariate polynomial over GComplex<K>.  Certified-zero coefficients
// are never stored; in ball mode a coefficient of uncertain sign stays.
template <class K>
struct BiPolyT {
    using C = GComplex<K>;
    using Key = std::pair<int, int>;  // (deg_x, deg_y)

    std::map<Key, C> terms;

    BiPolyT() = default;

    static BiPolyT constant(C v) {
        BiPolyT p;
        p.add_term(0, 0, std::move(v));
        return p;
    }
    static BiPolyT constant(long v) { return constant(C(scalar_from_long<K>(v))); }
    static BiPolyT monomial(int dx, int dy, C v = C(scalar_from_long<K>(1))) {
        BiPolyT p;
        p.add_term(dx, dy, std::move(v));
        return p;
    }
    static BiPolyT var_x() { return monomial(1, 0); }
    static BiPolyT var_y() { return monomial(0, 1); }

    void add_term(int dx, int dy, C v) {
        if (zero_status(v) == ZeroStatus::Zero) return;
        auto it = terms.find({dx, dy});
        if (it == terms.end()) {
            terms.emplace(Key{dx, dy}, std::move(v));
        } else {
            it->second += v;
            if (zero_status(it->second) == ZeroStatus::Zero) terms.erase(it);
        }
    }

    bool is_zero() const { return terms.empty(); }

    int deg_x() const {
        int d = -1;
        for (const auto& [k, v] : terms) d = std::max(d, k.first);
        return d;
    }
    int deg_y() const {
        int d = -1;
        for (const auto& [k, v] : terms) d = std::max(d, k.second);
        return d;
    }

    C coeff(int dx, int dy) const {
        auto it = terms.find({dx, dy});
        return it == terms.end() ? C{} : it->second;
    }

    friend BiPolyT operator+(const BiPolyT& a, const BiPolyT& b) {
        BiPolyT r = a;
        for (const auto& [k, v] : b.terms) r.add_term(k.first, k.second, v);
        return r;
    }
    friend BiPolyT operator-(const BiPolyT& a, const BiPolyT& b) {
        BiPolyT r = a;
        for (const auto& [k, v] : b.terms) r.add_term(k.first, k.second, -v);
        return r;
    }
    BiPolyT operator-() const {
        BiPolyT r;
        for (const auto& [k, v] : terms) r.terms.emplace(k, -v);
        return r;
    }
    friend BiPolyT operator*(const BiPolyT& a, const BiPolyT& b) {
        BiPolyT r;
        for (const auto& [ka, va] : a.terms)
            for (const auto& [kb, vb] : b.terms)
                r.add_term(ka.first + kb.first, ka.second + kb.second, va * vb);
        return r;
    }
    BiPolyT operator*(const C& s) const {
        BiPolyT r;
        for (const auto& [k, v] : terms) r.add_term(k.first, k.second, v * s);
        return r;
    }

    C eval(const C& x, const C& y) const {
        C acc{};
        for (const auto& [k, v] : terms) {
            C t = v;
            for (int i = 0; i < k.first; ++i) t *= x;
            for (int i = 0; i < k.second; ++i) t *= y;
            acc += t;
        }
        return acc;
    }

    // Coefficient of y^k as a univariate polynomial in x.
    Poly1<C> y_coeff(int k) const {
        Poly1<C> p;
        for (const auto& [key, v] : terms)
            if (key.second == k) {
                if (static_cast<int>(p.c.size()) <= key.first)
                    p.c.resize(static_cast<size_t>(key.first) + 1, C{});
                p.c[static_cast<size_t>(key.first)] = v;
            }
        p.trim();
        return p;
    }

    std::vector<Poly1<C>> as_y_polys() const {
        std::vector<Poly1<C>> r(static_cast<size_t>(std::max(deg_y(), -1) + 1));
        for (int k = 0; k <= deg_y(); ++k) r[static_cast<size_t>(k)] = y_coeff(k);
        return r;
    }

    static BiPolyT from_y_polys(const std::vector<Poly1<C>>& ys) {
        BiPolyT r;
        for (size_t k = 0; k < ys.size(); ++k)
            for (size_t j = 0; j < ys[k].c.size(); ++j)
                r.add_term(static_cast<int>(j), static_cast<int>(k), ys[k].c[j]);
        return r;
    }

    BiPolyT derivative_y() const {
        BiPolyT r;
        for (const auto& [k, v] : terms)
            if (k.second > 0)
                r.add_term(k.first, k.second - 1, v * C(scalar_from_long<K>(k.second)));
        return r;
    }
    BiPolyT derivative_x() const {
        BiPolyT r;
        for (const auto& [k, v] : terms)
            if (k.first > 0)
                r.add_term(k.first - 1, k.second, v * C(scalar_from_long<K>(k.first)));
        return r;
    }

    // P |-> conj-of-coefficients, i.e. the reflection across the real plane.
    BiPolyT reflected() const {
        BiPolyT r;
        for (const auto& [k, v] : terms) r.terms.emplace(k, v.conj());
        return r;
    }

    // Substitutes a bivariate polynomial for y; x stays x.
    BiPolyT substitute_y(const BiPolyT& repl) const {
        BiPolyT r;
        int dy = deg_y();
        std::vector<BiPolyT> pow(static_cast<size_t>(dy + 1));
        pow[0] = constant(1);
        for (int k = 1; k <= dy; ++k) pow[static_cast<size_t>(k)] = pow[static_cast<size_t>(k - 1)] * repl;
        for (const auto& [k, v] : terms) {
            BiPolyT t = pow[static_cast<size_t>(k.second)] * v;
            for (auto& [kk, vv] : t.terms) r.add_term(kk.first + k.first, kk.second, vv);
        }
        return r;
    }

    // Highest power of x dividing the polynomial.  In ball mode an
    // uncertifiable coefficient below the first certified-nonzero one is a
    // precision failure.
    int x_content_order() const {
        if (terms.empty()) throw ZeroNumerator("x-content of zero polynomial");
        int best_nonzero = -1;
        int lowest_unknown = -1;
        for (const auto& [k, v] : terms) {
            switch (zero_status(v)) {
                case ZeroStatus::NonZero:
                    if (best_nonzero < 0 || k.first < best_nonzero) best_nonzero = k.first;
                    break;
                case ZeroStatus::Unknown:
                    if (lowest_unknown < 0 || k.first < lowest_unknown) lowest_unknown = k.first;
                    break;
                default: break;
            }
        }
        if (best_nonzero < 0)
            throw NumericInconclusive("x-content: no certified nonzero coefficient");
        if (lowest_unknown >= 0 && lowest_unknown < best_nonzero)
            throw NumericInconclusive("x-content blocked by uncertifiable coefficient");
        return best_nonzero;
    }

    std::string str() const {
        if (terms.empty()) return "0";
        std::string s;
        for (const auto& [k, v] : terms) {
            if (!s.empty()) s += " + ";
            if constexpr (is_exact_scalar<K>) {
                s += "(" + gq_str(v) + ")";
            } else {
                s += "(" + ScalarTraits<K>::str(v.re) + "+" + ScalarTraits<K>::str(v.im) + "i)";
            }
            if (k.first) s += "*x^" + std::to_string(k.first);
            if (k.second) s += "*y^" + std::to_string(k.second);
        }
        return s;
    }
};

using BiPoly = BiPolyT<Rat>;
using BiPolyBall = BiPolyT<Ball>;

template <class K>
bool operator==(const BiPolyT<K>& a, const BiPolyT<K>& b)
    requires(is_exact_scalar<K>)
{
    return a.terms == b.terms;
}

inline BiPolyBall promote(const BiPoly& p) {
    BiPolyBall r;
    for (const auto& [k, v] : p.terms) r.terms.emplace(k, promote(v));
    return r;
}

// A = (P + reflect(P))/2 and B = (P - reflect(P))/(2i); both have purely real
// coefficients and P = A + iB exactly.
template <class K>
std::pair<BiPolyT<K>, BiPolyT<K>> real_imag_parts(const BiPolyT<K>& p) {
    BiPolyT<K> a, b;
    for (const auto& [k, v] : p.terms) {
        a.add_term(k.first, k.second, GComplex<K>(v.re));
        b.add_term(k.first, k.second, GComplex<K>(v.im));
    }
    return {a, b};
}

// Exact long division in y: P must have an x-free unit as its top y
// coefficient (local models are exactly y-monic).  Works for ball scalars
// too since the leading coefficient is certified.
template <class K>
std::pair<BiPolyT<K>, BiPolyT<K>> divide_y(const BiPolyT<K>& q, const BiPolyT<K>& p) {
    using C = GComplex<K>;
    int m = p.deg_y();
    if (m < 0) throw Error("division by zero polynomial");
    Poly1<C> lead = p.y_coeff(m);
    if (lead.degree() != 0)
        throw NotMonicAtOrigin("divisor top y-coefficient depends on x");
    if (zero_status(lead.c[0]) != ZeroStatus::NonZero)
        throw NotMonicAtOrigin("divisor top y-coefficient not a unit");
    C inv_lead = C(scalar_from_long<K>(1)) / lead.c[0];
    BiPolyT<K> quot, rem = q;
    while (!rem.is_zero() && rem.deg_y() >= m) {
        int d = rem.deg_y();
        Poly1<C> top = rem.y_coeff(d);
        // factor = top(x) * inv_lead * y^(d-m)
        BiPolyT<K> f;
        for (size_t j = 0; j < top.c.size(); ++j)
            f.add_term(static_cast<int>(j), d - m, top.c[j] * inv_lead);
        quot = quot + f;
        rem = rem - f * p;
        if (rem.deg_y() >= d) {
            // ball-mode cancellation failed to certify; cut the stray terms
            BiPolyT<K> cleaned;
            for (const auto& [k, v] : rem.terms)
                if (k.second < d) cleaned.add_term(k.first, k.second, v);
                else if (zero_status(v) == ZeroStatus::Unknown)
                    throw NumericInconclusive("division residue not certifiable");
            rem = cleaned;
        }
    }
    return {quot, rem};
}

// Bivariate gcd over the exact coefficient field, primitive Euclid in y.
BiPoly bipoly_gcd(const BiPoly& a, const BiPoly& b);

std::string bipoly_str(const BiPoly& p);

} // namespace stablefrac

#endif
