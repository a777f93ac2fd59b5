#ifndef STABLEFRAC_POLY1_HPP
#define STABLEFRAC_POLY1_HPP

#include <optional>
#include <vector>

#include "stablefrac/errors.hpp"
#include "stablefrac/scalar.hpp"

namespace stablefrac {

// Dense univariate polynomial, coefficients ascending.  T is any field-like
// scalar here (Rat, Ball, GComplex<...>).
template <class T>
struct Poly1 {
    std::vector<T> c;

    Poly1() = default;
    explicit Poly1(std::vector<T> cc) : c(std::move(cc)) { trim(); }

    static Poly1 constant(T v) { return Poly1(std::vector<T>{std::move(v)}); }

    // Drops trailing coefficients that are certified zero.
    void trim() {
        while (!c.empty() && zero_status(c.back()) == ZeroStatus::Zero) c.pop_back();
    }

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }

    const T& operator[](size_t k) const { return c[k]; }

    T coeff(size_t k) const {
        if (k < c.size()) return c[k];
        return T{};
    }

    T eval(const T& x) const {
        T acc{};
        for (size_t k = c.size(); k-- > 0;) acc = acc * x + c[k];
        return acc;
    }

    Poly1 derivative() const {
        Poly1 d;
        for (size_t k = 1; k < c.size(); ++k)
            d.c.push_back(c[k] * scalar_from_long<T>(static_cast<long>(k)));
        d.trim();
        return d;
    }

    friend Poly1 operator+(const Poly1& a, const Poly1& b) {
        Poly1 r;
        r.c.resize(std::max(a.c.size(), b.c.size()), T{});
        for (size_t k = 0; k < a.c.size(); ++k) r.c[k] = r.c[k] + a.c[k];
        for (size_t k = 0; k < b.c.size(); ++k) r.c[k] = r.c[k] + b.c[k];
        r.trim();
        return r;
    }
    friend Poly1 operator-(const Poly1& a, const Poly1& b) {
        Poly1 r;
        r.c.resize(std::max(a.c.size(), b.c.size()), T{});
        for (size_t k = 0; k < a.c.size(); ++k) r.c[k] = r.c[k] + a.c[k];
        for (size_t k = 0; k < b.c.size(); ++k) r.c[k] = r.c[k] - b.c[k];
        r.trim();
        return r;
    }
    friend Poly1 operator*(const Poly1& a, const Poly1& b) {
        if (a.c.empty() || b.c.empty()) return Poly1();
        Poly1 r;
        r.c.resize(a.c.size() + b.c.size() - 1, T{});
        for (size_t i = 0; i < a.c.size(); ++i)
            for (size_t j = 0; j < b.c.size(); ++j)
                r.c[i + j] = r.c[i + j] + a.c[i] * b.c[j];
        r.trim();
        return r;
    }
    Poly1 operator*(const T& s) const {
        Poly1 r = *this;
        for (auto& v : r.c) v = v * s;
        r.trim();
        return r;
    }
    Poly1 operator-() const {
        Poly1 r = *this;
        for (auto& v : r.c) v = -v;
        return r;
    }

    Poly1 shifted(int k) const {  // multiply by x^k
        if (c.empty()) return *this;
        Poly1 r;
        r.c.assign(static_cast<size_t>(k), T{});
        r.c.insert(r.c.end(), c.begin(), c.end());
        return r;
    }

    // Certified order of vanishing at 0; nullopt means "identically zero as
    // far as the representation goes".  Throws on an uncertifiable coefficient.
    std::optional<int> order() const {
        for (size_t k = 0; k < c.size(); ++k) {
            switch (zero_status(c[k])) {
                case ZeroStatus::NonZero: return static_cast<int>(k);
                case ZeroStatus::Zero: break;
                default:
                    throw NumericInconclusive(
                        "polynomial coefficient cannot be certified (non)zero");
            }
        }
        return std::nullopt;
    }

};

template <class K>
Poly1<GComplex<K>> poly_from_real(const Poly1<K>& p) {
    Poly1<GComplex<K>> r;
    r.c.reserve(p.c.size());
    for (const auto& v : p.c) r.c.push_back(GComplex<K>(v));
    return r;
}

// Exact division with remainder over a field.
template <class T>
    requires(is_exact_scalar<T>)
std::pair<Poly1<T>, Poly1<T>> divmod(const Poly1<T>& a, const Poly1<T>& b) {
    if (b.is_zero()) throw Error("univariate division by zero polynomial");
    Poly1<T> q, r = a;
    if (r.degree() >= b.degree())
        q.c.assign(static_cast<size_t>(r.degree() - b.degree()) + 1, T{});
    const T& lead = b.c.back();
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        T f = r.c.back() / lead;
        q.c[static_cast<size_t>(shift)] = f;
        for (size_t k = 0; k < b.c.size(); ++k)
            r.c[static_cast<size_t>(shift) + k] = r.c[static_cast<size_t>(shift) + k] - f * b.c[k];
        r.c.pop_back();
        r.trim();
    }
    q.trim();
    return {q, r};
}

template <class T>
    requires(is_exact_scalar<T>)
Poly1<T> poly_gcd(Poly1<T> a, Poly1<T> b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!a.is_zero()) {
        T lead = a.c.back();
        for (auto& v : a.c) v = v / lead;  // monic normal form
    }
    return a;
}

} // namespace stablefrac

#endif
