#ifndef STABLEFRAC_SCALAR_HPP
#define STABLEFRAC_SCALAR_HPP

#include <string>
#include <utility>

#include "stablefrac/ball.hpp"
#include "stablefrac/rational.hpp"

namespace stablefrac {

// --- real scalar kinds -----------------------------------------------------
//
// The engine is templated on a real scalar K, either Rat (exact path) or
// Ball (high-precision fallback).  These shims give the two the same surface.

inline ZeroStatus zero_status(const Rat& r) {
    return r == 0 ? ZeroStatus::Zero : ZeroStatus::NonZero;
}
inline ZeroStatus zero_status(const Ball& b) { return b.zero_status(); }

template <class K> struct ScalarTraits;

template <> struct ScalarTraits<Rat> {
    static constexpr bool exact = true;
    static Rat from_long(long v) { return Rat(v); }
    static Rat from_rat(const Rat& v) { return v; }
    static double to_double(const Rat& v) { return v.get_d(); }
    static std::string str(const Rat& v) { return rat_str(v); }
};

template <> struct ScalarTraits<Ball> {
    static constexpr bool exact = false;
    static Ball from_long(long v) { return Ball(v); }
    static Ball from_rat(const Rat& v) { return Ball(v); }
    static double to_double(const Ball& v) { return v.to_double(); }
    static std::string str(const Ball& v) {
        return v.mid.str(20, std::ios_base::scientific);
    }
};

inline Ball promote(const Rat& r) { return Ball(r); }
inline const Ball& promote(const Ball& b) { return b; }

// --- complex scalar over K ---------------------------------------------------

template <class K>
struct GComplex {
    K re{}, im{};

    GComplex() = default;
    GComplex(K r, K i) : re(std::move(r)), im(std::move(i)) {}
    explicit GComplex(K r) : re(std::move(r)), im(ScalarTraits<K>::from_long(0)) {}
    explicit GComplex(long r)
        : re(ScalarTraits<K>::from_long(r)), im(ScalarTraits<K>::from_long(0)) {}

    static GComplex i_unit() {
        return GComplex(ScalarTraits<K>::from_long(0), ScalarTraits<K>::from_long(1));
    }

    GComplex conj() const { return GComplex(re, -im); }

    GComplex operator-() const { return GComplex(-re, -im); }

    friend GComplex operator+(const GComplex& a, const GComplex& b) {
        return GComplex(a.re + b.re, a.im + b.im);
    }
    friend GComplex operator-(const GComplex& a, const GComplex& b) {
        return GComplex(a.re - b.re, a.im - b.im);
    }
    friend GComplex operator*(const GComplex& a, const GComplex& b) {
        return GComplex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend GComplex operator/(const GComplex& a, const GComplex& b) {
        K n = b.re * b.re + b.im * b.im;
        return GComplex((a.re * b.re + a.im * b.im) / n,
                        (a.im * b.re - a.re * b.im) / n);
    }
    GComplex& operator+=(const GComplex& o) { return *this = *this + o; }
    GComplex& operator-=(const GComplex& o) { return *this = *this - o; }
    GComplex& operator*=(const GComplex& o) { return *this = *this * o; }
    GComplex& operator/=(const GComplex& o) { return *this = *this / o; }
};

template <class K>
inline bool operator==(const GComplex<K>& a, const GComplex<K>& b)
    requires ScalarTraits<K>::exact
{
    return a.re == b.re && a.im == b.im;
}

template <class K>
inline ZeroStatus zero_status(const GComplex<K>& z) {
    ZeroStatus r = zero_status(z.re), i = zero_status(z.im);
    if (r == ZeroStatus::NonZero || i == ZeroStatus::NonZero) return ZeroStatus::NonZero;
    if (r == ZeroStatus::Zero && i == ZeroStatus::Zero) return ZeroStatus::Zero;
    return ZeroStatus::Unknown;
}

using GaussianRational = GComplex<Rat>;
using BallComplex = GComplex<Ball>;

inline BallComplex promote(const GaussianRational& z) {
    return BallComplex(Ball(z.re), Ball(z.im));
}
inline const BallComplex& promote(const BallComplex& z) { return z; }

// Uniform construction from small integers, for any scalar used here.
template <class T> struct MakeScalar;
template <> struct MakeScalar<Rat> {
    static Rat from_long(long v) { return Rat(v); }
};
template <> struct MakeScalar<Ball> {
    static Ball from_long(long v) { return Ball(v); }
};
template <class K> struct MakeScalar<GComplex<K>> {
    static GComplex<K> from_long(long v) {
        return GComplex<K>(MakeScalar<K>::from_long(v), MakeScalar<K>::from_long(0));
    }
};
template <class T>
inline T scalar_from_long(long v) { return MakeScalar<T>::from_long(v); }

template <class T> inline constexpr bool is_exact_scalar = false;
template <> inline constexpr bool is_exact_scalar<Rat> = true;
template <class K>
inline constexpr bool is_exact_scalar<GComplex<K>> = is_exact_scalar<K>;

inline GaussianRational gq(const Rat& re, const Rat& im = Rat(0)) {
    return GaussianRational(re, im);
}
inline GaussianRational gq(long re, long im = 0) {
    return GaussianRational(Rat(re), Rat(im));
}

inline std::string gq_str(const GaussianRational& z) {
    if (z.im == 0) return rat_str(z.re);
    std::string s = rat_str(z.re);
    s += (z.im > 0 ? "+" : "-");
    Rat a = abs(z.im);
    if (a != 1) s += rat_str(a) + "*";
    s += "i";
    return s;
}

} // namespace stablefrac

#endif
