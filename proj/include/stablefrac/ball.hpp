#ifndef STABLEFRAC_BALL_HPP
#define STABLEFRAC_BALL_HPP

#include <boost/multiprecision/mpfr.hpp>

#include <cstdlib>
#include <string>

#include "stablefrac/errors.hpp"
#include "stablefrac/rational.hpp"

namespace stablefrac {

using HpFloat = boost::multiprecision::number<
    boost::multiprecision::mpfr_float_backend<0>,
    boost::multiprecision::et_off>;

// Decimal digits for the high-precision fallback, from STABLEFRAC_PRECISION
// (default 50, never less than 50).
inline unsigned hp_digits() {
    static unsigned digits = [] {
        unsigned d = 50;
        if (const char* env = std::getenv("STABLEFRAC_PRECISION")) {
            long v = std::atol(env);
            if (v > 0) d = static_cast<unsigned>(v);
        }
        if (d < 50) d = 50;
        HpFloat::default_precision(2 * d + 10);
        return d;
    }();
    return digits;
}

// Magnitudes at or below this are identified with zero once the error bound
// allows it; anything the bound cannot push below it counts as nonzero.
inline const HpFloat& zero_threshold() {
    static const HpFloat t = [] {
        hp_digits();
        return HpFloat("1e-30");
    }();
    return t;
}

enum class ZeroStatus { Zero, NonZero, Unknown };

// Midpoint-radius scalar: the represented value lies in [mid-rad, mid+rad].
// Every operation rounds the midpoint and grows the radius by a generous
// multiple of one ulp, so Zero/NonZero verdicts are trustworthy.
class Ball {
public:
    HpFloat mid, rad;

    Ball() : mid(0), rad(0) { hp_digits(); }
    explicit Ball(long v) : mid(v), rad(0) { hp_digits(); }
    Ball(HpFloat m, HpFloat r) : mid(std::move(m)), rad(std::move(r)) {}
    explicit Ball(const Rat& q) {
        hp_digits();
        mid = HpFloat(q.get_num().get_str()) / HpFloat(q.get_den().get_str());
        rad = ulp(mid);
    }

    static HpFloat ulp(const HpFloat& x) {
        static const HpFloat eps = [] {
            hp_digits();
            HpFloat e(1);
            // working precision in bits is ~3.33 per digit; ldexp below that
            return boost::multiprecision::ldexp(
                e, -static_cast<int>(HpFloat::default_precision() * 3.2) + 4);
        }();
        return abs(x) * eps;
    }

    Ball operator-() const { return Ball(-mid, rad); }

    friend Ball operator+(const Ball& a, const Ball& b) {
        HpFloat m = a.mid + b.mid;
        return Ball(m, a.rad + b.rad + ulp(m));
    }
    friend Ball operator-(const Ball& a, const Ball& b) {
        HpFloat m = a.mid - b.mid;
        return Ball(m, a.rad + b.rad + ulp(m));
    }
    friend Ball operator*(const Ball& a, const Ball& b) {
        HpFloat m = a.mid * b.mid;
        HpFloat r = abs(a.mid) * b.rad + abs(b.mid) * a.rad + a.rad * b.rad + ulp(m);
        return Ball(m, r);
    }
    friend Ball operator/(const Ball& a, const Ball& b) {
        HpFloat bl = abs(b.mid) - b.rad;
        if (bl <= 0)
            throw NumericInconclusive("ball division by possibly-zero value");
        HpFloat m = a.mid / b.mid;
        HpFloat r = (a.rad + abs(m) * b.rad) / bl + ulp(m);
        return Ball(m, r);
    }
    Ball& operator+=(const Ball& o) { return *this = *this + o; }
    Ball& operator-=(const Ball& o) { return *this = *this - o; }
    Ball& operator*=(const Ball& o) { return *this = *this * o; }
    Ball& operator/=(const Ball& o) { return *this = *this / o; }

    HpFloat upper_abs() const { return abs(mid) + rad; }
    HpFloat lower_abs() const {
        HpFloat l = abs(mid) - rad;
        return l > 0 ? l : HpFloat(0);
    }

    ZeroStatus zero_status() const {
        if (upper_abs() <= zero_threshold()) return ZeroStatus::Zero;
        if (abs(mid) - rad > zero_threshold()) return ZeroStatus::NonZero;
        return ZeroStatus::Unknown;
    }

    // Certified sign: +1/-1/0, or throws if the ball straddles the threshold.
    int cert_sign() const {
        switch (zero_status()) {
            case ZeroStatus::Zero: return 0;
            case ZeroStatus::NonZero: return mid > 0 ? 1 : -1;
            default:
                throw NumericInconclusive("sign of ball value not certifiable");
        }
    }

    double to_double() const { return mid.convert_to<double>(); }
};

inline Ball ball_from_double(double v) {
    hp_digits();
    return Ball(HpFloat(v), 0);
}

} // namespace stablefrac

#endif
