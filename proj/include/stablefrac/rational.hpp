#ifndef STABLEFRAC_RATIONAL_HPP
#define STABLEFRAC_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "stablefrac/errors.hpp"

namespace stablefrac {

// Exact rational scalar.  mpq_class keeps values canonical (lowest terms,
// positive denominator), so structural equality is mathematical equality.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Int num(const Rat& r) { return r.get_num(); }
inline Int den(const Rat& r) { return r.get_den(); }

inline Int floor_rat(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
    return q;
}

inline long to_long(const Int& z) {
    if (!z.fits_slong_p()) throw Error("integer out of range: " + z.get_str());
    return z.get_si();
}

// Canonical "a/b" form, "/1" omitted.
inline std::string rat_str(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// Parses integers, "a/b" fractions and plain decimals ("1.25") exactly.
inline std::optional<Rat> parse_rat(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        size_t frac_len = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
        try {
            Int n(digits, 10);
            Int d(1);
            for (size_t i = 0; i < frac_len; ++i) d *= 10;
            Rat r(n, d);
            r.canonicalize();
            return r;
        } catch (...) {
            return std::nullopt;
        }
    }
    try {
        Rat r(s);
        if (r.get_den() == 0) return std::nullopt;
        r.canonicalize();
        return r;
    } catch (...) {
        return std::nullopt;
    }
}

} // namespace stablefrac

#endif
