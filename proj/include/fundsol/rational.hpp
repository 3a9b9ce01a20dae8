#ifndef FUNDSOL_RATIONAL_HPP
#define FUNDSOL_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace fundsol {

// All exact arithmetic in the library runs over GMP rationals.
// mpq_class values are kept canonical (lowest terms, positive denominator);
// every constructor below canonicalizes.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "num" or "num/den" with arbitrary-precision parts.
inline Rational rat_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("malformed rational: '" + s + "'");
    if (r.get_den() == 0) throw std::invalid_argument("rational with zero denominator: '" + s + "'");
    r.canonicalize();
    return r;
}

inline std::string rat_to_string(const Rational& r) { return r.get_str(); }

inline double rat_to_double(const Rational& r) { return r.get_d(); }

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

}  // namespace fundsol

#endif
