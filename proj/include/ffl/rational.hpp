#ifndef FFL_RATIONAL_HPP
#define FFL_RATIONAL_HPP

#include <gmpxx.h>

#include <string>

#include "ffl/errors.hpp"

namespace ffl {

// Exact rationals. mpq_class keeps the canonical form (reduced, positive
// denominator) through arithmetic as long as inputs are canonical, so every
// constructor here canonicalizes.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
    Rational r(num, den);
    r.canonicalize();
    return r;
}

// Parses "a/b" or "a". Used by serialization; exact round-trip with
// rational_to_string.
inline Rational rational_from_string(const std::string& s) {
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("cannot parse rational: " + s);
    if (r.get_den() == 0) throw Error(ErrorKind::DivisionByZero, "rational with zero denominator");
    r.canonicalize();
    return r;
}

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_one(const Rational& r) { return r == 1; }

inline Rational inverse(const Rational& r) {
    if (is_zero(r)) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
    return Rational(1) / r;
}

} // namespace ffl

#endif
