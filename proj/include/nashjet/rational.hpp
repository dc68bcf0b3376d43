#pragma once

#include <gmpxx.h>

#include <string>

namespace nashjet {

using Integer = mpz_class;
using Rational = mpq_class;

// p/q in canonical form (q > 0, gcd(|p|, q) = 1).
inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string rational_to_string(const Rational& r) { return r.get_str(); }

}  // namespace nashjet
