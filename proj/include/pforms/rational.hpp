#pragma once

#include <gmpxx.h>

#include <string>

#include "pforms/errors.hpp"

namespace pforms {

// Exact rational scalar. GMP keeps values in lowest terms with a positive
// denominator, which is exactly the invariant the rest of the library
// assumes, so mpq_class is used directly rather than wrapped.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    if (den == 0) fail(errc::bad_argument, "rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// "3", "-7/2"; used by the text format.
inline std::string rational_to_string(const Rational& q) {
    if (is_integer(q)) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// Always "num/den"; used by the JSON format so exactness survives round trips.
inline std::string rational_to_fraction_string(const Rational& q) {
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational rational_from_string(const std::string& text) {
    try {
        Rational q(text);
        if (q.get_den() == 0) fail(errc::bad_argument, "zero denominator in '" + text + "'");
        q.canonicalize();
        return q;
    } catch (const std::invalid_argument&) {
        fail(errc::bad_argument, "malformed rational '" + text + "'");
    }
}

inline Rational rational_pow(const Rational& base, int exp) {
    if (exp < 0) fail(errc::bad_argument, "negative exponent");
    Rational acc = 1;
    Rational b = base;
    int e = exp;
    while (e > 0) {
        if (e & 1) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

} // namespace pforms
