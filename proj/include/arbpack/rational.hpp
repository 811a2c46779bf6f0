#pragma once

// Exact rationals (GMP) and the conversions the rest of the library needs.

#include <gmpxx.h>

#include <string>

#include "arbpack/error.hpp"

namespace arbpack {

using Rational = mpq_class;

inline Rational to_rational(const Rational& q) { return q; }
inline Rational to_rational(int v) { return Rational(v); }
inline Rational to_rational(long v) { return Rational(v); }
inline Rational to_rational(long long v) { return Rational(static_cast<long>(v)); }

// Accepts "7", "-3", "5/2".
inline Rational parse_rational(const std::string& text) {
    Rational q;
    if (text.empty() || q.set_str(text, 10) != 0) throw DomainError("not a rational number: '" + text + "'");
    if (q.get_den() == 0) throw DomainError("zero denominator in '" + text + "'");
    q.canonicalize();
    return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace arbpack
