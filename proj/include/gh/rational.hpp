#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace gh {

using Integer = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p" or "-p/q". Throws std::invalid_argument on malformed
/// input or a zero denominator. The result is canonicalized.
Rational parse_rational(std::string_view text);

/// Always emits "p/q" (denominator included even when it is 1).
std::string to_string(const Rational& q);

/// Exact n!, memoized; safe to call from several threads.
Integer factorial(unsigned long n);

/// C(n, r); zero when r < 0 or r > n.
Integer binomial(long n, long r);

/// Exact value of a finite double (every double is a dyadic rational).
Rational exact_rational(double x);

}  // namespace gh
