#ifndef ODEINV_RATIONAL_HPP
#define ODEINV_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace odeinv {

/// Exact rational number. GMP keeps it canonical: positive denominator,
/// numerator and denominator coprime, zero as 0/1.
using Rational = mpq_class;
using Integer = mpz_class;

/// "num/den", or just "num" for integers.
std::string to_string(const Rational& q);

/// Parses an integer, a decimal literal ("0.25") or a fraction ("-3/4").
std::optional<Rational> parse_rational(std::string_view text);

/// Square root of q if q is the square of a rational.
std::optional<Rational> exact_sqrt(const Rational& q);

}  // namespace odeinv

#endif  // ODEINV_RATIONAL_HPP
