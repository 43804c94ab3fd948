#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace stochorder {

// Exact rational numbers backed by GMP. Expression templates are disabled so
// `auto` deduces a value and not a lazy expression.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

// Raised for malformed user input: bad rationals, invalid laws, bad parameters.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parses "7", "-3/4", "0.125", "1e-3", "2.5E+2". Decimal forms are converted
// exactly (0.1 becomes 1/10, not the nearest binary64).
Rational parse_rational(std::string_view text);

// Exact value of a finite double (every binary64 is a dyadic rational).
Rational rational_from_double(double x);

// "num/den", or just "num" when the denominator is 1.
std::string to_string(const Rational& r);

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

}  // namespace stochorder
