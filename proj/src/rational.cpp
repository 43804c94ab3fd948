#include "stochorder/rational.hpp"

#include <cctype>
#include <cmath>

namespace stochorder {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// mpz reads a leading 0 as an octal prefix.
boost::multiprecision::mpz_int decimal_digits(std::string_view s) {
  auto nz = s.find_first_not_of('0');
  if (nz == std::string_view::npos) return 0;
  return boost::multiprecision::mpz_int(std::string(s.substr(nz)));
}

Rational pow10(long e) {
  Rational r{1};
  for (long i = 0; i < e; ++i) r *= 10;
  return r;
}

Rational parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InputError("malformed rational: '" + std::string(whole) + "'");
  Rational r{decimal_digits(s)};
  return neg ? Rational(-r) : r;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  auto bad = [&] { return InputError("malformed number: '" + std::string(whole) + "'"); };
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_part = s.substr(e + 1);
    s = s.substr(0, e);
    bool exp_neg = false;
    if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
      exp_neg = exp_part.front() == '-';
      exp_part.remove_prefix(1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) throw bad();
    exponent = std::stol(std::string(exp_part));
    if (exp_neg) exponent = -exponent;
  }
  std::string digits;
  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    std::string_view frac_part = s.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) throw bad();
    if ((!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part)))
      throw bad();
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    if (!all_digits(s)) throw bad();
    digits = std::string(s);
  }
  if (std::labs(exponent) > 4000) throw bad();
  Rational r{decimal_digits(digits)};
  if (exponent >= 0) {
    r *= pow10(exponent);
  } else {
    r /= pow10(-exponent);
  }
  return neg ? Rational(-r) : r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw InputError("empty rational");
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Rational num = parse_integer(trim(s.substr(0, slash)), text);
    Rational den = parse_integer(trim(s.substr(slash + 1)), text);
    if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
    return num / den;
  }
  if (s.find_first_of(".eE") != std::string_view::npos) return parse_decimal(s, text);
  return parse_integer(s, text);
}

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw InputError("non-finite value");
  return Rational(x);
}

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace stochorder
