#ifndef CCLS_RATIONAL_HPP
#define CCLS_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "ccls/error.hpp"

namespace ccls {

/// Exact rational number. All rates, parameters and bounds are carried in
/// this type; doubles appear only in simulation and report rendering.
using Rational = mpq_class;
using BigInt = mpz_class;

inline Rational make_rational(long long num, long long den = 1) {
  Rational r(BigInt(std::to_string(num)), BigInt(std::to_string(den)));
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

/// Integer value of `r`; throws InternalError if `r` is not an integer or does
/// not fit in 64 bits.
inline long long to_int64(const Rational& r) {
  if (!is_integer(r)) {
    throw InternalError("non-integer value " + r.get_str());
  }
  const BigInt& n = r.get_num();
  if (!n.fits_slong_p()) {
    throw InternalError("integer overflow converting " + n.get_str());
  }
  return n.get_si();
}

inline double to_double(const Rational& r) { return r.get_d(); }

/// "p/q" or "p" when the denominator is one.
inline std::string to_string(const Rational& r) { return r.get_str(); }

/// Parses an integer, "p/q" fraction, or decimal literal with an optional
/// exponent ("0.25", "-1.5e-3"). Returns nullopt on malformed input.
inline std::optional<Rational> parse_rational(std::string_view text) {
  auto trimmed = text;
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.front()))) {
    trimmed.remove_prefix(1);
  }
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back()))) {
    trimmed.remove_suffix(1);
  }
  if (trimmed.empty()) return std::nullopt;

  bool negative = false;
  std::size_t pos = 0;
  if (trimmed[pos] == '+' || trimmed[pos] == '-') {
    negative = trimmed[pos] == '-';
    ++pos;
  }
  auto digits = [&](std::string& out) {
    std::size_t start = pos;
    while (pos < trimmed.size() && std::isdigit(static_cast<unsigned char>(trimmed[pos]))) {
      out.push_back(trimmed[pos++]);
    }
    return pos > start;
  };

  std::string int_part;
  std::string frac_part;
  bool has_int = digits(int_part);
  if (pos < trimmed.size() && trimmed[pos] == '/') {
    ++pos;
    std::string den;
    if (!has_int || !digits(den) || pos != trimmed.size()) return std::nullopt;
    BigInt d(den, 10);
    if (d == 0) return std::nullopt;
    Rational r(BigInt(int_part, 10), d);
    r.canonicalize();
    return negative ? Rational(-r) : r;
  }
  bool has_frac = false;
  if (pos < trimmed.size() && trimmed[pos] == '.') {
    ++pos;
    has_frac = digits(frac_part);
  }
  if (!has_int && !has_frac) return std::nullopt;
  long exponent = 0;
  if (pos < trimmed.size() && (trimmed[pos] == 'e' || trimmed[pos] == 'E')) {
    ++pos;
    bool exp_negative = false;
    if (pos < trimmed.size() && (trimmed[pos] == '+' || trimmed[pos] == '-')) {
      exp_negative = trimmed[pos] == '-';
      ++pos;
    }
    std::string exp_digits;
    if (!digits(exp_digits) || exp_digits.size() > 6) return std::nullopt;
    exponent = std::stol(exp_digits);
    if (exp_negative) exponent = -exponent;
  }
  if (pos != trimmed.size()) return std::nullopt;

  BigInt mantissa(int_part.empty() && frac_part.empty() ? std::string("0")
                                                        : int_part + frac_part,
                 10);
  exponent -= static_cast<long>(frac_part.size());
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  Rational r = exponent < 0 ? Rational(mantissa, scale) : Rational(mantissa * scale);
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

}  // namespace ccls

#endif  // CCLS_RATIONAL_HPP
