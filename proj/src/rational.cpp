#include "cforge/rational.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "cforge/error.hpp"

namespace cforge {
namespace {

Rational power_of_ten(long exponent) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  if (exponent >= 0) return Rational(p);
  return Rational(mpz_class(1), p);
}

Rational parse_decimal(std::string_view text, std::string_view original) {
  auto fail = [&] { throw InputError("invalid number '" + std::string(original) + "'"); };
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long scale = 0;
  bool seen_digit = false;
  bool seen_point = false;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) --scale;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) fail();
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') fail();
    ++pos;
    long exponent = 0;
    const char* first = text.data() + pos;
    const char* last = text.data() + text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc() || ptr != last) fail();
    scale += exponent;
  }
  Rational result(mpz_class(digits, 10));
  result *= power_of_ten(scale);
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view t = trim(text);
  if (t.empty()) throw InputError("empty number");
  const auto slash = t.find('/');
  if (slash == std::string_view::npos) return parse_decimal(t, text);
  const Rational num = parse_decimal(trim(t.substr(0, slash)), text);
  const Rational den = parse_decimal(trim(t.substr(slash + 1)), text);
  if (den == 0) throw InputError("zero denominator in '" + std::string(text) + "'");
  Rational q = num / den;
  q.canonicalize();
  return q;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw DomainError("cannot convert a non-finite value to a rational");
  return Rational(value);
}

Rational rational_from_double_rounded(double value, int digits) {
  if (!std::isfinite(value)) throw DomainError("cannot convert a non-finite value to a rational");
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::scientific,
                                 digits - 1);
  (void)ec;
  return parse_decimal(std::string_view(buf, static_cast<std::size_t>(ptr - buf)), "");
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string format_double(double value, int significant_digits) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) value = 0.0;  // drop the sign of -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general,
                                 significant_digits);
  (void)ec;
  return std::string(buf, ptr);
}

std::string format_fraction(const Rational& q) {
  return to_string(q) + " (≈ " + format_double(q.get_d(), 6) + ")";
}

}  // namespace cforge
