#include "hetdss/rational.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>
#include <string>

namespace hetdss {
namespace {

bool is_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

Rational pow10(long exponent) {
  boost::multiprecision::mpz_int p = 1;
  for (long i = 0; i < std::labs(exponent); ++i) p *= 10;
  if (exponent >= 0) return Rational(p);
  return Rational(boost::multiprecision::mpz_int(1), p);
}

// Decimal with optional sign, fraction and exponent.
Rational parse_decimal(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = body.substr(e + 1);
    body = body.substr(0, e);
    const char* first = exp_text.data();
    const char* last = first + exp_text.size();
    if (!exp_text.empty() && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, exponent);
    if (ec != std::errc{} || ptr != last || first == last) {
      throw std::invalid_argument("malformed exponent in number '" + std::string(text) + "'");
    }
    if (std::labs(exponent) > 400) {
      throw std::invalid_argument("exponent out of range in number '" + std::string(text) + "'");
    }
  }
  std::string_view integer_part = body;
  std::string_view fraction_part;
  if (auto dot = body.find('.'); dot != std::string_view::npos) {
    integer_part = body.substr(0, dot);
    fraction_part = body.substr(dot + 1);
  }
  if ((integer_part.empty() && fraction_part.empty()) ||
      (!integer_part.empty() && !is_digits(integer_part)) ||
      (!fraction_part.empty() && !is_digits(fraction_part))) {
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  }
  std::string digits(integer_part);
  digits += fraction_part;
  // a leading 0 would make GMP read the digits as octal
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size()));
  boost::multiprecision::mpz_int mantissa(digits.empty() ? std::string("0") : digits);
  Rational value = Rational(mantissa) *
                   pow10(exponent - static_cast<long>(fraction_part.size()));
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  if (text.empty()) throw std::invalid_argument("empty number");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational numerator = parse_decimal(text.substr(0, slash));
    Rational denominator = parse_decimal(text.substr(slash + 1));
    if (denominator == 0) {
      throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    }
    return numerator / denominator;
  }
  return parse_decimal(text);
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
  return Rational(value);
}

Rational rational_from_decimal_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value");
  std::array<char, 64> buffer{};
  auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  if (ec != std::errc{}) throw std::invalid_argument("cannot format value");
  return parse_decimal(std::string_view(buffer.data(), static_cast<std::size_t>(ptr - buffer.data())));
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string to_string(const Rational& value) {
  if (is_integer(value)) return boost::multiprecision::numerator(value).str();
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

std::string to_decimal_string(const Rational& value) {
  std::array<char, 64> buffer{};
  auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), to_double(value));
  if (ec != std::errc{}) return to_string(value);
  return std::string(buffer.data(), ptr);
}

}  // namespace hetdss
