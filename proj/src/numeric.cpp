#include "toricsum/numeric.hpp"

#include "toricsum/errors.hpp"

#include <cctype>
#include <limits>

namespace toricsum {

std::string to_string(const BigInt& z) { return z.str(); }

std::string to_string(const Rational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

namespace {

BigInt parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw ParseError("expected digits in '" + std::string(whole) + "'", 0);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(digits[i]))) {
      throw ParseError("invalid number '" + std::string(whole) + "'", i);
    }
  }
  return BigInt(std::string(digits));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational literal", 0);
  bool negative = false;
  std::string_view body = text;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_integer(body.substr(0, slash), text);
    BigInt den = parse_integer(body.substr(slash + 1), text);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", slash + 1);
    result = Rational(num, den);
  } else {
    std::int64_t exponent = 0;
    std::string_view mantissa = body;
    if (auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = body.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      BigInt exp_value = parse_integer(exp_text, text);
      if (exp_value > 4096) throw ParseError("exponent too large in '" + std::string(text) + "'", e);
      exponent = exp_value.convert_to<std::int64_t>();
      if (exp_negative) exponent = -exponent;
      mantissa = body.substr(0, e);
    }
    std::string digits;
    std::int64_t fraction_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
      digits = std::string(mantissa.substr(0, dot)) + std::string(mantissa.substr(dot + 1));
      fraction_digits = static_cast<std::int64_t>(mantissa.size() - dot - 1);
    } else {
      digits = std::string(mantissa);
    }
    BigInt num = parse_integer(digits, text);
    const std::int64_t shift = exponent - fraction_digits;
    if (shift >= 0) {
      result = Rational(num * ipow(10, static_cast<std::uint64_t>(shift)));
    } else {
      result = Rational(num, ipow(10, static_cast<std::uint64_t>(-shift)));
    }
  }
  return negative ? Rational(-result) : result;
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

BigInt ipow(std::uint64_t base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp > 0) {
    if (exp & 1U) result *= b;
    b *= b;
    exp >>= 1U;
  }
  return result;
}

BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    result *= n - k + i;
    result /= i;
  }
  return result;
}

std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k) {
  const BigInt c = binomial(n, k);
  if (c > std::numeric_limits<std::uint64_t>::max()) return std::numeric_limits<std::uint64_t>::max();
  return c.convert_to<std::uint64_t>();
}

}  // namespace toricsum
