#pragma once

// Exact integer/rational types shared by every module.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace toricsum {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// "numerator/denominator", or just "numerator" when the denominator is 1.
std::string to_string(const Rational& q);
std::string to_string(const BigInt& z);

/// Accepts "a/b", plain integers and decimal/scientific literals such as
/// "0.25" or "1e-8"; the result is the exact rational the text denotes.
Rational parse_rational(std::string_view text);

double to_double(const Rational& q);

/// base^exp as an exact integer.
BigInt ipow(std::uint64_t base, std::uint64_t exp);

/// Binomial coefficient C(n, k) as an exact integer.
BigInt binomial(std::uint64_t n, std::uint64_t k);

/// C(n, k) saturated at UINT64_MAX.
std::uint64_t binomial_saturating(std::uint64_t n, std::uint64_t k);

}  // namespace toricsum
