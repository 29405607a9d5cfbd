#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <cstdio>
#include <string>

namespace toricsum {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)),
        position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

class ConstantTermNonzero : public Error {
 public:
  ConstantTermNonzero() : Error("polynomial has a nonzero constant term; f(0) must be 0") {}
};

class ZeroPolynomial : public Error {
 public:
  ZeroPolynomial() : Error("polynomial is zero after combining like terms") {}
};

class DimensionTooLarge : public Error {
 public:
  DimensionTooLarge(int n, int cap)
      : Error("dimension " + std::to_string(n) + " exceeds the cap " + std::to_string(cap)) {}
};

class FacetCountTooLarge : public Error {
 public:
  FacetCountTooLarge(std::size_t facets, int cap_log2)
      : Error("2^" + std::to_string(facets) + " facet subsets exceed the enumeration cap 2^" +
              std::to_string(cap_log2)) {}
};

/// Lattice-point enumeration would exceed the configured point cap.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t points, std::uint64_t cap)
      : Error("lattice enumeration needs " + std::to_string(points) + " points, cap is " +
              std::to_string(cap)),
        points_(points) {}
  std::uint64_t points() const noexcept { return points_; }

 private:
  std::uint64_t points_;
};

/// A summation kernel would exceed the evaluation budget; raised before any work starts.
class WorkBudgetExceeded : public Error {
 public:
  WorkBudgetExceeded(double estimated, std::uint64_t budget)
      : Error("summation needs about " + format_count(estimated) + " evaluations, budget is " +
              std::to_string(budget)),
        estimated_(estimated) {}
  double estimated() const noexcept { return estimated_; }

 private:
  static std::string format_count(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, v < 1e15 ? "%.0f" : "%.3e", v);
    return buf;
  }
  double estimated_;
};

class DegenerateSampling : public Error {
 public:
  using Error::Error;
};

class InsufficientPrimes : public Error {
 public:
  using Error::Error;
};

class HypothesisUnmet : public Error {
 public:
  using Error::Error;
};

}  // namespace toricsum
