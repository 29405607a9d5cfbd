#pragma once

// Sparse multivariate integer polynomials: parsing, rendering, face
// restriction, differentiation and modular evaluation.

#include "toricsum/numeric.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace toricsum {

using ExponentVector = std::vector<std::int64_t>;

/// Sparse polynomial in n variables with arbitrary-precision coefficients.
///
/// Stored coefficients are never zero. Constant terms are representable
/// (gradients need them); the analysis entry points reject them through
/// require_analyzable().
class Polynomial {
 public:
  using Terms = std::map<ExponentVector, BigInt>;

  Polynomial(int dimension, Terms terms);

  static Polynomial zero(int dimension) { return Polynomial(dimension, {}); }

  int dimension() const noexcept { return dimension_; }
  const Terms& terms() const noexcept { return terms_; }
  std::size_t term_count() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool has_constant_term() const;

  std::vector<ExponentVector> support() const;

  /// Highest exponent of variable `var` (0-based) over the support.
  std::int64_t degree_in(int var) const;
  std::int64_t total_degree() const;

  /// Throws ZeroPolynomial / ConstantTermNonzero unless f is nonconstant with f(0)=0.
  void require_analyzable() const;

  /// Same support, every coefficient multiplied by `factor` (nonzero).
  Polynomial scaled(const BigInt& factor) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  int dimension_;
  Terms terms_;
};

/// Parses the grammar
///   poly := term (('+'|'-') term)*
///   term := [sign] [integer] ('*'? factor)*
///   factor := var ('^' natural)?
///   var := 'x' natural | 'x' | 'y' | 'z' | 'u' | 'v' | 'w'
/// with whitespace ignored. x,y,z,u,v,w alias x1..x6.
Polynomial parse_polynomial(std::string_view text, std::optional<int> dimension_hint = std::nullopt);

/// Text that parse_polynomial reads back to the same polynomial (given the
/// same dimension). Uses x,y,z,u,v,w up to six variables, x1..xn beyond.
std::string render(const Polynomial& f);

/// f restricted to the exponents selected by `keep`; nullopt when nothing survives.
std::optional<Polynomial> face_restriction(const Polynomial& f,
                                           const std::function<bool(const ExponentVector&)>& keep);
std::optional<Polynomial> face_restriction(const Polynomial& f, const std::set<ExponentVector>& selected);

/// Partial derivatives; components may be zero or constant.
std::vector<Polynomial> gradient(const Polynomial& f);

/// Common total degree of the support, if there is one.
std::optional<std::int64_t> homogeneity(const Polynomial& f);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t modulus);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t modulus);
/// z mod modulus in [0, modulus), also for negative z.
std::uint64_t reduce_mod(const BigInt& z, std::uint64_t modulus);

struct ReducedTerm {
  std::uint64_t coefficient;
  ExponentVector exponents;
};

/// f with coefficients reduced mod `modulus`, terms whose coefficient
/// vanishes dropped. Computed per call; never cached on the Polynomial.
std::vector<ReducedTerm> reduce_terms(const Polynomial& f, std::uint64_t modulus);

/// Repeated evaluation of f mod a fixed modulus.
///
/// Builds a table of x^e mod modulus for every residue x and every exponent
/// up to the degree in that variable, so each evaluation is O(#terms * n)
/// table lookups. Variables whose table would be too large fall back to
/// square-and-multiply.
class ModEvaluator {
 public:
  ModEvaluator(const Polynomial& f, std::uint64_t modulus);

  std::uint64_t operator()(std::span<const std::uint64_t> point) const;

  std::uint64_t modulus() const noexcept { return modulus_; }
  const std::vector<ReducedTerm>& terms() const noexcept { return terms_; }
  /// x^e mod modulus for variable `var`.
  std::uint64_t power(int var, std::uint64_t x, std::int64_t e) const;

  static constexpr std::uint64_t kMaxTableEntries = std::uint64_t{1} << 24;

 private:
  std::uint64_t modulus_;
  int dimension_;
  std::vector<ReducedTerm> terms_;
  std::vector<std::int64_t> degrees_;
  std::vector<std::vector<std::uint64_t>> tables_;  // tables_[var][x * (deg+1) + e]
};

/// f(point) mod modulus.
std::uint64_t eval_mod(const Polynomial& f, std::span<const std::uint64_t> point, std::uint64_t modulus);

}  // namespace toricsum
