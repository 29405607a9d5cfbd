#pragma once

// Weighted lattice-point sums A(p,m,tau), B(p,m,tau) with a certified
// truncation tail, the face-decomposition right-hand side, and its check
// against brute-force S_f(p^m).

#include "toricsum/newton.hpp"
#include "toricsum/numeric.hpp"
#include "toricsum/sums.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace toricsum {

/// Exact mass of {k in N^n : nu(k) > T} under the weight p^{-nu(k)}:
/// (1-1/p)^{-n} - sum_{s<=T} C(s+n-1, n-1) p^{-s}.
Rational truncation_tail(int n, std::uint64_t p, std::int64_t T);

/// Smallest T with truncation_tail(n, p, T) <= eps.
std::int64_t choose_truncation(int n, std::uint64_t p, const Rational& eps);

/// (1-1/p)^{-n}, the total weight of N^n.
Rational total_lattice_mass(int n, std::uint64_t p);

/// Per-face histograms of (nu, N) over all k with nu(k) <= T, from one
/// enumeration pass. A and B for any m are exact rationals read off them.
class ConeSums {
 public:
  ConeSums(const FaceLattice& lattice, std::uint64_t p, const Rational& eps);
  ConeSums(const FaceLattice& lattice, std::uint64_t p, std::int64_t truncation);

  std::uint64_t prime() const noexcept { return p_; }
  std::int64_t truncation() const noexcept { return truncation_; }
  const Rational& tail() const noexcept { return tail_; }

  /// Partial sum of p^{-nu(k)} over F(k)=tau, N(k)>=m, nu(k)<=T.
  Rational A(int face_id, std::int64_t m) const;
  /// Partial sum of p^{-nu(k)} over F(k)=tau, N(k)=m-1, nu(k)<=T.
  Rational B(int face_id, std::int64_t m) const;
  /// Minimum N(k) over the enumerated fiber of tau.
  std::optional<std::int64_t> min_N(int face_id) const;

 private:
  void accumulate(const FaceLattice& lattice);
  Rational weigh(int face_id, const std::function<bool(std::int64_t)>& select_N) const;

  std::uint64_t p_;
  std::int64_t truncation_;
  Rational tail_;
  std::vector<std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t>> histograms_;  // (nu, N) -> count
  std::vector<BigInt> powers_;  // p^j, j <= T
};

struct ConeSumResult {
  int face_id = 0;
  std::int64_t m = 0;
  Rational A_partial;
  Rational B_partial;
  std::int64_t truncation_T = 0;
  Rational tail;  // bound on the mass omitted across all faces
};

std::vector<ConeSumResult> cone_sums(const FaceLattice& lattice, std::uint64_t p, std::int64_t m,
                                     const Rational& eps);

/// (1-1/p)^n sum_tau (A(p,m,tau) + E(p,f_tau) B(p,m,tau)), with E supplied
/// per face id. Budget covers truncation (via eps) and the float budgets of E.
SumValue rhs_assembly(const FaceLattice& lattice, const ConeSums& cones, std::span<const SumValue> torus_sums,
                      std::int64_t m, const Rational& eps);

SumValue rhs_assembly(const FaceLattice& lattice, std::uint64_t p, std::int64_t m, const Rational& eps,
                      const KernelOptions& options = {});

enum class Verdict { kPass, kFail, kNotApplicable, kBudgetExceeded };

std::string to_string(Verdict v);

struct FormulaReport {
  std::uint64_t p = 0;
  std::int64_t m = 0;
  std::optional<SumValue> lhs;  // brute force; absent when over budget
  std::optional<SumValue> rhs;
  double certified_tolerance = 0.0;
  Verdict verdict = Verdict::kFail;
  std::int64_t truncation_T = 0;
  Rational tail;
  NondegReport nondeg;
  std::string note;

  double residual() const;
};

/// Compares brute-force S_f(p^m) with the assembled right-hand side for each
/// m. Rows are "not applicable" when some face restriction is degenerate mod p;
/// budget problems are recorded per row.
std::vector<FormulaReport> verify_formula(const FaceLattice& lattice, std::uint64_t p,
                                          std::span<const std::int64_t> powers, const Rational& eps,
                                          const KernelOptions& options = {});

/// Empirical constants for the A/B decay bounds: for each face, the maxima over
/// the given m of A * p^{m sigma} / m^{kappa-1} and
/// B * p^{m sigma - sigma(f_tau)} / m^{kappa-1}.
struct ConeDecayConstants {
  int face_id = 0;
  double a_constant = 0.0;
  double b_constant = 0.0;
};

std::vector<ConeDecayConstants> cone_decay_constants(const FaceLattice& lattice, const ConeSums& cones,
                                                     std::span<const std::int64_t> powers);

}  // namespace toricsum
