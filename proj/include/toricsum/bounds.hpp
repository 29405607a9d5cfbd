#pragma once

// Checks of the lower bound for nu(k), the convexity lemma behind it, the
// S_f ratio tables, torus-sum decay fits and the sigma <= (n-d)/2 bound.

#include "toricsum/newton.hpp"
#include "toricsum/numeric.hpp"
#include "toricsum/sums.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace toricsum {

struct NuCheckRecord {
  std::vector<std::int64_t> k;
  int face_id = 0;
  std::int64_t nu = 0;
  std::int64_t N = 0;
  Rational rhs_face_sigma;  // sigma (N+1) - sigma(f_tau)
  Rational rhs_face_dim;    // sigma (N+1) - (dim tau + 1)/2
  bool face_sigma_ok = true;
  bool face_dim_ok = true;
};

NuCheckRecord evaluate_nu(const FaceLattice& lattice, std::span<const std::int64_t> k);

struct NuCheckResult {
  std::int64_t T = 0;
  std::uint64_t points_checked = 0;
  /// Violations of nu(k) >= sigma (N(k)+1) - sigma(f_tau); expected empty.
  std::vector<NuCheckRecord> violations;
  /// Violations of nu(k) >= sigma (N(k)+1) - (dim tau+1)/2; findings only.
  std::vector<NuCheckRecord> dim_findings;
  /// Whether no vertex of F_0 lies in {0,1}^n (the extra hypothesis under
  /// which the dim-based bound is known).
  bool f0_avoids_unit_cube = false;
};

/// Exact check over every k with nu(k) <= T.
NuCheckResult check_nu_inequality(const FaceLattice& lattice, std::int64_t T);

/// One instance: points R_j on a face and weights beta_j >= 0.
struct ConvexitySample {
  std::vector<std::vector<Rational>> points;
  std::vector<Rational> betas;
};

struct ConvexityVerdict {
  bool hypothesis = false;  // sum beta_j R_j <= (1/sigma,...,1/sigma)
  bool unit_ok = true;     // sum beta_j <= 1
  bool face_ok = true; // sum beta_j <= sigma(f_tau)/sigma
  Rational beta_sum;
};

ConvexityVerdict check_convexity(const FaceLattice& lattice, int face_id, const ConvexitySample& sample);

struct ConvexityResult {
  bool pass = true;
  int trials = 0;
  int accepted = 0;  // samples meeting the hypothesis
  std::optional<ConvexitySample> counterexample;
};

/// Random samples of points on the face and weights, scaled so that most meet
/// the hypothesis; throws DegenerateSampling if fewer than trials/10 do.
ConvexityResult convexity_sampler(const FaceLattice& lattice, int face_id, int trials, std::uint64_t seed);

struct RatioRow {
  std::uint64_t p = 0;
  std::int64_t m = 0;
  bool computed = false;
  bool nondegenerate = false;  // every face restriction passes mod p
  double abs_S = 0.0;
  double budget = 0.0;
  double ratio_kappa = 0.0;  // |S| p^{sigma m} / m^{kappa-1}
  double ratio_n = 0.0;  // |S| p^{sigma m} / m^{n-1}
  bool exceeds_ceiling = false;
  std::string note;
};

struct RatioTable {
  bool homogeneous = false;
  Rational sigma;
  int kappa = 0;
  double ceiling = 0.0;
  std::vector<RatioRow> rows;
  double estimated_c = 0.0;  // max ratio_kappa over computed cells
  std::vector<std::string> findings;

  /// Median of ratio_kappa over computed cells at nondegenerate primes.
  double median_ratio() const;
};

RatioTable bound_ratio_table(const FaceLattice& lattice, std::span<const std::uint64_t> primes,
                             std::span<const std::int64_t> powers, const KernelOptions& options = {},
                             double ceiling = 100.0);

struct DecaySample {
  std::uint64_t p = 0;
  double abs_E = 0.0;
  double budget = 0.0;
  bool used = false;
  std::string note;
};

struct DecayFit {
  int face_id = 0;
  /// Slope of log|E| in log p, from a fit with a 1/p correction term when at
  /// least four primes are usable, otherwise the plain slope.
  double fitted_exponent = 0.0;
  double plain_slope = 0.0;
  bool corrected = false;
  Rational sigma_tau;
  Rational sigma_exponent;  // -sigma(f_tau)
  Rational dim_exponent;    // -(dim tau + 1)/2
  std::vector<DecaySample> samples;
};

/// Fits the decay of |E(p, f_tau)| over the given primes. Primes where f_tau
/// is degenerate, or |E| is below ten times its error budget, are skipped.
DecayFit e_decay_fit(const FaceLattice& lattice, int face_id, std::span<const std::uint64_t> primes,
                     const KernelOptions& options = {});

/// sigma(f) <= (n - d)/2 for a user-supplied critical-locus dimension d.
/// Throws HypothesisUnmet unless f is homogeneous of degree >= 2.
bool check_sigma_dim_bound(const FaceLattice& lattice, int d);

}  // namespace toricsum
