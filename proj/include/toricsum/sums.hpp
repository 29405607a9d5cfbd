#pragma once

// Complete exponential sums S_f(p^m), torus sums E(p, f_tau), and the
// mod-p nondegeneracy scan of face restrictions.

#include "toricsum/newton.hpp"
#include "toricsum/poly.hpp"

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace toricsum {

/// A floating-point sum with a certified absolute error bound.
struct SumValue {
  std::complex<double> value;
  double abs_error_budget = 0.0;
  std::uint64_t term_count = 0;
};

struct KernelOptions {
  enum class Accumulation {
    kAutomatic,  // histogram when the modulus is small enough, direct otherwise
    kHistogram,  // count residues exactly, then one compensated pass over the root table
    kDirect,     // compensated accumulation of roots of unity point by point
  };
  /// 0 means std::thread::hardware_concurrency().
  unsigned workers = 1;
  std::uint64_t work_budget = 200'000'000;
  Accumulation accumulation = Accumulation::kAutomatic;
};

/// Unit roundoff of binary64.
inline constexpr double kUnitRoundoff = 0x1p-53;
/// Per-term error constant of the summation kernels: every SumValue carries
/// abs_error_budget = kTermErrorScale * (term_count + 2).
inline constexpr double kTermErrorScale = 4 * kUnitRoundoff;

bool is_prime(std::uint64_t p);

/// (modulus - lower)^{-n} * sum over x in [lower, modulus)^n of exp(2 pi i f(x) / modulus).
SumValue exponential_sum(const Polynomial& f, std::uint64_t modulus, std::uint64_t lower,
                         const KernelOptions& options = {});

/// S_f(p^m) = p^{-mn} sum_{x in [0, p^m)^n} exp(2 pi i f(x) / p^m).
SumValue brute_force_S(const Polynomial& f, std::uint64_t p, int m, const KernelOptions& options = {});

/// E(p, f_tau) = (p-1)^{-n} sum_{x in [1, p)^n} exp(2 pi i f_tau(x) / p).
SumValue torus_E(const Polynomial& f_tau, std::uint64_t p, const KernelOptions& options = {});

struct FaceNondegeneracy {
  int face_id = 0;
  bool pass = true;
  /// Torus point where every component of grad f_tau vanishes mod p.
  std::optional<std::vector<std::uint64_t>> witness;
};

struct NondegReport {
  std::uint64_t prime = 0;
  std::vector<FaceNondegeneracy> faces;
  bool all_pass() const;
};

/// For each face, scans (F_p^x)^n for a common zero of grad f_tau mod p.
NondegReport check_nondegenerate_mod_p(const Polynomial& f, std::span<const Face> faces, std::uint64_t p,
                                       const KernelOptions& options = {});

}  // namespace toricsum
