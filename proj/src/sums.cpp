#include "toricsum/sums.hpp"

#include "toricsum/compensated.hpp"
#include "toricsum/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

namespace toricsum {

bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

bool NondegReport::all_pass() const {
  return std::all_of(faces.begin(), faces.end(), [](const FaceNondegeneracy& f) { return f.pass; });
}

namespace {

constexpr std::uint64_t kHistogramMaxModulus = std::uint64_t{1} << 20;
constexpr std::uint64_t kFullRootTableMax = std::uint64_t{1} << 22;
constexpr std::uint64_t kBlockSize = std::uint64_t{1} << 16;

unsigned resolve_workers(unsigned requested) {
  if (requested != 0) return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

std::complex<double> root_of_unity(std::uint64_t v, std::uint64_t modulus) {
  const double angle = 2.0 * std::numbers::pi * (static_cast<double>(v) / static_cast<double>(modulus));
  return {std::cos(angle), std::sin(angle)};
}

// exp(2 pi i v / modulus) by table lookup; two-level for large moduli.
class RootTable {
 public:
  explicit RootTable(std::uint64_t modulus) : modulus_(modulus) {
    if (modulus <= kFullRootTableMax) {
      split_ = modulus;
      low_.resize(modulus);
      for (std::uint64_t v = 0; v < modulus; ++v) low_[v] = root_of_unity(v, modulus);
    } else {
      split_ = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(modulus))));
      low_.resize(split_);
      for (std::uint64_t v = 0; v < split_; ++v) low_[v] = root_of_unity(v, modulus);
      high_.resize(modulus / split_ + 1);
      for (std::uint64_t h = 0; h < high_.size(); ++h) high_[h] = root_of_unity(h * split_, modulus);
    }
  }
  std::complex<double> operator()(std::uint64_t v) const noexcept {
    if (high_.empty()) return low_[v];
    return high_[v / split_] * low_[v % split_];
  }
  bool split() const noexcept { return !high_.empty(); }

 private:
  std::uint64_t modulus_;
  std::uint64_t split_;
  std::vector<std::complex<double>> low_;
  std::vector<std::complex<double>> high_;
};

// f as a polynomial in its last variable whose coefficients are the
// outer-variable parts of each term.
struct InnerGrouping {
  std::int64_t inner_degree = 0;
  struct Term {
    std::uint64_t coefficient;
    ExponentVector outer;
    std::int64_t inner;
  };
  std::vector<Term> terms;
};

class SumKernel {
 public:
  SumKernel(const Polynomial& f, std::uint64_t modulus, std::uint64_t lower)
      : n_(f.dimension()), modulus_(modulus), lower_(lower), width_(modulus - lower), evaluator_(f, modulus) {
    for (const auto& t : evaluator_.terms()) {
      ExponentVector outer(t.exponents.begin(), t.exponents.end() - 1);
      const std::int64_t inner = t.exponents.back();
      grouping_.inner_degree = std::max(grouping_.inner_degree, inner);
      grouping_.terms.push_back({t.coefficient, std::move(outer), inner});
    }
    rows_ = 1;
    for (int j = 0; j + 1 < n_; ++j) rows_ *= width_;
    blocks_per_row_ = (width_ + kBlockSize - 1) / kBlockSize;
  }

  std::uint64_t block_count() const noexcept { return rows_ * blocks_per_row_; }

  // Calls emit(residue) for every point of the block, in order.
  template <typename Emit>
  void run_block(std::uint64_t block, std::vector<std::uint64_t>& coeffs, std::vector<std::uint64_t>& diffs,
                 std::vector<std::uint64_t>& outer, Emit&& emit) const {
    const std::uint64_t row = block / blocks_per_row_;
    const std::uint64_t begin = lower_ + (block % blocks_per_row_) * kBlockSize;
    const std::uint64_t end = std::min(begin + kBlockSize, modulus_);

    outer.assign(static_cast<std::size_t>(std::max(n_ - 1, 0)), 0);
    std::uint64_t r = row;
    for (int j = n_ - 2; j >= 0; --j) {
      outer[static_cast<std::size_t>(j)] = lower_ + r % width_;
      r /= width_;
    }

    const auto d = static_cast<std::size_t>(grouping_.inner_degree);
    coeffs.assign(d + 1, 0);
    for (const auto& t : grouping_.terms) {
      std::uint64_t c = t.coefficient;
      for (std::size_t j = 0; j < t.outer.size() && c != 0; ++j) {
        if (t.outer[j] != 0) c = mul_mod(c, evaluator_.power(static_cast<int>(j), outer[j], t.outer[j]), modulus_);
      }
      auto& slot = coeffs[static_cast<std::size_t>(t.inner)];
      slot += c;
      if (slot >= modulus_) slot -= modulus_;
    }

    // Forward differences of g(x) = sum coeffs[e] x^e at x = begin.
    diffs.assign(d + 1, 0);
    for (std::size_t i = 0; i <= d; ++i) {
      const std::uint64_t x = (begin + i) % modulus_;
      std::uint64_t v = 0;
      for (std::size_t e = d + 1; e-- > 0;) {
        v = mul_mod(v, x, modulus_) + coeffs[e];
        if (v >= modulus_) v -= modulus_;
      }
      diffs[i] = v;
    }
    for (std::size_t level = 1; level <= d; ++level) {
      for (std::size_t i = d; i >= level; --i) {
        diffs[i] = diffs[i] >= diffs[i - 1] ? diffs[i] - diffs[i - 1] : diffs[i] + modulus_ - diffs[i - 1];
      }
    }

    for (std::uint64_t x = begin; x < end; ++x) {
      emit(diffs[0]);
      for (std::size_t i = 0; i < d; ++i) {
        std::uint64_t v = diffs[i] + diffs[i + 1];
        if (v >= modulus_) v -= modulus_;
        diffs[i] = v;
      }
    }
  }

 private:
  int n_;
  std::uint64_t modulus_;
  std::uint64_t lower_;
  std::uint64_t width_;
  ModEvaluator evaluator_;
  InnerGrouping grouping_;
  std::uint64_t rows_ = 1;
  std::uint64_t blocks_per_row_ = 1;
};

template <typename Work>
void run_partitioned(std::uint64_t blocks, unsigned workers, Work&& work) {
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, std::max<std::uint64_t>(blocks, 1)));
  if (workers <= 1) {
    work(0U, std::uint64_t{0}, blocks);
    return;
  }
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t begin = blocks * w / workers;
    const std::uint64_t end = blocks * (w + 1) / workers;
    threads.emplace_back([&work, w, begin, end] { work(w, begin, end); });
  }
  for (auto& t : threads) t.join();
}

}  // namespace

SumValue exponential_sum(const Polynomial& f, std::uint64_t modulus, std::uint64_t lower,
                         const KernelOptions& options) {
  if (modulus < 2) throw Error("modulus must be at least 2");
  if (lower >= modulus) throw Error("empty summation range");
  const int n = f.dimension();
  const double estimated = std::pow(static_cast<double>(modulus - lower), n);
  if (estimated > static_cast<double>(options.work_budget)) throw WorkBudgetExceeded(estimated, options.work_budget);

  std::uint64_t term_count = 1;
  for (int j = 0; j < n; ++j) term_count *= modulus - lower;

  const SumKernel kernel(f, modulus, lower);
  const RootTable roots(modulus);
  const unsigned workers = resolve_workers(options.workers);

  bool histogram = false;
  switch (options.accumulation) {
    case KernelOptions::Accumulation::kAutomatic:
      histogram = modulus <= kHistogramMaxModulus && modulus <= term_count;
      break;
    case KernelOptions::Accumulation::kHistogram:
      if (modulus > kHistogramMaxModulus) throw Error("modulus too large for histogram accumulation");
      histogram = true;
      break;
    case KernelOptions::Accumulation::kDirect:
      break;
  }

  ComplexCompensatedSum total;
  if (histogram) {
    std::vector<std::vector<std::uint64_t>> counts(workers);
    run_partitioned(kernel.block_count(), workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
      auto& local = counts[w];
      local.assign(modulus, 0);
      std::vector<std::uint64_t> coeffs, diffs, outer;
      for (std::uint64_t b = begin; b < end; ++b) {
        kernel.run_block(b, coeffs, diffs, outer, [&local](std::uint64_t v) { ++local[v]; });
      }
    });
    for (std::size_t w = 1; w < counts.size(); ++w) {
      if (counts[w].empty()) continue;
      for (std::uint64_t v = 0; v < modulus; ++v) counts[0][v] += counts[w][v];
    }
    for (std::uint64_t v = 0; v < modulus; ++v) {
      if (counts[0][v] != 0) total.add(static_cast<double>(counts[0][v]) * roots(v));
    }
  } else {
    std::vector<ComplexCompensatedSum> partial(workers);
    run_partitioned(kernel.block_count(), workers, [&](unsigned w, std::uint64_t begin, std::uint64_t end) {
      ComplexCompensatedSum local;
      std::vector<std::uint64_t> coeffs, diffs, outer;
      for (std::uint64_t b = begin; b < end; ++b) {
        kernel.run_block(b, coeffs, diffs, outer, [&](std::uint64_t v) { local.add(roots(v)); });
      }
      partial[w] = local;
    });
    for (const auto& p : partial) total.merge(p);
  }

  SumValue out;
  out.term_count = term_count;
  out.value = total.value() / static_cast<double>(term_count);
  out.abs_error_budget = kTermErrorScale * (static_cast<double>(term_count) + 2.0);
  if (roots.split()) out.abs_error_budget += kTermErrorScale;
  return out;
}

SumValue brute_force_S(const Polynomial& f, std::uint64_t p, int m, const KernelOptions& options) {
  if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  if (m < 1) throw Error("power m must be positive");
  const double estimated = std::pow(static_cast<double>(p), static_cast<double>(m) * f.dimension());
  if (estimated > static_cast<double>(options.work_budget)) throw WorkBudgetExceeded(estimated, options.work_budget);
  std::uint64_t q = 1;
  for (int i = 0; i < m; ++i) q *= p;
  return exponential_sum(f, q, 0, options);
}

SumValue torus_E(const Polynomial& f_tau, std::uint64_t p, const KernelOptions& options) {
  if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  return exponential_sum(f_tau, p, 1, options);
}

NondegReport check_nondegenerate_mod_p(const Polynomial& f, std::span<const Face> faces, std::uint64_t p,
                                       const KernelOptions& options) {
  if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  const int n = f.dimension();
  const double estimated = std::pow(static_cast<double>(p - 1), n) * static_cast<double>(faces.size());
  if (estimated > static_cast<double>(options.work_budget)) throw WorkBudgetExceeded(estimated, options.work_budget);

  NondegReport report;
  report.prime = p;
  std::vector<std::uint64_t> x(static_cast<std::size_t>(n));
  for (const auto& face : faces) {
    if (face.restriction.dimension() != n) throw Error("face restriction dimension mismatch");
    std::vector<ModEvaluator> components;
    for (const auto& g : gradient(face.restriction)) {
      ModEvaluator e(g, p);
      if (!e.terms().empty()) components.push_back(std::move(e));
    }
    FaceNondegeneracy entry;
    entry.face_id = face.id;
    std::fill(x.begin(), x.end(), 1);
    while (true) {
      const bool critical = std::all_of(components.begin(), components.end(),
                                        [&](const ModEvaluator& e) { return e(x) == 0; });
      if (critical) {
        entry.pass = false;
        entry.witness = x;
        break;
      }
      int j = n - 1;
      while (j >= 0 && ++x[static_cast<std::size_t>(j)] == p) {
        x[static_cast<std::size_t>(j)] = 1;
        --j;
      }
      if (j < 0) break;
    }
    report.faces.push_back(std::move(entry));
  }
  return report;
}

}  // namespace toricsum
