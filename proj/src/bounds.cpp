#include "toricsum/bounds.hpp"

#include "toricsum/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>

namespace toricsum {

NuCheckRecord evaluate_nu(const FaceLattice& lattice, std::span<const std::int64_t> k) {
  const auto c = lattice.classify(k);
  const Face& face = lattice.face(c.face_id);
  const Rational& sigma = lattice.sigma().sigma;
  NuCheckRecord r;
  r.k.assign(k.begin(), k.end());
  r.face_id = c.face_id;
  r.nu = c.nu;
  r.N = c.N;
  r.rhs_face_sigma = sigma * (c.N + 1) - face.sigma_tau;
  r.rhs_face_dim = sigma * (c.N + 1) - Rational(face.dim + 1, 2);
  r.face_sigma_ok = Rational(c.nu) >= r.rhs_face_sigma;
  r.face_dim_ok = Rational(c.nu) >= r.rhs_face_dim;
  return r;
}

NuCheckResult check_nu_inequality(const FaceLattice& lattice, std::int64_t T) {
  NuCheckResult out;
  out.T = T;
  const auto& P = lattice.polyhedron();
  const Face& f0 = lattice.face(lattice.f0_id());
  out.f0_avoids_unit_cube = std::none_of(f0.vertex_ids.begin(), f0.vertex_ids.end(), [&](int v) {
    const auto& vertex = P.vertices()[static_cast<std::size_t>(v)];
    return std::all_of(vertex.begin(), vertex.end(), [](std::int64_t e) { return e == 0 || e == 1; });
  });
  enumerate_lattice_points(lattice, T, [&](std::span<const std::int64_t> k, const FaceLattice::Classified&) {
    ++out.points_checked;
    NuCheckRecord r = evaluate_nu(lattice, k);
    if (!r.face_sigma_ok) out.violations.push_back(r);
    if (!r.face_dim_ok) out.dim_findings.push_back(std::move(r));
  });
  return out;
}

ConvexityVerdict check_convexity(const FaceLattice& lattice, int face_id, const ConvexitySample& sample) {
  const Face& face = lattice.face(face_id);
  const Rational& sigma = lattice.sigma().sigma;
  const Rational& t_star = lattice.sigma().t_star;
  const auto n = static_cast<std::size_t>(lattice.dimension());
  if (sample.points.size() != sample.betas.size()) throw Error("one beta per point is required");

  ConvexityVerdict v;
  std::vector<Rational> combo(n, Rational(0));
  for (std::size_t j = 0; j < sample.points.size(); ++j) {
    if (sample.betas[j] < 0) throw Error("beta must be nonnegative");
    v.beta_sum += sample.betas[j];
    for (std::size_t i = 0; i < n; ++i) combo[i] += sample.betas[j] * sample.points[j][i];
  }
  v.hypothesis = std::all_of(combo.begin(), combo.end(), [&](const Rational& c) { return c <= t_star; });
  if (v.hypothesis) {
    v.unit_ok = v.beta_sum <= 1;
    v.face_ok = v.beta_sum <= face.sigma_tau / sigma;
  }
  return v;
}

namespace {

Rational random_fraction(std::mt19937_64& rng, std::int64_t max_numerator, std::int64_t denominator) {
  std::uniform_int_distribution<std::int64_t> dist(0, max_numerator);
  return Rational(dist(rng), denominator);
}

}  // namespace

ConvexityResult convexity_sampler(const FaceLattice& lattice, int face_id, int trials, std::uint64_t seed) {
  if (trials < 1) throw Error("trials must be positive");
  const Face& face = lattice.face(face_id);
  const auto& P = lattice.polyhedron();
  const auto n = static_cast<std::size_t>(lattice.dimension());
  const Rational& t_star = lattice.sigma().t_star;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> count_dist(1, 3);

  ConvexityResult result;
  result.trials = trials;
  for (int trial = 0; trial < trials; ++trial) {
    ConvexitySample sample;
    const int count = count_dist(rng);
    for (int j = 0; j < count; ++j) {
      // Convex combination of the face's vertices plus recession directions.
      std::vector<Rational> weights;
      Rational weight_sum = 0;
      for (std::size_t v = 0; v < face.vertex_ids.size(); ++v) {
        weights.push_back(random_fraction(rng, 16, 1) + 1);
        weight_sum += weights.back();
      }
      std::vector<Rational> point(n, Rational(0));
      for (std::size_t v = 0; v < face.vertex_ids.size(); ++v) {
        const auto& vertex = P.vertices()[static_cast<std::size_t>(face.vertex_ids[v])];
        for (std::size_t i = 0; i < n; ++i) point[i] += weights[v] / weight_sum * vertex[i];
      }
      for (int axis : face.recession_axes) point[static_cast<std::size_t>(axis)] += random_fraction(rng, 32, 16);
      sample.points.push_back(std::move(point));
      sample.betas.push_back(random_fraction(rng, 64, 64));
    }

    // Rescale the weights so the combination lands at a random fraction (up
    // to 5/4) of the largest scale that still meets the hypothesis.
    std::vector<Rational> combo(n, Rational(0));
    for (std::size_t j = 0; j < sample.points.size(); ++j) {
      for (std::size_t i = 0; i < n; ++i) combo[i] += sample.betas[j] * sample.points[j][i];
    }
    std::optional<Rational> max_scale;
    for (const auto& c : combo) {
      if (c > 0 && (!max_scale || t_star / c < *max_scale)) max_scale = t_star / c;
    }
    if (max_scale) {
      const Rational u = random_fraction(rng, 80, 64);
      for (auto& b : sample.betas) b *= *max_scale * u;
    }

    const ConvexityVerdict v = check_convexity(lattice, face_id, sample);
    if (!v.hypothesis) continue;
    ++result.accepted;
    if ((!v.unit_ok || !v.face_ok) && result.pass) {
      result.pass = false;
      result.counterexample = std::move(sample);
    }
  }
  if (result.accepted < trials / 10) {
    throw DegenerateSampling("only " + std::to_string(result.accepted) + " of " + std::to_string(trials) +
                             " samples met the hypothesis");
  }
  return result;
}

double RatioTable::median_ratio() const {
  std::vector<double> values;
  for (const auto& r : rows) {
    if (r.computed && r.nondegenerate) values.push_back(r.ratio_kappa);
  }
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  if (values.size() % 2 == 1) return values[mid];
  return 0.5 * (values[mid - 1] + values[mid]);
}

RatioTable bound_ratio_table(const FaceLattice& lattice, std::span<const std::uint64_t> primes,
                             std::span<const std::int64_t> powers, const KernelOptions& options, double ceiling) {
  const Polynomial& f = lattice.polyhedron().source();
  RatioTable table;
  table.homogeneous = homogeneity(f).has_value();
  table.sigma = lattice.sigma().sigma;
  table.kappa = lattice.sigma().kappa;
  table.ceiling = ceiling;
  if (!table.homogeneous) table.findings.push_back("hypothesis unmet: f is not homogeneous");
  const double sigma = to_double(table.sigma);
  const int n = lattice.dimension();

  for (auto p : primes) {
    bool nondegenerate = false;
    std::string nondeg_note;
    try {
      nondegenerate = check_nondegenerate_mod_p(f, lattice.faces(), p, options).all_pass();
    } catch (const WorkBudgetExceeded& e) {
      nondeg_note = e.what();
    }
    for (auto m : powers) {
      RatioRow row;
      row.p = p;
      row.m = m;
      row.nondegenerate = nondegenerate;
      row.note = nondeg_note;
      try {
        const SumValue s = brute_force_S(f, p, static_cast<int>(m), options);
        row.computed = true;
        row.abs_S = std::abs(s.value);
        row.budget = s.abs_error_budget;
        const double md = static_cast<double>(m);
        const double scale = std::pow(static_cast<double>(p), sigma * md);
        row.ratio_kappa = row.abs_S * scale / std::pow(md, table.kappa - 1);
        row.ratio_n = row.abs_S * scale / std::pow(md, n - 1);
        row.exceeds_ceiling = row.ratio_kappa > ceiling;
        if (row.exceeds_ceiling) {
          table.findings.push_back("ratio " + std::to_string(row.ratio_kappa) + " at p=" + std::to_string(p) +
                                   ", m=" + std::to_string(m) + " exceeds the ceiling");
        }
        table.estimated_c = std::max(table.estimated_c, row.ratio_kappa);
      } catch (const WorkBudgetExceeded& e) {
        row.note = e.what();
      }
      table.rows.push_back(std::move(row));
    }
  }
  return table;
}

DecayFit e_decay_fit(const FaceLattice& lattice, int face_id, std::span<const std::uint64_t> primes,
                     const KernelOptions& options) {
  const Face& face = lattice.face(face_id);
  DecayFit fit;
  fit.face_id = face_id;
  fit.sigma_tau = face.sigma_tau;
  fit.sigma_exponent = -face.sigma_tau;
  fit.dim_exponent = -Rational(face.dim + 1, 2);

  std::vector<double> xs, ys;
  for (auto p : primes) {
    DecaySample sample;
    sample.p = p;
    const auto nondeg = check_nondegenerate_mod_p(lattice.polyhedron().source(), std::span(&face, 1), p, options);
    const SumValue e = torus_E(face.restriction, p, options);
    sample.abs_E = std::abs(e.value);
    sample.budget = e.abs_error_budget;
    if (!nondeg.all_pass()) {
      sample.note = "f_tau degenerate mod p";
    } else if (sample.abs_E < 10.0 * sample.budget) {
      sample.note = "|E| below ten times its error budget";
    } else {
      sample.used = true;
      xs.push_back(static_cast<double>(p));
      ys.push_back(std::log(sample.abs_E));
    }
    fit.samples.push_back(std::move(sample));
  }
  if (xs.size() < 3) {
    throw InsufficientPrimes("decay fit needs at least 3 usable primes, got " + std::to_string(xs.size()));
  }

  const auto rows = static_cast<Eigen::Index>(xs.size());
  Eigen::VectorXd y(rows);
  Eigen::MatrixXd plain(rows, 2);
  Eigen::MatrixXd corrected(rows, 3);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const double p = xs[static_cast<std::size_t>(i)];
    y(i) = ys[static_cast<std::size_t>(i)];
    plain(i, 0) = 1.0;
    plain(i, 1) = std::log(p);
    corrected(i, 0) = 1.0;
    corrected(i, 1) = std::log(p);
    corrected(i, 2) = 1.0 / p;
  }
  fit.plain_slope = plain.colPivHouseholderQr().solve(y)(1);
  fit.corrected = xs.size() >= 4;
  fit.fitted_exponent = fit.corrected ? corrected.colPivHouseholderQr().solve(y)(1) : fit.plain_slope;
  return fit;
}

bool check_sigma_dim_bound(const FaceLattice& lattice, int d) {
  const auto degree = homogeneity(lattice.polyhedron().source());
  if (!degree || *degree < 2) throw HypothesisUnmet("sigma bound needs f homogeneous of degree >= 2");
  return lattice.sigma().sigma <= Rational(lattice.dimension() - d, 2);
}

}  // namespace toricsum
