#include "toricsum/faceformula.hpp"

#include "toricsum/errors.hpp"

#include <algorithm>
#include <cmath>

namespace toricsum {

Rational total_lattice_mass(int n, std::uint64_t p) {
  // (1 - 1/p)^{-n} = (p/(p-1))^n
  return Rational(ipow(p, static_cast<std::uint64_t>(n)), ipow(p - 1, static_cast<std::uint64_t>(n)));
}

Rational truncation_tail(int n, std::uint64_t p, std::int64_t T) {
  const auto dims = static_cast<std::uint64_t>(n);
  BigInt numerator = 0;  // sum_{s<=T} C(s+n-1, n-1) p^{T-s}
  for (std::int64_t s = 0; s <= T; ++s) {
    numerator += binomial(static_cast<std::uint64_t>(s) + dims - 1, dims - 1) *
                 ipow(p, static_cast<std::uint64_t>(T - s));
  }
  return total_lattice_mass(n, p) - Rational(numerator, ipow(p, static_cast<std::uint64_t>(T)));
}

std::int64_t choose_truncation(int n, std::uint64_t p, const Rational& eps) {
  if (eps <= 0) throw Error("eps must be positive");
  if (p < 2) throw Error("p must be at least 2");
  const auto dims = static_cast<std::uint64_t>(n);
  const Rational total = total_lattice_mass(n, p);
  Rational partial = 0;
  Rational weight = 1;  // p^{-s}
  for (std::int64_t T = 0;; ++T) {
    partial += Rational(binomial(static_cast<std::uint64_t>(T) + dims - 1, dims - 1)) * weight;
    if (total - partial <= eps) return T;
    weight /= p;
    if (T > 100000) throw Error("truncation search did not terminate");
  }
}

ConeSums::ConeSums(const FaceLattice& lattice, std::uint64_t p, const Rational& eps)
    : ConeSums(lattice, p, choose_truncation(lattice.dimension(), p, eps)) {}

ConeSums::ConeSums(const FaceLattice& lattice, std::uint64_t p, std::int64_t truncation)
    : p_(p), truncation_(truncation), tail_(truncation_tail(lattice.dimension(), p, truncation)) {
  if (p < 2) throw Error("p must be at least 2");
  powers_.reserve(static_cast<std::size_t>(truncation) + 1);
  BigInt power = 1;
  for (std::int64_t j = 0; j <= truncation; ++j) {
    powers_.push_back(power);
    power *= p;
  }
  accumulate(lattice);
}

void ConeSums::accumulate(const FaceLattice& lattice) {
  histograms_.assign(lattice.faces().size(), {});
  enumerate_lattice_points(lattice, truncation_, [&](std::span<const std::int64_t>, const FaceLattice::Classified& c) {
    ++histograms_[static_cast<std::size_t>(c.face_id)][{c.nu, c.N}];
  });
}

Rational ConeSums::weigh(int face_id, const std::function<bool(std::int64_t)>& select_N) const {
  BigInt numerator = 0;  // over p^T
  for (const auto& [cell, count] : histograms_.at(static_cast<std::size_t>(face_id))) {
    if (!select_N(cell.second)) continue;
    numerator += powers_[static_cast<std::size_t>(truncation_ - cell.first)] * count;
  }
  return Rational(numerator, powers_.back());
}

Rational ConeSums::A(int face_id, std::int64_t m) const {
  return weigh(face_id, [m](std::int64_t N) { return N >= m; });
}

Rational ConeSums::B(int face_id, std::int64_t m) const {
  return weigh(face_id, [m](std::int64_t N) { return N == m - 1; });
}

std::optional<std::int64_t> ConeSums::min_N(int face_id) const {
  std::optional<std::int64_t> best;
  for (const auto& [cell, count] : histograms_.at(static_cast<std::size_t>(face_id))) {
    if (!best || cell.second < *best) best = cell.second;
  }
  return best;
}

std::vector<ConeSumResult> cone_sums(const FaceLattice& lattice, std::uint64_t p, std::int64_t m,
                                     const Rational& eps) {
  const ConeSums cones(lattice, p, eps);
  std::vector<ConeSumResult> out;
  for (const auto& face : lattice.faces()) {
    out.push_back({face.id, m, cones.A(face.id, m), cones.B(face.id, m), cones.truncation(), cones.tail()});
  }
  return out;
}

SumValue rhs_assembly(const FaceLattice& lattice, const ConeSums& cones, std::span<const SumValue> torus_sums,
                      std::int64_t m, const Rational& eps) {
  const auto& faces = lattice.faces();
  if (torus_sums.size() != faces.size()) throw Error("one torus sum per face is required");
  const std::uint64_t p = cones.prime();
  const int n = lattice.dimension();

  Rational a_total = 0;
  std::complex<double> eb_total = 0.0;
  double e_budget = 0.0;
  double max_e = 0.0;
  for (const auto& face : faces) {
    a_total += cones.A(face.id, m);
    const Rational b = cones.B(face.id, m);
    const SumValue& e = torus_sums[static_cast<std::size_t>(face.id)];
    max_e = std::max(max_e, std::abs(e.value) + e.abs_error_budget);
    if (b == 0) continue;
    const double bd = to_double(b);
    eb_total += e.value * bd;
    e_budget += bd * e.abs_error_budget;
  }
  const Rational scale_exact = 1 / total_lattice_mass(n, p);  // (1-1/p)^n
  const double scale = to_double(scale_exact);

  SumValue out;
  out.value = to_double(scale_exact * a_total) + scale * eb_total;
  out.term_count = faces.size();
  const double truncation = scale * to_double(eps) * (1.0 + max_e);
  const double rounding = kTermErrorScale * (4.0 * static_cast<double>(faces.size()) + 16.0);
  out.abs_error_budget = truncation + scale * e_budget + rounding;
  return out;
}

SumValue rhs_assembly(const FaceLattice& lattice, std::uint64_t p, std::int64_t m, const Rational& eps,
                      const KernelOptions& options) {
  const ConeSums cones(lattice, p, eps);
  std::vector<SumValue> torus;
  for (const auto& face : lattice.faces()) torus.push_back(torus_E(face.restriction, p, options));
  return rhs_assembly(lattice, cones, torus, m, eps);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "pass";
    case Verdict::kFail:
      return "fail";
    case Verdict::kNotApplicable:
      return "not-applicable";
    case Verdict::kBudgetExceeded:
      return "budget-exceeded";
  }
  return "unknown";
}

double FormulaReport::residual() const {
  if (!lhs || !rhs) return std::nan("");
  return std::abs(lhs->value - rhs->value);
}

std::vector<FormulaReport> verify_formula(const FaceLattice& lattice, std::uint64_t p,
                                          std::span<const std::int64_t> powers, const Rational& eps,
                                          const KernelOptions& options) {
  if (!is_prime(p)) throw Error(std::to_string(p) + " is not prime");
  const Polynomial& f = lattice.polyhedron().source();
  std::vector<FormulaReport> rows;

  auto budget_rows = [&](const std::string& note) {
    for (auto m : powers) {
      FormulaReport row;
      row.p = p;
      row.m = m;
      row.verdict = Verdict::kBudgetExceeded;
      row.note = note;
      rows.push_back(std::move(row));
    }
    return rows;
  };

  NondegReport nondeg;
  std::optional<ConeSums> cones;
  std::vector<SumValue> torus;
  try {
    nondeg = check_nondegenerate_mod_p(f, lattice.faces(), p, options);
    cones.emplace(lattice, p, eps);
    for (const auto& face : lattice.faces()) torus.push_back(torus_E(face.restriction, p, options));
  } catch (const WorkBudgetExceeded& e) {
    return budget_rows(e.what());
  } catch (const BudgetExceeded& e) {
    return budget_rows(e.what());
  }
  const bool applicable = nondeg.all_pass();

  for (auto m : powers) {
    FormulaReport row;
    row.p = p;
    row.m = m;
    row.nondeg = nondeg;
    row.truncation_T = cones->truncation();
    row.tail = cones->tail();
    row.rhs = rhs_assembly(lattice, *cones, torus, m, eps);
    try {
      row.lhs = brute_force_S(f, p, static_cast<int>(m), options);
    } catch (const WorkBudgetExceeded& e) {
      row.note = e.what();
    }
    if (row.lhs) row.certified_tolerance = row.lhs->abs_error_budget + row.rhs->abs_error_budget;
    if (!applicable) {
      row.verdict = Verdict::kNotApplicable;
      row.note = "some face restriction has a torus critical point mod p";
    } else if (!row.lhs) {
      row.verdict = Verdict::kBudgetExceeded;
    } else {
      row.verdict = row.residual() <= row.certified_tolerance ? Verdict::kPass : Verdict::kFail;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ConeDecayConstants> cone_decay_constants(const FaceLattice& lattice, const ConeSums& cones,
                                                     std::span<const std::int64_t> powers) {
  const double sigma = to_double(lattice.sigma().sigma);
  const int kappa = lattice.sigma().kappa;
  const auto p = static_cast<double>(cones.prime());
  std::vector<ConeDecayConstants> out;
  for (const auto& face : lattice.faces()) {
    ConeDecayConstants c;
    c.face_id = face.id;
    const double sigma_tau = to_double(face.sigma_tau);
    for (auto m : powers) {
      if (m < 1) continue;
      const double md = static_cast<double>(m);
      const double growth = std::pow(md, kappa - 1);
      c.a_constant = std::max(c.a_constant, to_double(cones.A(face.id, m)) * std::pow(p, md * sigma) / growth);
      c.b_constant = std::max(c.b_constant,
                              to_double(cones.B(face.id, m)) * std::pow(p, md * sigma - sigma_tau) / growth);
    }
    out.push_back(c);
  }
  return out;
}

}  // namespace toricsum
