#include "toricsum/cli.hpp"

#include "toricsum/bounds.hpp"
#include "toricsum/errors.hpp"
#include "toricsum/faceformula.hpp"
#include "toricsum/newton.hpp"
#include "toricsum/report.hpp"
#include "toricsum/sums.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace toricsum::cli {

namespace {

using report::Json;

std::int64_t parse_int(std::string_view text) {
  std::size_t used = 0;
  const std::string s(text);
  long long v = 0;
  try {
    v = std::stoll(s, &used);
  } catch (const std::exception&) {
    throw Error("invalid integer '" + s + "'");
  }
  if (used != s.size()) throw Error("invalid integer '" + s + "'");
  return v;
}

std::string format_complex(std::complex<double> z) {
  std::ostringstream out;
  out << std::setprecision(15) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return out.str();
}

std::string format_double(double x) {
  std::ostringstream out;
  out << std::setprecision(6) << x;
  return out.str();
}

std::vector<std::int64_t> default_powers(const Polynomial& f, std::uint64_t p, std::uint64_t budget) {
  std::vector<std::int64_t> out;
  for (int m = 1; m <= 64; ++m) {
    if (std::pow(static_cast<double>(p), static_cast<double>(m) * f.dimension()) > static_cast<double>(budget)) break;
    out.push_back(m);
  }
  return out;
}

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (auto p = lo; p <= hi; ++p) {
    if (is_prime(p)) out.push_back(p);
  }
  return out;
}

KernelOptions kernel_options(const RunConfig& c) {
  KernelOptions o;
  o.workers = c.workers;
  o.work_budget = c.budget;
  return o;
}

Limits limits_for(const RunConfig&) { return Limits{}; }

struct Outcome {
  int code = kOk;
  Json json;
  std::string text;
};

void require_primes(const RunConfig& c) {
  if (c.primes.empty()) throw Error("command '" + c.command + "' needs --prime or --primes");
}

Outcome cmd_analyze(const RunConfig&, const FaceLattice& lattice) {
  Outcome o;
  o.json = report::analysis_json(lattice);
  std::ostringstream t;
  const auto& s = lattice.sigma();
  t << "f = " << render(lattice.polyhedron().source()) << "  (n = " << lattice.dimension() << ")\n";
  t << "vertices:";
  for (const auto& v : lattice.polyhedron().vertices()) {
    t << " (";
    for (std::size_t i = 0; i < v.size(); ++i) t << (i ? "," : "") << v[i];
    t << ")";
  }
  t << "\nfacets:\n";
  for (const auto& f : lattice.polyhedron().facets()) {
    t << "  (";
    for (std::size_t i = 0; i < f.normal.size(); ++i) t << (i ? "," : "") << f.normal[i];
    t << ") . x >= " << f.offset << "\n";
  }
  t << "sigma = " << to_string(s.sigma) << ", kappa = " << s.kappa << ", F0 = face " << lattice.f0_id()
    << " (dim " << s.f0_dim << ")\n";
  t << "faces (" << lattice.faces().size() << "):\n";
  for (const auto& face : lattice.faces()) {
    t << "  #" << face.id << " dim " << face.dim << "  sigma_tau " << to_string(face.sigma_tau) << "  f_tau = "
      << render(face.restriction) << "\n";
  }
  o.text = t.str();
  return o;
}

Outcome cmd_nondeg(const RunConfig& c, const FaceLattice& lattice) {
  require_primes(c);
  Outcome o;
  o.json = Json::array();
  std::ostringstream t;
  for (auto p : c.primes) {
    const auto rep = check_nondegenerate_mod_p(lattice.polyhedron().source(), lattice.faces(), p, kernel_options(c));
    o.json.push_back(report::nondeg_json(lattice, rep));
    t << "p = " << p << ": " << (rep.all_pass() ? "nondegenerate on every face" : "degenerate") << "\n";
    for (const auto& f : rep.faces) {
      if (f.pass) continue;
      t << "  face #" << f.face_id << " (" << render(lattice.face(f.face_id).restriction) << ") critical at (";
      for (std::size_t i = 0; i < f.witness->size(); ++i) t << (i ? "," : "") << (*f.witness)[i];
      t << ")\n";
    }
  }
  o.text = t.str();
  return o;
}

Outcome cmd_sum(const RunConfig& c, const Polynomial& f) {
  require_primes(c);
  if (c.powers.empty()) throw Error("command 'sum' needs --power or --powers");
  Outcome o;
  o.json = Json::array();
  std::ostringstream t;
  for (auto p : c.primes) {
    for (auto m : c.powers) {
      const SumValue s = brute_force_S(f, p, static_cast<int>(m), kernel_options(c));
      Json row = report::sum_json(s);
      row["p"] = p;
      row["m"] = m;
      o.json.push_back(std::move(row));
      t << "S(" << p << "^" << m << ") = " << format_complex(s.value) << "   |S| = " << format_double(std::abs(s.value))
        << "   budget " << format_double(s.abs_error_budget) << "\n";
    }
  }
  o.text = t.str();
  return o;
}

Outcome cmd_esum(const RunConfig& c, const FaceLattice& lattice) {
  require_primes(c);
  const int face_id = c.face_id.value_or(lattice.whole_id());
  const Face& face = lattice.face(face_id);
  Outcome o;
  o.json = Json::array();
  std::ostringstream t;
  t << "f_tau = " << render(face.restriction) << " (face #" << face_id << ")\n";
  for (auto p : c.primes) {
    const SumValue s = torus_E(face.restriction, p, kernel_options(c));
    Json row = report::sum_json(s);
    row["p"] = p;
    row["face_id"] = face_id;
    o.json.push_back(std::move(row));
    t << "E(" << p << ") = " << format_complex(s.value) << "   |E| = " << format_double(std::abs(s.value)) << "\n";
  }
  o.text = t.str();
  return o;
}

Outcome cmd_verify_formula(const RunConfig& c, const FaceLattice& lattice) {
  require_primes(c);
  Outcome o;
  o.json = Json::array();
  std::vector<FormulaReport> all;
  bool failed = false;
  bool budget = false;
  for (auto p : c.primes) {
    const auto powers = c.powers.empty() ? default_powers(lattice.polyhedron().source(), p, c.budget) : c.powers;
    for (auto& row : verify_formula(lattice, p, powers, c.eps, kernel_options(c))) {
      failed |= row.verdict == Verdict::kFail;
      budget |= row.verdict == Verdict::kBudgetExceeded;
      o.json.push_back(report::formula_row_json(row));
      all.push_back(std::move(row));
    }
  }
  std::ostringstream t;
  for (const auto& r : all) {
    t << "p=" << r.p << " m=" << r.m << "  " << to_string(r.verdict);
    if (r.lhs && r.rhs) {
      t << "  lhs " << format_complex(r.lhs->value) << "  rhs " << format_complex(r.rhs->value) << "  |diff| "
        << format_double(r.residual()) << " <= tol " << format_double(r.certified_tolerance);
    }
    t << "  (T=" << r.truncation_T << ")";
    if (!r.note.empty()) t << "  " << r.note;
    t << "\n";
  }
  o.text = t.str();
  if (c.format == Format::kCsv) o.text = report::formula_csv(all);
  o.code = failed ? kAssertionFailed : (budget ? kUsageError : kOk);
  return o;
}

Outcome cmd_verify_nu(const RunConfig& c, const FaceLattice& lattice) {
  const std::int64_t T = c.T.value_or(30);
  const NuCheckResult result = check_nu_inequality(lattice, T);
  Json convexity = Json::array();
  bool convexity_ok = true;
  for (const auto& face : lattice.faces()) {
    const auto r = convexity_sampler(lattice, face.id, c.trials, c.seed + static_cast<std::uint64_t>(face.id));
    convexity_ok &= r.pass;
    Json entry = report::convexity_json(r);
    entry["face_id"] = face.id;
    convexity.push_back(std::move(entry));
  }
  Outcome o;
  o.json = report::nu_check_json(result);
  o.json["convexity"] = convexity;
  std::ostringstream t;
  t << "checked " << result.points_checked << " lattice points with nu <= " << T << "\n";
  t << "lower bound nu >= sigma(N+1) - sigma(f_tau): " << result.violations.size() << " violations\n";
  t << "dimension-based bound nu >= sigma(N+1) - (dim+1)/2: " << result.dim_findings.size()
    << " violations (finding; F0 " << (result.f0_avoids_unit_cube ? "avoids" : "has a vertex in") << " {0,1}^n)\n";
  for (std::size_t i = 0; i < std::min<std::size_t>(result.dim_findings.size(), 5); ++i) {
    const auto& r = result.dim_findings[i];
    t << "  k = (";
    for (std::size_t j = 0; j < r.k.size(); ++j) t << (j ? "," : "") << r.k[j];
    t << "): nu = " << r.nu << " < " << to_string(r.rhs_face_dim) << "\n";
  }
  t << "convexity sampling: " << (convexity_ok ? "pass" : "FAIL") << "\n";
  o.text = t.str();
  if (c.format == Format::kCsv) o.text = report::nu_findings_csv(result);
  o.code = (result.violations.empty() && convexity_ok) ? kOk : kAssertionFailed;
  return o;
}

Outcome cmd_ratios(const RunConfig& c, const FaceLattice& lattice) {
  const std::vector<std::uint64_t> primes = c.primes.empty() ? primes_between(2, 13) : c.primes;
  const std::vector<std::int64_t> powers = c.powers.empty() ? std::vector<std::int64_t>{1, 2, 3, 4} : c.powers;
  const RatioTable table = bound_ratio_table(lattice, primes, powers, kernel_options(c), c.ceiling);
  Outcome o;
  o.json = report::ratio_table_json(table);
  std::ostringstream t;
  if (!table.homogeneous) t << "note: f is not homogeneous; the bound's hypothesis is unmet\n";
  t << "sigma = " << to_string(table.sigma) << ", kappa = " << table.kappa << "\n";
  t << "   p   m          |S|    ratio_kappa    ratio_n\n";
  for (const auto& r : table.rows) {
    t << std::setw(4) << r.p << std::setw(4) << r.m;
    if (r.computed) {
      t << std::setw(13) << format_double(r.abs_S) << std::setw(13) << format_double(r.ratio_kappa) << std::setw(13)
        << format_double(r.ratio_n) << (r.nondegenerate ? "" : "  (degenerate mod p)");
    } else {
      t << "  skipped: " << r.note;
    }
    t << "\n";
  }
  t << "estimated c = " << format_double(table.estimated_c) << ", median ratio = " << format_double(table.median_ratio())
    << "\n";
  for (const auto& f : table.findings) t << "finding: " << f << "\n";
  o.text = t.str();
  if (c.format == Format::kCsv) o.text = report::ratio_table_csv(table);
  return o;
}

Outcome cmd_edecay(const RunConfig& c, const FaceLattice& lattice) {
  const std::vector<std::uint64_t> primes = c.primes.empty() ? primes_between(3, 31) : c.primes;
  const int face_id = c.face_id.value_or(lattice.f0_id());
  const DecayFit fit = e_decay_fit(lattice, face_id, primes, kernel_options(c));
  Outcome o;
  o.json = report::decay_fit_json(fit);
  std::ostringstream t;
  t << "face #" << face_id << ": f_tau = " << render(lattice.face(face_id).restriction) << "\n";
  for (const auto& s : fit.samples) {
    t << "  p = " << std::setw(3) << s.p << "  |E| = " << format_double(s.abs_E) << (s.used ? "" : "  (skipped: " + s.note + ")")
      << "\n";
  }
  t << "fitted exponent " << format_double(fit.fitted_exponent) << (fit.corrected ? " (with 1/p correction)" : "")
    << ", plain slope " << format_double(fit.plain_slope) << "\n";
  t << "-sigma(f_tau) = " << to_string(fit.sigma_exponent) << ", -(dim+1)/2 = " << to_string(fit.dim_exponent) << "\n";
  o.text = t.str();
  return o;
}

Outcome cmd_sigma_bound(const RunConfig& c, const FaceLattice& lattice) {
  if (!c.critical_dim) throw Error("command 'sigma-bound' needs --d");
  const int d = *c.critical_dim;
  const bool holds = check_sigma_dim_bound(lattice, d);
  const Rational bound(lattice.dimension() - d, 2);
  Outcome o;
  o.json = Json{{"sigma", to_string(lattice.sigma().sigma)}, {"d", d}, {"bound", to_string(bound)}, {"holds", holds}};
  if (!holds) o.json["finding"] = "sigma exceeds (n-d)/2: the supplied d is inconsistent or a hypothesis fails";
  o.text = "sigma = " + to_string(lattice.sigma().sigma) + " <= (n-d)/2 = " + to_string(bound) + ": " +
           (holds ? "holds" : "does not hold (finding)") + "\n";
  return o;
}

}  // namespace

std::vector<std::int64_t> parse_int_list(std::string_view text) {
  std::vector<std::int64_t> out;
  if (auto dots = text.find(".."); dots != std::string_view::npos) {
    const auto lo = parse_int(text.substr(0, dots));
    const auto hi = parse_int(text.substr(dots + 2));
    if (hi < lo) throw Error("empty range '" + std::string(text) + "'");
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  }
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto piece = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    out.push_back(parse_int(piece));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::uint64_t> parse_prime_list(std::string_view text) {
  std::vector<std::uint64_t> out;
  const bool range = text.find("..") != std::string_view::npos;
  for (auto v : parse_int_list(text)) {
    if (v < 2) {
      if (range) continue;
      throw Error(std::to_string(v) + " is not prime");
    }
    const auto p = static_cast<std::uint64_t>(v);
    if (!is_prime(p)) {
      if (range) continue;
      throw Error(std::to_string(p) + " is not prime");
    }
    out.push_back(p);
  }
  return out;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  Outcome outcome;
  try {
    const Polynomial f = parse_polynomial(config.polynomial, config.dimension);
    const auto& cmd = config.command;
    if (cmd == "sum") {
      outcome = cmd_sum(config, f);
    } else {
      const FaceLattice lattice(f, limits_for(config));
      if (config.face_id && (*config.face_id < 0 || *config.face_id >= static_cast<int>(lattice.faces().size()))) {
        throw Error("face id out of range");
      }
      if (cmd == "analyze") outcome = cmd_analyze(config, lattice);
      else if (cmd == "nondeg") outcome = cmd_nondeg(config, lattice);
      else if (cmd == "esum") outcome = cmd_esum(config, lattice);
      else if (cmd == "verify-formula") outcome = cmd_verify_formula(config, lattice);
      else if (cmd == "verify-nu") outcome = cmd_verify_nu(config, lattice);
      else if (cmd == "ratios") outcome = cmd_ratios(config, lattice);
      else if (cmd == "edecay") outcome = cmd_edecay(config, lattice);
      else if (cmd == "sigma-bound") outcome = cmd_sigma_bound(config, lattice);
      else throw Error("unknown command '" + cmd + "'");
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }

  std::string payload;
  if (config.format == Format::kJson) {
    Json doc{{"command", config.command}, {"polynomial", config.polynomial}, {"exit_code", outcome.code}};
    doc["report"] = outcome.json;
    payload = doc.dump(2) + "\n";
  } else {
    payload = outcome.text;
  }
  if (config.out_file) {
    std::ofstream file(*config.out_file);
    if (!file) {
      err << "error: cannot write " << *config.out_file << "\n";
      return kUsageError;
    }
    file << payload;
  } else {
    out << payload;
  }
  return outcome.code;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Newton polyhedra, p-adic exponential sums and face-decomposition checks"};
  app.require_subcommand(1);

  RunConfig config;
  std::vector<std::string> prime_args, primes_args, power_args, powers_args;
  std::string eps_text;
  bool json = false, csv = false;
  std::string out_file;
  int dimension = 0, face = -1, critical_dim = -1;
  std::int64_t T = -1;

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"analyze", "Newton polyhedron, faces, sigma, kappa and sigma(f_tau)"},
      {"nondeg", "mod-p nondegeneracy of every face restriction"},
      {"sum", "S_f(p^m) by direct summation"},
      {"esum", "torus sum E(p, f_tau) of a face (default: the whole polyhedron)"},
      {"verify-formula", "compare S_f(p^m) with the face-decomposition formula"},
      {"verify-nu", "exact check of the lower bound for nu(k) and the convexity lemma"},
      {"ratios", "table of |S| p^{sigma m} / m^{kappa-1}"},
      {"edecay", "decay exponent of |E(p, f_tau)| in p"},
      {"sigma-bound", "check sigma(f) <= (n-d)/2 for a supplied d"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("polynomial", config.polynomial, "polynomial, e.g. \"x*y + z*u\"")->required();
    sub->add_option("-p,--prime", prime_args, "prime (repeatable)");
    sub->add_option("--primes", primes_args, "primes: 3,5,7 or a range 3..31");
    sub->add_option("-m,--power", power_args, "power m (repeatable)");
    sub->add_option("--powers", powers_args, "powers: a..b or a,b,c");
    sub->add_option("--eps", eps_text, "truncation tolerance (default 1e-8)");
    sub->add_option("--T", T, "lattice bound for verify-nu (default 30)");
    sub->add_option("--budget", config.budget, "evaluation budget per sum (default 2e8)");
    sub->add_option("--workers", config.workers, "worker threads (default: all cores)");
    sub->add_flag("--json", json, "JSON output");
    sub->add_flag("--csv", csv, "CSV output");
    sub->add_option("--out", out_file, "write the report to FILE");
    sub->add_option("--seed", config.seed, "random seed");
    sub->add_option("--dim", dimension, "number of variables (default: highest index used)");
    sub->add_option("--face", face, "face id");
    sub->add_option("--d", critical_dim, "critical-locus dimension for sigma-bound");
    sub->add_option("--trials", config.trials, "convexity samples per face");
    sub->add_option("--ceiling", config.ceiling, "ratio ceiling for findings");
  }

  try {
    std::vector<std::string> args;
    for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    const auto subs = app.get_subcommands();
    err << (subs.empty() ? app.help() : subs.front()->help());
    return kUsageError;
  }

  try {
    config.command = app.get_subcommands().front()->get_name();
    for (const auto& a : prime_args) for (auto p : parse_prime_list(a)) config.primes.push_back(p);
    for (const auto& a : primes_args) for (auto p : parse_prime_list(a)) config.primes.push_back(p);
    for (const auto& a : power_args) for (auto m : parse_int_list(a)) config.powers.push_back(m);
    for (const auto& a : powers_args) for (auto m : parse_int_list(a)) config.powers.push_back(m);
    for (auto m : config.powers) {
      if (m < 1) throw Error("powers must be positive");
    }
    if (!eps_text.empty()) {
      config.eps = parse_rational(eps_text);
      if (config.eps <= 0) throw Error("--eps must be positive");
    }
    if (T >= 0) config.T = T;
    if (dimension > 0) config.dimension = dimension;
    if (face >= 0) config.face_id = face;
    if (critical_dim >= 0) config.critical_dim = critical_dim;
    if (json && csv) throw Error("--json and --csv are exclusive");
    config.format = json ? Format::kJson : (csv ? Format::kCsv : Format::kHuman);
    if (!out_file.empty()) config.out_file = out_file;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsageError;
  }
  return run(config, out, err);
}

}  // namespace toricsum::cli
