#include "toricsum/report.hpp"

#include <cmath>
#include <sstream>

namespace toricsum::report {

namespace {

Json vector_json(std::span<const std::int64_t> v) {
  Json out = Json::array();
  for (auto x : v) out.push_back(x);
  return out;
}

Json one_based(const std::vector<int>& ids) {
  Json out = Json::array();
  for (auto i : ids) out.push_back(i + 1);
  return out;
}

Json finite_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

std::string k_text(const std::vector<std::int64_t>& k) {
  std::string out = "(";
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(k[i]);
  }
  return out + ")";
}

}  // namespace

Json complex_json(std::complex<double> z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json sum_json(const SumValue& s) {
  return Json{{"value", complex_json(s.value)},
              {"abs", std::abs(s.value)},
              {"budget", s.abs_error_budget},
              {"terms", s.term_count}};
}

Json face_json(const FaceLattice& lattice, const Face& face) {
  Json vertices = Json::array();
  for (int v : face.vertex_ids) vertices.push_back(vector_json(lattice.polyhedron().vertices()[static_cast<std::size_t>(v)]));
  return Json{{"id", face.id},
              {"dim", face.dim},
              {"vertices", vertices},
              {"recession_axes", one_based(face.recession_axes)},
              {"active_facets", face.active_facet_ids},
              {"witness", vector_json(face.witness)},
              {"sigma_tau", to_string(face.sigma_tau)},
              {"restriction", render(face.restriction)}};
}

Json analysis_json(const FaceLattice& lattice) {
  const auto& P = lattice.polyhedron();
  const auto& s = lattice.sigma();
  Json vertices = Json::array();
  for (const auto& v : P.vertices()) vertices.push_back(vector_json(v));
  Json facets = Json::array();
  for (const auto& f : P.facets()) facets.push_back(Json{{"normal", vector_json(f.normal)}, {"offset", f.offset}});
  Json faces = Json::array();
  for (const auto& face : lattice.faces()) faces.push_back(face_json(lattice, face));
  const auto degree = homogeneity(P.source());
  return Json{{"polynomial", render(P.source())},
              {"n", lattice.dimension()},
              {"homogeneous_degree", degree ? Json(*degree) : Json(nullptr)},
              {"vertices", vertices},
              {"facets", facets},
              {"sigma", to_string(s.sigma)},
              {"t_star", to_string(s.t_star)},
              {"kappa", s.kappa},
              {"f0", Json{{"face_id", lattice.f0_id()}, {"dim", s.f0_dim}}},
              {"faces", faces}};
}

Json nondeg_json(const FaceLattice& lattice, const NondegReport& report) {
  Json faces = Json::array();
  for (const auto& f : report.faces) {
    Json entry{{"face_id", f.face_id},
               {"restriction", render(lattice.face(f.face_id).restriction)},
               {"pass", f.pass}};
    if (f.witness) entry["witness"] = *f.witness;
    faces.push_back(std::move(entry));
  }
  return Json{{"p", report.prime}, {"all_pass", report.all_pass()}, {"faces", faces}};
}

Json formula_row_json(const FormulaReport& row) {
  Json out{{"p", row.p}, {"m", row.m}};
  out["lhs"] = row.lhs ? complex_json(row.lhs->value) : Json(nullptr);
  out["rhs"] = row.rhs ? complex_json(row.rhs->value) : Json(nullptr);
  out["tol"] = row.certified_tolerance;
  out["residual"] = finite_or_null(row.residual());
  out["verdict"] = to_string(row.verdict);
  out["T"] = row.truncation_T;
  out["tail"] = to_string(row.tail);
  if (!row.note.empty()) out["note"] = row.note;
  return out;
}

Json nu_record_json(const NuCheckRecord& r) {
  return Json{{"k", vector_json(r.k)},
              {"face_id", r.face_id},
              {"nu", r.nu},
              {"N", r.N},
              {"rhs_face_sigma", to_string(r.rhs_face_sigma)},
              {"rhs_face_dim", to_string(r.rhs_face_dim)},
              {"face_sigma_ok", r.face_sigma_ok},
              {"face_dim_ok", r.face_dim_ok}};
}

Json nu_check_json(const NuCheckResult& result) {
  Json hard = Json::array();
  for (const auto& r : result.violations) hard.push_back(nu_record_json(r));
  Json soft = Json::array();
  for (const auto& r : result.dim_findings) soft.push_back(nu_record_json(r));
  return Json{{"T", result.T},
              {"points_checked", result.points_checked},
              {"f0_avoids_unit_cube", result.f0_avoids_unit_cube},
              {"violations", hard},
              {"dim_findings", soft}};
}

Json convexity_json(const ConvexityResult& result) {
  Json out{{"pass", result.pass}, {"trials", result.trials}, {"accepted", result.accepted}};
  if (result.counterexample) {
    Json points = Json::array();
    for (const auto& p : result.counterexample->points) {
      Json row = Json::array();
      for (const auto& x : p) row.push_back(to_string(x));
      points.push_back(row);
    }
    Json betas = Json::array();
    for (const auto& b : result.counterexample->betas) betas.push_back(to_string(b));
    out["counterexample"] = Json{{"points", points}, {"betas", betas}};
  }
  return out;
}

Json ratio_table_json(const RatioTable& table) {
  Json rows = Json::array();
  for (const auto& r : table.rows) {
    Json row{{"p", r.p}, {"m", r.m}, {"computed", r.computed}, {"nondegenerate", r.nondegenerate}};
    if (r.computed) {
      row["abs_S"] = r.abs_S;
      row["budget"] = r.budget;
      row["ratio_kappa"] = r.ratio_kappa;
      row["ratio_n"] = r.ratio_n;
      row["exceeds_ceiling"] = r.exceeds_ceiling;
    }
    if (!r.note.empty()) row["note"] = r.note;
    rows.push_back(std::move(row));
  }
  return Json{{"homogeneous", table.homogeneous},
              {"sigma", to_string(table.sigma)},
              {"kappa", table.kappa},
              {"ceiling", table.ceiling},
              {"estimated_c", table.estimated_c},
              {"median_ratio", table.median_ratio()},
              {"rows", rows},
              {"findings", table.findings}};
}

Json decay_fit_json(const DecayFit& fit) {
  Json samples = Json::array();
  for (const auto& s : fit.samples) {
    Json row{{"p", s.p}, {"abs_E", s.abs_E}, {"budget", s.budget}, {"used", s.used}};
    if (!s.note.empty()) row["note"] = s.note;
    samples.push_back(std::move(row));
  }
  return Json{{"face_id", fit.face_id},
              {"fitted_exponent", fit.fitted_exponent},
              {"plain_slope", fit.plain_slope},
              {"corrected", fit.corrected},
              {"sigma_tau", to_string(fit.sigma_tau)},
              {"sigma_exponent", to_string(fit.sigma_exponent)},
              {"dim_exponent", to_string(fit.dim_exponent)},
              {"samples", samples}};
}

std::string ratio_table_csv(const RatioTable& table) {
  std::ostringstream out;
  out.precision(17);
  out << "p,m,computed,nondegenerate,abs_S,budget,ratio_kappa,ratio_n,exceeds_ceiling\n";
  for (const auto& r : table.rows) {
    out << r.p << ',' << r.m << ',' << (r.computed ? 1 : 0) << ',' << (r.nondegenerate ? 1 : 0) << ',';
    if (r.computed) {
      out << r.abs_S << ',' << r.budget << ',' << r.ratio_kappa << ',' << r.ratio_n << ','
          << (r.exceeds_ceiling ? 1 : 0);
    } else {
      out << ",,,,";
    }
    out << '\n';
  }
  return out.str();
}

std::string nu_findings_csv(const NuCheckResult& result) {
  std::ostringstream out;
  out << "kind,k,face_id,nu,N,rhs_face_sigma,rhs_face_dim\n";
  auto emit = [&](const char* kind, const NuCheckRecord& r) {
    out << kind << ',' << k_text(r.k) << ',' << r.face_id << ',' << r.nu << ',' << r.N << ','
        << to_string(r.rhs_face_sigma) << ',' << to_string(r.rhs_face_dim) << '\n';
  };
  for (const auto& r : result.violations) emit("violation", r);
  for (const auto& r : result.dim_findings) emit("dim_finding", r);
  return out.str();
}

std::string formula_csv(const std::vector<FormulaReport>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "p,m,lhs_re,lhs_im,rhs_re,rhs_im,tol,verdict,T,tail\n";
  for (const auto& r : rows) {
    out << r.p << ',' << r.m << ',';
    if (r.lhs) out << r.lhs->value.real() << ',' << r.lhs->value.imag() << ',';
    else out << ",,";
    if (r.rhs) out << r.rhs->value.real() << ',' << r.rhs->value.imag() << ',';
    else out << ",,";
    out << r.certified_tolerance << ',' << to_string(r.verdict) << ',' << r.truncation_T << ',' << to_string(r.tail)
        << '\n';
  }
  return out.str();
}

}  // namespace toricsum::report
