#pragma once

// Machine-readable reports. Rationals are written as "num/den" strings;
// variable and axis indices are 1-based. See docs/report-schema.md.

#include "toricsum/bounds.hpp"
#include "toricsum/faceformula.hpp"
#include "toricsum/newton.hpp"
#include "toricsum/sums.hpp"

#include <json.hpp>

#include <string>

namespace toricsum::report {

using Json = nlohmann::ordered_json;

Json complex_json(std::complex<double> z);
Json sum_json(const SumValue& s);
Json face_json(const FaceLattice& lattice, const Face& face);
Json analysis_json(const FaceLattice& lattice);
Json nondeg_json(const FaceLattice& lattice, const NondegReport& report);
Json formula_row_json(const FormulaReport& row);
Json nu_record_json(const NuCheckRecord& r);
Json nu_check_json(const NuCheckResult& result);
Json convexity_json(const ConvexityResult& result);
Json ratio_table_json(const RatioTable& table);
Json decay_fit_json(const DecayFit& fit);

std::string ratio_table_csv(const RatioTable& table);
std::string nu_findings_csv(const NuCheckResult& result);
std::string formula_csv(const std::vector<FormulaReport>& rows);

}  // namespace toricsum::report
