#pragma once

// Exact incremental double description for polyhedra of the form
// conv(points) + R_+^n. Internal to the newton module.

#include "toricsum/numeric.hpp"
#include "toricsum/poly.hpp"

#include <vector>

namespace toricsum::detail {

struct HalfSpace {
  std::vector<BigInt> normal;  // primitive, componentwise >= 0, nonzero
  BigInt offset;               // normal . x >= offset
};

/// Irredundant H-representation of conv(points) + R_+^n.
std::vector<HalfSpace> orthant_hull_facets(const std::vector<ExponentVector>& points, int n);

/// Rank of an exact rational matrix given by rows.
int rank(std::vector<std::vector<Rational>> rows);

}  // namespace toricsum::detail
