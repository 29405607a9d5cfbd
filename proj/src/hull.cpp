#include "hull.hpp"

#include "toricsum/errors.hpp"

#include <boost/dynamic_bitset.hpp>

#include <algorithm>
#include <numeric>

namespace toricsum::detail {

namespace {

using Vec = std::vector<BigInt>;

BigInt dot(const Vec& a, const Vec& b) {
  BigInt s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void make_primitive(Vec& v) {
  BigInt g = 0;
  for (const auto& x : v) g = boost::multiprecision::gcd(g, x);
  if (g > 1) {
    for (auto& x : v) x /= g;
  }
}

struct Ray {
  Vec y;
  boost::dynamic_bitset<> tight;  // processed constraints with G_c . y == 0
};

}  // namespace

// The homogenized cone C = cone{(1,s) : s in points} + cone{(0,e_i)} is
// full-dimensional in R^{n+1}. Its facets are the extreme rays of the dual
// cone {y : g.y >= 0 for every generator g}, computed here by adding one
// generator constraint at a time to an initial simplicial cone.
std::vector<HalfSpace> orthant_hull_facets(const std::vector<ExponentVector>& points, int n) {
  if (points.empty()) throw Error("empty point set");
  const auto d = static_cast<std::size_t>(n) + 1;

  std::vector<Vec> generators;
  auto homogenize = [&](const ExponentVector& s) {
    Vec g(d);
    g[0] = 1;
    for (std::size_t i = 0; i < s.size(); ++i) g[i + 1] = s[i];
    return g;
  };
  generators.push_back(homogenize(points.front()));
  for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
    Vec g(d, 0);
    g[i + 1] = 1;
    generators.push_back(std::move(g));
  }
  for (std::size_t i = 1; i < points.size(); ++i) generators.push_back(homogenize(points[i]));
  const std::size_t m = generators.size();

  // Initial cone from the first d generators: rays are the columns of
  // [[1, s0], [0, I]]^{-1} = [[1, -s0], [0, I]].
  std::vector<Ray> rays;
  {
    Vec r0(d, 0);
    r0[0] = 1;
    rays.push_back({r0, boost::dynamic_bitset<>(m)});
    for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
      Vec r(d, 0);
      r[0] = -BigInt(points.front()[i]);
      r[i + 1] = 1;
      rays.push_back({r, boost::dynamic_bitset<>(m)});
    }
    for (auto& r : rays) {
      for (std::size_t c = 0; c < d; ++c) {
        if (dot(generators[c], r.y) == 0) r.tight.set(c);
      }
    }
  }

  for (std::size_t c = d; c < m; ++c) {
    const Vec& g = generators[c];
    std::vector<BigInt> value(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      value[r] = dot(g, rays[r].y);
      if (value[r] > 0) {
        pos.push_back(r);
        next.push_back(rays[r]);
      } else if (value[r] == 0) {
        next.push_back(rays[r]);
        next.back().tight.set(c);
      } else {
        neg.push_back(r);
      }
    }
    for (auto a : pos) {
      for (auto b : neg) {
        const auto common = rays[a].tight & rays[b].tight;
        if (common.count() + 2 < d) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == a || r == b) continue;
          if (common.is_subset_of(rays[r].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        Vec y(d);
        const BigInt va = value[a];
        const BigInt vb = -value[b];
        for (std::size_t i = 0; i < d; ++i) y[i] = va * rays[b].y[i] + vb * rays[a].y[i];
        make_primitive(y);
        auto tight = common;
        tight.set(c);
        next.push_back({std::move(y), std::move(tight)});
      }
    }
    rays = std::move(next);
  }

  std::vector<HalfSpace> facets;
  for (auto& r : rays) {
    Vec normal(r.y.begin() + 1, r.y.end());
    if (std::all_of(normal.begin(), normal.end(), [](const BigInt& x) { return x == 0; })) {
      continue;  // the face at infinity of the homogenization
    }
    BigInt g = 0;
    for (const auto& x : normal) g = boost::multiprecision::gcd(g, x);
    BigInt offset = -r.y[0];
    if (offset % g != 0) throw Error("internal: facet offset not integral");
    for (auto& x : normal) x /= g;
    offset /= g;
    facets.push_back({std::move(normal), std::move(offset)});
  }
  std::sort(facets.begin(), facets.end(), [](const HalfSpace& a, const HalfSpace& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  });
  return facets;
}

int rank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  int r = 0;
  for (std::size_t col = 0; col < cols && r < static_cast<int>(rows.size()); ++col) {
    std::size_t pivot = static_cast<std::size_t>(r);
    while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[static_cast<std::size_t>(r)]);
    const auto& prow = rows[static_cast<std::size_t>(r)];
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < rows.size(); ++i) {
      if (rows[i][col] == 0) continue;
      const Rational factor = rows[i][col] / prow[col];
      for (std::size_t j = col; j < cols; ++j) rows[i][j] -= factor * prow[j];
    }
    ++r;
  }
  return r;
}

}  // namespace toricsum::detail
