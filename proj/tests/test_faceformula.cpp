#include "oracles.hpp"
#include "toricsum/faceformula.hpp"
#include "toricsum/errors.hpp"

#include <doctest.h>

using namespace toricsum;

namespace {

int face_with_axes(const FaceLattice& L, std::vector<int> axes, int dim) {
  for (const auto& f : L.faces()) {
    if (f.recession_axes == axes && f.dim == dim) return f.id;
  }
  FAIL("face not found");
  return -1;
}

const Rational kEps(1, 100'000'000);

// (1/p)^e as an exact rational.
Rational inv_pow(std::uint64_t p, std::int64_t e) { return Rational(BigInt(1), ipow(p, static_cast<std::uint64_t>(e))); }

}  // namespace

TEST_SUITE("faceformula") {

TEST_CASE("tail is total mass minus the enumerated partial sum") {
  for (int n = 1; n <= 4; ++n) {
    for (std::uint64_t p : {2, 3, 7}) {
      CHECK(total_lattice_mass(n, p) == Rational(ipow(p, n), ipow(p - 1, n)));
      for (std::int64_t T : {0, 1, 5, 12}) {
        Rational partial = 0;
        for (std::int64_t s = 0; s <= T; ++s) partial += Rational(binomial(s + n - 1, n - 1)) * inv_pow(p, s);
        CHECK(truncation_tail(n, p, T) == total_lattice_mass(n, p) - partial);
        CHECK(truncation_tail(n, p, T) > 0);
      }
    }
  }
}

TEST_CASE("truncation is the smallest T meeting eps") {
  for (int n = 1; n <= 4; ++n) {
    for (std::uint64_t p : {2, 3, 13}) {
      const auto T = choose_truncation(n, p, kEps);
      CHECK(truncation_tail(n, p, T) <= kEps);
      if (T > 0) CHECK(truncation_tail(n, p, T - 1) > kEps);
    }
  }
}

TEST_CASE("cone sums of xy at p=3") {
  const FaceLattice L(parse_polynomial("x*y"));
  const ConeSums cs(L, 3, kEps);
  const int vertex = L.f0_id();
  // Every k >= (1,1) lies over the vertex with N = nu >= 2.
  CHECK(abs(cs.A(vertex, 2) - Rational(1, 4)) <= cs.tail());
  CHECK(cs.B(vertex, 2) == 0);
  const int edge = face_with_axes(L, {1}, 1);  // k = (k1, 0)
  CHECK(abs(cs.A(edge, 2) - Rational(1, 6)) <= cs.tail());
  CHECK(cs.B(edge, 2) == Rational(1, 3));
  const int whole = L.whole_id();
  CHECK(cs.A(whole, 1) == 0);
  CHECK(cs.B(whole, 1) == 1);
  CHECK(cs.B(whole, 2) == 0);
}

TEST_CASE("cone sums match closed-form geometric series") {
  // For xy: vertex fiber k >= (1,1), N = nu; edges k = (j,0) and (0,j), N = j.
  const FaceLattice L(parse_polynomial("x*y"));
  for (std::uint64_t p : {2, 3, 5, 11}) {
    const ConeSums cs(L, p, kEps);
    const Rational r(1, p);
    for (std::int64_t m = 1; m <= 5; ++m) {
      // Sum over nu >= max(m,2) of (nu-1) r^nu.
      Rational vertex_A = 0;
      const std::int64_t lo = std::max<std::int64_t>(m, 2);
      const Rational q = 1 - r;
      // sum_{nu>=lo} (nu-1) r^nu = r^lo ((lo-1)/q + r/q^2)
      vertex_A = inv_pow(p, lo) * (Rational(lo - 1) / q + r / (q * q));
      CHECK(abs(cs.A(L.f0_id(), m) - vertex_A) <= cs.tail());
      const Rational edge_A = inv_pow(p, m) / q;
      const Rational edge_B = m >= 2 ? inv_pow(p, m - 1) : Rational(0);
      for (int axis : {0, 1}) {
        const int edge = face_with_axes(L, {axis}, 1);
        CHECK(abs(cs.A(edge, m) - edge_A) <= cs.tail());
        CHECK(cs.B(edge, m) == edge_B);
      }
      const Rational vertex_B = m >= 3 ? Rational(m - 2) * inv_pow(p, m - 1) : Rational(0);
      CHECK(cs.B(L.f0_id(), m) == vertex_B);
    }
  }
}

TEST_CASE("mass identity on random polynomials") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 4;
    const FaceLattice L(oracle::random_polynomial(rng, n, 6, 4));
    for (std::uint64_t p : {2, 5}) {
      for (std::int64_t T : {3, 8}) {
        const ConeSums cs(L, p, T);
        Rational mass = cs.tail();
        for (const auto& f : L.faces()) mass += cs.A(f.id, 0);
        CHECK(mass == total_lattice_mass(n, p));
      }
    }
  }
}

TEST_CASE("A is nonincreasing in m and B vanishes below the fiber minimum") {
  const FaceLattice L(parse_polynomial("x*y + z*u + x*z + 2*y*u"));
  const ConeSums cs(L, 3, std::int64_t{10});
  for (const auto& f : L.faces()) {
    const auto lo = cs.min_N(f.id);
    for (std::int64_t m = 1; m <= 8; ++m) {
      CHECK(cs.A(f.id, m + 1) <= cs.A(f.id, m));
      CHECK(cs.A(f.id, m) >= 0);
      CHECK(cs.A(f.id, m) <= total_lattice_mass(4, 3));
      if (!lo || m - 1 < *lo) CHECK(cs.B(f.id, m) == 0);
    }
  }
}

TEST_CASE("cone_sums wrapper reports the shared tail") {
  const FaceLattice L(parse_polynomial("x*y"));
  const auto rows = cone_sums(L, 3, 2, kEps);
  CHECK(rows.size() == L.faces().size());
  for (const auto& r : rows) {
    CHECK(r.tail <= kEps);
    CHECK(r.m == 2);
    CHECK(r.truncation_T == choose_truncation(2, 3, kEps));
  }
}

TEST_CASE("hand instance: both sides are 1/9") {
  // eps = 1e-8 certifies only 2e-8 on the right side; 1e-9 needs a finer truncation.
  const FaceLattice L(parse_polynomial("x*y"));
  const auto rhs = rhs_assembly(L, 3, 2, Rational(1, 100'000'000'000LL));
  CHECK(rhs.abs_error_budget <= 1e-9);
  CHECK(std::abs(rhs.value - 1.0 / 9) <= 1e-9);
  const auto lhs = brute_force_S(L.polyhedron().source(), 3, 2);
  CHECK(std::abs(lhs.value - 1.0 / 9) <= 1e-9);
}

TEST_CASE("right side budget covers the residual as eps shrinks") {
  const FaceLattice L(parse_polynomial("x*y + z*u"));
  const auto lhs = brute_force_S(L.polyhedron().source(), 3, 1);
  double previous = 1;
  for (int digits : {2, 4, 6, 8, 10}) {
    const Rational eps(BigInt(1), ipow(10, digits));
    const auto rhs = rhs_assembly(L, 3, 1, eps);
    const double residual = std::abs(lhs.value - rhs.value);
    CHECK(residual <= rhs.abs_error_budget + lhs.abs_error_budget);
    CHECK(residual <= previous);
    previous = residual;
  }
  CHECK(previous < 1e-9);
}

TEST_CASE("verify_formula examples") {
  const std::int64_t powers[] = {1, 2, 3};
  const FaceLattice xy(parse_polynomial("x*y"));
  for (const auto& r : verify_formula(xy, 3, powers, kEps)) CHECK(r.verdict == Verdict::kPass);

  const FaceLattice cusp(parse_polynomial("x^2 + y^3"));
  const std::int64_t two[] = {2};
  const auto at3 = verify_formula(cusp, 3, two, kEps);
  REQUIRE(at3.size() == 1);
  CHECK(at3[0].verdict == Verdict::kNotApplicable);
  for (const auto& r : verify_formula(cusp, 7, powers, kEps)) CHECK(r.verdict == Verdict::kPass);

  const FaceLattice quad(parse_polynomial("x*y + z*u"));
  for (const auto& r : verify_formula(quad, 3, powers, kEps)) {
    CHECK(r.verdict == Verdict::kPass);
    CHECK(r.residual() <= r.certified_tolerance);
  }
}

TEST_CASE("over-budget rows do not abort the scan") {
  const FaceLattice L(parse_polynomial("x*y"));
  KernelOptions o;
  o.work_budget = 1000;
  const std::int64_t powers[] = {1, 2, 3, 4};
  const auto rows = verify_formula(L, 5, powers, kEps, o);
  REQUIRE(rows.size() == 4);
  CHECK(rows[0].verdict == Verdict::kPass);
  CHECK(rows[3].verdict == Verdict::kBudgetExceeded);
}

TEST_CASE("decay constants stay bounded in m") {
  const FaceLattice L(parse_polynomial("x*y + z*u"));
  const ConeSums cs(L, 5, kEps);
  const std::int64_t powers[] = {1, 2, 3, 4, 5, 6};
  for (const auto& c : cone_decay_constants(L, cs, powers)) {
    CHECK(std::isfinite(c.a_constant));
    CHECK(std::isfinite(c.b_constant));
    CHECK(c.a_constant < 50);
    CHECK(c.b_constant < 50);
  }
}

}
