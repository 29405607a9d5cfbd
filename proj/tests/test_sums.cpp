#include "oracles.hpp"
#include "toricsum/errors.hpp"
#include "toricsum/newton.hpp"
#include "toricsum/sums.hpp"

#include <doctest.h>

using namespace toricsum;

namespace {

double dist(std::complex<double> a, std::complex<double> b) { return std::abs(a - b); }

KernelOptions with(KernelOptions::Accumulation mode, unsigned workers = 1) {
  KernelOptions o;
  o.accumulation = mode;
  o.workers = workers;
  return o;
}

}  // namespace

TEST_SUITE("sums") {

TEST_CASE("linear sums vanish") {
  for (std::uint64_t p : {2, 3, 5, 7}) {
    for (int m = 1; m <= 3; ++m) {
      const auto s = brute_force_S(parse_polynomial("x"), p, m);
      CHECK(std::abs(s.value) <= s.abs_error_budget);
      CHECK(s.term_count == static_cast<std::uint64_t>(std::pow(p, m)));
    }
  }
}

TEST_CASE("S of xy is p^-m") {
  for (std::uint64_t p : {2, 3, 5}) {
    for (int m = 1; m <= 3; ++m) {
      const auto s = brute_force_S(parse_polynomial("x*y"), p, m);
      CHECK(dist(s.value, std::pow(static_cast<double>(p), -m)) <= s.abs_error_budget);
    }
  }
  CHECK(dist(brute_force_S(parse_polynomial("x*y"), 5, 2).value, 1.0 / 25) < 1e-12);
  CHECK(dist(brute_force_S(parse_polynomial("x*y"), 3, 2).value, 1.0 / 9) < 1e-12);
}

TEST_CASE("torus sums from the examples") {
  CHECK(dist(torus_E(parse_polynomial("x*y"), 3).value, -0.5) < 1e-12);
  for (std::uint64_t p : {3, 5, 7, 11}) {
    const double expected = 1.0 / static_cast<double>((p - 1) * (p - 1));
    CHECK(dist(torus_E(parse_polynomial("x*y + z*u"), p).value, expected) < 1e-12);
  }
  CHECK(dist(torus_E(parse_polynomial("y^3", 2), 5).value, -0.25) < 1e-12);
}

TEST_CASE("kernels agree with the naive polar sum") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 3;
    const auto f = oracle::random_polynomial(rng, n, 4, 5, 100);
    const std::uint64_t primes[] = {2, 3, 5, 7};
    const std::uint64_t p = primes[trial % 4];
    const int m = 1 + trial % 2;
    const auto q = static_cast<std::int64_t>(std::pow(p, m));
    if (std::pow(q, n) > 1e5) continue;
    INFO(render(f), " p=", p, " m=", m);
    const auto ref_S = oracle::naive_sum(f, q, 0);
    const auto ref_E = oracle::naive_sum(f, static_cast<std::int64_t>(p), 1);
    for (auto mode : {KernelOptions::Accumulation::kHistogram, KernelOptions::Accumulation::kDirect}) {
      CHECK(dist(brute_force_S(f, p, m, with(mode)).value, ref_S) < 1e-12);
      CHECK(dist(torus_E(f, p, with(mode)).value, ref_E) < 1e-12);
    }
  }
}

TEST_CASE("torus sums match an independent double loop on small grids") {
  const char* polys[] = {"x*y", "x^2 + y^3", "x*y + z*u", "x*y + z*u + x*z + 2*y*u", "x^3 + y^3 + z^3",
                         "x^2*y - 3*y^4 + x*y^5"};
  for (const char* text : polys) {
    const auto f = parse_polynomial(text);
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17}) {
      if (std::pow(p - 1, f.dimension()) > 1e5) continue;
      CHECK(dist(torus_E(f, p).value, oracle::naive_sum(f, static_cast<std::int64_t>(p), 1)) < 1e-12);
    }
  }
}

TEST_CASE("budget invariants and bound on |S|") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 30; ++trial) {
    const auto f = oracle::random_polynomial(rng, 1 + trial % 3, 5, 4, 50);
    const auto s = brute_force_S(f, 3, 2);
    CHECK(s.abs_error_budget >= s.term_count * kTermErrorScale);
    CHECK(std::abs(s.value) <= 1 + s.abs_error_budget);
  }
}

TEST_CASE("permuting variables leaves S unchanged") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f = oracle::random_polynomial(rng, 3, 5, 3, 20);
    Polynomial::Terms swapped;
    for (const auto& [e, c] : f.terms()) swapped[{e[2], e[0], e[1]}] = c;
    const Polynomial g(3, swapped);
    const auto a = brute_force_S(f, 5, 1);
    const auto b = brute_force_S(g, 5, 1);
    CHECK(dist(a.value, b.value) <= a.abs_error_budget + b.abs_error_budget);
  }
}

TEST_CASE("adding p^m g does not change S") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2;
    const std::uint64_t p = trial % 2 ? 3 : 5;
    const int m = 2;
    const auto f = oracle::random_polynomial(rng, n, 4, 4, 30);
    const auto g = oracle::random_polynomial(rng, n, 4, 4, 30);
    Polynomial::Terms sum = f.terms();
    const BigInt q = static_cast<std::int64_t>(p * p);
    for (const auto& [e, c] : g.terms()) sum[e] += q * c;
    std::erase_if(sum, [](const auto& kv) { return kv.second == 0; });
    const Polynomial h(n, sum);
    const auto a = brute_force_S(f, p, m);
    const auto b = brute_force_S(h, p, m);
    CHECK(a.value == b.value);
  }
}

TEST_CASE("parallel and serial runs agree within the budget") {
  const auto f = parse_polynomial("x^3 + 2*x*y^2 - y*z + 5*z^4");
  for (auto mode : {KernelOptions::Accumulation::kHistogram, KernelOptions::Accumulation::kDirect}) {
    const auto serial = brute_force_S(f, 7, 2, with(mode, 1));
    for (unsigned w : {2U, 3U, 4U, 7U}) {
      const auto par = brute_force_S(f, 7, 2, with(mode, w));
      CHECK(dist(serial.value, par.value) <= serial.abs_error_budget + par.abs_error_budget);
      // A fixed worker count is reproducible.
      CHECK(par.value == brute_force_S(f, 7, 2, with(mode, w)).value);
    }
  }
}

TEST_CASE("large moduli use the split root table") {
  // q = 2^23 exceeds the full table size.
  const auto f = parse_polynomial("x^2");
  const auto s = brute_force_S(f, 2, 23);
  // For odd k the quadratic Gauss sum mod 2^k has absolute value 2^{(k+1)/2}.
  CHECK(std::abs(std::abs(s.value) - std::pow(2.0, -11)) <= 1e-9);
}

TEST_CASE("work budget is enforced before computing") {
  KernelOptions o;
  o.work_budget = 1000;
  try {
    brute_force_S(parse_polynomial("x*y"), 101, 1, o);
    FAIL("expected a budget error");
  } catch (const WorkBudgetExceeded& e) {
    CHECK(e.estimated() == doctest::Approx(10201));
  }
  CHECK_THROWS_AS(torus_E(parse_polynomial("x*y"), 101, o), WorkBudgetExceeded);
}

TEST_CASE("primality") {
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(1));
  CHECK(is_prime(2));
  CHECK(is_prime(13));
  CHECK_FALSE(is_prime(91));
  CHECK(is_prime(1'000'000'007));
  CHECK_FALSE(is_prime(1'000'000'007ULL * 3));
}

TEST_CASE("nondegeneracy scans") {
  const FaceLattice xy(parse_polynomial("x*y"));
  CHECK(check_nondegenerate_mod_p(xy.polyhedron().source(), xy.faces(), 3).all_pass());

  const FaceLattice cusp(parse_polynomial("x^2 + y^3"));
  const auto at5 = check_nondegenerate_mod_p(cusp.polyhedron().source(), cusp.faces(), 5);
  CHECK(at5.all_pass());
  const auto at3 = check_nondegenerate_mod_p(cusp.polyhedron().source(), cusp.faces(), 3);
  CHECK_FALSE(at3.all_pass());
  for (const auto& r : at3.faces) {
    if (r.pass) continue;
    REQUIRE(r.witness);
    const auto grad = gradient(cusp.face(r.face_id).restriction);
    for (const auto& g : grad) CHECK(eval_mod(g, *r.witness, 3) == 0);
    for (auto v : *r.witness) CHECK(v != 0);
  }

  const FaceLattice quad(parse_polynomial("x*y + z*u"));
  CHECK(check_nondegenerate_mod_p(quad.polyhedron().source(), quad.faces(), 3).all_pass());
  // Cubic Fermat surface degenerates at 3 only.
  const FaceLattice cubic(parse_polynomial("x^3 + y^3 + z^3"));
  CHECK_FALSE(check_nondegenerate_mod_p(cubic.polyhedron().source(), cubic.faces(), 3).all_pass());
  CHECK(check_nondegenerate_mod_p(cubic.polyhedron().source(), cubic.faces(), 7).all_pass());
}

TEST_CASE("nondegeneracy agrees with a direct scan") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 20; ++trial) {
    const FaceLattice L(oracle::random_polynomial(rng, 2, 4, 3, 6));
    const std::uint64_t p = trial % 2 ? 5 : 7;
    const auto rep = check_nondegenerate_mod_p(L.polyhedron().source(), L.faces(), p);
    for (const auto& r : rep.faces) {
      const auto grad = gradient(L.face(r.face_id).restriction);
      bool critical = false;
      for (std::uint64_t x = 1; x < p && !critical; ++x) {
        for (std::uint64_t y = 1; y < p && !critical; ++y) {
          const std::uint64_t pt[] = {x, y};
          critical = std::all_of(grad.begin(), grad.end(), [&](const Polynomial& g) {
            return g.is_zero() || eval_mod(g, pt, p) == 0;
          });
        }
      }
      CHECK(r.pass == !critical);
    }
  }
}

}
