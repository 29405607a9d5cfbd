#include "oracles.hpp"
#include "toricsum/errors.hpp"
#include "toricsum/poly.hpp"

#include <doctest.h>

using namespace toricsum;

TEST_SUITE("poly") {

TEST_CASE("parse a sum of two monomials") {
  const auto f = parse_polynomial("x*y + z*u");
  CHECK(f.dimension() == 4);
  const Polynomial::Terms expected{{{1, 1, 0, 0}, 1}, {{0, 0, 1, 1}, 1}};
  CHECK(f.terms() == expected);
}

TEST_CASE("like terms cancel") {
  const auto f = parse_polynomial("x1^2 - x1^2 + x2");
  CHECK(f.dimension() == 2);
  CHECK(f.terms() == Polynomial::Terms{{{0, 1}, 1}});
}

TEST_CASE("constant term and zero polynomial are rejected") {
  CHECK_THROWS_AS(parse_polynomial("x^2 + 3"), ConstantTermNonzero);
  CHECK_THROWS_AS(parse_polynomial("x - x"), ZeroPolynomial);
  CHECK_THROWS_AS(parse_polynomial("x + 1 - 1 + y - y - x"), ZeroPolynomial);
  // A constant that cancels is fine.
  CHECK(parse_polynomial("x + 2 - 2").term_count() == 1);
}

TEST_CASE("syntax errors carry a position") {
  try {
    parse_polynomial("x*y + *z");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 6);
  }
  CHECK_THROWS_AS(parse_polynomial("x^"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x0"), ParseError);
  CHECK_THROWS_AS(parse_polynomial("q"), ParseError);
  CHECK_THROWS_AS(parse_polynomial(""), ParseError);
}

TEST_CASE("grammar details") {
  CHECK(parse_polynomial("3xy") == parse_polynomial("3*x*y"));
  CHECK(parse_polynomial(" 2 * x ^ 3 ") == parse_polynomial("2x^3"));
  CHECK(parse_polynomial("-x + -y") == parse_polynomial("-x - y"));
  CHECK(parse_polynomial("x*x*y") == parse_polynomial("x^2*y"));
  CHECK(parse_polynomial("x7").dimension() == 7);
  CHECK(parse_polynomial("w").dimension() == 6);
  const auto big = parse_polynomial("123456789012345678901234567890*x");
  CHECK(big.terms().begin()->second == BigInt("123456789012345678901234567890"));
}

TEST_CASE("dimension hint") {
  CHECK(parse_polynomial("x", 3).dimension() == 3);
  CHECK_THROWS_AS(parse_polynomial("x*z", 2), ParseError);
}

TEST_CASE("render then parse is the identity") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    const auto f = oracle::random_polynomial(rng, n, 6, 4, 1000);
    INFO(render(f));
    CHECK(parse_polynomial(render(f), n) == f);
  }
  CHECK(render(parse_polynomial("z*u + x*y")) == "x*y + z*u");
  CHECK(render(parse_polynomial("x^2 - 3*y^3")) == "x^2 - 3*y^3");
}

TEST_CASE("face restriction selects terms") {
  const auto f = parse_polynomial("x*y + z*u");
  const auto xy = face_restriction(f, std::set<ExponentVector>{{1, 1, 0, 0}});
  REQUIRE(xy);
  CHECK(*xy == parse_polynomial("x*y", 4));
  CHECK_FALSE(face_restriction(parse_polynomial("x*y"), std::set<ExponentVector>{}));
  const auto y3 = face_restriction(parse_polynomial("x^2 + y^3"), [](const ExponentVector& e) { return e[0] == 0; });
  REQUIRE(y3);
  CHECK(*y3 == parse_polynomial("y^3", 2));
}

TEST_CASE("gradient") {
  auto g = gradient(parse_polynomial("x*y"));
  CHECK(g[0] == parse_polynomial("y", 2));
  CHECK(g[1] == Polynomial(2, {{{1, 0}, 1}}));
  g = gradient(parse_polynomial("x^2 + y^3"));
  CHECK(g[0] == Polynomial(2, {{{1, 0}, 2}}));
  CHECK(g[1] == Polynomial(2, {{{0, 2}, 3}}));
  for (int a : {-3, 2, 5}) {
    const auto f = parse_polynomial("x*y + z*u + x*z + " + std::to_string(a) + "*y*u");
    g = gradient(f);
    CHECK(g[0] == Polynomial(4, {{{0, 1, 0, 0}, 1}, {{0, 0, 1, 0}, 1}}));
    CHECK(g[1] == Polynomial(4, {{{1, 0, 0, 0}, 1}, {{0, 0, 0, 1}, a}}));
    CHECK(g[2] == Polynomial(4, {{{0, 0, 0, 1}, 1}, {{1, 0, 0, 0}, 1}}));
    CHECK(g[3] == Polynomial(4, {{{0, 0, 1, 0}, 1}, {{0, 1, 0, 0}, a}}));
  }
  // Constants are allowed in a gradient component.
  CHECK(gradient(parse_polynomial("x"))[0].has_constant_term());
}

TEST_CASE("gradient commutes with restriction to terms") {
  // d/dx_j of f_I equals the restriction of d f/dx_j to the shifted set I - e_j.
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 3;
    const auto f = oracle::random_polynomial(rng, n, 6, 3);
    std::set<ExponentVector> I;
    for (const auto& e : f.support()) {
      if (rng() % 2) I.insert(e);
    }
    const auto fI = face_restriction(f, I);
    const auto grad_f = gradient(f);
    for (int j = 0; j < n; ++j) {
      std::set<ExponentVector> shifted;
      for (auto e : I) {
        if (e[j] == 0) continue;
        --e[j];
        shifted.insert(e);
      }
      const auto lhs = fI ? gradient(*fI)[j] : Polynomial::zero(n);
      const auto rhs = face_restriction(grad_f[j], shifted).value_or(Polynomial::zero(n));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("eval_mod examples") {
  const std::uint64_t p1[] = {2, 3};
  CHECK(eval_mod(parse_polynomial("x*y"), p1, 9) == 6);
  const std::uint64_t p2[] = {2, 2};
  CHECK(eval_mod(parse_polynomial("x^2 + y^3"), p2, 5) == 2);
  const std::uint64_t p3[] = {1, 1, 1, 1};
  CHECK(eval_mod(parse_polynomial("x*y + z*u"), p3, 3) == 2);
}

TEST_CASE("eval_mod agrees with big-integer evaluation") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 1 + trial % 4;
    const auto f = oracle::random_polynomial(rng, n, 6, 7, 1'000'000'000);
    const std::uint64_t moduli[] = {2, 9, 125, 1'000'003, 4'294'967'311ULL, (1ULL << 62) + 135};
    const std::uint64_t q = moduli[trial % 6];
    std::vector<std::uint64_t> pt(static_cast<std::size_t>(n));
    std::vector<std::int64_t> pts(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      pt[i] = rng() % q;
      pts[i] = static_cast<std::int64_t>(pt[i]);
    }
    const auto expected = oracle::mod_of(oracle::evaluate(f, pts) % BigInt(q), static_cast<std::int64_t>(q));
    CHECK(eval_mod(f, pt, q) == static_cast<std::uint64_t>(expected));
    if (q < 200'000) {
      const ModEvaluator ev(f, q);
      CHECK(ev(pt) == static_cast<std::uint64_t>(expected));
    }
  }
}

TEST_CASE("homogeneity") {
  CHECK(homogeneity(parse_polynomial("x*y + z*u")) == 2);
  CHECK_FALSE(homogeneity(parse_polynomial("x^2 + y^3")));
  CHECK(homogeneity(parse_polynomial("x")) == 1);
}

TEST_CASE("modular helpers") {
  CHECK(mul_mod(UINT64_MAX - 1, UINT64_MAX - 1, UINT64_MAX) == 1);
  CHECK(pow_mod(3, 200, 1'000'000'007) == 136'318'165);
  CHECK(reduce_mod(BigInt(-7), 5) == 3);
  CHECK(reduce_mod(BigInt("-100000000000000000000000"), 7) ==
        static_cast<std::uint64_t>(oracle::mod_of(BigInt("-100000000000000000000000"), 7)));
}

}
