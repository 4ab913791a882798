#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "odeinv/errors.hpp"
#include "odeinv/groebner.hpp"
#include "odeinv/poly_matrix.hpp"
#include "support.hpp"

using namespace odeinv;
using namespace odeinv::testing;

namespace {

OdeSystem ode(const std::string& text, std::size_t n = 2) {
  VarTable t = xyz(n);
  return parse_ode(text, t);
}

PolyMatrix random_matrix(std::mt19937_64& rng, std::size_t m, std::size_t nvars) {
  std::vector<Polynomial> e;
  for (std::size_t i = 0; i < m * m; ++i) e.push_back(random_poly(rng, nvars, 2, 2));
  return PolyMatrix(m, m, e);
}

}  // namespace

TEST_CASE("lie derivative of the running example") {
  OdeSystem a = alpha_e();
  Polynomial lp = lie_derivative(poly("v^2-u^2+9/2", a), a);
  CHECK(lp == poly("4*u*v + 1/2*(1-u^2-v^2)*(v^2-u^2)", a));
  CHECK(lie_derivative(poly("1-u^2-v^2", a), a) == poly("-1/2*(u^2+v^2)*(1-u^2-v^2)", a));
  CHECK(lie_derivative(poly("17/3", a), a).is_zero());
}

TEST_CASE("lie derivative basics") {
  OdeSystem rot = ode("x' = y, y' = -x");
  CHECK(lie_derivative(poly("x^2+y^2", rot), rot).is_zero());
  OdeSystem swap = ode("x' = y, y' = x");
  CHECK(higher_lie(poly("x", swap), swap, 0) == poly("x", swap));
  CHECK(higher_lie(poly("x", swap), swap, 2) == poly("x", swap));
  CHECK(higher_lie(poly("3", swap), swap, 5).is_zero());
  auto chain = lie_chain(poly("x", swap), swap, 3);
  REQUIRE(chain.size() == 3);
  CHECK(chain[1] == poly("y", swap));
}

TEST_CASE("parameters do not evolve") {
  VarTable t({"x", "k"});
  OdeSystem s = parse_ode("x' = k*x", t);
  CHECK(s.evolves(0));
  CHECK_FALSE(s.evolves(1));
  CHECK(lie_derivative(poly("k*x", s), s) == poly("k^2*x", s));
}

TEST_CASE("system validation") {
  VarTable t = xyz(2);
  CHECK_THROWS_AS(OdeSystem(t, {}), Error);
  CHECK_THROWS_AS(parse_ode("x' = 1, x' = 2", t), Error);
  CHECK_THROWS_AS(parse_ode("x' = 1/y", t), NonPolynomialError);
  CHECK(alpha_e().to_string().find("u' = ") == 0);
}

TEST_CASE("reverse") {
  OdeSystem clock = ode("x' = 1", 1);
  CHECK(reverse(clock) == ode("x' = -1", 1));
  OdeSystem a = alpha_e();
  CHECK(reverse(reverse(a)) == a);
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    OdeSystem s = random_ode(rng, 3);
    Polynomial p = random_poly(rng, 3, 3, 4);
    REQUIRE(lie_derivative(p, reverse(s)) == -lie_derivative(p, s));
  }
}

TEST_CASE("lie derivative rules") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 500; ++i) {
    OdeSystem s = random_ode(rng, 3);
    Polynomial p = random_poly(rng, 3, 3, 3), q = random_poly(rng, 3, 3, 3);
    REQUIRE(lie_derivative(p * q, s) == lie_derivative(p, s) * q + p * lie_derivative(q, s));
    REQUIRE(lie_derivative(p + q, s) == lie_derivative(p, s) + lie_derivative(q, s));
    REQUIRE(lie_derivative(p * Rational(-5, 3), s) == lie_derivative(p, s) * Rational(-5, 3));
  }
}

TEST_CASE("powers of p stay in the ideal of p") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 30; ++i) {
    OdeSystem s = random_ode(rng, 2);
    Polynomial p = random_nonzero_poly(rng, 2, 2, 3);
    for (unsigned k = 1; k <= 4; ++k) {
      auto chain = lie_chain(p.pow(k), s, k);
      for (const auto& q : chain) {
        auto w = member_with_witness(q, {p});
        REQUIRE(w);
        REQUIRE(w->cofactors[0] * p == q);
      }
    }
  }
}

TEST_CASE("ghost extension") {
  OdeSystem clock = ode("x' = 1", 1);
  Polynomial g = poly("x^2", clock);
  GhostSpec spec{{"y"}, PolyMatrix(1, 1, {-g}), {Polynomial::constant(1, 0)}};
  OdeSystem ext = extend_with_ghosts(clock, spec);
  CHECK(ext.dimension() == 2);
  CHECK(ext.equations()[1].rhs == poly("-x^2*y", ext));

  GhostSpec still{{"y"}, PolyMatrix(1, 1, 1), {Polynomial::constant(1, 0)}};
  CHECK(extend_with_ghosts(clock, still).equations()[1].rhs.is_zero());

  GhostSpec clash{{"x"}, PolyMatrix(1, 1, 1), {Polynomial::constant(1, 0)}};
  CHECK_THROWS_AS(extend_with_ghosts(clock, clash), NameCollisionError);
  GhostSpec bad_dims{{"y"}, PolyMatrix(2, 2, 1), {Polynomial::constant(1, 0)}};
  CHECK_THROWS(extend_with_ghosts(clock, bad_dims));

  OdeSystem a = alpha_e();
  PolyMatrix gm(2, 2, {poly("u", a), poly("1", a), poly("v^2", a), poly("0", a)});
  GhostSpec ms = matrix_ghost_spec(gm, a);
  CHECK(ms.new_vars == std::vector<std::string>{"_gh0", "_gh1", "_gh2", "_gh3"});
  OdeSystem big = extend_with_ghosts(a, ms);
  CHECK(big.dimension() == 6);
  CHECK(big.num_vars() == 6);
}

TEST_CASE("liouville examples") {
  OdeSystem clock = ode("x' = 1", 1);
  CHECK(liouville_check(PolyMatrix(1, 1, {poly("x^2-3", clock)}), clock));
  CHECK(liouville_check(PolyMatrix::identity(3, 1), clock));
  OdeSystem a = alpha_e();
  CHECK(liouville_check(PolyMatrix(2, 2, {poly("u*v", a), poly("1-u", a), poly("v^2", a), poly("2", a)}), a));
}

TEST_CASE("liouville property on random matrices") {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 20; ++i) {
    OdeSystem s = random_ode(rng, 2);
    std::size_t m = 1 + i % 3;
    REQUIRE(liouville_check(random_matrix(rng, m, 2), s));
  }
}
