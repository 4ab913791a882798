#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "odeinv/errors.hpp"
#include "odeinv/poly_matrix.hpp"
#include "odeinv/rational.hpp"
#include "support.hpp"

using namespace odeinv;
using namespace odeinv::testing;

namespace {

Polynomial P(const std::string& s, std::size_t n = 3) { return poly(s, xyz(n)); }

// Schoolbook product over the raw term lists, used as an independent oracle.
Polynomial naive_product(const Polynomial& a, const Polynomial& b) {
  std::vector<Polynomial::Term> out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) out.emplace_back(ma * mb, ca * cb);
  return Polynomial::from_terms(std::max(a.num_vars(), b.num_vars()), out);
}

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(*parse_rational("3") == 3);
  CHECK(*parse_rational("-7/14") == Rational(-1, 2));
  CHECK(*parse_rational("0.25") == Rational(1, 4));
  CHECK(*parse_rational("010") == 10);
  CHECK(*parse_rational("0.08") == Rational(2, 25));
  CHECK(*parse_rational("4.5") == Rational(9, 2));
  CHECK_FALSE(parse_rational("1/0"));
  CHECK_FALSE(parse_rational("abc"));
  CHECK(to_string(Rational(-3, 6)) == "-1/2");
  CHECK(*exact_sqrt(Rational(9, 4)) == Rational(3, 2));
  CHECK_FALSE(exact_sqrt(Rational(2)));
  CHECK_FALSE(exact_sqrt(Rational(-4)));
}

TEST_CASE("var table") {
  VarTable t({"x", "y"});
  CHECK(t.at("y") == 1);
  CHECK_THROWS_AS(t.add("x"), NameCollisionError);
  CHECK_THROWS_AS(t.at("q"), Error);
  CHECK(t.intern("z") == 2);
  CHECK(t.intern("z") == 2);
  t.add("_gh0");
  CHECK(t.fresh_name("_gh") == "_gh1");
}

TEST_CASE("grevlex and lex ordering") {
  Monomial x2({2, 0, 0}), xy({1, 1, 0}), y2({0, 2, 0}), xz({1, 0, 1}), x3({3, 0, 0});
  CHECK(compare(x3, xy, MonomialOrder::Grevlex) > 0);
  CHECK(compare(x2, xy, MonomialOrder::Grevlex) > 0);
  CHECK(compare(xy, y2, MonomialOrder::Grevlex) > 0);
  CHECK(compare(y2, xz, MonomialOrder::Grevlex) > 0);  // grevlex: smaller z exponent wins
  CHECK(compare(xz, y2, MonomialOrder::Lex) > 0);
  CHECK(compare(x2, x3, MonomialOrder::Lex) < 0);
  CHECK(Monomial({1, 0}).hash() == Monomial({1, 0, 0}).hash());
  CHECK(divides(Monomial({1, 1}), Monomial({2, 1})));
  CHECK_FALSE(divides(Monomial({0, 2}), Monomial({2, 1})));
  CHECK(lcm(Monomial({2, 0}), Monomial({1, 3})) == Monomial({2, 3}));
}

TEST_CASE("arithmetic examples") {
  CHECK((P("x+1") * P("x-1")) == P("x^2-1"));
  CHECK(P("x*y + 3") + Polynomial::constant(3, 0) == P("x*y+3"));
  VarTable t = uv();
  CHECK(poly("(u^2+v^2)*(1-u^2-v^2)", t) == poly("u^2+v^2-u^4-2*u^2*v^2-v^4", t));
  CHECK(naive_product(poly("u^2+v^2", t), poly("1-u^2-v^2", t)) == poly("u^2+v^2-u^4-2*u^2*v^2-v^4", t));
  CHECK(P("x").pow(0) == P("1"));
  CHECK_THROWS_AS(P("x").pow(-1), NonPolynomialError);
  CHECK(P("3").is_constant());
  CHECK(P("0").is_zero());
  CHECK(P("0").degree() == -1);
  CHECK(P("x^2*y + y^5").degree() == 5);
  CHECK(P("x^2*y + y^5").degree_in(0) == 2);
  CHECK(exact_divide(P("x^2-1"), P("x-1")) == P("x+1"));
  CHECK_THROWS_AS(exact_divide(P("x^2+1"), P("x-1")), Error);
}

TEST_CASE("derivatives") {
  VarTable t = uv();
  CHECK(poly("v^2-u^2+9/2", t).partial_derivative(0) == poly("-2*u", t));
  CHECK(P("7").partial_derivative(1).is_zero());
  CHECK(P("x*y^2").partial_derivative(1) == P("2*x*y"));
}

TEST_CASE("substitution") {
  CHECK(P("x^2").substitute({{0, P("x+1")}}) == P("x^2+2*x+1"));
  Polynomial p = P("x*y - z^3 + 2");
  CHECK(p.substitute({}) == p);
  CHECK(P("x*y").substitute({{0, P("-x")}}) == P("-x*y"));
  // simultaneous, not sequential
  CHECK(P("x + 2*y").substitute({{0, P("y")}, {1, P("x")}}) == P("y + 2*x"));
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20; ++i) {
    auto pt = random_point(rng, 3);
    std::vector<Rational> moved = pt;
    moved[0] = -pt[0];
    CHECK(P("x*y").substitute({{0, P("-x")}}).evaluate(pt) == P("x*y").evaluate(moved));
  }
}

TEST_CASE("canonical printing") {
  VarTable t = uv();
  CHECK(poly("-(u^2+v^2)/2", t).to_string(t) == "-1/2*u^2 - 1/2*v^2");
  CHECK(poly("0", t).to_string(t) == "0");
  CHECK(poly("1 - u", t).to_string(t) == "-u + 1");
  CHECK(poly("u*v^3 - 2", t).to_string(t) == "u*v^3 - 2");
}

TEST_CASE("parser errors") {
  VarTable t = xyz(2);
  CHECK_THROWS_AS(parse_polynomial("x / y", t), NonPolynomialError);
  CHECK_THROWS_AS(parse_polynomial("x^-2", t), NonPolynomialError);
  CHECK_THROWS_AS(parse_polynomial("x + q", t), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x + * y", t), ParseError);
  CHECK_THROWS_AS(parse_polynomial("(x + y", t), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x / 0", t), ParseError);
  try {
    parse_polynomial("x +\n  $", t);
    FAIL("no error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 3);
  }
  CHECK(parse_polynomial("-x^2", t) == -P("x^2", 2));
  CHECK(parse_polynomial("2^3*x/4", t) == P("2*x", 2));
  CHECK(parse_polynomial("0.5*x", t) == P("x/2", 2));
  VarTable open;
  CHECK(parse_polynomial("a*b", open, {.declare_new = true}).num_vars() == 2);
}

TEST_CASE("round trip through text") {
  std::mt19937_64 rng(11);
  VarTable t = xyz(3);
  for (int i = 0; i < 200; ++i) {
    Polynomial p = random_poly(rng, 3, 4, 6, 9) * Rational(1, 1 + i % 5);
    VarTable copy = t;
    CHECK(parse_polynomial(p.to_string(t), copy) == p);
  }
}

TEST_CASE("ring axioms and evaluation homomorphism") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    Polynomial a = random_poly(rng, 3, 4, 4), b = random_poly(rng, 3, 4, 4), c = random_poly(rng, 3, 4, 4);
    REQUIRE(((a + b) + c) == (a + (b + c)));
    REQUIRE(((a * b) * c) == (a * (b * c)));
    REQUIRE((a * (b + c)) == (a * b + a * c));
    REQUIRE((a * b) == (b * a));
    REQUIRE((a + b) == (b + a));
    REQUIRE((a - a).is_zero());
    if (i % 10 == 0) {
      REQUIRE(a * b == naive_product(a, b));
      auto pt = random_point(rng, 3);
      REQUIRE((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
      REQUIRE((a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt));
      REQUIRE((a - c).evaluate(pt) == a.evaluate(pt) - c.evaluate(pt));
      REQUIRE(a.pow(3).evaluate(pt) == a.evaluate(pt) * a.evaluate(pt) * a.evaluate(pt));
    }
  }
}

TEST_CASE("term order independence") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 100; ++i) {
    Polynomial p = random_poly(rng, 3, 3, 6);
    std::vector<Polynomial::Term> shuffled = p.terms();
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    Polynomial q = Polynomial::from_terms(3, shuffled);
    REQUIRE(q == p);
    REQUIRE(q.terms().size() == p.terms().size());
    for (std::size_t k = 0; k < q.terms().size(); ++k) {
      REQUIRE(q.terms()[k].first == p.terms()[k].first);
      REQUIRE(q.terms()[k].second == p.terms()[k].second);
    }
  }
}

TEST_CASE("determinant") {
  CHECK(determinant(PolyMatrix::identity(3, 2)) == P("1", 2));
  PolyMatrix one(1, 1, {P("x*y-1")});
  CHECK(determinant(one) == P("x*y-1"));
  PolyMatrix m(2, 2, {P("x"), P("1"), P("1"), P("x")});
  CHECK(determinant(m) == P("x^2-1"));
  CHECK_THROWS_AS(determinant(PolyMatrix(2, 3, 1)), DimensionError);
  CHECK_THROWS_AS(PolyMatrix(2, 2, std::vector<Polynomial>{P("x")}), DimensionError);
  // zero leading pivot forces a row swap
  PolyMatrix swap(3, 3, {P("0"), P("1"), P("x"), P("1"), P("0"), P("y"), P("x"), P("y"), P("0")});
  CHECK(determinant(swap) == P("2*x*y"));
  CHECK(trace(m) == P("2*x"));
}

TEST_CASE("determinant is multiplicative") {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 50; ++i) {
    std::vector<Polynomial> a, b;
    for (int k = 0; k < 4; ++k) {
      a.push_back(random_poly(rng, 2, 2, 3));
      b.push_back(random_poly(rng, 2, 2, 3));
    }
    PolyMatrix m(2, 2, a), n(2, 2, b);
    REQUIRE(determinant(m * n) == determinant(m) * determinant(n));
  }
  for (int i = 0; i < 10; ++i) {
    std::vector<Polynomial> a, b;
    for (int k = 0; k < 9; ++k) {
      a.push_back(random_poly(rng, 2, 1, 2));
      b.push_back(random_poly(rng, 2, 1, 2));
    }
    PolyMatrix m(3, 3, a), n(3, 3, b);
    REQUIRE(determinant(m * n) == determinant(m) * determinant(n));
  }
}
