#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "odeinv/errors.hpp"
#include "odeinv/normal_form.hpp"
#include "odeinv/progress.hpp"
#include "generators.hpp"
#include "support.hpp"

using namespace odeinv;
using namespace odeinv::testing;

namespace {

Formula F(const std::string& s, std::size_t n = 2) {
  VarTable t = xyz(n);
  return parse_formula(s, t);
}
Polynomial P(const std::string& s, std::size_t n = 2) { return poly(s, xyz(n)); }

OdeSystem ode(const std::string& text, std::size_t n = 2) {
  VarTable t = xyz(n);
  return parse_ode(text, t);
}

}  // namespace

TEST_CASE("formula parsing") {
  Formula a = F("x^2 >= 0");
  CHECK(a.kind() == Formula::Kind::Atom);
  CHECK(a.polynomial() == P("x^2"));
  CHECK(a.relation() == Rel::Ge);
  Formula b = F("x < y + 1");
  CHECK(b.polynomial() == P("x - y - 1"));
  CHECK(b.relation() == Rel::Lt);
  CHECK(F("x = 1 & y != 0 | !(x > 2)").kind() == Formula::Kind::Or);
  CHECK(F("x = 1 -> y = 1 -> x = y").children()[1].kind() == Formula::Kind::Implies);
  CHECK(F("(x + 1)*y > 0").kind() == Formula::Kind::Atom);
  CHECK(F("((x > 0))").kind() == Formula::Kind::Atom);
  CHECK(F("true").kind() == Formula::Kind::True);
  CHECK(F("x == 0 && y <= 1 || false").kind() == Formula::Kind::Or);
  VarTable t = xyz(2);
  CHECK_THROWS_AS(parse_formula("x + y", t), ParseError);
  CHECK_THROWS_AS(parse_formula("x > 0 &", t), ParseError);
  CHECK_THROWS_AS(parse_formula("x > 0 & (y < 1", t), ParseError);
  CHECK_THROWS_AS(parse_formula("x / y > 0", t), NonPolynomialError);
}

TEST_CASE("formula round trip") {
  const char* samples[] = {
      "x^2 >= 0", "x = 1 & y != 0 | !(x > 2)", "(x > 0 | y > 0) & x - y <= 3/2",
      "x > 0 -> (y > 0 -> x*y > 0)", "(x > 0 -> y > 0) -> x*y > 0", "!(!(x < 0))",
      "((x > 0 & y > 0) & x < 1) | false", "true & x = 0",
  };
  VarTable t = xyz(2);
  for (const char* s : samples) {
    Formula f = F(s);
    VarTable copy = t;
    Formula g = parse_formula(f.to_string(t), copy);
    CHECK_MESSAGE(g == f, s, " -> ", f.to_string(t));
  }
}

TEST_CASE("evaluation") {
  std::vector<Rational> pt{Rational(1), Rational(-2)};
  CHECK(F("x > 0 & y < 0").evaluate(pt));
  CHECK_FALSE(F("x > 0 -> y > 0").evaluate(pt));
  CHECK(F("x = 1 -> x*y = -2").evaluate(pt));
  CHECK_THROWS_AS(Formula::forall({0}, F("x > 0")).evaluate(pt), UnsupportedInputError);
  CHECK_FALSE(Formula::forall({0}, F("x > 0")).is_quantifier_free());
}

TEST_CASE("normal form examples") {
  NormalForm eq = to_normal_form(F("x*y - 1 = 0"));
  REQUIRE(eq.disjuncts.size() == 1);
  CHECK(eq.disjuncts[0].geqs == std::vector<Polynomial>{P("x*y-1"), P("1-x*y")});
  CHECK(eq.disjuncts[0].gts.empty());

  NormalForm disk = to_normal_form(F("x^2 + y^2 < 1"));
  REQUIRE(disk.disjuncts.size() == 1);
  CHECK(disk.disjuncts[0].gts == std::vector<Polynomial>{P("1 - x^2 - y^2")});
  CHECK(disk.is_open());
  CHECK_FALSE(disk.is_closed());

  CHECK(to_normal_form(F("x = 0 | y > 0")).disjuncts.size() == 2);
  CHECK(to_normal_form(F("x != 0")).disjuncts.size() == 2);
  CHECK(to_normal_form(F("true")) == NormalForm::truth());
  CHECK(to_normal_form(F("false")) == NormalForm::falsity());
  CHECK(to_normal_form(F("1 > 0 & x >= 0")).disjuncts[0].geqs.size() == 1);
  CHECK(to_normal_form(F("0 > 1 | x >= 0")).disjuncts.size() == 1);
  CHECK(to_normal_form(F("x >= 0 & x >= 0")).disjuncts[0].geqs.size() == 1);
  CHECK_THROWS_AS(to_normal_form(Formula::exists({0}, F("x > 0"))), UnsupportedInputError);
  CHECK_THROWS_AS(to_normal_form(F("(x != 0 | y != 0) & (x != 1 | y != 1) & (x != 2 | y != 2)"), {.max_disjuncts = 10}),
                  ResourceError);
}

TEST_CASE("normal form preserves truth") {
  const char* samples[] = {
      "x = 0 | y > 0", "!(x^2 <= y + 1) & (x != y | x*y > 1)", "x > 0 -> (y >= x | y < -1)",
      "!((x = 1 | y = 1) & !(x + y >= 2))", "x^2 = y^2 -> x = y", "x <= 0 & x >= 0 & y != 0",
  };
  std::mt19937_64 rng(41);
  for (const char* s : samples) {
    Formula f = F(s);
    NormalForm nf = to_normal_form(f);
    for (int k = 0; k < 200; ++k) {
      auto pt = test_point(rng, 2, k);
      REQUIRE_MESSAGE(nf.evaluate(pt) == f.evaluate(pt), s);
      REQUIRE(nf.to_formula().evaluate(pt) == f.evaluate(pt));
    }
  }
}

TEST_CASE("negating normal forms") {
  NormalForm p{{Conjunct{{P("x")}, {}}}};
  NormalForm np = negate_normal_form(p);
  REQUIRE(np.disjuncts.size() == 1);
  CHECK(np.disjuncts[0].gts == std::vector<Polynomial>{P("-x")});
  CHECK(np.disjuncts[0].geqs.empty());
  CHECK(negate_normal_form(NormalForm::truth()) == NormalForm::falsity());
  CHECK(negate_normal_form(NormalForm::falsity()) == NormalForm::truth());

  VarTable t = uv();
  NormalForm green = to_normal_form(parse_formula("u^2 <= v^2 + 9/2", t));
  NormalForm outside = to_normal_form(parse_formula("u^2 > v^2 + 9/2", t));
  NormalForm neg = negate_normal_form(green);
  CHECK(neg == outside);
  std::mt19937_64 rng(42);
  for (int k = 0; k < 1000; ++k) {
    auto pt = random_point(rng, 2);
    REQUIRE(neg.evaluate(pt) == !green.evaluate(pt));
  }
}

TEST_CASE("negation is pointwise complement and an involution") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 50; ++i) {
    NormalForm nf = random_nf(rng, 2);
    NormalForm neg = negate_normal_form(nf);
    NormalForm small = random_nf(rng, 2, 2);
    NormalForm back = negate_normal_form(negate_normal_form(small));
    for (int k = 0; k < 200; ++k) {
      auto pt = test_point(rng, 2, k);
      REQUIRE(neg.evaluate(pt) == !nf.evaluate(pt));
      REQUIRE(back.evaluate(pt) == small.evaluate(pt));
    }
  }
}

TEST_CASE("algebraic combination") {
  CHECK(algebraic_combine(to_normal_form(F("x = 0 & y = 0"))) == P("x^2 + y^2"));
  CHECK(algebraic_combine(to_normal_form(F("x = 0 | y = 0"))) == P("x*y"));
  CHECK(algebraic_combine(to_normal_form(F("x*y - 3 = 0"))) == P("x*y - 3"));
  CHECK(algebraic_combine(NormalForm::truth()).is_zero());
  CHECK(algebraic_combine(NormalForm::falsity()) == Polynomial::constant(0, 1));
  CHECK_THROWS_AS(algebraic_combine(to_normal_form(F("x > 0"))), UnsupportedInputError);
  CHECK_THROWS_AS(algebraic_combine(to_normal_form(F("x >= 0"))), UnsupportedInputError);
  std::mt19937_64 rng(44);
  Formula f = F("(x = 1 & y = 2) | x*y = 0 | (x + y = 1 & x = y^2)");
  Polynomial e = algebraic_combine(to_normal_form(f));
  for (int k = 0; k < 300; ++k) {
    auto pt = test_point(rng, 2, k);
    REQUIRE((e.evaluate(pt) == 0) == f.evaluate(pt));
  }
}

TEST_CASE("progress formula examples") {
  OdeSystem a = alpha_e();
  Polynomial disk = poly("1-u^2-v^2", a);
  CHECK(progress_gt(disk, a) == Formula::atom(disk, Rel::Gt));
  OdeSystem swap = ode("x' = y, y' = x");
  Formula expected = Formula::conjunction({Formula::atom(P("x"), Rel::Ge),
                                           Formula::implication(Formula::atom(P("x"), Rel::Eq),
                                                                Formula::atom(P("y"), Rel::Gt))});
  CHECK(progress_gt(P("x"), swap) == expected);
  Formula geq = progress_geq(P("x"), swap);
  CHECK(geq == Formula::disjunction({expected, Formula::conjunction({Formula::atom(P("x"), Rel::Eq),
                                                                      Formula::atom(P("y"), Rel::Eq)})}));
  std::vector<Rational> origin{Rational(0), Rational(0)};
  CHECK_FALSE(progress_gt(P("0"), swap).evaluate(origin));
  CHECK(progress_geq(P("0"), swap).evaluate(origin));
  CHECK(radical_formula(P("x"), swap).evaluate(origin));

  std::vector<Rational> on_disk{Rational(1), Rational(0)};
  CHECK(progress_geq(disk, a).evaluate(on_disk));
  CHECK_FALSE(progress_gt(disk, a).evaluate(on_disk));

  CHECK(semialg_progress(NormalForm::truth(), a).kind() == Formula::Kind::True);
  CHECK(semialg_progress(NormalForm::falsity(), a).kind() == Formula::Kind::False);
  CHECK(semialg_progress(NormalForm{{Conjunct{{}, {disk}}}}, a) == Formula::atom(disk, Rel::Gt));
}

TEST_CASE("progress rearrangements") {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 20; ++i) {
    OdeSystem s = random_ode(rng, 2, 2, 2);
    Polynomial p = small_poly(rng, 2);
    ProgressBuilder fwd(s);
    Formula gt = fwd.gt(p);
    Formula disj = disjunctive_gt(p, s);
    Formula geq_neg = fwd.geq(-p);
    Formula not_radical = Formula::disjunction({fwd.gt(p), fwd.gt(-p)});
    Formula radical = fwd.radical(p);
    for (int k = 0; k < 1000; ++k) {
      auto pt = test_point(rng, 2, k);
      Formula::SignCache cache(pt);
      bool g = gt.evaluate(cache);
      REQUIRE(g == disj.evaluate(cache));
      REQUIRE(!g == geq_neg.evaluate(cache));
      REQUIRE(!radical.evaluate(cache) == not_radical.evaluate(cache));
    }
  }
}

TEST_CASE("progress negation duality") {
  std::mt19937_64 rng(46);
  for (int i = 0; i < 30; ++i) {
    OdeSystem s = random_ode(rng, 2, 2, 2);
    NormalForm nf = random_nf(rng, 2);
    ProgressBuilder b(s);
    Formula direct = b.semialgebraic(nf);
    Formula dual = b.semialgebraic(negate_normal_form(nf));
    for (int k = 0; k < 1000; ++k) {
      auto pt = test_point(rng, 2, k);
      Formula::SignCache cache(pt);
      REQUIRE(!direct.evaluate(cache) == dual.evaluate(cache));
    }
  }
}
