#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "odeinv/combination.hpp"
#include "odeinv/errors.hpp"
#include "odeinv/groebner.hpp"
#include "odeinv/rank.hpp"
#include "support.hpp"

using namespace odeinv;
using namespace odeinv::testing;

namespace {

Polynomial P(const std::string& s, std::size_t n = 2) { return poly(s, xyz(n)); }

OdeSystem ode(const std::string& text, std::size_t n = 2) {
  VarTable t = xyz(n);
  return parse_ode(text, t);
}

void check_rank_result(const RankResult& r, const Polynomial& p, const OdeSystem& s) {
  REQUIRE(r.cofactors.size() == r.n);
  REQUIRE(r.chain.size() == r.n + 1);
  REQUIRE(rank_identity_holds(r, p, s));
  for (std::size_t i = 1; i < r.n; ++i) {
    std::vector<Polynomial> lower(r.chain.begin(), r.chain.begin() + static_cast<long>(i));
    REQUIRE_FALSE(groebner(lower, {.track_cofactors = false}).contains(r.chain[i]));
  }
}

}  // namespace

TEST_CASE("basis examples") {
  auto gb = groebner({P("x")});
  CHECK(gb.basis() == std::vector<Polynomial>{P("x")});
  auto gb2 = groebner({P("x^2"), P("x*y")});
  CHECK(gb2.basis().size() == 2);
  CHECK_FALSE(gb2.member(P("x")));
  auto lex = groebner({P("x-1"), P("y-x")}, {.order = MonomialOrder::Lex});
  CHECK(lex.basis().size() == 2);
  CHECK(lex.normal_form(P("x")) == P("1"));
  CHECK(lex.normal_form(P("y")) == P("1"));
  CHECK(groebner({P("x"), P("x+1")}).is_unit());
  CHECK(groebner({P("0")}).normal_form(P("x+y")) == P("x+y"));
  CHECK_FALSE(groebner({}).is_unit());
}

TEST_CASE("membership witnesses") {
  auto w = member_with_witness(P("x^2"), {P("x")});
  REQUIRE(w);
  CHECK(w->cofactors[0] == P("x"));
  CHECK_FALSE(member_with_witness(P("y"), {P("x")}));
  auto zero = member_with_witness(P("0"), {P("x"), P("y")});
  REQUIRE(zero);

  OdeSystem a = alpha_e();
  Polynomial p = poly("1-u^2-v^2", a);
  Polynomial g = poly("-1/2*(u^2+v^2)", a);
  auto w2 = member_with_witness(higher_lie(p, a, 2), {p});
  REQUIRE(w2);
  CHECK(w2->cofactors[0] == lie_derivative(g, a) + g * g);
}

TEST_CASE("step budget") {
  std::vector<Polynomial> gens{P("x^3*y - 2*y^2 + 1", 3), P("y^3*z - x + 3", 3), P("z^3*x - y*z + 2", 3)};
  CHECK_THROWS_AS(groebner(gens, {.step_budget = 5}), ResourceError);
}

TEST_CASE("random ideals") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 60; ++i) {
    std::size_t n = 2 + i % 2;
    std::vector<Polynomial> gens;
    for (int k = 0; k < 2 + i % 2; ++k) gens.push_back(random_nonzero_poly(rng, n, 2, 3));
    auto gb = groebner(gens);
    // every generator and every combination is a member with an exact witness
    Polynomial combo = Polynomial::constant(n, 0);
    for (const auto& g : gens) combo += g * random_poly(rng, n, 2, 2);
    for (const auto& q : gens) REQUIRE(gb.member(q));
    auto w = gb.member(combo);
    REQUIRE(w);
    Polynomial sum = Polynomial::constant(n, 0);
    for (std::size_t j = 0; j < gens.size(); ++j) sum += w->cofactors[j] * gens[j];
    REQUIRE(sum == combo);
    // transform rows reproduce the basis
    for (std::size_t k = 0; k < gb.basis().size(); ++k) {
      Polynomial b = Polynomial::constant(n, 0);
      for (std::size_t j = 0; j < gens.size(); ++j) b += gb.transform()[k][j] * gens[j];
      REQUIRE(b == gb.basis()[k]);
    }
    // idempotence
    REQUIRE(groebner(gb.basis()).basis() == gb.basis());
    // normal forms are canonical
    Polynomial r = random_poly(rng, n, 3, 3);
    REQUIRE(gb.normal_form(r + combo) == gb.normal_form(r));
  }
}

TEST_CASE("warm start agrees with a fresh basis") {
  std::mt19937_64 rng(32);
  for (int i = 0; i < 30; ++i) {
    Polynomial a = random_nonzero_poly(rng, 3, 2, 3), b = random_nonzero_poly(rng, 3, 2, 3);
    auto warm = extend_groebner(groebner({a}), b);
    auto fresh = groebner({a, b});
    REQUIRE(warm.basis() == fresh.basis());
    REQUIRE(warm.generators().size() == 2);
  }
}

TEST_CASE("rank examples") {
  OdeSystem a = alpha_e();
  auto r = rank(poly("1-u^2-v^2", a), a);
  CHECK(r.n == 1);
  CHECK(r.cofactors[0] == poly("-1/2*(u^2+v^2)", a));

  OdeSystem decay = ode("x' = -x", 1);
  auto r2 = rank(poly("x", decay), decay);
  CHECK(r2.n == 1);
  CHECK(r2.cofactors[0] == Polynomial::constant(1, -1));

  OdeSystem swap = ode("x' = y, y' = x");
  auto r3 = rank(P("x"), swap);
  CHECK(r3.n == 2);
  CHECK(r3.cofactors[0] == P("1"));
  CHECK(r3.cofactors[1].is_zero());
  check_rank_result(r3, P("x"), swap);

  auto r0 = rank(P("0"), swap);
  CHECK(r0.n == 1);
  CHECK(r0.cofactors[0].is_zero());

  CHECK(differential_radical(poly("1-u^2-v^2", a), a) == std::vector<Polynomial>{poly("1-u^2-v^2", a)});
  CHECK(differential_radical(P("x"), swap) == std::vector<Polynomial>{P("x"), P("y")});
  CHECK(differential_radical(P("0"), swap) == std::vector<Polynomial>{P("0")});
}

TEST_CASE("rank cap") {
  OdeSystem chain = ode("x' = y, y' = z, z' = w, w' = 0", 4);
  CHECK(rank(poly("x", chain), chain).n == 4);
  try {
    rank(poly("x", chain), chain, 2);
    FAIL("expected cap error");
  } catch (const RankCapExceeded& e) {
    CHECK(e.partial_chain().size() >= 2);
  }
}

TEST_CASE("rank on random polynomials") {
  std::mt19937_64 rng(33);
  for (int i = 0; i < 15; ++i) {
    std::size_t n = 1 + i % 3;
    OdeSystem s = random_ode(rng, n);
    Polynomial p = random_poly(rng, n, 3, 3);
    auto r = rank(p, s);
    check_rank_result(r, p, s);
  }
}

TEST_CASE("untracked bases") {
  auto gb = groebner({P("x^2"), P("x*y - 1")}, {.track_cofactors = false});
  CHECK_FALSE(gb.tracks_cofactors());
  CHECK(gb.contains(P("x")));
  CHECK_THROWS_AS(gb.member(P("x")), Error);
  auto tracked = groebner({P("x^2"), P("x*y - 1")});
  CHECK(tracked.basis() == gb.basis());
}

TEST_CASE("sparse linear solve") {
  // x0 + x1 = 3, x1 - x2 = 1, x0 + 2 x1 - x2 = 4
  std::vector<SparseColumn> cols(3);
  cols[0].entries = {{0, 1}, {2, 1}};
  cols[1].entries = {{0, 1}, {1, 1}, {2, 2}};
  cols[2].entries = {{1, -1}, {2, -1}};
  auto x = solve_sparse(3, cols, {{0, 3}, {1, 1}, {2, 4}});
  REQUIRE(x);
  CHECK((*x)[0] + (*x)[1] == 3);
  CHECK((*x)[1] - (*x)[2] == 1);
  CHECK_FALSE(solve_sparse(3, cols, {{0, 3}, {1, 1}, {2, 5}}));
  CHECK(monomials_up_to(2, 2).size() == 6);
  CHECK(monomials_up_to(3, 0).size() == 1);
  CHECK(monomials_up_to(3, -1).empty());
}

TEST_CASE("bounded combinations") {
  auto c = bounded_combination({P("x"), P("y")}, P("x^2 + x*y + y^3"), {1, 2});
  REQUIRE(c);
  CHECK((*c)[0] * P("x") + (*c)[1] * P("y") == P("x^2 + x*y + y^3"));
  CHECK_FALSE(bounded_combination({P("x"), P("y")}, P("y^3"), {1, 1}));
  CHECK_FALSE(bounded_combination({P("x")}, P("y"), {4}));
  auto zero = bounded_combination({P("x")}, P("0"), {2});
  REQUIRE(zero);
  CHECK((*zero)[0].is_zero());
  CHECK((*bounded_combination({P("x"), P("0")}, P("x"), {0, 3}))[1].is_zero());
  std::mt19937_64 rng(34);
  for (int i = 0; i < 30; ++i) {
    std::vector<Polynomial> gens{random_nonzero_poly(rng, 3, 2, 3), random_nonzero_poly(rng, 3, 2, 3)};
    Polynomial target = gens[0] * random_poly(rng, 3, 1, 3) + gens[1] * random_poly(rng, 3, 1, 3);
    auto w = bounded_combination(gens, target, {1, 1});
    REQUIRE(w);
    REQUIRE((*w)[0] * gens[0] + (*w)[1] * gens[1] == target);
  }
}
