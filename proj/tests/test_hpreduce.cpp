#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "odeinv/errors.hpp"
#include "odeinv/hybrid.hpp"
#include "generators.hpp"
#include "support.hpp"

using namespace odeinv;
using namespace odeinv::testing;

namespace {

Polynomial P(const std::string& s, std::size_t n = 2) { return poly(s, xyz(n)); }

HybridProgram prog(const std::string& s, std::size_t n = 2) {
  VarTable t = xyz(n);
  return parse_program(s, t);
}

}  // namespace

TEST_CASE("program syntax") {
  HybridProgram a = prog("x := x + 1 ; ? y != 0 ++ { x := -x }*");
  CHECK(a.kind() == HybridProgram::Kind::Choice);
  CHECK(a.left().kind() == HybridProgram::Kind::Seq);
  CHECK(a.right().kind() == HybridProgram::Kind::Star);
  HybridProgram o = prog("{ x' = y, y' = -x & x - 2 != 0 }");
  REQUIRE(o.kind() == HybridProgram::Kind::Ode);
  CHECK(*o.as_ode().domain == P("x - 2"));
  CHECK(o.as_ode().sys.dimension() == 2);
  CHECK(prog("? x != y").as_test().r == P("x - y"));
  CHECK_FALSE(o.is_discrete());
  CHECK(a.is_discrete());
  VarTable t = xyz(2);
  CHECK_THROWS_AS(parse_program("? x > 0", t), ParseError);
  CHECK_THROWS_AS(parse_program("x := 1 ;", t), ParseError);
  CHECK_THROWS_AS(parse_program("{ x := 1", t), ParseError);
  CHECK_THROWS_AS(parse_program("q := 1", t), ParseError);

  const char* samples[] = {"x := x + 1 ; ? y != 0 ++ { x := -x }*", "{ x := 1 ++ y := 2 } ; x := y",
                           "{ x' = y, y' = -x & x - 2 != 0 } ; { y := 0 ; x := 1 }*", "x := 1 ; { y := 2 ; x := 3 }"};
  for (const char* s : samples) {
    HybridProgram p = prog(s);
    VarTable copy = t;
    CHECK_MESSAGE(parse_program(p.to_string(t), copy).to_string(t) == p.to_string(t), p.to_string(t));
  }
}

TEST_CASE("reduction examples") {
  CHECK(reduce_box(prog("x := x + 1"), P("x - 3")).q == P("x - 2"));
  CHECK(reduce_box(prog("? y - 1 != 0"), P("x")).q == P("(y - 1)*x"));
  CHECK(reduce_box(prog("x := 0 ++ x := 1"), P("x")).q == P("1"));
  Reduction loop = reduce_box(prog("{ x := -x }*"), P("x"));
  CHECK(loop.q == P("x^2"));
  REQUIRE(loop.trace.chain.size() == 2);
  CHECK(loop.trace.chain[1] == P("-x"));
  CHECK(loop.trace.witness[0] == P("-1"));
  CHECK(trace_identities_hold(prog("{ x := -x }*"), loop.trace));

  VarTable t = uv();
  HybridProgram flow = parse_program("{ u' = -v + u/4*(1-u^2-v^2), v' = u + v/4*(1-u^2-v^2) }", t);
  Polynomial circle = parse_polynomial("u^2 + v^2 - 1", t);
  Reduction r = reduce_box(flow, circle);
  CHECK(r.q == circle * circle);
  CHECK(r.trace.witness.size() == 1);
  CHECK(trace_identities_hold(flow, r.trace));

  CHECK(reduce_box(prog("x := y ; y := 3"), P("x - y")).q == P("y - 3"));
  CHECK(reduce_box(prog("{ x := 0 }*"), P("0")).q.is_zero());
}

TEST_CASE("caps") {
  HybridProgram walk = prog("{ x := x + 1 }*");
  try {
    reduce_box(walk, P("x^3 + y"), 2);
    FAIL("expected cap error");
  } catch (const ReductionCapExceeded& e) {
    CHECK(e.partial_trace().chain.size() >= 2);
  }
  VarTable four = xyz(4);
  HybridProgram chain = parse_program("{ x' = y, y' = z, z' = w, w' = 0 }", four);
  CHECK_THROWS_AS(reduce_box(chain, P("x", 4), 2), ResourceError);
}

TEST_CASE("oracle examples") {
  std::vector<Rational> one{Rational(1), Rational(0)}, zero{Rational(0), Rational(5)};
  CHECK(oracle_unroll(prog("x := x + 1 ; x := 2*x"), P("x - 4"), 1, one));
  CHECK(oracle_unroll(prog("? x != 0 ; x := 7"), P("x"), 1, zero));
  CHECK_FALSE(oracle_unroll(prog("{ x := -x }*"), P("x"), 5, one));
  CHECK(oracle_unroll(prog("{ x := -x }*"), P("x"), 5, zero));
  CHECK_THROWS_AS(oracle_unroll(prog("{ x' = 1 }"), P("x"), 1, one), UnsupportedInputError);
}

TEST_CASE("loop-free programs agree with the oracle") {
  std::mt19937_64 rng(51);
  int vanished = 0;
  for (int i = 0; i < 100; ++i) {
    HybridProgram a = random_discrete(rng, 3, false);
    Polynomial p = random_post(rng);
    Reduction r = reduce_box(a, p);
    REQUIRE(trace_identities_hold(a, r.trace));
    for (int k = 0; k < 200; ++k) {
      auto s = grid_point(rng, 2);
      bool vanishes = r.q.evaluate(s) == 0;
      vanished += vanishes;
      REQUIRE_MESSAGE(vanishes == oracle_unroll(a, p, 1, s), a.to_string(xyz(2)));
    }
  }
  CHECK(vanished > 1000);
}

TEST_CASE("loops agree with bounded unrolling") {
  std::mt19937_64 rng(52);
  int vanished = 0;
  for (int i = 0; i < 20; ++i) {
    HybridProgram a = HybridProgram::star(random_discrete(rng, 2, true));
    if (i % 3 == 0) a = HybridProgram::seq(random_discrete(rng, 1, true), a);
    Polynomial p = random_post(rng);
    Reduction r = reduce_box(a, p);
    REQUIRE(trace_identities_hold(a, r.trace));
    for (int k = 0; k < 200; ++k) {
      auto s = grid_point(rng, 2);
      bool vanishes = r.q.evaluate(s) == 0;
      vanished += vanishes;
      if (vanishes) {
        for (std::size_t d = 0; d <= 8; ++d) REQUIRE(oracle_unroll(a, p, d, s));
      }
      if (!oracle_unroll(a, p, 8, s)) REQUIRE_FALSE(vanishes);
    }
  }
  CHECK(vanished > 100);
}

TEST_CASE("ODE nodes match the differential radical") {
  std::mt19937_64 rng(53);
  for (int i = 0; i < 10; ++i) {
    OdeSystem s = random_ode(rng, 2);
    Polynomial p = random_nonzero_poly(rng, 2, 2, 2);
    std::optional<Polynomial> r;
    if (i % 2) r = P("x - y");
    HybridProgram a = HybridProgram::ode(s, r);
    Reduction red = reduce_box(a, p);
    REQUIRE(trace_identities_hold(a, red.trace));
    auto radical = differential_radical(p, s);
    for (int k = 0; k < 500; ++k) {
      auto pt = grid_point(rng, 2);
      bool all_zero = true;
      for (const auto& q : radical) all_zero = all_zero && q.evaluate(pt) == 0;
      bool outside = r && r->evaluate(pt) == 0;
      REQUIRE((red.q.evaluate(pt) == 0) == (outside || all_zero));
    }
  }
}

TEST_CASE("tampered traces are rejected") {
  HybridProgram a = prog("{ x := -x }* ; x := x + y");
  Reduction r = reduce_box(a, P("x"));
  REQUIRE(trace_identities_hold(a, r.trace));
  ReductionTrace bad = r.trace;
  bad.children[0].witness[0] += P("1");
  CHECK_FALSE(trace_identities_hold(a, bad));
  bad = r.trace;
  bad.children[0].chain[1] = P("x");
  CHECK_FALSE(trace_identities_hold(a, bad));
  bad = r.trace;
  bad.result += P("y");
  CHECK_FALSE(trace_identities_hold(a, bad));
}
