#include "odeinv/hybrid.hpp"

#include <set>

#include "odeinv/combination.hpp"
#include "odeinv/groebner.hpp"

namespace odeinv {

HybridProgram HybridProgram::assign(VarId var, Polynomial value) {
  return HybridProgram(Kind::Assign, Assign{var, std::move(value)}, {});
}

HybridProgram HybridProgram::test(Polynomial r) { return HybridProgram(Kind::Test, Test{std::move(r)}, {}); }

HybridProgram HybridProgram::ode(OdeSystem sys, std::optional<Polynomial> domain) {
  return HybridProgram(Kind::Ode, Ode{std::move(sys), std::move(domain)}, {});
}

HybridProgram HybridProgram::choice(HybridProgram a, HybridProgram b) {
  return HybridProgram(Kind::Choice, std::monostate{},
                       {std::make_shared<const HybridProgram>(std::move(a)),
                        std::make_shared<const HybridProgram>(std::move(b))});
}

HybridProgram HybridProgram::seq(HybridProgram a, HybridProgram b) {
  return HybridProgram(Kind::Seq, std::monostate{},
                       {std::make_shared<const HybridProgram>(std::move(a)),
                        std::make_shared<const HybridProgram>(std::move(b))});
}

HybridProgram HybridProgram::star(HybridProgram body) {
  return HybridProgram(Kind::Star, std::monostate{}, {std::make_shared<const HybridProgram>(std::move(body))});
}

bool HybridProgram::is_discrete() const {
  if (kind_ == Kind::Ode) return false;
  for (const auto& c : children_)
    if (!c->is_discrete()) return false;
  return true;
}

namespace {

int precedence(HybridProgram::Kind k) {
  switch (k) {
    case HybridProgram::Kind::Choice: return 0;
    case HybridProgram::Kind::Seq: return 1;
    default: return 2;
  }
}

std::string render(const HybridProgram& a, const VarTable& vars, int context) {
  using K = HybridProgram::Kind;
  std::string out;
  switch (a.kind()) {
    case K::Assign:
      out = vars.name(a.as_assign().var) + " := " + a.as_assign().value.to_string(vars);
      break;
    case K::Test:
      out = "? " + a.as_test().r.to_string(vars) + " != 0";
      break;
    case K::Ode: {
      const auto& o = a.as_ode();
      out = "{ " + o.sys.to_string();
      if (o.domain) out += " & " + o.domain->to_string(vars) + " != 0";
      out += " }";
      break;
    }
    case K::Choice:
      out = render(a.left(), vars, 0) + " ++ " + render(a.right(), vars, 1);
      break;
    case K::Seq:
      out = render(a.left(), vars, 1) + " ; " + render(a.right(), vars, 2);
      break;
    case K::Star:
      return "{ " + render(a.left(), vars, 0) + " }*";
  }
  if (precedence(a.kind()) < context) return "{ " + out + " }";
  return out;
}

Polynomial sum_of_squares(const std::vector<Polynomial>& qs, std::size_t count, std::size_t nvars) {
  Polynomial out(nvars);
  for (std::size_t i = 0; i < count; ++i) out += qs[i] * qs[i];
  return out;
}

class Reducer {
 public:
  explicit Reducer(std::size_t cap) : cap_(cap) {}

  ReductionTrace run(const HybridProgram& a, const Polynomial& p) {
    using K = HybridProgram::Kind;
    ReductionTrace t;
    t.kind = a.kind();
    t.input = p;
    switch (a.kind()) {
      case K::Assign: {
        const auto& as = a.as_assign();
        t.result = p.substitute({{as.var, as.value}});
        break;
      }
      case K::Test:
        t.result = a.as_test().r * p;
        break;
      case K::Ode: {
        const auto& o = a.as_ode();
        RankResult r;
        try {
          r = rank(p, o.sys, cap_);
        } catch (const RankCapExceeded& e) {
          t.chain = e.partial_chain();
          throw ReductionCapExceeded(e.what(), t);
        }
        t.result = sum_of_squares(r.chain, r.n, p.num_vars());
        if (o.domain) t.result = *o.domain * t.result;
        t.chain = std::move(r.chain);
        t.witness = std::move(r.cofactors);
        break;
      }
      case K::Choice: {
        t.children.push_back(run(a.left(), p));
        t.children.push_back(run(a.right(), p));
        const Polynomial& q1 = t.children[0].result;
        const Polynomial& q2 = t.children[1].result;
        t.result = q1 * q1 + q2 * q2;
        break;
      }
      case K::Seq: {
        ReductionTrace second = run(a.right(), p);
        ReductionTrace first = run(a.left(), second.result);
        t.result = first.result;
        t.children.push_back(std::move(first));
        t.children.push_back(std::move(second));
        break;
      }
      case K::Star:
        loop(a.left(), t);
        break;
    }
    return t;
  }

 private:
  void loop(const HybridProgram& body, ReductionTrace& t) {
    t.chain.push_back(t.input);
    GroebnerBasis gb = groebner(t.chain, {.track_cofactors = false});
    for (;;) {
      if (t.chain.size() > cap_) {
        throw ReductionCapExceeded("loop ideal chain exceeds cap " + std::to_string(cap_), t);
      }
      ReductionTrace step;
      try {
        step = run(body, t.chain.back());
      } catch (const ReductionCapExceeded& e) {
        t.children.push_back(e.partial_trace());
        throw ReductionCapExceeded(e.what(), t);
      }
      Polynomial next = step.result;
      t.children.push_back(std::move(step));
      if (gb.contains(next)) {
        t.witness = combination_witness(t.chain, next);
        t.result = sum_of_squares(t.chain, t.chain.size(), t.input.num_vars());
        t.chain.push_back(std::move(next));
        return;
      }
      gb = extend_groebner(gb, next, {.track_cofactors = false});
      t.chain.push_back(std::move(next));
    }
  }

  std::size_t cap_;
};

using State = std::vector<Rational>;

void execute(const HybridProgram& a, const std::set<State>& in, std::size_t depth, std::set<State>& out) {
  using K = HybridProgram::Kind;
  switch (a.kind()) {
    case K::Assign:
      for (const auto& s : in) {
        State t = s;
        t[a.as_assign().var] = a.as_assign().value.evaluate(s);
        out.insert(std::move(t));
      }
      return;
    case K::Test:
      for (const auto& s : in)
        if (sgn(a.as_test().r.evaluate(s)) != 0) out.insert(s);
      return;
    case K::Ode:
      throw UnsupportedInputError("oracle_unroll does not support ODE nodes");
    case K::Choice:
      execute(a.left(), in, depth, out);
      execute(a.right(), in, depth, out);
      return;
    case K::Seq: {
      std::set<State> mid;
      execute(a.left(), in, depth, mid);
      execute(a.right(), mid, depth, out);
      return;
    }
    case K::Star: {
      std::set<State> frontier = in;
      out.insert(in.begin(), in.end());
      for (std::size_t i = 0; i < depth && !frontier.empty(); ++i) {
        std::set<State> next;
        execute(a.left(), frontier, depth, next);
        frontier.clear();
        for (auto& s : next)
          if (out.insert(s).second) frontier.insert(s);
      }
      return;
    }
  }
}

bool check(const HybridProgram& a, const ReductionTrace& t) {
  using K = HybridProgram::Kind;
  if (t.kind != a.kind()) return false;
  switch (a.kind()) {
    case K::Assign:
      return t.children.empty() && t.result == t.input.substitute({{a.as_assign().var, a.as_assign().value}});
    case K::Test:
      return t.children.empty() && t.result == a.as_test().r * t.input;
    case K::Ode: {
      const auto& o = a.as_ode();
      std::size_t n = t.witness.size();
      if (n == 0 || t.chain.size() != n + 1) return false;
      if (lie_chain(t.input, o.sys, n + 1) != t.chain) return false;
      RankResult r{n, t.witness, t.chain};
      if (!rank_identity_holds(r, t.input, o.sys)) return false;
      if (!t.input.is_zero()) {
        for (std::size_t i = 1; i < n; ++i) {
          std::vector<Polynomial> lower(t.chain.begin(), t.chain.begin() + static_cast<long>(i));
          if (groebner(lower, {.track_cofactors = false}).contains(t.chain[i])) return false;
        }
      }
      Polynomial expected = sum_of_squares(t.chain, n, t.input.num_vars());
      if (o.domain) expected = *o.domain * expected;
      return t.result == expected;
    }
    case K::Choice: {
      if (t.children.size() != 2) return false;
      const auto& c0 = t.children[0];
      const auto& c1 = t.children[1];
      return c0.input == t.input && c1.input == t.input && check(a.left(), c0) && check(a.right(), c1) &&
             t.result == c0.result * c0.result + c1.result * c1.result;
    }
    case K::Seq: {
      if (t.children.size() != 2) return false;
      const auto& first = t.children[0];
      const auto& second = t.children[1];
      return second.input == t.input && first.input == second.result && check(a.left(), first) &&
             check(a.right(), second) && t.result == first.result;
    }
    case K::Star: {
      std::size_t k = t.witness.size();
      if (k == 0 || t.chain.size() != k + 1 || t.children.size() != k) return false;
      if (t.chain[0] != t.input) return false;
      for (std::size_t i = 0; i < k; ++i) {
        if (t.children[i].input != t.chain[i] || t.children[i].result != t.chain[i + 1]) return false;
        if (!check(a.left(), t.children[i])) return false;
      }
      Polynomial combination(t.input.num_vars());
      for (std::size_t i = 0; i < k; ++i) combination += t.witness[i] * t.chain[i];
      if (combination != t.chain[k]) return false;
      for (std::size_t i = 1; i < k; ++i) {
        std::vector<Polynomial> lower(t.chain.begin(), t.chain.begin() + static_cast<long>(i));
        if (groebner(lower, {.track_cofactors = false}).contains(t.chain[i])) return false;
      }
      return t.result == sum_of_squares(t.chain, k, t.input.num_vars());
    }
  }
  return false;
}

}  // namespace

std::string HybridProgram::to_string(const VarTable& vars) const { return render(*this, vars, 0); }

Reduction reduce_box(const HybridProgram& alpha, const Polynomial& p, std::size_t cap) {
  Reducer r(cap);
  ReductionTrace t = r.run(alpha, p);
  Polynomial q = t.result;
  return {std::move(q), std::move(t)};
}

bool oracle_unroll(const HybridProgram& alpha, const Polynomial& p, std::size_t depth,
                   std::span<const Rational> state) {
  std::set<State> in{State(state.begin(), state.end())};
  std::set<State> out;
  execute(alpha, in, depth, out);
  for (const auto& s : out)
    if (p.evaluate(s) != 0) return false;
  return true;
}

bool trace_identities_hold(const HybridProgram& alpha, const ReductionTrace& trace) { return check(alpha, trace); }

}  // namespace odeinv
