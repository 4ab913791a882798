#include "odeinv/side_condition.hpp"

#include <algorithm>
#include <random>
#include <unordered_map>

#include "odeinv/errors.hpp"
#include "odeinv/groebner.hpp"
#include "odeinv/normal_form.hpp"
#include "odeinv/smt.hpp"

namespace odeinv {

const char* status_name(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::Unknown: return "Unknown";
    case ConditionStatus::ProvedIdentity: return "ProvedIdentity";
    case ConditionStatus::ProvedByIdealReduction: return "ProvedByIdealReduction";
    case ConditionStatus::SmtValid: return "SmtValid";
    case ConditionStatus::Refuted: return "Refuted";
  }
  return "Unknown";
}

std::optional<ConditionStatus> parse_status(std::string_view name) {
  for (auto s : {ConditionStatus::Unknown, ConditionStatus::ProvedIdentity, ConditionStatus::ProvedByIdealReduction,
                 ConditionStatus::SmtValid, ConditionStatus::Refuted})
    if (name == status_name(s)) return s;
  return std::nullopt;
}

bool is_counterexample(const SideCondition& c, std::span<const Rational> point) {
  if (point.size() < c.vars.size()) return false;
  Formula::SignCache cache(point);
  return c.hypothesis.evaluate(cache) && !c.conclusion.evaluate(cache);
}

namespace {

// ---- ideal reduction ----------------------------------------------------

enum Tri { False, Maybe, True };

Tri tri_not(Tri a) { return a == True ? False : a == False ? True : Maybe; }

constexpr unsigned kNeg = 1, kZero = 2, kPos = 4, kAny = 7;

unsigned sign_bit(int s) { return s < 0 ? kNeg : s == 0 ? kZero : kPos; }

struct Fact {
  Polynomial monic;  // non-constant part of the normal form, made monic
  Rational lead;     // normal form = lead * monic + offset
  Rational offset;
  bool strict;
};

// Splits a non-constant r into lead * monic + offset.
Fact split(const Polynomial& r, bool strict) {
  Rational offset = r.constant_term();
  Polynomial rest = r - Polynomial::constant(r.num_vars(), offset);
  Rational lead = rest.leading_term().second;
  return {rest * Rational(1 / lead), lead, offset, strict};
}

// Sign information at the points of one hypothesis case: equalities as a
// Groebner basis, inequalities reduced modulo it.
class CaseKnowledge {
 public:
  CaseKnowledge(const std::vector<Polynomial>& zeros, const std::vector<std::pair<Polynomial, bool>>& facts)
      : gb_(groebner(zeros, {.track_cofactors = false})) {
    if (gb_.is_unit()) {
      empty_ = true;
      return;
    }
    for (const auto& [f, strict] : facts) {
      Polynomial r = gb_.normal_form(f);
      if (r.is_constant()) {
        int s = sgn(r.constant_term());
        if (strict ? s <= 0 : s < 0) empty_ = true;
        continue;
      }
      Fact fact = split(r, strict);
      unsigned mask = signs_of(fact);
      if (!(mask & (strict ? kPos : kPos | kZero))) empty_ = true;
      by_hash_[polynomial_hash(fact.monic)].push_back(std::move(fact));
    }
  }

  bool empty() const { return empty_; }

  unsigned signs(const Polynomial& p) const {
    Polynomial r = gb_.normal_form(p);
    if (r.is_constant()) return sign_bit(sgn(r.constant_term()));
    return signs_of(split(r, false));
  }

  Tri truth(const Formula& f) const {
    using K = Formula::Kind;
    switch (f.kind()) {
      case K::True: return True;
      case K::False: return False;
      case K::Atom: {
        unsigned mask = signs(f.polynomial());
        bool any_true = false, any_false = false;
        for (int s : {-1, 0, 1}) {
          if (!(mask & sign_bit(s))) continue;
          (holds(f.relation(), s) ? any_true : any_false) = true;
        }
        if (!any_false) return True;
        if (!any_true) return False;
        return Maybe;
      }
      case K::Not: return tri_not(truth(f.children()[0]));
      case K::And: {
        Tri out = True;
        for (const auto& c : f.children()) {
          Tri t = truth(c);
          if (t == False) return False;
          if (t == Maybe) out = Maybe;
        }
        return out;
      }
      case K::Or: {
        Tri out = False;
        for (const auto& c : f.children()) {
          Tri t = truth(c);
          if (t == True) return True;
          if (t == Maybe) out = Maybe;
        }
        return out;
      }
      case K::Implies: {
        Tri a = tri_not(truth(f.children()[0]));
        if (a == True) return True;
        Tri b = truth(f.children()[1]);
        if (b == True) return True;
        return a == False && b == False ? False : Maybe;
      }
      default: return Maybe;
    }
  }

 private:
  // a = s * f + d for every fact f sharing a's non-constant part.
  unsigned signs_of(const Fact& a) const {
    unsigned mask = kAny;
    auto it = by_hash_.find(polynomial_hash(a.monic));
    if (it == by_hash_.end()) return mask;
    for (const auto& f : it->second) {
      if (f.monic != a.monic) continue;
      Rational s = a.lead / f.lead;
      Rational d = a.offset - s * f.offset;
      int dir = sgn(s), ds = sgn(d);
      if (ds != 0 && ds != dir) continue;
      unsigned side = dir > 0 ? kPos : kNeg;
      mask &= (f.strict || ds != 0) ? side : side | kZero;
    }
    return mask;
  }

  GroebnerBasis gb_;
  bool empty_ = false;
  std::unordered_map<std::size_t, std::vector<Fact>> by_hash_;
};

bool conjunct_entails(const Conjunct& d, const Formula& conclusion, std::size_t split_limit) {
  std::vector<Polynomial> zeros;
  std::vector<Polynomial> weak;
  std::vector<bool> paired(d.geqs.size(), false);
  for (std::size_t i = 0; i < d.geqs.size(); ++i) {
    if (paired[i]) continue;
    Polynomial neg = -d.geqs[i];
    for (std::size_t j = i + 1; j < d.geqs.size(); ++j) {
      if (!paired[j] && d.geqs[j] == neg) {
        paired[i] = paired[j] = true;
        zeros.push_back(d.geqs[i]);
        break;
      }
    }
    if (!paired[i]) weak.push_back(d.geqs[i]);
  }
  std::size_t split = std::min(weak.size(), split_limit);
  for (std::size_t mask = 0; mask < (std::size_t{1} << split); ++mask) {
    std::vector<Polynomial> case_zeros = zeros;
    std::vector<std::pair<Polynomial, bool>> facts;
    for (std::size_t k = 0; k < weak.size(); ++k) {
      if (k < split && (mask >> k & 1)) case_zeros.push_back(weak[k]);
      else facts.emplace_back(weak[k], k < split);
    }
    for (const auto& g : d.gts) facts.emplace_back(g, true);
    CaseKnowledge known(case_zeros, facts);
    if (known.empty()) continue;
    if (known.truth(conclusion) != True) return false;
  }
  return true;
}

// ---- sampling -----------------------------------------------------------

class Sampler {
 public:
  Sampler(const SideCondition& c, std::uint64_t seed) : c_(c), rng_(seed), num_(-100, 100), den_(1, 10) {
    std::vector<const Formula*> atoms;
    c.hypothesis.collect_atoms(atoms);
    for (const Formula* a : atoms) {
      const Polynomial& p = a->polynomial();
      if (p.is_constant()) continue;
      bool seen = false;
      for (const auto& q : boundary_)
        if (q == p || q == -p) seen = true;
      if (!seen) boundary_.push_back(p);
    }
  }

  std::vector<Rational> uniform() {
    std::vector<Rational> pt(c_.vars.size());
    for (auto& x : pt) x = coordinate();
    return pt;
  }

  // A uniform point moved onto (or toward) the zero set of one hypothesis
  // atom along one coordinate.
  std::vector<Rational> near_boundary() {
    std::vector<Rational> pt = uniform();
    if (boundary_.empty()) return pt;
    const Polynomial& p = boundary_[pick(boundary_.size())];
    std::vector<VarId> vars;
    for (VarId v = 0; v < pt.size(); ++v)
      if (p.mentions(v)) vars.push_back(v);
    if (vars.empty()) return pt;
    VarId x = vars[pick(vars.size())];
    // p as a univariate polynomial in x with the other coordinates fixed.
    std::vector<Rational> coeff(static_cast<std::size_t>(p.degree_in(x)) + 1);
    for (const auto& [m, c] : p.terms()) {
      Rational t = c;
      for (VarId v = 0; v < m.num_vars(); ++v)
        if (v != x)
          for (Monomial::Exponent e = 0; e < m[v]; ++e) t *= pt[v];
      coeff[m[x]] += t;
    }
    while (coeff.size() > 1 && coeff.back() == 0) coeff.pop_back();
    if (coeff.size() == 2) {
      pt[x] = -coeff[0] / coeff[1];
    } else if (coeff.size() == 3) {
      Rational disc = coeff[1] * coeff[1] - 4 * coeff[2] * coeff[0];
      auto root = disc >= 0 ? exact_sqrt(disc) : std::nullopt;
      if (root) {
        Rational s = pick(2) ? *root : Rational(-*root);
        pt[x] = (-coeff[1] + s) / (2 * coeff[2]);
      } else {
        newton(coeff, pt[x]);
      }
    } else if (coeff.size() > 3) {
      newton(coeff, pt[x]);
    }
    return pt;
  }

 private:
  Rational coordinate() {
    Rational q(num_(rng_), den_(rng_));
    q.canonicalize();
    return q;
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }

  static void newton(const std::vector<Rational>& coeff, Rational& x) {
    Rational f = 0, df = 0;
    for (std::size_t k = coeff.size(); k-- > 0;) {
      df = df * x + f;
      f = f * x + coeff[k];
    }
    if (df != 0) x -= f / df;
  }

  const SideCondition& c_;
  std::mt19937_64 rng_;
  std::uniform_int_distribution<int> num_;
  std::uniform_int_distribution<int> den_;
  std::vector<Polynomial> boundary_;
};

}  // namespace

bool discharge_by_folding(SideCondition& c) {
  try {
    NormalForm concl = to_normal_form(c.conclusion);
    NormalForm hyp = to_normal_form(c.hypothesis);
    if (concl == NormalForm::truth() || hyp == NormalForm::falsity()) {
      c.status = ConditionStatus::ProvedIdentity;
      return true;
    }
  } catch (const Error&) {
  }
  return false;
}

bool discharge_by_ideals(SideCondition& c, const DischargeConfig& config) {
  if (!c.conclusion.is_quantifier_free()) return false;
  try {
    NormalForm hyp = to_normal_form(c.hypothesis);
    for (const auto& d : hyp.disjuncts)
      if (!conjunct_entails(d, c.conclusion, config.split_limit)) return false;
  } catch (const Error&) {
    return false;
  }
  c.status = ConditionStatus::ProvedByIdealReduction;
  return true;
}

bool discharge_by_sampling(SideCondition& c, const DischargeConfig& config) {
  if (!c.hypothesis.is_quantifier_free() || !c.conclusion.is_quantifier_free()) return false;
  Sampler sampler(c, config.seed);
  for (std::size_t i = 0; i < config.samples; ++i) {
    std::vector<Rational> pt = i % 2 == 0 ? sampler.uniform() : sampler.near_boundary();
    if (is_counterexample(c, pt)) {
      c.status = ConditionStatus::Refuted;
      c.witness = std::move(pt);
      return true;
    }
  }
  return false;
}

bool discharge_by_solver(SideCondition& c, const DischargeConfig& config) {
  if (!config.solver) return false;
  SolverResult r = run_solver(*config.solver, emit_smtlib(c));
  switch (r.answer) {
    case SolverAnswer::Unsat:
      c.status = ConditionStatus::SmtValid;
      return true;
    case SolverAnswer::Sat: {
      if (!r.irrational.empty()) {
        c.diagnostic = "solver model is not rational (" + r.irrational.front() + ")";
        return false;
      }
      std::vector<Rational> pt(c.vars.size());
      for (VarId v = 0; v < pt.size(); ++v) {
        auto it = r.model.find(c.vars.name(v));
        if (it != r.model.end()) pt[v] = it->second;
      }
      if (!c.hypothesis.is_quantifier_free() || !c.conclusion.is_quantifier_free() || !is_counterexample(c, pt)) {
        c.diagnostic = "solver model failed exact re-verification";
        return false;
      }
      c.status = ConditionStatus::Refuted;
      c.witness = std::move(pt);
      return true;
    }
    case SolverAnswer::Unknown:
      c.diagnostic = r.diagnostic.empty() ? "solver answered unknown" : r.diagnostic;
      return false;
    case SolverAnswer::Error:
      c.diagnostic = r.diagnostic;
      return false;
  }
  return false;
}

SideCondition discharge(SideCondition c, const DischargeConfig& config) {
  c.status = ConditionStatus::Unknown;
  c.witness.clear();
  c.diagnostic.clear();
  if (discharge_by_folding(c)) return c;
  if (discharge_by_ideals(c, config)) return c;
  if (discharge_by_sampling(c, config)) return c;
  discharge_by_solver(c, config);
  return c;
}

}  // namespace odeinv
