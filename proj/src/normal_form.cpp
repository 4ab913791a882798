#include "odeinv/normal_form.hpp"

#include <algorithm>
#include <iostream>

#include "odeinv/errors.hpp"

namespace odeinv {

namespace {

void default_warning(const std::string& msg) { std::clog << "warning: " << msg << '\n'; }
void (*warning_handler)(const std::string&) = default_warning;

using Dnf = std::vector<Conjunct>;

void push_unique(std::vector<Polynomial>& list, const Polynomial& p) {
  if (std::find(list.begin(), list.end(), p) == list.end()) list.push_back(p);
}

Conjunct merge(const Conjunct& a, const Conjunct& b) {
  Conjunct out = a;
  for (const auto& p : b.geqs) push_unique(out.geqs, p);
  for (const auto& q : b.gts) push_unique(out.gts, q);
  return out;
}

void check_limit(std::size_t n, const NormalFormOptions& options) {
  if (n > options.max_disjuncts)
    throw ResourceError("normal form exceeds the disjunct limit of " + std::to_string(options.max_disjuncts));
}

Dnf distribute(const std::vector<Dnf>& factors, const NormalFormOptions& options) {
  Dnf result{Conjunct{}};
  for (const auto& factor : factors) {
    check_limit(result.size() * factor.size(), options);
    Dnf next;
    next.reserve(result.size() * factor.size());
    for (const auto& r : result)
      for (const auto& f : factor) next.push_back(merge(r, f));
    result = std::move(next);
  }
  return result;
}

Dnf atom_dnf(const Polynomial& p, Rel rel) {
  if (p.is_constant()) {
    int s = sgn(p.constant_term());
    return holds(rel, s) ? Dnf{Conjunct{}} : Dnf{};
  }
  switch (rel) {
    case Rel::Ge: return {Conjunct{{p}, {}}};
    case Rel::Gt: return {Conjunct{{}, {p}}};
    case Rel::Eq: return {Conjunct{{p, -p}, {}}};
    case Rel::Le: return {Conjunct{{-p}, {}}};
    case Rel::Lt: return {Conjunct{{}, {-p}}};
    case Rel::Ne: return {Conjunct{{}, {p}}, Conjunct{{}, {-p}}};
  }
  return {};
}

Dnf to_dnf(const Formula& f, bool negated, const NormalFormOptions& options) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::True: return negated ? Dnf{} : Dnf{Conjunct{}};
    case K::False: return negated ? Dnf{Conjunct{}} : Dnf{};
    case K::Atom: return atom_dnf(f.polynomial(), negated ? negate_rel(f.relation()) : f.relation());
    case K::Not: return to_dnf(f.children()[0], !negated, options);
    case K::And:
    case K::Or: {
      bool conjunctive = (f.kind() == K::And) != negated;
      std::vector<Dnf> parts;
      for (const auto& c : f.children()) parts.push_back(to_dnf(c, negated, options));
      if (conjunctive) return distribute(parts, options);
      Dnf out;
      for (auto& p : parts) {
        check_limit(out.size() + p.size(), options);
        out.insert(out.end(), p.begin(), p.end());
      }
      return out;
    }
    case K::Implies: {
      // a -> b  ==  !a | b ;  !(a -> b)  ==  a & !b
      Dnf lhs = to_dnf(f.children()[0], !negated, options);
      Dnf rhs = to_dnf(f.children()[1], negated, options);
      if (negated) return distribute({lhs, rhs}, options);
      check_limit(lhs.size() + rhs.size(), options);
      lhs.insert(lhs.end(), rhs.begin(), rhs.end());
      return lhs;
    }
    case K::Forall:
    case K::Exists:
      throw UnsupportedInputError("quantified formulas have no normal form here; use SMT export instead");
  }
  return {};
}

void maybe_warn(std::size_t n, const NormalFormOptions& options) {
  if (n > options.warn_disjuncts) warning_handler("normal form has " + std::to_string(n) + " disjuncts");
}

}  // namespace

void set_normal_form_warning_handler(void (*handler)(const std::string&)) {
  warning_handler = handler ? handler : default_warning;
}

bool NormalForm::is_open() const {
  return std::all_of(disjuncts.begin(), disjuncts.end(), [](const Conjunct& c) { return c.geqs.empty(); });
}

bool NormalForm::is_closed() const {
  return std::all_of(disjuncts.begin(), disjuncts.end(), [](const Conjunct& c) { return c.gts.empty(); });
}

Formula NormalForm::to_formula() const {
  std::vector<Formula> ds;
  for (const auto& c : disjuncts) {
    std::vector<Formula> atoms;
    for (const auto& p : c.geqs) atoms.push_back(Formula::atom(p, Rel::Ge));
    for (const auto& q : c.gts) atoms.push_back(Formula::atom(q, Rel::Gt));
    ds.push_back(Formula::conjunction(std::move(atoms)));
  }
  return Formula::disjunction(std::move(ds));
}

bool NormalForm::evaluate(std::span<const Rational> point) const {
  for (const auto& c : disjuncts) {
    bool ok = true;
    for (const auto& p : c.geqs)
      if (!(ok = p.evaluate(point) >= 0)) break;
    if (ok)
      for (const auto& q : c.gts)
        if (!(ok = q.evaluate(point) > 0)) break;
    if (ok) return true;
  }
  return false;
}

NormalForm to_normal_form(const Formula& phi, const NormalFormOptions& options) {
  if (!phi.is_quantifier_free())
    throw UnsupportedInputError("quantified formulas have no normal form here; use SMT export instead");
  NormalForm nf{to_dnf(phi, false, options)};
  maybe_warn(nf.disjuncts.size(), options);
  return nf;
}

NormalForm negate_normal_form(const NormalForm& nf, const NormalFormOptions& options) {
  std::vector<Dnf> clauses;
  for (const auto& c : nf.disjuncts) {
    Dnf clause;
    for (const auto& p : c.geqs) clause.push_back(Conjunct{{}, {-p}});
    for (const auto& q : c.gts) clause.push_back(Conjunct{{-q}, {}});
    clauses.push_back(std::move(clause));
  }
  NormalForm out{distribute(clauses, options)};
  maybe_warn(out.disjuncts.size(), options);
  return out;
}

Polynomial algebraic_combine(const NormalForm& nf) {
  Polynomial product = Polynomial::constant(0, 1);
  for (const auto& c : nf.disjuncts) {
    if (!c.gts.empty()) throw UnsupportedInputError("not an algebraic formula: strict inequality present");
    std::vector<bool> used(c.geqs.size(), false);
    std::vector<Polynomial> equations;
    for (std::size_t i = 0; i < c.geqs.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      if (c.geqs[i].is_zero()) {
        equations.push_back(c.geqs[i]);
        continue;
      }
      Polynomial neg = -c.geqs[i];
      bool matched = false;
      for (std::size_t j = i + 1; j < c.geqs.size() && !matched; ++j) {
        if (!used[j] && c.geqs[j] == neg) used[j] = matched = true;
      }
      if (!matched) throw UnsupportedInputError("not an algebraic formula: unpaired inequality");
      equations.push_back(c.geqs[i]);
    }
    Polynomial conj;
    if (equations.size() == 1) {
      conj = equations.front();
    } else {
      for (const auto& e : equations) conj += e * e;
    }
    product *= conj;
  }
  return product;
}

}  // namespace odeinv
