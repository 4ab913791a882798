#include "odeinv/invariant.hpp"

#include "odeinv/combination.hpp"
#include "odeinv/errors.hpp"

namespace odeinv {

const char* outcome_name(Outcome o) {
  switch (o) {
    case Outcome::Invariant: return "Invariant";
    case Outcome::NotInvariant: return "NotInvariant";
    case Outcome::Unknown: return "Unknown";
  }
  return "Unknown";
}

std::vector<Rational> Verdict::witness() const {
  if (!violated) return {};
  return conditions.at(*violated).witness;
}

std::vector<const SideCondition*> Verdict::pending() const {
  std::vector<const SideCondition*> out;
  for (const auto& c : conditions)
    if (c.status == ConditionStatus::Unknown) out.push_back(&c);
  return out;
}

namespace {

Verdict settle(Verdict v, Certificate cert, const DischargeConfig& config) {
  if (check_certificate(cert, config)) {
    v.outcome = Outcome::Invariant;
    v.certificate = std::move(cert);
  } else {
    v.outcome = Outcome::Unknown;
    v.diagnostics.push_back("certificate failed re-verification");
  }
  return v;
}

Verdict refuted_or_unknown(Verdict v) {
  for (std::size_t i = 0; i < v.conditions.size(); ++i) {
    if (v.conditions[i].status == ConditionStatus::Refuted) {
      v.outcome = Outcome::NotInvariant;
      v.violated = i;
      return v;
    }
  }
  v.outcome = Outcome::Unknown;
  for (const auto& c : v.conditions)
    if (c.status == ConditionStatus::Unknown && !c.diagnostic.empty()) v.diagnostics.push_back(c.provenance + ": " + c.diagnostic);
  return v;
}

std::optional<Polynomial> quotient(const Polynomial& q, const Polynomial& p) {
  if (q.is_zero()) return Polynomial(q.num_vars());
  if (p.is_zero() || q.degree() < p.degree()) return std::nullopt;
  auto c = bounded_combination({p}, q, {static_cast<int>(q.degree() - p.degree())});
  if (!c) return std::nullopt;
  return c->front();
}

}  // namespace

Verdict check_algebraic_invariance(const Polynomial& p_in, const OdeSystem& sys,
                                   const std::optional<Polynomial>& domain_in, const InvariantConfig& config) {
  Polynomial p = p_in.extended(sys.num_vars());
  std::optional<Polynomial> domain;
  if (domain_in) domain = domain_in->extended(sys.num_vars());
  Verdict v;
  RankResult r;
  try {
    r = rank(p, sys, config.cap);
  } catch (const ResourceError& e) {
    v.diagnostics.push_back(e.what());
    return v;
  }
  SideCondition cond = dri_condition(p, domain, r, sys.table());
  std::vector<Polynomial> quotients;
  for (std::size_t i = 0; i < r.n; ++i) {
    auto q = quotient(r.chain[i], p);
    if (!q) break;
    quotients.push_back(*q);
  }
  if (quotients.size() == r.n) {
    cond.status = ConditionStatus::ProvedByIdealReduction;
    v.conditions.push_back(cond);
    return settle(std::move(v), Certificate{sys.table(), sys, DriCertificate{p, domain, r, quotients, std::nullopt}},
                  config.discharge);
  }
  cond = discharge(std::move(cond), config.discharge);
  v.conditions.push_back(cond);
  if (cond.proved())
    return settle(std::move(v), Certificate{sys.table(), sys, DriCertificate{p, domain, r, {}, cond}},
                  config.discharge);
  return refuted_or_unknown(std::move(v));
}

Verdict check_semialgebraic_invariance(const NormalForm& p, const NormalForm& q, const OdeSystem& sys,
                                       const InvariantConfig& config) {
  Verdict v;
  SaiPremises premises;
  try {
    premises = sai_premises(p, q, sys, config.cap);
  } catch (const ResourceError& e) {
    v.diagnostics.push_back(e.what());
    return v;
  }
  const VarTable& vars = sys.table();
  SideCondition fw = make_condition(vars, premises.forward_hypothesis, premises.forward,
                                    "sai forward: P & Q & progress(Q) -> progress(P)");
  SideCondition bw = make_condition(vars, premises.backward_hypothesis, premises.backward,
                                    "sai backward: !P & Q & progress-(Q) -> progress-(!P)");
  if (p.is_open()) {
    fw.status = ConditionStatus::ProvedIdentity;
    fw.diagnostic = "open set";
  } else {
    fw = discharge(std::move(fw), config.discharge);
  }
  if (p.is_closed()) {
    bw.status = ConditionStatus::ProvedIdentity;
    bw.diagnostic = "closed set";
  } else {
    bw = discharge(std::move(bw), config.discharge);
  }
  v.conditions = {fw, bw};
  if (fw.proved() && bw.proved())
    return settle(std::move(v),
                  Certificate{vars, sys, SaiCertificate{p, q, premises.forward, premises.backward, {fw, bw}}},
                  config.discharge);
  return refuted_or_unknown(std::move(v));
}

}  // namespace odeinv
