#ifndef ODEINV_CERTIFICATE_HPP
#define ODEINV_CERTIFICATE_HPP

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "odeinv/formula.hpp"
#include "odeinv/hybrid.hpp"
#include "odeinv/normal_form.hpp"
#include "odeinv/ode.hpp"
#include "odeinv/poly_matrix.hpp"
#include "odeinv/rank.hpp"
#include "odeinv/side_condition.hpp"

namespace odeinv {

/// Lp = g p (relation Eq), or Lp >= g p / Lp > g p for the inequality
/// variants.
struct DarbouxCertificate {
  Polynomial p;
  Polynomial g;
  Rel relation = Rel::Eq;
};

struct VectorialDarbouxCertificate {
  std::vector<Polynomial> pvec;
  PolyMatrix g;
};

/// p = 0 is invariant under x' = f & r != 0. Evidence is either the
/// quotients L^i p / p (i < N) or a proved side condition
/// p = 0 & r != 0 -> L^0 p = 0 & ... & L^{N-1} p = 0.
struct DriCertificate {
  Polynomial p;
  std::optional<Polynomial> domain;
  RankResult rank;
  std::vector<Polynomial> quotients;
  std::optional<SideCondition> condition;
};

/// conditions[0] is the forward premise, conditions[1] the backward one.
struct SaiCertificate {
  NormalForm p;
  NormalForm q;
  Formula forward;
  Formula backward;
  std::vector<SideCondition> conditions;
};

struct HpReductionCertificate {
  HybridProgram program;
  Polynomial p;
  ReductionTrace trace;
};

struct Certificate {
  VarTable vars;
  std::optional<OdeSystem> sys;  // absent for HpReduction
  std::variant<DarbouxCertificate, VectorialDarbouxCertificate, DriCertificate, SaiCertificate,
               HpReductionCertificate>
      evidence;

  /// "darboux", "vdbx", "dri", "sai" or "hp-reduce".
  std::string kind() const;
  /// Throws Error when the certificate carries no system.
  const OdeSystem& system() const;
};

inline constexpr int kCertificateVersion = 1;

Certificate darboux_certificate(const OdeSystem& sys, Polynomial p, Polynomial g, Rel relation = Rel::Eq);
Certificate vectorial_certificate(const OdeSystem& sys, std::vector<Polynomial> pvec, PolyMatrix g);

/// The side condition a DRI certificate must discharge.
SideCondition dri_condition(const Polynomial& p, const std::optional<Polynomial>& domain, const RankResult& rank,
                            const VarTable& vars);

/// SAI premises. The forward condition is P & Q & progress(Q) -> progress(P);
/// the backward one is !P & Q & progress-(Q) -> progress-(!P) over the
/// reversed system.
struct SaiPremises {
  Formula forward_hypothesis, forward;
  Formula backward_hypothesis, backward;
};
SaiPremises sai_premises(const NormalForm& p, const NormalForm& q, const OdeSystem& sys,
                         std::size_t cap = kDefaultRankCap);

/// Re-verifies every identity the certificate asserts with exact
/// arithmetic; side conditions are discharged afresh (sampling disabled).
bool check_certificate(const Certificate& cert, const DischargeConfig& config = {});

nlohmann::json certificate_to_json(const Certificate& cert);
/// Throws FormatError on malformed documents or unsupported versions and
/// ParseError for unreadable polynomials or formulas.
Certificate certificate_from_json(const nlohmann::json& doc);

nlohmann::json side_condition_to_json(const SideCondition& c);
SideCondition side_condition_from_json(const nlohmann::json& doc, const VarTable& vars);

}  // namespace odeinv

#endif  // ODEINV_CERTIFICATE_HPP
