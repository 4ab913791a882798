#ifndef ODEINV_INVARIANT_HPP
#define ODEINV_INVARIANT_HPP

#include <optional>
#include <string>
#include <vector>

#include "odeinv/certificate.hpp"
#include "odeinv/normal_form.hpp"
#include "odeinv/ode.hpp"
#include "odeinv/side_condition.hpp"

namespace odeinv {

enum class Outcome { Invariant, NotInvariant, Unknown };

const char* outcome_name(Outcome o);

struct Verdict {
  Outcome outcome = Outcome::Unknown;
  /// Present exactly for Invariant, and only after check_certificate accepted it.
  std::optional<Certificate> certificate;
  /// Every side condition generated, with its final status.
  std::vector<SideCondition> conditions;
  /// NotInvariant: index of the refuted condition.
  std::optional<std::size_t> violated;
  std::vector<std::string> diagnostics;

  /// The counterexample of the violated condition, empty otherwise.
  std::vector<Rational> witness() const;
  std::vector<const SideCondition*> pending() const;
};

struct InvariantConfig {
  DischargeConfig discharge;
  std::size_t cap = kDefaultRankCap;
};

/// Validity of p = 0 -> [x' = f & r != 0] p = 0 (no domain: r != 0 is
/// dropped), via the condition p = 0 & r != 0 -> L^i p = 0 for all i < N.
/// Divisibility of every L^i p by p proves it directly; otherwise the
/// condition goes through the discharge tiers.
Verdict check_algebraic_invariance(const Polynomial& p, const OdeSystem& sys,
                                   const std::optional<Polynomial>& domain = std::nullopt,
                                   const InvariantConfig& config = {});

/// Validity of P -> [x' = f & Q] P through the forward and backward local
/// progress premises. An open P settles the forward premise and a closed P
/// the backward one without further work.
Verdict check_semialgebraic_invariance(const NormalForm& p, const NormalForm& q, const OdeSystem& sys,
                                       const InvariantConfig& config = {});

}  // namespace odeinv

#endif  // ODEINV_INVARIANT_HPP
