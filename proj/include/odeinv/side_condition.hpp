#ifndef ODEINV_SIDE_CONDITION_HPP
#define ODEINV_SIDE_CONDITION_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "odeinv/formula.hpp"
#include "odeinv/rational.hpp"
#include "odeinv/var_table.hpp"

namespace odeinv {

enum class ConditionStatus { Unknown, ProvedIdentity, ProvedByIdealReduction, SmtValid, Refuted };

const char* status_name(ConditionStatus s);
std::optional<ConditionStatus> parse_status(std::string_view name);

/// Universally quantified arithmetic obligation: for all values of the
/// table's variables, hypothesis -> conclusion.
struct SideCondition {
  VarTable vars;
  Formula hypothesis;
  Formula conclusion;
  ConditionStatus status = ConditionStatus::Unknown;
  std::vector<Rational> witness;  // Refuted: hypothesis holds, conclusion fails
  std::string provenance;
  std::string diagnostic;

  bool proved() const {
    return status == ConditionStatus::ProvedIdentity || status == ConditionStatus::ProvedByIdealReduction ||
           status == ConditionStatus::SmtValid;
  }
  Formula as_implication() const { return Formula::implication(hypothesis, conclusion); }
};

inline SideCondition make_condition(VarTable vars, Formula hypothesis, Formula conclusion,
                                    std::string provenance = {}) {
  SideCondition c;
  c.vars = std::move(vars);
  c.hypothesis = std::move(hypothesis);
  c.conclusion = std::move(conclusion);
  c.provenance = std::move(provenance);
  return c;
}

struct SolverConfig {
  std::string path;
  std::vector<std::string> args;
  double timeout_seconds = 20;
};

struct DischargeConfig {
  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  /// Non-strict hypothesis facts split into "> 0" and "= 0" cases per
  /// disjunct by the ideal tier.
  std::size_t split_limit = 6;
  std::optional<SolverConfig> solver;
};

/// Fills in the status: constant folding, then ideal reduction, then random
/// rational sampling for counterexamples, then the external solver when one
/// is configured. Never returns Refuted without a point at which the
/// hypothesis holds and the conclusion fails exactly.
SideCondition discharge(SideCondition c, const DischargeConfig& config = {});

/// The individual tiers, exposed for testing. Each returns true when it
/// settled the condition.
bool discharge_by_folding(SideCondition& c);
bool discharge_by_ideals(SideCondition& c, const DischargeConfig& config);
bool discharge_by_sampling(SideCondition& c, const DischargeConfig& config);
bool discharge_by_solver(SideCondition& c, const DischargeConfig& config);

/// Exact check that the hypothesis holds and the conclusion fails at point.
bool is_counterexample(const SideCondition& c, std::span<const Rational> point);

}  // namespace odeinv

#endif  // ODEINV_SIDE_CONDITION_HPP
