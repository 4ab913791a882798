#ifndef ODEINV_SMT_HPP
#define ODEINV_SMT_HPP

#include <map>
#include <optional>
#include <string>

#include "odeinv/formula.hpp"
#include "odeinv/side_condition.hpp"

namespace odeinv {

/// SMT-LIB 2 term for a polynomial, with rationals written as (/ n.0 d.0).
std::string smt_term(const Polynomial& p, const VarTable& vars);
std::string smt_formula(const Formula& f, const VarTable& vars);

/// Satisfiability query for hypothesis & !conclusion over the reals; unsat
/// means the condition is valid.
std::string emit_smtlib(const SideCondition& c);

enum class SolverAnswer { Sat, Unsat, Unknown, Error };

struct SolverResult {
  SolverAnswer answer = SolverAnswer::Error;
  /// Model values that are rational; variables the solver leaves out are
  /// absent. Irrational values are reported in `irrational`.
  std::map<std::string, Rational> model;
  std::vector<std::string> irrational;
  std::string diagnostic;
};

/// Runs the solver on a query file and parses its answer and model.
SolverResult run_solver(const SolverConfig& config, const std::string& query);

/// Parses solver output: the first sat/unsat/unknown line and any
/// define-fun model entries.
SolverResult parse_solver_output(const std::string& output);

}  // namespace odeinv

#endif  // ODEINV_SMT_HPP
