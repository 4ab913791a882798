#ifndef ODEINV_PROBLEM_HPP
#define ODEINV_PROBLEM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "odeinv/formula.hpp"
#include "odeinv/hybrid.hpp"
#include "odeinv/ode.hpp"
#include "odeinv/polynomial.hpp"
#include "odeinv/var_table.hpp"

namespace odeinv {

/// Problem description read from `key: value` lines. Lines starting with
/// whitespace continue the previous value; `#` starts a comment.
///
///   vars:        u, v
///   ode:         u' = -v, v' = u
///   domain:      u != 0
///   candidate:   u^2 + v^2 <= 1
///   poly:        u^2 + v^2 - 1
///   polys:       u, v
///   program:     { u := 2*u ; ? v != 0 }*
///   order, cap, deg_bound, samples, seed, timeout: numbers
///   solver:      /usr/local/bin/z3
///   solver_args: -smt2
struct ProblemFile {
  VarTable vars;
  std::optional<OdeSystem> ode;
  std::optional<Formula> domain;
  std::optional<Formula> candidate;
  std::optional<Polynomial> poly;
  std::vector<Polynomial> polys;
  std::optional<HybridProgram> program;
  std::optional<std::size_t> order;
  std::optional<std::size_t> cap;
  std::optional<int> deg_bound;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> solver;
  std::vector<std::string> solver_args;
  std::optional<double> timeout;
};

/// Throws ParseError (with file positions) for unknown or repeated keys,
/// malformed values and undeclared variables, NonPolynomialError for
/// division by non-constants.
ProblemFile parse_problem(std::string_view text);

}  // namespace odeinv

#endif  // ODEINV_PROBLEM_HPP
