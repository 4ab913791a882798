#ifndef ODEINV_PARSER_HPP
#define ODEINV_PARSER_HPP

#include <cstddef>
#include <string_view>

#include "odeinv/formula.hpp"
#include "odeinv/hybrid.hpp"
#include "odeinv/ode.hpp"
#include "odeinv/polynomial.hpp"
#include "odeinv/var_table.hpp"

namespace odeinv {

/// Where a parsed snippet starts inside its enclosing file, so errors can
/// report file positions.
struct SourceLocation {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct ParseOptions {
  /// Add unknown identifiers to the table instead of rejecting them.
  bool declare_new = false;
  SourceLocation origin{};
};

/// `+ - * / ^` with the usual precedence; division only by constants.
Polynomial parse_polynomial(std::string_view text, VarTable& vars, const ParseOptions& options = {});

/// Comparisons `= != >= > <= <` between terms, combined with `!`, `&`, `|`
/// and right-associative `->`; `true` and `false` literals.
Formula parse_formula(std::string_view text, VarTable& vars, const ParseOptions& options = {});

/// `x' = f, y' = g, ...`; the system's table is `vars` after parsing.
/// `x := e`, `? r != 0`, `{ x' = f, ... & r != 0 }`, `a ; b`, `a ++ b`,
/// `{ a }*`; braces also group. `;` binds tighter than `++`.
HybridProgram parse_program(std::string_view text, VarTable& vars, const ParseOptions& options = {});

OdeSystem parse_ode(std::string_view text, VarTable& vars, const ParseOptions& options = {});

}  // namespace odeinv

#endif  // ODEINV_PARSER_HPP
