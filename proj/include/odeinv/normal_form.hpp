#ifndef ODEINV_NORMAL_FORM_HPP
#define ODEINV_NORMAL_FORM_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "odeinv/formula.hpp"
#include "odeinv/polynomial.hpp"

namespace odeinv {

/// One disjunct: all geqs >= 0 and all gts > 0. Empty lists mean true.
struct Conjunct {
  std::vector<Polynomial> geqs;
  std::vector<Polynomial> gts;

  friend bool operator==(const Conjunct&, const Conjunct&) = default;
};

/// Disjunction of conjuncts of >= 0 and > 0 atoms. No conjuncts means false.
struct NormalForm {
  std::vector<Conjunct> disjuncts;

  static NormalForm truth() { return NormalForm{{Conjunct{}}}; }
  static NormalForm falsity() { return NormalForm{}; }

  /// Every atom strict (topologically open set).
  bool is_open() const;
  /// Every atom non-strict (topologically closed set).
  bool is_closed() const;

  Formula to_formula() const;
  bool evaluate(std::span<const Rational> point) const;

  friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

struct NormalFormOptions {
  std::size_t max_disjuncts = 4096;
  std::size_t warn_disjuncts = 256;
};

/// Negation normal form, atom rewriting to >= / >, distribution to DNF,
/// per-conjunct literal deduplication and folding of constant atoms.
/// Throws UnsupportedInputError for quantified input and ResourceError when
/// the disjunct limit is exceeded.
NormalForm to_normal_form(const Formula& phi, const NormalFormOptions& options = {});

/// Normal form of the negation, built by flipping every atom
/// (p >= 0 to -p > 0, q > 0 to -q >= 0) and distributing the resulting
/// conjunction of clauses back into a disjunction.
NormalForm negate_normal_form(const NormalForm& nf, const NormalFormOptions& options = {});

/// Single polynomial e with nf <=> e = 0 for a normal form whose conjuncts
/// are all conjunctions of equalities (paired p >= 0, -p >= 0): sums of
/// squares for conjunctions, products for disjunctions. Throws
/// UnsupportedInputError otherwise.
Polynomial algebraic_combine(const NormalForm& nf);

/// Diagnostic sink for the large-DNF warning; defaults to std::clog.
void set_normal_form_warning_handler(void (*handler)(const std::string&));

}  // namespace odeinv

#endif  // ODEINV_NORMAL_FORM_HPP
