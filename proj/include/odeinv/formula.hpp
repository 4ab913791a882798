#ifndef ODEINV_FORMULA_HPP
#define ODEINV_FORMULA_HPP

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "odeinv/polynomial.hpp"
#include "odeinv/var_table.hpp"

namespace odeinv {

/// Comparison of an atom's polynomial against zero.
enum class Rel { Ge, Gt, Eq, Le, Lt, Ne };

const char* rel_symbol(Rel r);
/// The relation equivalent to the negation of `p r 0`.
Rel negate_rel(Rel r);
/// Truth of `value r 0`.
bool holds(Rel r, int sign);

/// Immutable first-order real-arithmetic formula. Atoms always compare a
/// polynomial against zero. Nodes are shared, so copies are cheap.
class Formula {
 public:
  enum class Kind { True, False, Atom, Not, And, Or, Implies, Forall, Exists };

  Formula();  // true

  static Formula truth();
  static Formula falsity();
  static Formula atom(Polynomial p, Rel rel);
  static Formula negation(Formula f);
  /// Empty -> true, one operand -> the operand itself.
  static Formula conjunction(std::vector<Formula> operands);
  /// Empty -> false, one operand -> the operand itself.
  static Formula disjunction(std::vector<Formula> operands);
  static Formula implication(Formula lhs, Formula rhs);
  static Formula forall(std::vector<VarId> vars, Formula body);
  static Formula exists(std::vector<VarId> vars, Formula body);

  Kind kind() const;
  const Polynomial& polynomial() const;
  Rel relation() const;
  const std::vector<Formula>& children() const;
  const std::vector<VarId>& bound_vars() const;

  bool is_quantifier_free() const;
  /// Every atom polynomial, in traversal order (duplicates kept).
  void collect_atoms(std::vector<const Formula*>& out) const;

  /// Exact truth value at a rational point. Throws UnsupportedInputError for
  /// quantified formulas.
  bool evaluate(std::span<const Rational> point) const;

  /// Memoizes atom polynomial signs at one point; shared between formulas
  /// evaluated at the same point.
  class SignCache {
   public:
    explicit SignCache(std::span<const Rational> point) : point_(point) {}
    int sign_of(const Polynomial& p, std::size_t hash);

   private:
    std::span<const Rational> point_;
    std::unordered_map<std::size_t, std::vector<std::pair<const Polynomial*, int>>> cache_;
  };
  bool evaluate(SignCache& cache) const;

  /// Infix rendering that the formula parser reads back to an equal value.
  std::string to_string(const VarTable& vars) const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  static std::shared_ptr<Node> make_node(Kind kind);
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

std::size_t polynomial_hash(const Polynomial& p);

}  // namespace odeinv

#endif  // ODEINV_FORMULA_HPP
