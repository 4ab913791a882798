#ifndef ODEINV_POLYNOMIAL_HPP
#define ODEINV_POLYNOMIAL_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "odeinv/monomial.hpp"
#include "odeinv/rational.hpp"
#include "odeinv/var_table.hpp"

namespace odeinv {

/// Multivariate polynomial over the rationals in canonical form: terms are
/// stored in strictly decreasing grevlex order and no coefficient is zero,
/// so equal polynomials have identical term lists.
///
/// Operands over tables of different lengths are combined by padding the
/// shorter one; since tables only grow at the end this is the natural
/// embedding of the smaller ring.
class Polynomial {
 public:
  using Term = std::pair<Monomial, Rational>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : nvars_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial variable(std::size_t nvars, VarId var);
  static Polynomial monomial(const Monomial& m, const Rational& c);
  /// Builds a polynomial from arbitrary (unsorted, possibly repeated or
  /// zero) terms.
  static Polynomial from_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t num_vars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Constant term (zero if absent).
  Rational constant_term() const;
  /// Total degree; -1 for the zero polynomial.
  long degree() const;
  long degree_in(VarId var) const;
  /// True if some term mentions `var`.
  bool mentions(VarId var) const;

  const Term& leading_term() const { return terms_.front(); }

  Polynomial extended(std::size_t nvars) const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }

  /// Non-negative integer power; a negative exponent throws
  /// NonPolynomialError.
  Polynomial pow(long exponent) const;

  Polynomial partial_derivative(VarId var) const;

  /// Simultaneous substitution of the mapped variables.
  Polynomial substitute(const std::map<VarId, Polynomial>& subst) const;

  Rational evaluate(std::span<const Rational> point) const;

  /// Multiplies by the reciprocal of the leading coefficient.
  Polynomial monic() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  /// Canonical rendering, e.g. "-1/2*u^2 - 1/2*v^2".
  std::string to_string(const VarTable& vars) const;

 private:
  void pad_to(std::size_t nvars);

  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

Polynomial pow(const Polynomial& p, long exponent);

/// Exact quotient a / b. Throws Error if b does not divide a.
Polynomial exact_divide(const Polynomial& a, const Polynomial& b);

}  // namespace odeinv

#endif  // ODEINV_POLYNOMIAL_HPP
