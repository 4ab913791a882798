#ifndef ODEINV_MONOMIAL_HPP
#define ODEINV_MONOMIAL_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "odeinv/var_table.hpp"

namespace odeinv {

enum class MonomialOrder { Grevlex, Lex };

/// Power product x_0^e_0 * ... * x_{n-1}^e_{n-1}; one exponent per variable
/// of the ambient table.
class Monomial {
 public:
  using Exponent = std::uint32_t;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<Exponent> exps);

  static Monomial variable(std::size_t nvars, VarId var, Exponent power = 1);

  std::size_t num_vars() const { return exps_.size(); }
  Exponent operator[](VarId var) const { return var < exps_.size() ? exps_[var] : 0; }
  const std::vector<Exponent>& exponents() const { return exps_; }
  std::uint64_t degree() const { return degree_; }
  bool is_one() const { return degree_ == 0; }

  /// Pads with zero exponents up to `nvars` variables.
  Monomial extended(std::size_t nvars) const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  /// True if a divides b.
  friend bool divides(const Monomial& a, const Monomial& b);
  /// b / a; requires divides(a, b).
  friend Monomial quotient(const Monomial& b, const Monomial& a);
  friend Monomial lcm(const Monomial& a, const Monomial& b);
  friend bool coprime(const Monomial& a, const Monomial& b);

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exps_ == b.exps_; }
  friend bool operator!=(const Monomial& a, const Monomial& b) { return !(a == b); }

  std::size_t hash() const;

 private:
  std::vector<Exponent> exps_;
  std::uint64_t degree_ = 0;
};

/// Three-way comparison: positive if a > b in `order`.
/// Grevlex: total degree first, then the smaller exponent in the last
/// differing variable wins. Lex: variable 0 is the most significant.
int compare(const Monomial& a, const Monomial& b, MonomialOrder order);

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace odeinv

#endif  // ODEINV_MONOMIAL_HPP
