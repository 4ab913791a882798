#ifndef ODEINV_COMBINATION_HPP
#define ODEINV_COMBINATION_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "odeinv/groebner.hpp"
#include "odeinv/polynomial.hpp"

namespace odeinv {

/// Solves A x = b exactly for a sparse matrix given by columns. Free
/// variables are set to zero. nullopt if the system is inconsistent.
struct SparseColumn {
  std::vector<std::pair<std::size_t, Rational>> entries;  // (row, value)
};
std::optional<std::vector<Rational>> solve_sparse(std::size_t rows, const std::vector<SparseColumn>& columns,
                                                  const std::vector<std::pair<std::size_t, Rational>>& rhs);

/// Cofactors c_i with sum c_i * gens[i] = target and deg c_i <= bounds[i]
/// (a negative bound forces c_i = 0), by linear algebra over the unknown
/// coefficients. nullopt if none exist within the bounds or the number of
/// unknowns exceeds max_unknowns.
std::optional<std::vector<Polynomial>> bounded_combination(const std::vector<Polynomial>& gens,
                                                           const Polynomial& target, const std::vector<int>& bounds,
                                                           std::size_t max_unknowns = 20000);

/// Cofactors expressing target over gens, for a target already known to lie
/// in the ideal. Low-degree solutions from bounded_combination are preferred
/// since they are usually far smaller than the ones a tracked Groebner basis
/// yields; the tracked basis is the fallback.
std::vector<Polynomial> combination_witness(const std::vector<Polynomial>& gens, const Polynomial& target,
                                            const GroebnerOptions& options = {});

/// All monomials in nvars variables of total degree <= degree, in
/// ascending grevlex order.
std::vector<Monomial> monomials_up_to(std::size_t nvars, int degree);

}  // namespace odeinv

#endif  // ODEINV_COMBINATION_HPP
