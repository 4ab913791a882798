#ifndef ODEINV_DARBOUX_HPP
#define ODEINV_DARBOUX_HPP

#include <optional>
#include <vector>

#include "odeinv/ode.hpp"
#include "odeinv/poly_matrix.hpp"
#include "odeinv/polynomial.hpp"
#include "odeinv/rank.hpp"

namespace odeinv {

/// max(0, deg(Lp) - deg(p)).
int default_cofactor_bound(const Polynomial& p, const OdeSystem& sys);

/// g with Lp = g p and deg g <= deg_bound, by a linear solve over the
/// coefficients of g.
std::optional<Polynomial> find_darboux_cofactor(const Polynomial& p, const OdeSystem& sys,
                                                std::optional<int> deg_bound = std::nullopt);

/// max_i deg(L p_i) - min_j deg(p_j), at least 0.
int default_matrix_bound(const std::vector<Polynomial>& pvec, const OdeSystem& sys);

/// G with L(p_i) = sum_j G_ij p_j for every i, one bound shared by all
/// entries.
std::optional<PolyMatrix> find_vectorial_darboux(const std::vector<Polynomial>& pvec, const OdeSystem& sys,
                                                 std::optional<int> deg_bound = std::nullopt);

struct CompanionSystem {
  std::vector<Polynomial> pvec;  // p, Lp, ..., L^{N-1} p
  PolyMatrix g;                  // 1 on the superdiagonal, cofactors in the last row
};

CompanionSystem dri_companion(const RankResult& rank);

}  // namespace odeinv

#endif  // ODEINV_DARBOUX_HPP
