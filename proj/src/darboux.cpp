#include "odeinv/darboux.hpp"

#include <algorithm>

#include "odeinv/combination.hpp"
#include "odeinv/errors.hpp"

namespace odeinv {

int default_cofactor_bound(const Polynomial& p, const OdeSystem& sys) {
  Polynomial lp = lie_derivative(p, sys);
  if (lp.is_zero()) return 0;
  return static_cast<int>(std::max(0L, lp.degree() - p.degree()));
}

std::optional<Polynomial> find_darboux_cofactor(const Polynomial& p, const OdeSystem& sys,
                                                std::optional<int> deg_bound) {
  if (p.is_zero()) throw Error("Darboux cofactor of the zero polynomial");
  int bound = deg_bound.value_or(default_cofactor_bound(p, sys));
  if (bound < 0) throw Error("negative degree bound");
  Polynomial q = p.extended(sys.num_vars());
  auto cof = bounded_combination({q}, lie_derivative(q, sys), {bound});
  if (!cof) return std::nullopt;
  return cof->front();
}

int default_matrix_bound(const std::vector<Polynomial>& pvec, const OdeSystem& sys) {
  long top = 0, low = -1;
  for (const auto& p : pvec) {
    Polynomial lp = lie_derivative(p, sys);
    if (!lp.is_zero()) top = std::max(top, lp.degree());
    if (!p.is_zero()) low = low < 0 ? p.degree() : std::min(low, p.degree());
  }
  return static_cast<int>(std::max(0L, top - std::max(low, 0L)));
}

std::optional<PolyMatrix> find_vectorial_darboux(const std::vector<Polynomial>& pvec, const OdeSystem& sys,
                                                 std::optional<int> deg_bound) {
  if (pvec.empty()) throw Error("empty polynomial vector");
  int bound = deg_bound.value_or(default_matrix_bound(pvec, sys));
  if (bound < 0) throw Error("negative degree bound");
  std::vector<Polynomial> ps;
  for (const auto& p : pvec) ps.push_back(p.extended(sys.num_vars()));
  std::size_t m = ps.size();
  PolyMatrix g(m, m, sys.num_vars());
  std::vector<int> bounds(m, bound);
  // Rows of L(p) = G p are independent linear systems.
  for (std::size_t i = 0; i < m; ++i) {
    auto row = bounded_combination(ps, lie_derivative(ps[i], sys), bounds);
    if (!row) return std::nullopt;
    for (std::size_t j = 0; j < m; ++j) g(i, j) = (*row)[j];
  }
  return g;
}

CompanionSystem dri_companion(const RankResult& rank) {
  std::size_t n = rank.n;
  std::size_t nvars = rank.chain.front().num_vars();
  CompanionSystem out{{rank.chain.begin(), rank.chain.begin() + static_cast<long>(n)}, PolyMatrix(n, n, nvars)};
  for (std::size_t i = 0; i + 1 < n; ++i) out.g(i, i + 1) = Polynomial::constant(nvars, 1);
  for (std::size_t j = 0; j < n; ++j) out.g(n - 1, j) = rank.cofactors[j];
  return out;
}

}  // namespace odeinv
