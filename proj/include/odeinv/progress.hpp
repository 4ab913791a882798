#ifndef ODEINV_PROGRESS_HPP
#define ODEINV_PROGRESS_HPP

#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "odeinv/formula.hpp"
#include "odeinv/normal_form.hpp"
#include "odeinv/ode.hpp"
#include "odeinv/rank.hpp"

namespace odeinv {

/// Builds local-progress formulas for one ODE, caching ranks so that atoms
/// repeated across a normal form are analysed once. Formulas always use the
/// full rank; no early cut-off is applied.
class ProgressBuilder {
 public:
  explicit ProgressBuilder(OdeSystem sys, std::size_t cap = kDefaultRankCap);

  const OdeSystem& system() const { return sys_; }
  const RankResult& rank_of(const Polynomial& p);

  /// p >= 0 & (p = 0 -> Lp >= 0) & ... & (p = 0 & ... & L^{N-2}p = 0 -> L^{N-1}p > 0);
  /// for N = 1 just p > 0.
  Formula gt(const Polynomial& p);
  /// The differential radical formula: L^i p = 0 for all i < N.
  Formula radical(const Polynomial& p);
  /// gt(p) | radical(p).
  Formula geq(const Polynomial& p);
  /// Disjunction over the conjuncts of geq/gt progress of their atoms.
  Formula semialgebraic(const NormalForm& nf);

 private:
  OdeSystem sys_;
  std::size_t cap_;
  std::unordered_map<std::size_t, std::vector<std::pair<Polynomial, RankResult>>> ranks_;
};

Formula progress_gt(const Polynomial& p, const OdeSystem& sys, std::size_t cap = kDefaultRankCap);
Formula progress_geq(const Polynomial& p, const OdeSystem& sys, std::size_t cap = kDefaultRankCap);
Formula radical_formula(const Polynomial& p, const OdeSystem& sys, std::size_t cap = kDefaultRankCap);
/// Forward progress; pass reverse(sys) for the backward variant.
Formula semialg_progress(const NormalForm& nf, const OdeSystem& sys, std::size_t cap = kDefaultRankCap);

}  // namespace odeinv

#endif  // ODEINV_PROGRESS_HPP
