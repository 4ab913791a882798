#include "odeinv/progress.hpp"

namespace odeinv {

ProgressBuilder::ProgressBuilder(OdeSystem sys, std::size_t cap) : sys_(std::move(sys)), cap_(cap) {}

const RankResult& ProgressBuilder::rank_of(const Polynomial& p) {
  auto& bucket = ranks_[polynomial_hash(p)];
  for (const auto& [q, r] : bucket)
    if (q == p) return r;
  bucket.emplace_back(p, rank(p, sys_, cap_));
  return bucket.back().second;
}

Formula ProgressBuilder::gt(const Polynomial& p) {
  const RankResult& r = rank_of(p);
  std::size_t n = r.n;
  std::vector<Formula> conjuncts;
  std::vector<Formula> vanishing;
  for (std::size_t k = 0; k < n; ++k) {
    Rel rel = k + 1 == n ? Rel::Gt : Rel::Ge;
    Formula bound = Formula::atom(r.chain[k], rel);
    if (k == 0) {
      conjuncts.push_back(bound);
    } else {
      conjuncts.push_back(Formula::implication(Formula::conjunction(vanishing), bound));
    }
    vanishing.push_back(Formula::atom(r.chain[k], Rel::Eq));
  }
  return Formula::conjunction(std::move(conjuncts));
}

Formula ProgressBuilder::radical(const Polynomial& p) {
  const RankResult& r = rank_of(p);
  std::vector<Formula> eqs;
  for (std::size_t k = 0; k < r.n; ++k) eqs.push_back(Formula::atom(r.chain[k], Rel::Eq));
  return Formula::conjunction(std::move(eqs));
}

Formula ProgressBuilder::geq(const Polynomial& p) { return Formula::disjunction({gt(p), radical(p)}); }

Formula ProgressBuilder::semialgebraic(const NormalForm& nf) {
  std::vector<Formula> disjuncts;
  for (const auto& c : nf.disjuncts) {
    std::vector<Formula> parts;
    for (const auto& p : c.geqs) parts.push_back(geq(p));
    for (const auto& q : c.gts) parts.push_back(gt(q));
    disjuncts.push_back(Formula::conjunction(std::move(parts)));
  }
  return Formula::disjunction(std::move(disjuncts));
}

Formula progress_gt(const Polynomial& p, const OdeSystem& sys, std::size_t cap) {
  return ProgressBuilder(sys, cap).gt(p);
}

Formula progress_geq(const Polynomial& p, const OdeSystem& sys, std::size_t cap) {
  return ProgressBuilder(sys, cap).geq(p);
}

Formula radical_formula(const Polynomial& p, const OdeSystem& sys, std::size_t cap) {
  return ProgressBuilder(sys, cap).radical(p);
}

Formula semialg_progress(const NormalForm& nf, const OdeSystem& sys, std::size_t cap) {
  return ProgressBuilder(sys, cap).semialgebraic(nf);
}

}  // namespace odeinv
