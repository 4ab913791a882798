#include "odeinv/rank.hpp"

#include "odeinv/combination.hpp"
#include "odeinv/errors.hpp"

namespace odeinv {

RankResult rank(const Polynomial& p, const OdeSystem& sys, std::size_t cap, const GroebnerOptions& options) {
  std::size_t nvars = std::max(p.num_vars(), sys.num_vars());
  RankResult result;
  if (p.is_zero()) {
    result.n = 1;
    result.cofactors = {Polynomial(nvars)};
    result.chain = {Polynomial(nvars), Polynomial(nvars)};
    return result;
  }
  // Membership is decided on untracked bases; witnesses are extracted once
  // for the final chain.
  GroebnerOptions search = options;
  search.track_cofactors = false;
  std::vector<Polynomial> chain{p.extended(nvars)};
  GroebnerBasis gb = groebner(chain, search);
  for (std::size_t n = 1; n <= cap; ++n) {
    chain.push_back(lie_derivative(chain.back(), sys));
    if (gb.contains(chain.back())) {
      std::vector<Polynomial> lower(chain.begin(), chain.end() - 1);
      result.n = n;
      result.cofactors = combination_witness(lower, chain.back(), options);
      result.chain = std::move(chain);
      return result;
    }
    if (n == cap) break;
    gb = extend_groebner(gb, chain.back(), search);
  }
  throw RankCapExceeded(cap, std::move(chain));
}

bool rank_identity_holds(const RankResult& r, const Polynomial& p, const OdeSystem& sys) {
  if (r.n < 1 || r.cofactors.size() != r.n) return false;
  std::vector<Polynomial> chain = lie_chain(p, sys, r.n + 1);
  Polynomial combination;
  for (std::size_t i = 0; i < r.n; ++i) combination += r.cofactors[i] * chain[i];
  return (chain[r.n] - combination).is_zero();
}

std::vector<Polynomial> differential_radical(const Polynomial& p, const OdeSystem& sys, std::size_t cap) {
  RankResult r = rank(p, sys, cap);
  r.chain.resize(r.n);
  return r.chain;
}

}  // namespace odeinv
