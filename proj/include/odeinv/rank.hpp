#ifndef ODEINV_RANK_HPP
#define ODEINV_RANK_HPP

#include <cstddef>
#include <vector>

#include "odeinv/errors.hpp"
#include "odeinv/groebner.hpp"
#include "odeinv/ode.hpp"
#include "odeinv/polynomial.hpp"

namespace odeinv {

inline constexpr std::size_t kDefaultRankCap = 20;

/// Smallest N >= 1 with L^N p = sum_{i<N} g_i L^i p, together with the
/// cofactors g_0..g_{N-1} and the Lie chain p, Lp, ..., L^N p.
struct RankResult {
  std::size_t n = 1;
  std::vector<Polynomial> cofactors;
  std::vector<Polynomial> chain;  // L^0 p .. L^N p (N+1 entries)
};

/// Raised when no rank is found within the cap; carries the Lie chain
/// computed so far.
class RankCapExceeded : public ResourceError {
 public:
  RankCapExceeded(std::size_t cap, std::vector<Polynomial> partial_chain)
      : ResourceError("rank exceeds cap " + std::to_string(cap)), chain_(std::move(partial_chain)) {}
  const std::vector<Polynomial>& partial_chain() const { return chain_; }

 private:
  std::vector<Polynomial> chain_;
};

/// Computes the rank by successive membership checks
/// L^N p in <p, ..., L^{N-1} p>, warm-starting each Groebner basis from the
/// previous one.
RankResult rank(const Polynomial& p, const OdeSystem& sys, std::size_t cap = kDefaultRankCap,
                const GroebnerOptions& options = {});

/// True if L^N p - sum g_i L^i p is exactly zero for the recorded data.
bool rank_identity_holds(const RankResult& r, const Polynomial& p, const OdeSystem& sys);

/// [p, Lp, ..., L^{N-1} p]; the conjunction of their zero equations is the
/// differential radical formula of p.
std::vector<Polynomial> differential_radical(const Polynomial& p, const OdeSystem& sys,
                                             std::size_t cap = kDefaultRankCap);

}  // namespace odeinv

#endif  // ODEINV_RANK_HPP
