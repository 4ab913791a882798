#include "odeinv/monomial.hpp"

#include <algorithm>
#include <cassert>

namespace odeinv {

Monomial::Monomial(std::vector<Exponent> exps) : exps_(std::move(exps)) {
  for (Exponent e : exps_) degree_ += e;
}

Monomial Monomial::variable(std::size_t nvars, VarId var, Exponent power) {
  Monomial m(nvars);
  m.exps_.at(var) = power;
  m.degree_ = power;
  return m;
}

Monomial Monomial::extended(std::size_t nvars) const {
  Monomial m = *this;
  if (nvars > m.exps_.size()) m.exps_.resize(nvars, 0);
  return m;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  const auto& big = a.exps_.size() >= b.exps_.size() ? a : b;
  const auto& small = a.exps_.size() >= b.exps_.size() ? b : a;
  Monomial m = big;
  for (std::size_t i = 0; i < small.exps_.size(); ++i) m.exps_[i] += small.exps_[i];
  m.degree_ = a.degree_ + b.degree_;
  return m;
}

bool divides(const Monomial& a, const Monomial& b) {
  if (a.degree_ > b.degree_) return false;
  for (std::size_t i = 0; i < a.exps_.size(); ++i)
    if (a.exps_[i] > b[i]) return false;
  return true;
}

Monomial quotient(const Monomial& b, const Monomial& a) {
  assert(divides(a, b));
  Monomial m = b.extended(a.exps_.size());
  for (std::size_t i = 0; i < a.exps_.size(); ++i) m.exps_[i] -= a.exps_[i];
  m.degree_ = b.degree_ - a.degree_;
  return m;
}

Monomial lcm(const Monomial& a, const Monomial& b) {
  std::size_t n = std::max(a.exps_.size(), b.exps_.size());
  std::vector<Monomial::Exponent> e(n);
  for (std::size_t i = 0; i < n; ++i) e[i] = std::max(a[i], b[i]);
  return Monomial(std::move(e));
}

bool coprime(const Monomial& a, const Monomial& b) {
  std::size_t n = std::min(a.exps_.size(), b.exps_.size());
  for (std::size_t i = 0; i < n; ++i)
    if (a.exps_[i] != 0 && b.exps_[i] != 0) return false;
  return true;
}

std::size_t Monomial::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  std::size_t last = exps_.size();
  while (last > 0 && exps_[last - 1] == 0) --last;
  for (std::size_t i = 0; i < last; ++i) h = (h ^ exps_[i]) * 0x100000001b3ULL;
  return h;
}

int compare(const Monomial& a, const Monomial& b, MonomialOrder order) {
  std::size_t n = std::max(a.num_vars(), b.num_vars());
  if (order == MonomialOrder::Grevlex) {
    if (a.degree() != b.degree()) return a.degree() > b.degree() ? 1 : -1;
    for (std::size_t i = n; i-- > 0;) {
      if (a[i] != b[i]) return a[i] < b[i] ? 1 : -1;
    }
    return 0;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] != b[i]) return a[i] > b[i] ? 1 : -1;
  }
  return 0;
}

}  // namespace odeinv
