#include "odeinv/polynomial.hpp"

#include <algorithm>
#include <sstream>

#include "odeinv/errors.hpp"

namespace odeinv {

namespace {

bool term_greater(const Polynomial::Term& a, const Polynomial::Term& b) {
  return compare(a.first, b.first, MonomialOrder::Grevlex) > 0;
}

std::string monomial_text(const Monomial& m, const VarTable& vars) {
  std::string out;
  for (VarId i = 0; i < m.num_vars(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += i < vars.size() ? vars.name(i) : "x" + std::to_string(i);
    if (m[i] > 1) out += "^" + std::to_string(m[i]);
  }
  return out;
}

}  // namespace

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  if (c != 0) p.terms_.emplace_back(Monomial(nvars), c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, VarId var) {
  Polynomial p(nvars);
  p.terms_.emplace_back(Monomial::variable(nvars, var), Rational(1));
  return p;
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p(m.num_vars());
  if (c != 0) p.terms_.emplace_back(m, c);
  return p;
}

Polynomial Polynomial::from_terms(std::size_t nvars, std::vector<Term> terms) {
  for (const auto& t : terms) nvars = std::max(nvars, t.first.num_vars());
  for (auto& t : terms)
    if (t.first.num_vars() < nvars) t.first = t.first.extended(nvars);
  std::sort(terms.begin(), terms.end(), term_greater);
  Polynomial p(nvars);
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().first == t.first) {
      p.terms_.back().second += t.second;
      if (p.terms_.back().second == 0) p.terms_.pop_back();
    } else if (t.second != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().first.is_one());
}

Rational Polynomial::constant_term() const {
  if (!terms_.empty() && terms_.back().first.is_one()) return terms_.back().second;
  return 0;
}

long Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<long>(terms_.front().first.degree());
}

long Polynomial::degree_in(VarId var) const {
  if (terms_.empty()) return -1;
  long d = 0;
  for (const auto& t : terms_) d = std::max<long>(d, t.first[var]);
  return d;
}

bool Polynomial::mentions(VarId var) const {
  return std::any_of(terms_.begin(), terms_.end(), [&](const Term& t) { return t.first[var] != 0; });
}

void Polynomial::pad_to(std::size_t nvars) {
  if (nvars <= nvars_) return;
  nvars_ = nvars;
  for (auto& t : terms_) t.first = t.first.extended(nvars);
}

Polynomial Polynomial::extended(std::size_t nvars) const {
  Polynomial p = *this;
  p.pad_to(nvars);
  return p;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.second = -t.second;
  return p;
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  if (other.is_zero()) {
    pad_to(other.nvars_);
    return *this;
  }
  pad_to(other.nvars_);
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    int c = a == terms_.end()         ? -1
            : b == other.terms_.end() ? 1
                                      : compare(a->first, b->first, MonomialOrder::Grevlex);
    if (c > 0) {
      merged.push_back(std::move(*a++));
    } else if (c < 0) {
      merged.emplace_back(b->first.extended(nvars_), b->second);
      ++b;
    } else {
      Rational sum = a->second + b->second;
      if (sum != 0) merged.emplace_back(std::move(a->first), std::move(sum));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  std::size_t nvars = std::max(a.nvars_, b.nvars_);
  if (a.is_zero() || b.is_zero()) return Polynomial(nvars);
  if (b.is_constant()) return a.extended(nvars) * b.terms_.front().second;
  if (a.is_constant()) return b.extended(nvars) * a.terms_.front().second;
  std::vector<Polynomial::Term> products;
  products.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) products.emplace_back(ta.first * tb.first, ta.second * tb.second);
  return Polynomial::from_terms(nvars, std::move(products));
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

Polynomial Polynomial::pow(long exponent) const {
  if (exponent < 0) throw NonPolynomialError("non-polynomial: negative exponent " + std::to_string(exponent));
  Polynomial result = constant(nvars_, 1);
  Polynomial base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent > 0) base *= base;
  }
  return result;
}

Polynomial pow(const Polynomial& p, long exponent) { return p.pow(exponent); }

Polynomial Polynomial::partial_derivative(VarId var) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& [m, c] : terms_) {
    auto e = m[var];
    if (e == 0) continue;
    std::vector<Monomial::Exponent> exps = m.exponents();
    exps[var] -= 1;
    out.emplace_back(Monomial(std::move(exps)), c * e);
  }
  // Every surviving monomial is divided by the same variable, which keeps
  // the term order intact.
  Polynomial p(nvars_);
  p.terms_ = std::move(out);
  return p;
}

Polynomial Polynomial::substitute(const std::map<VarId, Polynomial>& subst) const {
  if (subst.empty()) return *this;
  std::size_t nvars = nvars_;
  for (const auto& [v, q] : subst) nvars = std::max(nvars, q.num_vars());
  std::map<std::pair<VarId, Monomial::Exponent>, Polynomial> power_cache;
  auto power_of = [&](VarId v, Monomial::Exponent e) -> const Polynomial& {
    auto key = std::make_pair(v, e);
    auto it = power_cache.find(key);
    if (it != power_cache.end()) return it->second;
    return power_cache.emplace(key, subst.at(v).extended(nvars).pow(e)).first->second;
  };
  Polynomial result(nvars);
  for (const auto& [m, c] : terms_) {
    std::vector<Monomial::Exponent> kept = m.extended(nvars).exponents();
    Polynomial factor = constant(nvars, c);
    for (const auto& [v, q] : subst) {
      auto e = m[v];
      if (e == 0) continue;
      kept[v] = 0;
      factor *= power_of(v, e);
    }
    result += factor * monomial(Monomial(std::move(kept)), 1);
  }
  return result;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  std::vector<std::vector<Rational>> powers(nvars_);
  Rational sum = 0;
  Rational term;
  for (const auto& [m, c] : terms_) {
    term = c;
    for (VarId i = 0; i < m.num_vars(); ++i) {
      auto e = m[i];
      if (e == 0) continue;
      if (i >= point.size()) throw DimensionError("evaluation point has too few coordinates");
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(1);
      while (pw.size() <= e) pw.push_back(pw.back() * point[i]);
      term *= pw[e];
    }
    sum += term;
  }
  return sum;
}

Polynomial Polynomial::monic() const {
  if (is_zero()) return *this;
  return *this * Rational(1 / terms_.front().second);
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].second != b.terms_[i].second) return false;
    if (compare(a.terms_[i].first, b.terms_[i].first, MonomialOrder::Grevlex) != 0) return false;
  }
  return true;
}

std::string Polynomial::to_string(const VarTable& vars) const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    bool negative = c < 0;
    Rational magnitude = negative ? Rational(-c) : c;
    if (first) {
      if (negative) out << '-';
    } else {
      out << (negative ? " - " : " + ");
    }
    first = false;
    if (m.is_one()) {
      out << odeinv::to_string(magnitude);
    } else if (magnitude == 1) {
      out << monomial_text(m, vars);
    } else {
      out << odeinv::to_string(magnitude) << '*' << monomial_text(m, vars);
    }
  }
  return out.str();
}

Polynomial exact_divide(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw Error("division by the zero polynomial");
  std::size_t nvars = std::max(a.num_vars(), b.num_vars());
  Polynomial rest = a.extended(nvars);
  Polynomial quot(nvars);
  const auto& [lm, lc] = b.leading_term();
  while (!rest.is_zero()) {
    const auto& [m, c] = rest.leading_term();
    if (!divides(lm, m)) throw Error("polynomial division is not exact");
    Polynomial t = Polynomial::monomial(quotient(m, lm).extended(nvars), c / lc);
    rest -= t * b;
    quot += t;
  }
  return quot;
}

}  // namespace odeinv
