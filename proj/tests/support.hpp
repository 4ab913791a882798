#ifndef ODEINV_TESTS_SUPPORT_HPP
#define ODEINV_TESTS_SUPPORT_HPP

#include <random>
#include <string>
#include <vector>

#include "odeinv/ode.hpp"
#include "odeinv/parser.hpp"
#include "odeinv/polynomial.hpp"

namespace odeinv::testing {

inline VarTable uv() { return VarTable({"u", "v"}); }

inline OdeSystem alpha_e() {
  VarTable t = uv();
  return parse_ode("u' = -v + u/4*(1-u^2-v^2), v' = u + v/4*(1-u^2-v^2)", t);
}

inline Polynomial poly(const std::string& text, const OdeSystem& sys) {
  VarTable t = sys.table();
  return parse_polynomial(text, t);
}

inline Polynomial poly(const std::string& text, VarTable t) { return parse_polynomial(text, t); }

inline VarTable xyz(std::size_t n) {
  static const char* names[] = {"x", "y", "z", "w"};
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.emplace_back(names[i]);
  return VarTable(v);
}

/// Sparse random polynomial with small integer coefficients.
inline Polynomial random_poly(std::mt19937_64& rng, std::size_t nvars, int max_deg, int max_terms,
                              int coeff = 3) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<int> deg(0, max_deg);
  std::uniform_int_distribution<int> c(-coeff, coeff);
  std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
  Polynomial p = Polynomial::constant(nvars, 0);
  int k = nterms(rng);
  for (int i = 0; i < k; ++i) {
    std::vector<std::uint32_t> e(nvars, 0);
    int d = deg(rng);
    for (int j = 0; j < d; ++j) ++e[var(rng)];
    int a = c(rng);
    if (a == 0) a = 1;
    p += Polynomial::monomial(Monomial(e), Rational(a));
  }
  return p;
}

inline Polynomial random_nonzero_poly(std::mt19937_64& rng, std::size_t nvars, int max_deg, int max_terms) {
  for (;;) {
    Polynomial p = random_poly(rng, nvars, max_deg, max_terms);
    if (!p.is_zero()) return p;
  }
}

inline OdeSystem random_ode(std::mt19937_64& rng, std::size_t nvars, int max_deg = 2, int max_terms = 2) {
  VarTable t = xyz(nvars);
  std::vector<OdeSystem::Equation> eqs;
  for (VarId i = 0; i < nvars; ++i) eqs.push_back({i, random_poly(rng, nvars, max_deg, max_terms)});
  return OdeSystem(t, eqs);
}

inline std::vector<Rational> random_point(std::mt19937_64& rng, std::size_t n, int num = 6, int den = 3) {
  std::uniform_int_distribution<int> a(-num, num), b(1, den);
  std::vector<Rational> pt;
  for (std::size_t i = 0; i < n; ++i) {
    Rational q(a(rng), b(rng));
    q.canonicalize();
    pt.push_back(q);
  }
  return pt;
}

}  // namespace odeinv::testing

#endif  // ODEINV_TESTS_SUPPORT_HPP
