#include "odeinv/ode.hpp"

#include <set>

#include "odeinv/errors.hpp"

namespace odeinv {

OdeSystem::OdeSystem(VarTable table, std::vector<Equation> equations)
    : table_(std::move(table)), equations_(std::move(equations)) {
  if (equations_.empty()) throw Error("an ODE system needs at least one equation");
  std::set<VarId> seen;
  for (auto& eq : equations_) {
    if (eq.var >= table_.size()) throw Error("ODE variable index out of range");
    if (!seen.insert(eq.var).second) throw Error("duplicate ODE for '" + table_.name(eq.var) + "'");
    if (eq.rhs.num_vars() > table_.size()) throw Error("ODE right-hand side mentions unknown variables");
    eq.rhs = eq.rhs.extended(table_.size());
  }
}

bool OdeSystem::evolves(VarId var) const {
  for (const auto& eq : equations_)
    if (eq.var == var) return true;
  return false;
}

std::string OdeSystem::to_string() const {
  std::string out;
  for (const auto& eq : equations_) {
    if (!out.empty()) out += ", ";
    out += table_.name(eq.var) + "' = " + eq.rhs.to_string(table_);
  }
  return out;
}

bool operator==(const OdeSystem& a, const OdeSystem& b) {
  if (!(a.table_ == b.table_) || a.equations_.size() != b.equations_.size()) return false;
  for (std::size_t i = 0; i < a.equations_.size(); ++i)
    if (a.equations_[i].var != b.equations_[i].var || a.equations_[i].rhs != b.equations_[i].rhs) return false;
  return true;
}

Polynomial lie_derivative(const Polynomial& p, const OdeSystem& sys) {
  Polynomial result(std::max(p.num_vars(), sys.num_vars()));
  for (const auto& eq : sys.equations()) {
    if (!p.mentions(eq.var)) continue;
    result += p.partial_derivative(eq.var) * eq.rhs;
  }
  return result;
}

Polynomial higher_lie(const Polynomial& p, const OdeSystem& sys, std::size_t order) {
  Polynomial q = p;
  for (std::size_t i = 0; i < order && !q.is_zero(); ++i) q = lie_derivative(q, sys);
  return q;
}

std::vector<Polynomial> lie_chain(const Polynomial& p, const OdeSystem& sys, std::size_t count) {
  std::vector<Polynomial> chain;
  chain.reserve(count);
  if (count == 0) return chain;
  chain.push_back(p);
  while (chain.size() < count) chain.push_back(lie_derivative(chain.back(), sys));
  return chain;
}

OdeSystem reverse(const OdeSystem& sys) {
  std::vector<OdeSystem::Equation> eqs = sys.equations();
  for (auto& eq : eqs) eq.rhs = -eq.rhs;
  return OdeSystem(sys.table(), std::move(eqs));
}

OdeSystem extend_with_ghosts(const OdeSystem& sys, const GhostSpec& ghosts) {
  std::size_t m = ghosts.new_vars.size();
  if (ghosts.a.rows() != m || ghosts.a.cols() != m || ghosts.b.size() != m)
    throw DimensionError("ghost spec needs an m x m matrix and m offsets for m ghosts");
  std::size_t old_n = sys.num_vars();
  auto check_old_only = [&](const Polynomial& q) {
    for (VarId v = old_n; v < q.num_vars(); ++v)
      if (q.mentions(v)) throw Error("ghost coefficients must not mention ghost variables");
  };
  for (const auto& e : ghosts.a.entries()) check_old_only(e);
  for (const auto& e : ghosts.b) check_old_only(e);

  VarTable table = sys.table();
  std::vector<VarId> ids;
  for (const auto& name : ghosts.new_vars) ids.push_back(table.add(name));
  std::size_t n = table.size();

  std::vector<OdeSystem::Equation> eqs = sys.equations();
  for (std::size_t i = 0; i < m; ++i) {
    Polynomial rhs = ghosts.b[i].extended(n);
    for (std::size_t j = 0; j < m; ++j) {
      if (ghosts.a(i, j).is_zero()) continue;
      rhs += ghosts.a(i, j) * Polynomial::variable(n, ids[j]);
    }
    eqs.push_back({ids[i], rhs});
  }
  return OdeSystem(std::move(table), std::move(eqs));
}

GhostSpec matrix_ghost_spec(const PolyMatrix& g, const OdeSystem& sys) {
  if (!g.is_square()) throw DimensionError("ghost matrix G must be square");
  std::size_t m = g.rows();
  GhostSpec spec;
  VarTable scratch = sys.table();
  for (std::size_t k = 0; k < m * m; ++k) {
    std::string name = scratch.fresh_name("_gh");
    scratch.add(name);
    spec.new_vars.push_back(name);
  }
  // Y_ij' = -sum_k Y_ik G_kj; ghost (i,j) sits at index i*m + j.
  spec.a = PolyMatrix(m * m, m * m, sys.num_vars());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) spec.a(i * m + j, i * m + k) = -g(k, j);
  spec.b.assign(m * m, Polynomial(sys.num_vars()));
  return spec;
}

bool liouville_check(const PolyMatrix& g, const OdeSystem& sys) {
  if (!g.is_square()) throw DimensionError("Liouville check needs a square matrix");
  std::size_t m = g.rows();
  std::size_t old_n = sys.num_vars();
  OdeSystem extended = extend_with_ghosts(sys, matrix_ghost_spec(g, sys));
  std::size_t n = extended.num_vars();
  PolyMatrix y(m, m, n);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) y(i, j) = Polynomial::variable(n, old_n + i * m + j);
  Polynomial det = determinant(y);
  Polynomial residual = lie_derivative(det, extended) + trace(g).extended(n) * det;
  return residual.is_zero();
}

}  // namespace odeinv
