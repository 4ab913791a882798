#ifndef ODEINV_ODE_HPP
#define ODEINV_ODE_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "odeinv/poly_matrix.hpp"
#include "odeinv/polynomial.hpp"
#include "odeinv/var_table.hpp"

namespace odeinv {

/// Autonomous polynomial ODE x' = f(x).
///
/// The table may hold more variables than the system evolves; those act as
/// constant parameters and contribute nothing to Lie derivatives. Every
/// evolving variable must be listed explicitly.
class OdeSystem {
 public:
  struct Equation {
    VarId var;
    Polynomial rhs;
  };

  OdeSystem() = default;
  OdeSystem(VarTable table, std::vector<Equation> equations);

  const VarTable& table() const { return table_; }
  std::size_t num_vars() const { return table_.size(); }
  const std::vector<Equation>& equations() const { return equations_; }
  std::size_t dimension() const { return equations_.size(); }
  bool evolves(VarId var) const;

  /// "u' = ..., v' = ..." in canonical polynomial text.
  std::string to_string() const;

  friend bool operator==(const OdeSystem& a, const OdeSystem& b);

 private:
  VarTable table_;
  std::vector<Equation> equations_;
};

/// Differential ghosts y' = a(x) y + b(x) for fresh variables y.
struct GhostSpec {
  std::vector<std::string> new_vars;
  PolyMatrix a;
  std::vector<Polynomial> b;
};

/// Sum over the evolving variables of dp/dx_i * f_i.
Polynomial lie_derivative(const Polynomial& p, const OdeSystem& sys);

/// The i-th iterate of the Lie derivative; order 0 is p itself.
Polynomial higher_lie(const Polynomial& p, const OdeSystem& sys, std::size_t order);

/// [p, Lp, ..., L^{count-1} p].
std::vector<Polynomial> lie_chain(const Polynomial& p, const OdeSystem& sys, std::size_t count);

/// x' = -f(x).
OdeSystem reverse(const OdeSystem& sys);

/// Appends the ghost variables to the table and their equations to the
/// system. Throws NameCollisionError for reused names and Error when a or b
/// mention a ghost variable.
OdeSystem extend_with_ghosts(const OdeSystem& sys, const GhostSpec& ghosts);

/// Ghost spec for an m x m matrix of fresh variables Y with Y' = -Y G,
/// named `_gh<k>` in row-major order.
GhostSpec matrix_ghost_spec(const PolyMatrix& g, const OdeSystem& sys);

/// Self-test of the Liouville identity: with Y' = -Y G appended,
/// L(det Y) + trace(G) det Y must be the zero polynomial.
bool liouville_check(const PolyMatrix& g, const OdeSystem& sys);

}  // namespace odeinv

#endif  // ODEINV_ODE_HPP
