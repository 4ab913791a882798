#ifndef ODEINV_HYBRID_HPP
#define ODEINV_HYBRID_HPP

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "odeinv/errors.hpp"
#include "odeinv/ode.hpp"
#include "odeinv/polynomial.hpp"
#include "odeinv/rank.hpp"

namespace odeinv {

/// Hybrid programs whose tests and domains are disequations r != 0:
/// assignments, tests, ODEs, choice, sequencing and loops.
class HybridProgram {
 public:
  enum class Kind { Assign, Test, Ode, Choice, Seq, Star };

  struct Assign {
    VarId var;
    Polynomial value;
  };
  struct Test {
    Polynomial r;  // ?r != 0
  };
  struct Ode {
    OdeSystem sys;
    std::optional<Polynomial> domain;  // & r != 0
  };
  static HybridProgram assign(VarId var, Polynomial value);
  static HybridProgram test(Polynomial r);
  static HybridProgram ode(OdeSystem sys, std::optional<Polynomial> domain = std::nullopt);
  static HybridProgram choice(HybridProgram a, HybridProgram b);
  static HybridProgram seq(HybridProgram a, HybridProgram b);
  static HybridProgram star(HybridProgram body);

  Kind kind() const { return kind_; }
  const Assign& as_assign() const { return std::get<Assign>(data_); }
  const Test& as_test() const { return std::get<Test>(data_); }
  const Ode& as_ode() const { return std::get<Ode>(data_); }
  /// Operands of Choice and Seq; the body of Star is left().
  const HybridProgram& left() const { return *children_.at(0); }
  const HybridProgram& right() const { return *children_.at(1); }

  bool is_discrete() const;
  /// Concrete syntax accepted by parse_program.
  std::string to_string(const VarTable& vars) const;

 private:
  HybridProgram(Kind kind, std::variant<std::monostate, Assign, Test, Ode> data,
                std::vector<std::shared_ptr<const HybridProgram>> children)
      : kind_(kind), data_(std::move(data)), children_(std::move(children)) {}

  Kind kind_;
  std::variant<std::monostate, Assign, Test, Ode> data_;
  std::vector<std::shared_ptr<const HybridProgram>> children_;
};

/// One node of the structural reduction: the polynomial computed for the
/// program node and the children's traces. Star nodes keep the ideal chain
/// q_0 .. q_k with the witness q_k = sum_{i<k} g_i q_i (one child per loop
/// iteration); Ode nodes keep the Lie chain L^0 p .. L^N p and the rank
/// cofactors in the same fields.
struct ReductionTrace {
  HybridProgram::Kind kind;
  Polynomial input;
  Polynomial result;
  std::vector<ReductionTrace> children;
  std::vector<Polynomial> chain;
  std::vector<Polynomial> witness;
};

class ReductionCapExceeded : public ResourceError {
 public:
  ReductionCapExceeded(const std::string& what, ReductionTrace partial)
      : ResourceError(what), partial_(std::move(partial)) {}
  const ReductionTrace& partial_trace() const { return partial_; }

 private:
  ReductionTrace partial_;
};

struct Reduction {
  Polynomial q;
  ReductionTrace trace;
};

/// Polynomial q with ([alpha] p = 0) <=> q = 0 at every state. The cap
/// bounds both ODE ranks and loop chain lengths.
Reduction reduce_box(const HybridProgram& alpha, const Polynomial& p, std::size_t cap = kDefaultRankCap);

/// True iff p = 0 after every run of a discrete program from `state`, with
/// loops unrolled up to `depth` iterations. Throws UnsupportedInputError on
/// ODE nodes.
bool oracle_unroll(const HybridProgram& alpha, const Polynomial& p, std::size_t depth,
                   std::span<const Rational> state);

/// Re-checks every loop witness and ODE rank recorded in a trace.
bool trace_identities_hold(const HybridProgram& alpha, const ReductionTrace& trace);

}  // namespace odeinv

#endif  // ODEINV_HYBRID_HPP
