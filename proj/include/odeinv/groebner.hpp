#ifndef ODEINV_GROEBNER_HPP
#define ODEINV_GROEBNER_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "odeinv/monomial.hpp"
#include "odeinv/polynomial.hpp"
#include "odeinv/var_table.hpp"

namespace odeinv {

struct GroebnerOptions {
  MonomialOrder order = MonomialOrder::Grevlex;
  /// Maximum number of elementary reduction steps before giving up with a
  /// ResourceError.
  std::size_t step_budget = 2'000'000;
  /// Record how each basis element is built from the generators. Without
  /// it the basis answers membership but cannot produce witnesses.
  bool track_cofactors = true;
};

/// Cofactors h_j with p = sum_j h_j * gens[j].
struct MembershipWitness {
  std::vector<Polynomial> cofactors;
};

/// Reduced Groebner basis that remembers how each element was built from
/// the original generators: basis[k] = sum_j transform[k][j] * generators[j].
class GroebnerBasis {
 public:
  const std::vector<Polynomial>& generators() const { return generators_; }
  const std::vector<Polynomial>& basis() const { return basis_; }
  const std::vector<std::vector<Polynomial>>& transform() const { return transform_; }
  MonomialOrder order() const { return order_; }

  /// True if the ideal contains 1.
  bool is_unit() const;

  /// Normal form of p modulo the basis.
  Polynomial normal_form(const Polynomial& p) const;

  bool tracks_cofactors() const { return tracked_; }
  bool contains(const Polynomial& p) const { return normal_form(p).is_zero(); }
  /// Cofactors over the generators if p lies in the ideal, nullopt if not.
  /// The recombination is checked exactly before returning. Throws Error
  /// for a basis built without cofactor tracking.
  std::optional<MembershipWitness> member(const Polynomial& p) const;

  /// One basis element per line in canonical text.
  std::string dump(const VarTable& vars) const;

 private:
  friend GroebnerBasis groebner(const std::vector<Polynomial>&, const GroebnerOptions&);
  friend GroebnerBasis extend_groebner(const GroebnerBasis&, const Polynomial&, const GroebnerOptions&);
  friend struct GroebnerAccess;

  std::vector<Polynomial> generators_;
  std::vector<Polynomial> basis_;
  std::vector<std::vector<Polynomial>> transform_;
  MonomialOrder order_ = MonomialOrder::Grevlex;
  std::size_t nvars_ = 0;
  bool tracked_ = true;
};

/// Buchberger's algorithm with the normal selection strategy (smallest
/// lcm first, ties by index), the coprime and chain criteria, and cofactor
/// tracking. Zero generators are allowed.
GroebnerBasis groebner(const std::vector<Polynomial>& gens, const GroebnerOptions& options = {});

/// Basis of <gens, new_gen>, reusing the pairs already processed for gb.
GroebnerBasis extend_groebner(const GroebnerBasis& gb, const Polynomial& new_gen,
                              const GroebnerOptions& options = {});

std::optional<MembershipWitness> member_with_witness(const Polynomial& p, const std::vector<Polynomial>& gens,
                                                     const GroebnerOptions& options = {});

}  // namespace odeinv

#endif  // ODEINV_GROEBNER_HPP
