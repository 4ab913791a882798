#include "odeinv/groebner.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "odeinv/errors.hpp"

namespace odeinv {

namespace {

using Term = Polynomial::Term;
// Terms in ascending order, leading term at back().
using OPoly = std::vector<Term>;

struct Context {
  MonomialOrder order;
  std::size_t nvars;
  std::size_t budget;
  std::size_t steps = 0;

  void step() {
    if (++steps > budget)
      throw ResourceError("Groebner basis computation exceeded its step budget of " + std::to_string(budget));
  }
};

OPoly to_opoly(const Polynomial& p, const Context& ctx) {
  OPoly out;
  out.reserve(p.size());
  for (const auto& [m, c] : p.terms()) out.emplace_back(m.extended(ctx.nvars), c);
  std::sort(out.begin(), out.end(),
            [&](const Term& a, const Term& b) { return compare(a.first, b.first, ctx.order) < 0; });
  return out;
}

Polynomial to_poly(const OPoly& p, std::size_t nvars) { return Polynomial::from_terms(nvars, p); }

// h - coeff * mono * g, all in ascending order.
OPoly sub_scaled(const OPoly& h, const Rational& coeff, const Monomial& mono, const OPoly& g, MonomialOrder order) {
  OPoly out;
  out.reserve(h.size() + g.size());
  std::size_t a = 0, b = 0;
  Monomial shifted;
  bool have_shifted = false;
  while (a < h.size() || b < g.size()) {
    if (b < g.size() && !have_shifted) {
      shifted = g[b].first * mono;
      have_shifted = true;
    }
    int c = a == h.size() ? 1 : b == g.size() ? -1 : compare(h[a].first, shifted, order);
    if (c < 0) {
      out.push_back(h[a++]);
    } else if (c > 0) {
      out.emplace_back(std::move(shifted), -coeff * g[b].second);
      have_shifted = false;
      ++b;
    } else {
      Rational v = h[a].second - coeff * g[b].second;
      if (v != 0) out.emplace_back(h[a].first, std::move(v));
      have_shifted = false;
      ++a;
      ++b;
    }
  }
  return out;
}

struct Reduction {
  OPoly remainder;
  // Quotient terms per divisor index.
  std::vector<std::vector<Term>> quotients;
};

// Full reduction of h by the non-empty divisors; the first divisor whose
// leading monomial divides the current leading term is used.
Reduction reduce(OPoly h, const std::vector<const OPoly*>& divisors, Context& ctx) {
  Reduction out;
  out.quotients.resize(divisors.size());
  std::vector<Term> rem_desc;
  while (!h.empty()) {
    const Term& lead = h.back();
    std::size_t chosen = divisors.size();
    for (std::size_t k = 0; k < divisors.size(); ++k) {
      const OPoly* d = divisors[k];
      if (d && !d->empty() && divides(d->back().first, lead.first)) {
        chosen = k;
        break;
      }
    }
    if (chosen == divisors.size()) {
      rem_desc.push_back(std::move(h.back()));
      h.pop_back();
      continue;
    }
    ctx.step();
    const OPoly& d = *divisors[chosen];
    Rational coeff = lead.second / d.back().second;
    Monomial mono = quotient(lead.first, d.back().first);
    out.quotients[chosen].emplace_back(mono, coeff);
    h = sub_scaled(h, coeff, mono, d, ctx.order);
  }
  out.remainder.assign(std::make_move_iterator(rem_desc.rbegin()), std::make_move_iterator(rem_desc.rend()));
  return out;
}

struct Element {
  OPoly poly;
  std::vector<Polynomial> cof;
  bool alive = true;
};

struct Pair {
  Monomial lcm;
  std::size_t i;
  std::size_t j;
};

class Buchberger {
 public:
  Buchberger(Context& ctx, std::size_t num_generators) : ctx_(ctx), num_generators_(num_generators) {}

  // Adds an element that is known to be part of a Groebner basis already
  // processed together with the other seeded elements.
  void seed(OPoly poly, std::vector<Polynomial> cof) { elements_.push_back({std::move(poly), std::move(cof)}); }

  void add_generator(const Polynomial& gen, std::size_t index) {
    std::vector<Polynomial> cof(num_generators_, Polynomial(ctx_.nvars));
    if (index < num_generators_) cof[index] = Polynomial::constant(ctx_.nvars, 1);
    insert(to_opoly(gen, ctx_), nullptr, std::move(cof));
  }

  void run() {
    while (!pending_.empty()) {
      auto it = pending_.begin();
      Pair pr = *it;
      pending_.erase(it);
      pending_ids_.erase({pr.i, pr.j});
      if (coprime(lead(pr.i), lead(pr.j))) continue;
      if (chain_criterion(pr)) continue;
      const Element& a = elements_[pr.i];
      const Element& b = elements_[pr.j];
      Monomial ma = quotient(pr.lcm, lead(pr.i));
      Monomial mb = quotient(pr.lcm, lead(pr.j));
      Rational ca = 1 / a.poly.back().second;
      Rational cb = 1 / b.poly.back().second;
      OPoly s = sub_scaled(OPoly{}, -ca, ma, a.poly, ctx_.order);
      s = sub_scaled(s, cb, mb, b.poly, ctx_.order);
      Origin origin{pr.i, pr.j, Polynomial::monomial(ma, ca), Polynomial::monomial(mb, cb)};
      insert(std::move(s), &origin);
    }
  }

  // Minimalizes, interreduces and normalizes; result sorted by ascending
  // leading monomial.
  std::vector<Element> finish() {
    std::vector<std::size_t> keep;
    for (std::size_t k = 0; k < elements_.size(); ++k) {
      if (elements_[k].poly.empty()) continue;
      bool redundant = false;
      for (std::size_t l = 0; l < elements_.size() && !redundant; ++l) {
        if (l == k || elements_[l].poly.empty()) continue;
        if (!divides(lead(l), lead(k))) continue;
        if (lead(l) != lead(k) || l < k) redundant = true;
      }
      if (!redundant) keep.push_back(k);
    }
    std::vector<Element> out;
    for (std::size_t k : keep) out.push_back(elements_[k]);
    for (std::size_t k = 0; k < out.size(); ++k) {
      std::vector<const OPoly*> others;
      for (std::size_t l = 0; l < out.size(); ++l) others.push_back(l == k ? nullptr : &out[l].poly);
      Term lt = out[k].poly.back();
      OPoly tail(out[k].poly.begin(), out[k].poly.end() - 1);
      Reduction r = reduce(std::move(tail), others, ctx_);
      apply_quotients(out[k].cof, r.quotients, out);
      r.remainder.push_back(std::move(lt));
      out[k].poly = std::move(r.remainder);
      Rational inv = 1 / out[k].poly.back().second;
      for (auto& t : out[k].poly) t.second *= inv;
      for (auto& c : out[k].cof) c *= inv;
    }
    std::sort(out.begin(), out.end(), [&](const Element& a, const Element& b) {
      return compare(a.poly.back().first, b.poly.back().first, ctx_.order) < 0;
    });
    return out;
  }

 private:
  const Monomial& lead(std::size_t k) const { return elements_[k].poly.back().first; }

  template <class Elems>
  void apply_quotients(std::vector<Polynomial>& cof, const std::vector<std::vector<Term>>& quotients,
                       const Elems& elems) {
    for (std::size_t k = 0; k < quotients.size(); ++k) {
      if (quotients[k].empty()) continue;
      Polynomial q = Polynomial::from_terms(ctx_.nvars, quotients[k]);
      for (std::size_t g = 0; g < num_generators_; ++g) cof[g] -= q * elems[k].cof[g];
    }
  }

  // Where an S-polynomial came from: fa * elements[i] - fb * elements[j].
  struct Origin {
    std::size_t i;
    std::size_t j;
    Polynomial fa;
    Polynomial fb;
  };

  // Cofactors are only assembled when the reduced polynomial survives, so
  // the many S-polynomials that reduce to zero cost no cofactor arithmetic.
  void insert(OPoly poly, const Origin* origin, std::vector<Polynomial> cof = {}) {
    std::vector<const OPoly*> divisors;
    for (const auto& e : elements_) divisors.push_back(&e.poly);
    Reduction r = reduce(std::move(poly), divisors, ctx_);
    if (r.remainder.empty()) return;
    if (origin) {
      cof.assign(num_generators_, Polynomial(ctx_.nvars));
      const Element& a = elements_[origin->i];
      const Element& b = elements_[origin->j];
      for (std::size_t g = 0; g < num_generators_; ++g) cof[g] = origin->fa * a.cof[g] - origin->fb * b.cof[g];
    }
    apply_quotients(cof, r.quotients, elements_);
    Rational inv = 1 / r.remainder.back().second;
    if (inv != 1) {
      for (auto& t : r.remainder) t.second *= inv;
      for (auto& c : cof) c *= inv;
    }
    std::size_t n = elements_.size();
    elements_.push_back({std::move(r.remainder), std::move(cof)});
    for (std::size_t k = 0; k < n; ++k) {
      if (elements_[k].poly.empty()) continue;
      pending_.insert(Pair{lcm(lead(k), lead(n)), k, n});
      pending_ids_.insert({k, n});
    }
  }

  bool chain_criterion(const Pair& pr) const {
    for (std::size_t k = 0; k < elements_.size(); ++k) {
      if (k == pr.i || k == pr.j || elements_[k].poly.empty()) continue;
      if (!divides(lead(k), pr.lcm)) continue;
      if (pending_ids_.count({std::min(pr.i, k), std::max(pr.i, k)})) continue;
      if (pending_ids_.count({std::min(pr.j, k), std::max(pr.j, k)})) continue;
      return true;
    }
    return false;
  }

  struct PairLess {
    MonomialOrder order;
    bool operator()(const Pair& a, const Pair& b) const {
      int c = compare(a.lcm, b.lcm, order);
      if (c != 0) return c < 0;
      if (a.j != b.j) return a.j < b.j;
      return a.i < b.i;
    }
  };

  Context& ctx_;
  std::size_t num_generators_;
  std::vector<Element> elements_;
  std::set<Pair, PairLess> pending_{PairLess{ctx_.order}};
  std::set<std::pair<std::size_t, std::size_t>> pending_ids_;
};

std::size_t ambient_vars(const std::vector<Polynomial>& gens) {
  std::size_t n = 0;
  for (const auto& g : gens) n = std::max(n, g.num_vars());
  return n;
}

}  // namespace

bool GroebnerBasis::is_unit() const { return basis_.size() == 1 && basis_.front().is_constant(); }

Polynomial GroebnerBasis::normal_form(const Polynomial& p) const {
  Context ctx{order_, std::max(nvars_, p.num_vars()), GroebnerOptions{}.step_budget};
  std::vector<OPoly> ordered;
  for (const auto& b : basis_) ordered.push_back(to_opoly(b, ctx));
  std::vector<const OPoly*> divisors;
  for (const auto& o : ordered) divisors.push_back(&o);
  return to_poly(reduce(to_opoly(p, ctx), divisors, ctx).remainder, ctx.nvars);
}

std::optional<MembershipWitness> GroebnerBasis::member(const Polynomial& p) const {
  if (!tracked_) throw Error("membership witness requested from an untracked Groebner basis");
  std::size_t nvars = std::max(nvars_, p.num_vars());
  Context ctx{order_, nvars, GroebnerOptions{}.step_budget};
  std::vector<OPoly> ordered;
  for (const auto& b : basis_) ordered.push_back(to_opoly(b, ctx));
  std::vector<const OPoly*> divisors;
  for (const auto& o : ordered) divisors.push_back(&o);
  Reduction r = reduce(to_opoly(p, ctx), divisors, ctx);
  if (!r.remainder.empty()) return std::nullopt;

  MembershipWitness w;
  w.cofactors.assign(generators_.size(), Polynomial(nvars));
  for (std::size_t k = 0; k < basis_.size(); ++k) {
    if (r.quotients[k].empty()) continue;
    Polynomial q = Polynomial::from_terms(nvars, r.quotients[k]);
    for (std::size_t j = 0; j < generators_.size(); ++j) w.cofactors[j] += q * transform_[k][j];
  }
  Polynomial recombined(nvars);
  for (std::size_t j = 0; j < generators_.size(); ++j) recombined += w.cofactors[j] * generators_[j];
  if (recombined != p) throw Error("internal error: membership witness does not recombine");
  return w;
}

std::string GroebnerBasis::dump(const VarTable& vars) const {
  std::ostringstream out;
  for (const auto& b : basis_) out << b.to_string(vars) << '\n';
  return out.str();
}

struct GroebnerAccess {
  static GroebnerBasis finish(GroebnerBasis gb, Buchberger& engine, const Context& ctx) {
    std::vector<Element> elems = engine.finish();
    for (auto& e : elems) {
      gb.basis_.push_back(to_poly(e.poly, ctx.nvars));
      gb.transform_.push_back(std::move(e.cof));
    }
    return gb;
  }
};

GroebnerBasis groebner(const std::vector<Polynomial>& gens, const GroebnerOptions& options) {
  Context ctx{options.order, ambient_vars(gens), options.step_budget};
  Buchberger engine(ctx, options.track_cofactors ? gens.size() : 0);
  for (std::size_t j = 0; j < gens.size(); ++j) engine.add_generator(gens[j], j);
  engine.run();
  GroebnerBasis gb;
  gb.tracked_ = options.track_cofactors;
  gb.generators_ = gens;
  for (auto& g : gb.generators_) g = g.extended(ctx.nvars);
  gb.order_ = options.order;
  gb.nvars_ = ctx.nvars;
  return GroebnerAccess::finish(std::move(gb), engine, ctx);
}

GroebnerBasis extend_groebner(const GroebnerBasis& gb, const Polynomial& new_gen, const GroebnerOptions& options) {
  if (options.order != gb.order_ || options.track_cofactors != gb.tracked_) {
    std::vector<Polynomial> gens = gb.generators_;
    gens.push_back(new_gen);
    return groebner(gens, options);
  }
  Context ctx{options.order, std::max(gb.nvars_, new_gen.num_vars()), options.step_budget};
  std::size_t m = gb.generators_.size() + 1;
  Buchberger engine(ctx, gb.tracked_ ? m : 0);
  for (std::size_t k = 0; k < gb.basis_.size(); ++k) {
    std::vector<Polynomial> cof = gb.transform_[k];
    for (auto& c : cof) c = c.extended(ctx.nvars);
    if (gb.tracked_) cof.emplace_back(ctx.nvars);
    engine.seed(to_opoly(gb.basis_[k], ctx), std::move(cof));
  }
  engine.add_generator(new_gen, m - 1);
  engine.run();
  GroebnerBasis out;
  out.generators_ = gb.generators_;
  out.generators_.push_back(new_gen);
  for (auto& g : out.generators_) g = g.extended(ctx.nvars);
  out.order_ = options.order;
  out.nvars_ = ctx.nvars;
  out.tracked_ = gb.tracked_;
  return GroebnerAccess::finish(std::move(out), engine, ctx);
}

std::optional<MembershipWitness> member_with_witness(const Polynomial& p, const std::vector<Polynomial>& gens,
                                                     const GroebnerOptions& options) {
  return groebner(gens, options).member(p);
}

}  // namespace odeinv
