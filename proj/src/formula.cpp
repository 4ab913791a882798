#include "odeinv/formula.hpp"

#include "odeinv/errors.hpp"

namespace odeinv {

struct Formula::Node {
  Kind kind = Kind::True;
  Polynomial poly;
  std::size_t hash = 0;
  Rel rel = Rel::Eq;
  std::vector<Formula> children;
  std::vector<VarId> vars;
};

const char* rel_symbol(Rel r) {
  switch (r) {
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
    case Rel::Eq: return "=";
    case Rel::Le: return "<=";
    case Rel::Lt: return "<";
    case Rel::Ne: return "!=";
  }
  return "?";
}

Rel negate_rel(Rel r) {
  switch (r) {
    case Rel::Ge: return Rel::Lt;
    case Rel::Gt: return Rel::Le;
    case Rel::Eq: return Rel::Ne;
    case Rel::Le: return Rel::Gt;
    case Rel::Lt: return Rel::Ge;
    case Rel::Ne: return Rel::Eq;
  }
  return r;
}

bool holds(Rel r, int sign) {
  switch (r) {
    case Rel::Ge: return sign >= 0;
    case Rel::Gt: return sign > 0;
    case Rel::Eq: return sign == 0;
    case Rel::Le: return sign <= 0;
    case Rel::Lt: return sign < 0;
    case Rel::Ne: return sign != 0;
  }
  return false;
}

std::size_t polynomial_hash(const Polynomial& p) {
  std::size_t h = 0x9e3779b97f4a7c15ULL;
  for (const auto& [m, c] : p.terms()) {
    h ^= m.hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h ^= std::hash<std::string>{}(c.get_str()) + (h << 6) + (h >> 2);
  }
  return h;
}

std::shared_ptr<Formula::Node> Formula::make_node(Kind kind) {
  auto n = std::make_shared<Node>();
  n->kind = kind;
  return n;
}

Formula::Formula() : Formula(truth()) {}

Formula Formula::truth() {
  static const auto node = std::shared_ptr<const Node>(make_node(Kind::True));
  return Formula(node);
}

Formula Formula::falsity() {
  static const auto node = std::shared_ptr<const Node>(make_node(Kind::False));
  return Formula(node);
}

Formula Formula::atom(Polynomial p, Rel rel) {
  auto n = make_node(Kind::Atom);
  n->hash = polynomial_hash(p);
  n->poly = std::move(p);
  n->rel = rel;
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f) {
  auto n = make_node(Kind::Not);
  n->children.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::conjunction(std::vector<Formula> operands) {
  if (operands.empty()) return truth();
  if (operands.size() == 1) return operands.front();
  auto n = make_node(Kind::And);
  n->children = std::move(operands);
  return Formula(std::move(n));
}

Formula Formula::disjunction(std::vector<Formula> operands) {
  if (operands.empty()) return falsity();
  if (operands.size() == 1) return operands.front();
  auto n = make_node(Kind::Or);
  n->children = std::move(operands);
  return Formula(std::move(n));
}

Formula Formula::implication(Formula lhs, Formula rhs) {
  auto n = make_node(Kind::Implies);
  n->children = {std::move(lhs), std::move(rhs)};
  return Formula(std::move(n));
}

Formula Formula::forall(std::vector<VarId> vars, Formula body) {
  auto n = make_node(Kind::Forall);
  n->vars = std::move(vars);
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula Formula::exists(std::vector<VarId> vars, Formula body) {
  auto n = make_node(Kind::Exists);
  n->vars = std::move(vars);
  n->children = {std::move(body)};
  return Formula(std::move(n));
}

Formula::Kind Formula::kind() const { return node_->kind; }
const Polynomial& Formula::polynomial() const { return node_->poly; }
Rel Formula::relation() const { return node_->rel; }
const std::vector<Formula>& Formula::children() const { return node_->children; }
const std::vector<VarId>& Formula::bound_vars() const { return node_->vars; }

bool Formula::is_quantifier_free() const {
  if (kind() == Kind::Forall || kind() == Kind::Exists) return false;
  for (const auto& c : children())
    if (!c.is_quantifier_free()) return false;
  return true;
}

void Formula::collect_atoms(std::vector<const Formula*>& out) const {
  if (kind() == Kind::Atom) {
    out.push_back(this);
    return;
  }
  for (const auto& c : children()) c.collect_atoms(out);
}

int Formula::SignCache::sign_of(const Polynomial& p, std::size_t hash) {
  auto& bucket = cache_[hash];
  for (const auto& [q, s] : bucket)
    if (*q == p) return s;
  int s = sgn(p.evaluate(point_));
  bucket.emplace_back(&p, s);
  return s;
}

bool Formula::evaluate(std::span<const Rational> point) const {
  SignCache cache(point);
  return evaluate(cache);
}

bool Formula::evaluate(SignCache& cache) const {
  switch (kind()) {
    case Kind::True: return true;
    case Kind::False: return false;
    case Kind::Atom: return holds(relation(), cache.sign_of(node_->poly, node_->hash));
    case Kind::Not: return !children()[0].evaluate(cache);
    case Kind::And:
      for (const auto& c : children())
        if (!c.evaluate(cache)) return false;
      return true;
    case Kind::Or:
      for (const auto& c : children())
        if (c.evaluate(cache)) return true;
      return false;
    case Kind::Implies: return !children()[0].evaluate(cache) || children()[1].evaluate(cache);
    case Kind::Forall:
    case Kind::Exists: throw UnsupportedInputError("cannot evaluate a quantified formula pointwise");
  }
  return false;
}

namespace {

std::string wrapped(const Formula& f, const VarTable& vars) {
  switch (f.kind()) {
    case Formula::Kind::True:
    case Formula::Kind::False:
    case Formula::Kind::Atom: return f.to_string(vars);
    default: return "(" + f.to_string(vars) + ")";
  }
}

std::string joined(const Formula& f, const VarTable& vars, const char* op) {
  std::string out;
  for (const auto& c : f.children()) {
    if (!out.empty()) out += op;
    out += wrapped(c, vars);
  }
  return out;
}

}  // namespace

std::string Formula::to_string(const VarTable& vars) const {
  switch (kind()) {
    case Kind::True: return "true";
    case Kind::False: return "false";
    case Kind::Atom: return node_->poly.to_string(vars) + " " + rel_symbol(relation()) + " 0";
    case Kind::Not: return "!" + wrapped(children()[0], vars);
    case Kind::And: return joined(*this, vars, " & ");
    case Kind::Or: return joined(*this, vars, " | ");
    case Kind::Implies: return wrapped(children()[0], vars) + " -> " + wrapped(children()[1], vars);
    case Kind::Forall:
    case Kind::Exists: {
      std::string out = kind() == Kind::Forall ? "\\forall " : "\\exists ";
      for (std::size_t i = 0; i < bound_vars().size(); ++i) {
        if (i) out += ",";
        out += vars.name(bound_vars()[i]);
      }
      return out + " " + wrapped(children()[0], vars);
    }
  }
  return "?";
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  if (a.kind() == Formula::Kind::Atom) return a.relation() == b.relation() && a.polynomial() == b.polynomial();
  return a.bound_vars() == b.bound_vars() && a.children() == b.children();
}

}  // namespace odeinv
