#include "odeinv/certificate.hpp"

#include "odeinv/errors.hpp"
#include "odeinv/groebner.hpp"
#include "odeinv/parser.hpp"
#include "odeinv/progress.hpp"

namespace odeinv {

using nlohmann::json;

namespace {

template <class... Fs>
struct Overloaded : Fs... {
  using Fs::operator()...;
};
template <class... Fs>
Overloaded(Fs...) -> Overloaded<Fs...>;

Formula zero_atom(const Polynomial& p) { return Formula::atom(p, Rel::Eq); }

bool condition_proved(const SideCondition& c, const DischargeConfig& config) {
  if (!c.proved()) return false;
  DischargeConfig recheck = config;
  recheck.samples = 0;
  return discharge(c, recheck).proved();
}

bool same_goal(const SideCondition& c, const Formula& hypothesis, const Formula& conclusion) {
  return c.hypothesis == hypothesis && c.conclusion == conclusion;
}

bool check_darboux(const Certificate& cert, const DarbouxCertificate& d, const DischargeConfig& config) {
  if (d.p.is_zero()) return false;
  Polynomial gap = lie_derivative(d.p, cert.system()) - d.g * d.p;
  if (gap.is_zero()) return d.relation == Rel::Eq || d.relation == Rel::Ge || d.relation == Rel::Gt;
  if (d.relation != Rel::Ge && d.relation != Rel::Gt) return false;
  SideCondition c = make_condition(cert.vars, Formula::truth(), Formula::atom(gap, Rel::Ge));
  c.status = ConditionStatus::SmtValid;
  return condition_proved(c, config);
}

bool check_vectorial(const Certificate& cert, const VectorialDarbouxCertificate& v) {
  std::size_t m = v.pvec.size();
  if (m == 0 || v.g.rows() != m || v.g.cols() != m) return false;
  std::vector<Polynomial> rhs = v.g * v.pvec;
  for (std::size_t i = 0; i < m; ++i)
    if (lie_derivative(v.pvec[i], cert.system()) != rhs[i]) return false;
  return true;
}

bool check_dri(const Certificate& cert, const DriCertificate& d, const DischargeConfig& config) {
  const RankResult& r = d.rank;
  if (r.n < 1 || r.cofactors.size() != r.n || r.chain.size() != r.n + 1) return false;
  if (r.chain != lie_chain(d.p, cert.system(), r.n + 1)) return false;
  if (!rank_identity_holds(r, d.p, cert.system())) return false;
  for (std::size_t i = 1; i < r.n; ++i) {
    std::vector<Polynomial> lower(r.chain.begin(), r.chain.begin() + static_cast<long>(i));
    if (groebner(lower, {.track_cofactors = false}).contains(r.chain[i])) return false;
  }
  if (d.quotients.size() == r.n) {
    bool all = true;
    for (std::size_t i = 0; i < r.n && all; ++i) all = r.chain[i] == d.quotients[i] * d.p;
    if (all) return true;
  }
  if (!d.condition) return false;
  SideCondition expected = dri_condition(d.p, d.domain, r, cert.vars);
  return same_goal(*d.condition, expected.hypothesis, expected.conclusion) && condition_proved(*d.condition, config);
}

bool check_sai(const Certificate& cert, const SaiCertificate& s, const DischargeConfig& config) {
  SaiPremises expected = sai_premises(s.p, s.q, cert.system());
  if (s.forward != expected.forward || s.backward != expected.backward) return false;
  if (s.conditions.size() != 2) return false;
  const SideCondition& fw = s.conditions[0];
  const SideCondition& bw = s.conditions[1];
  if (!same_goal(fw, expected.forward_hypothesis, expected.forward)) return false;
  if (!same_goal(bw, expected.backward_hypothesis, expected.backward)) return false;
  auto settled = [&](const SideCondition& c, bool shortcut) {
    if (shortcut && c.status == ConditionStatus::ProvedIdentity) return true;
    return condition_proved(c, config);
  };
  return settled(fw, s.p.is_open()) && settled(bw, s.p.is_closed());
}

// ---- JSON ---------------------------------------------------------------

std::string text(const Polynomial& p, const VarTable& vars) { return p.to_string(vars); }

json texts(const std::vector<Polynomial>& ps, const VarTable& vars) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(text(p, vars));
  return out;
}

const json& field(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  return doc.at(key);
}

std::string string_field(const json& doc, const char* key) {
  const json& v = field(doc, key);
  if (!v.is_string()) throw FormatError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Polynomial read_poly(const json& v, const VarTable& vars) {
  if (!v.is_string()) throw FormatError("polynomial must be a string");
  VarTable table = vars;
  return parse_polynomial(v.get<std::string>(), table).extended(vars.size());
}

std::vector<Polynomial> read_polys(const json& v, const VarTable& vars) {
  if (!v.is_array()) throw FormatError("expected an array of polynomials");
  std::vector<Polynomial> out;
  for (const auto& e : v) out.push_back(read_poly(e, vars));
  return out;
}

Formula read_formula(const json& v, const VarTable& vars) {
  if (!v.is_string()) throw FormatError("formula must be a string");
  VarTable table = vars;
  return parse_formula(v.get<std::string>(), table);
}

json normal_form_json(const NormalForm& nf, const VarTable& vars) {
  json out = json::array();
  for (const auto& c : nf.disjuncts) out.push_back({{"geq", texts(c.geqs, vars)}, {"gt", texts(c.gts, vars)}});
  return out;
}

NormalForm read_normal_form(const json& v, const VarTable& vars) {
  if (!v.is_array()) throw FormatError("normal form must be an array of conjuncts");
  NormalForm nf;
  for (const auto& c : v) nf.disjuncts.push_back({read_polys(field(c, "geq"), vars), read_polys(field(c, "gt"), vars)});
  return nf;
}

json rank_json(const RankResult& r, const VarTable& vars) {
  return {{"n", r.n}, {"cofactors", texts(r.cofactors, vars)}, {"chain", texts(r.chain, vars)}};
}

RankResult read_rank(const json& v, const VarTable& vars) {
  const json& n = field(v, "n");
  if (!n.is_number_unsigned()) throw FormatError("rank must be a non-negative integer");
  return {n.get<std::size_t>(), read_polys(field(v, "cofactors"), vars), read_polys(field(v, "chain"), vars)};
}

const char* kind_name(HybridProgram::Kind k) {
  switch (k) {
    case HybridProgram::Kind::Assign: return "assign";
    case HybridProgram::Kind::Test: return "test";
    case HybridProgram::Kind::Ode: return "ode";
    case HybridProgram::Kind::Choice: return "choice";
    case HybridProgram::Kind::Seq: return "seq";
    case HybridProgram::Kind::Star: return "star";
  }
  return "?";
}

HybridProgram::Kind read_kind(const std::string& name) {
  for (auto k : {HybridProgram::Kind::Assign, HybridProgram::Kind::Test, HybridProgram::Kind::Ode,
                 HybridProgram::Kind::Choice, HybridProgram::Kind::Seq, HybridProgram::Kind::Star})
    if (name == kind_name(k)) return k;
  throw FormatError("unknown program node '" + name + "'");
}

json trace_json(const ReductionTrace& t, const VarTable& vars) {
  json children = json::array();
  for (const auto& c : t.children) children.push_back(trace_json(c, vars));
  return {{"node", kind_name(t.kind)},       {"input", text(t.input, vars)},       {"result", text(t.result, vars)},
          {"chain", texts(t.chain, vars)}, {"witness", texts(t.witness, vars)}, {"children", children}};
}

ReductionTrace read_trace(const json& v, const VarTable& vars) {
  ReductionTrace t{read_kind(string_field(v, "node")),
                   read_poly(field(v, "input"), vars),
                   read_poly(field(v, "result"), vars),
                   {},
                   read_polys(field(v, "chain"), vars),
                   read_polys(field(v, "witness"), vars)};
  const json& children = field(v, "children");
  if (!children.is_array()) throw FormatError("trace children must be an array");
  for (const auto& c : children) t.children.push_back(read_trace(c, vars));
  return t;
}

const char* relation_name(Rel r) {
  switch (r) {
    case Rel::Eq: return "=";
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
    default: return "?";
  }
}

Rel read_relation(const std::string& s) {
  if (s == "=") return Rel::Eq;
  if (s == ">=") return Rel::Ge;
  if (s == ">") return Rel::Gt;
  throw FormatError("Darboux relation must be one of =, >=, >");
}

}  // namespace

std::string Certificate::kind() const {
  return std::visit(Overloaded{[](const DarbouxCertificate&) { return "darboux"; },
                               [](const VectorialDarbouxCertificate&) { return "vdbx"; },
                               [](const DriCertificate&) { return "dri"; }, [](const SaiCertificate&) { return "sai"; },
                               [](const HpReductionCertificate&) { return "hp-reduce"; }},
                    evidence);
}

const OdeSystem& Certificate::system() const {
  if (!sys) throw Error(kind() + " certificate has no ODE system");
  return *sys;
}

Certificate darboux_certificate(const OdeSystem& sys, Polynomial p, Polynomial g, Rel relation) {
  return {sys.table(), sys,
          DarbouxCertificate{p.extended(sys.num_vars()), g.extended(sys.num_vars()), relation}};
}

Certificate vectorial_certificate(const OdeSystem& sys, std::vector<Polynomial> pvec, PolyMatrix g) {
  for (auto& p : pvec) p = p.extended(sys.num_vars());
  return {sys.table(), sys, VectorialDarbouxCertificate{std::move(pvec), std::move(g)}};
}

SideCondition dri_condition(const Polynomial& p, const std::optional<Polynomial>& domain, const RankResult& rank,
                            const VarTable& vars) {
  std::vector<Formula> hyp{zero_atom(p)};
  if (domain) hyp.push_back(Formula::atom(*domain, Rel::Ne));
  std::vector<Formula> concl;
  for (std::size_t i = 0; i < rank.n; ++i) concl.push_back(zero_atom(rank.chain[i]));
  return make_condition(vars, Formula::conjunction(std::move(hyp)), Formula::conjunction(std::move(concl)),
                        "dri: p = 0 & Q -> differential radical of p");
}

SaiPremises sai_premises(const NormalForm& p, const NormalForm& q, const OdeSystem& sys, std::size_t cap) {
  ProgressBuilder fwd(sys, cap);
  ProgressBuilder bwd(reverse(sys), cap);
  NormalForm not_p = negate_normal_form(p);
  Formula qf = q.to_formula();
  SaiPremises out;
  out.forward_hypothesis = Formula::conjunction({p.to_formula(), qf, fwd.semialgebraic(q)});
  out.forward = fwd.semialgebraic(p);
  out.backward_hypothesis = Formula::conjunction({not_p.to_formula(), qf, bwd.semialgebraic(q)});
  out.backward = bwd.semialgebraic(not_p);
  return out;
}

bool check_certificate(const Certificate& cert, const DischargeConfig& config) {
  try {
    return std::visit(
        Overloaded{[&](const DarbouxCertificate& d) { return check_darboux(cert, d, config); },
                   [&](const VectorialDarbouxCertificate& v) { return check_vectorial(cert, v); },
                   [&](const DriCertificate& d) { return check_dri(cert, d, config); },
                   [&](const SaiCertificate& s) { return check_sai(cert, s, config); },
                   [&](const HpReductionCertificate& h) {
                     return h.trace.input == h.p && trace_identities_hold(h.program, h.trace);
                   }},
        cert.evidence);
  } catch (const Error&) {
    return false;
  }
}

json side_condition_to_json(const SideCondition& c) {
  json witness = json::array();
  for (const auto& w : c.witness) witness.push_back(to_string(w));
  json out = {{"provenance", c.provenance},
              {"hypothesis", c.hypothesis.to_string(c.vars)},
              {"conclusion", c.conclusion.to_string(c.vars)},
              {"status", status_name(c.status)}};
  if (!c.witness.empty()) out["witness"] = witness;
  if (!c.diagnostic.empty()) out["diagnostic"] = c.diagnostic;
  return out;
}

SideCondition side_condition_from_json(const json& doc, const VarTable& vars) {
  SideCondition c =
      make_condition(vars, read_formula(field(doc, "hypothesis"), vars), read_formula(field(doc, "conclusion"), vars));
  auto status = parse_status(string_field(doc, "status"));
  if (!status) throw FormatError("unknown side-condition status");
  c.status = *status;
  c.provenance = string_field(doc, "provenance");
  if (doc.contains("witness")) {
    for (const auto& w : doc.at("witness")) {
      auto q = w.is_string() ? parse_rational(w.get<std::string>()) : std::nullopt;
      if (!q) throw FormatError("witness coordinates must be rational strings");
      c.witness.push_back(*q);
    }
  }
  if (doc.contains("diagnostic")) c.diagnostic = string_field(doc, "diagnostic");
  return c;
}

json certificate_to_json(const Certificate& cert) {
  const VarTable& vars = cert.vars;
  json names = json::array();
  for (VarId v = 0; v < vars.size(); ++v) names.push_back(vars.name(v));
  json doc = {{"version", kCertificateVersion}, {"kind", cert.kind()}, {"vars", names}};
  if (cert.sys) doc["ode"] = cert.sys->to_string();
  std::visit(Overloaded{[&](const DarbouxCertificate& d) {
                          doc["p"] = text(d.p, vars);
                          doc["g"] = text(d.g, vars);
                          doc["relation"] = relation_name(d.relation);
                        },
                        [&](const VectorialDarbouxCertificate& v) {
                          doc["p"] = texts(v.pvec, vars);
                          json rows = json::array();
                          for (std::size_t i = 0; i < v.g.rows(); ++i) {
                            json row = json::array();
                            for (std::size_t j = 0; j < v.g.cols(); ++j) row.push_back(text(v.g(i, j), vars));
                            rows.push_back(row);
                          }
                          doc["G"] = rows;
                        },
                        [&](const DriCertificate& d) {
                          doc["p"] = text(d.p, vars);
                          doc["domain"] = d.domain ? json(text(*d.domain, vars)) : json(nullptr);
                          doc["rank"] = rank_json(d.rank, vars);
                          doc["quotients"] = texts(d.quotients, vars);
                          if (d.condition) doc["condition"] = side_condition_to_json(*d.condition);
                        },
                        [&](const SaiCertificate& s) {
                          doc["P"] = normal_form_json(s.p, vars);
                          doc["Q"] = normal_form_json(s.q, vars);
                          doc["forward"] = s.forward.to_string(vars);
                          doc["backward"] = s.backward.to_string(vars);
                          json conds = json::array();
                          for (const auto& c : s.conditions) conds.push_back(side_condition_to_json(c));
                          doc["conditions"] = conds;
                        },
                        [&](const HpReductionCertificate& h) {
                          doc["program"] = h.program.to_string(vars);
                          doc["p"] = text(h.p, vars);
                          doc["trace"] = trace_json(h.trace, vars);
                        }},
             cert.evidence);
  return doc;
}

Certificate certificate_from_json(const json& doc) {
  const json& version = field(doc, "version");
  if (!version.is_number_integer() || version.get<int>() != kCertificateVersion)
    throw FormatError("unsupported certificate version");
  std::string kind = string_field(doc, "kind");
  const json& names = field(doc, "vars");
  if (!names.is_array()) throw FormatError("'vars' must be an array of names");
  VarTable vars;
  for (const auto& n : names) {
    if (!n.is_string()) throw FormatError("'vars' must be an array of names");
    vars.add(n.get<std::string>());
  }
  Certificate cert{vars, std::nullopt, DarbouxCertificate{}};
  if (kind != "hp-reduce") {
    VarTable table = vars;
    cert.sys = parse_ode(string_field(doc, "ode"), table);
    if (table.size() != vars.size()) throw FormatError("ODE mentions undeclared variables");
  }
  if (kind == "darboux") {
    cert.evidence = DarbouxCertificate{read_poly(field(doc, "p"), vars), read_poly(field(doc, "g"), vars),
                                       read_relation(string_field(doc, "relation"))};
  } else if (kind == "vdbx") {
    std::vector<Polynomial> pvec = read_polys(field(doc, "p"), vars);
    const json& rows = field(doc, "G");
    if (!rows.is_array() || rows.size() != pvec.size()) throw FormatError("'G' must be a square matrix matching 'p'");
    std::vector<Polynomial> entries;
    for (const auto& row : rows) {
      std::vector<Polynomial> r = read_polys(row, vars);
      if (r.size() != pvec.size()) throw FormatError("'G' must be a square matrix matching 'p'");
      entries.insert(entries.end(), r.begin(), r.end());
    }
    cert.evidence = VectorialDarbouxCertificate{pvec, PolyMatrix(pvec.size(), pvec.size(), std::move(entries))};
  } else if (kind == "dri") {
    DriCertificate d{read_poly(field(doc, "p"), vars), std::nullopt, read_rank(field(doc, "rank"), vars),
                     read_polys(field(doc, "quotients"), vars), std::nullopt};
    const json& domain = field(doc, "domain");
    if (!domain.is_null()) d.domain = read_poly(domain, vars);
    if (doc.contains("condition")) d.condition = side_condition_from_json(doc.at("condition"), vars);
    cert.evidence = std::move(d);
  } else if (kind == "sai") {
    SaiCertificate s{read_normal_form(field(doc, "P"), vars), read_normal_form(field(doc, "Q"), vars),
                     read_formula(field(doc, "forward"), vars), read_formula(field(doc, "backward"), vars), {}};
    const json& conds = field(doc, "conditions");
    if (!conds.is_array()) throw FormatError("'conditions' must be an array");
    for (const auto& c : conds) s.conditions.push_back(side_condition_from_json(c, vars));
    cert.evidence = std::move(s);
  } else if (kind == "hp-reduce") {
    VarTable table = vars;
    HybridProgram program = parse_program(string_field(doc, "program"), table);
    if (table.size() != vars.size()) throw FormatError("program mentions undeclared variables");
    cert.evidence = HpReductionCertificate{std::move(program), read_poly(field(doc, "p"), vars),
                                           read_trace(field(doc, "trace"), vars)};
  } else {
    throw FormatError("unknown certificate kind '" + kind + "'");
  }
  return cert;
}

}  // namespace odeinv
