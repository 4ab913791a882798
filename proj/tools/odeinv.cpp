#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "odeinv/darboux.hpp"
#include "odeinv/errors.hpp"
#include "odeinv/invariant.hpp"
#include "odeinv/problem.hpp"
#include "odeinv/progress.hpp"
#include "odeinv/smt.hpp"

using namespace odeinv;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kRefuted = 1, kUnknown = 2, kInputError = 3, kResourceError = 4 };

struct Options {
  std::string command;
  std::string input;
  bool json_out = false;
  bool timing = false;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> samples, cap, order;
  std::optional<int> deg_bound;
  std::optional<std::string> solver;
  std::vector<std::string> solver_args;
  std::optional<double> timeout;
};

struct Settings {
  DischargeConfig discharge;
  std::size_t cap = kDefaultRankCap;
  std::optional<int> deg_bound;
  std::size_t order = 3;
};

struct Output {
  json report;
  std::vector<std::string> lines;
  int code = kOk;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Settings settings(const ProblemFile& pf, const Options& o) {
  Settings s;
  s.discharge.seed = o.seed.value_or(pf.seed.value_or(0));
  s.discharge.samples = o.samples.value_or(pf.samples.value_or(s.discharge.samples));
  s.cap = o.cap.value_or(pf.cap.value_or(kDefaultRankCap));
  s.deg_bound = o.deg_bound ? o.deg_bound : pf.deg_bound;
  s.order = o.order.value_or(pf.order.value_or(3));
  std::optional<std::string> solver = o.solver ? o.solver : pf.solver;
  if (solver) {
    SolverConfig sc{*solver, o.solver_args.empty() ? pf.solver_args : o.solver_args, 20};
    sc.timeout_seconds = o.timeout.value_or(pf.timeout.value_or(20));
    s.discharge.solver = sc;
  }
  return s;
}

const OdeSystem& need_ode(const ProblemFile& pf) {
  if (!pf.ode) throw UnsupportedInputError("problem has no 'ode'");
  return *pf.ode;
}

const Polynomial& need_poly(const ProblemFile& pf) {
  if (!pf.poly) throw UnsupportedInputError("problem has no 'poly'");
  return *pf.poly;
}

json texts(const std::vector<Polynomial>& ps, const VarTable& vars) {
  json out = json::array();
  for (const auto& p : ps) out.push_back(p.to_string(vars));
  return out;
}

json point_json(const std::vector<Rational>& pt, const VarTable& vars) {
  json out = json::object();
  for (std::size_t i = 0; i < pt.size() && i < vars.size(); ++i) out[vars.name(i)] = to_string(pt[i]);
  return out;
}

std::string point_text(const std::vector<Rational>& pt, const VarTable& vars) {
  std::string s;
  for (std::size_t i = 0; i < pt.size() && i < vars.size(); ++i)
    s += (i ? ", " : "") + vars.name(i) + " = " + to_string(pt[i]);
  return s;
}

// p = 0 from `poly`, or from a candidate of that exact shape.
Polynomial algebraic_candidate(const ProblemFile& pf) {
  if (pf.poly) return *pf.poly;
  if (pf.candidate && pf.candidate->kind() == Formula::Kind::Atom && pf.candidate->relation() == Rel::Eq)
    return pf.candidate->polynomial();
  throw UnsupportedInputError("check-alg needs 'poly' or a candidate of the form 'p = 0'");
}

std::optional<Polynomial> algebraic_domain(const ProblemFile& pf) {
  if (!pf.domain || pf.domain->kind() == Formula::Kind::True) return std::nullopt;
  if (pf.domain->kind() == Formula::Kind::Atom && pf.domain->relation() == Rel::Ne) return pf.domain->polynomial();
  throw UnsupportedInputError("check-alg needs a domain of the form 'r != 0'");
}

NormalForm domain_nf(const ProblemFile& pf) {
  return pf.domain ? to_normal_form(*pf.domain) : NormalForm::truth();
}

void add_verdict(Output& out, const Verdict& v, const VarTable& vars) {
  out.report["verdict"] = outcome_name(v.outcome);
  json conds = json::array();
  for (const auto& c : v.conditions) conds.push_back(side_condition_to_json(c));
  out.report["conditions"] = conds;
  out.report["diagnostics"] = v.diagnostics;
  out.lines.push_back(std::string("verdict: ") + outcome_name(v.outcome));
  if (v.certificate) {
    out.report["certificate"] = certificate_to_json(*v.certificate);
    out.lines.push_back("certificate: " + v.certificate->kind());
  }
  for (const auto& c : v.conditions)
    out.lines.push_back(std::string("  [") + status_name(c.status) + "] " + c.provenance);
  if (v.violated) {
    out.report["violated"] = *v.violated;
    out.report["witness"] = point_json(v.witness(), vars);
    out.lines.push_back("witness: " + point_text(v.witness(), vars));
  }
  for (const auto& d : v.diagnostics) out.lines.push_back("note: " + d);
  out.code = v.outcome == Outcome::Invariant ? kOk : v.outcome == Outcome::NotInvariant ? kRefuted : kUnknown;
}

Output run_lie(const ProblemFile& pf, const Settings& s) {
  const OdeSystem& sys = need_ode(pf);
  auto chain = lie_chain(need_poly(pf), sys, s.order + 1);
  Output out;
  out.report["chain"] = texts(chain, sys.table());
  for (std::size_t i = 0; i < chain.size(); ++i)
    out.lines.push_back("L^" + std::to_string(i) + " p = " + chain[i].to_string(sys.table()));
  return out;
}

Output run_rank(const ProblemFile& pf, const Settings& s) {
  const OdeSystem& sys = need_ode(pf);
  RankResult r = rank(need_poly(pf), sys, s.cap);
  Output out;
  out.report["rank"] = r.n;
  out.report["cofactors"] = texts(r.cofactors, sys.table());
  out.report["chain"] = texts(r.chain, sys.table());
  out.lines.push_back("rank: " + std::to_string(r.n));
  for (std::size_t i = 0; i < r.n; ++i)
    out.lines.push_back("g_" + std::to_string(i) + " = " + r.cofactors[i].to_string(sys.table()));
  return out;
}

Output run_radical(const ProblemFile& pf, const Settings& s) {
  const OdeSystem& sys = need_ode(pf);
  ProgressBuilder b(sys, s.cap);
  Formula f = b.radical(need_poly(pf));
  Output out;
  out.report["rank"] = b.rank_of(*pf.poly).n;
  out.report["formula"] = f.to_string(sys.table());
  out.lines.push_back(f.to_string(sys.table()));
  return out;
}

Output run_progress(const ProblemFile& pf, const Settings& s) {
  const OdeSystem& sys = need_ode(pf);
  const VarTable& vars = sys.table();
  if (!pf.poly && !pf.candidate) throw UnsupportedInputError("progress needs 'poly' or 'candidate'");
  Output out;
  ProgressBuilder fwd(sys, s.cap), bwd(reverse(sys), s.cap);
  if (pf.poly) {
    std::string gt = fwd.gt(*pf.poly).to_string(vars), geq = fwd.geq(*pf.poly).to_string(vars);
    out.report["gt"] = gt;
    out.report["geq"] = geq;
    out.lines.push_back("gt: " + gt);
    out.lines.push_back("geq: " + geq);
  }
  if (pf.candidate) {
    NormalForm nf = to_normal_form(*pf.candidate);
    std::string f = fwd.semialgebraic(nf).to_string(vars), b = bwd.semialgebraic(nf).to_string(vars);
    out.report["normal_form"] = nf.to_formula().to_string(vars);
    out.report["forward"] = f;
    out.report["backward"] = b;
    out.lines.push_back("normal form: " + nf.to_formula().to_string(vars));
    out.lines.push_back("forward: " + f);
    out.lines.push_back("backward: " + b);
  }
  return out;
}

Output run_check_alg(const ProblemFile& pf, const Settings& s) {
  const OdeSystem& sys = need_ode(pf);
  Verdict v = check_algebraic_invariance(algebraic_candidate(pf), sys, algebraic_domain(pf), {s.discharge, s.cap});
  Output out;
  add_verdict(out, v, sys.table());
  return out;
}

Output run_check_inv(const ProblemFile& pf, const Settings& s) {
  const OdeSystem& sys = need_ode(pf);
  if (!pf.candidate) throw UnsupportedInputError("problem has no 'candidate'");
  Verdict v = check_semialgebraic_invariance(to_normal_form(*pf.candidate), domain_nf(pf), sys, {s.discharge, s.cap});
  Output out;
  add_verdict(out, v, sys.table());
  return out;
}

Output run_darboux(const ProblemFile& pf, const Settings& s) {
  const OdeSystem& sys = need_ode(pf);
  if (!pf.poly && pf.polys.empty()) throw UnsupportedInputError("darboux needs 'poly' or 'polys'");
  Output out;
  bool all = true;
  if (pf.poly) {
    int bound = s.deg_bound.value_or(default_cofactor_bound(*pf.poly, sys));
    auto g = find_darboux_cofactor(*pf.poly, sys, bound);
    out.report["scalar"] = {{"deg_bound", bound}, {"found", g.has_value()}};
    if (g) {
      out.report["scalar"]["certificate"] = certificate_to_json(darboux_certificate(sys, *pf.poly, *g));
      out.lines.push_back("cofactor: " + g->to_string(sys.table()));
    } else {
      out.lines.push_back("no cofactor of degree <= " + std::to_string(bound));
    }
    all = all && g;
  }
  if (!pf.polys.empty()) {
    int bound = s.deg_bound.value_or(default_matrix_bound(pf.polys, sys));
    auto g = find_vectorial_darboux(pf.polys, sys, bound);
    out.report["vectorial"] = {{"deg_bound", bound}, {"found", g.has_value()}};
    if (g) {
      out.report["vectorial"]["certificate"] = certificate_to_json(vectorial_certificate(sys, pf.polys, *g));
      for (std::size_t i = 0; i < g->rows(); ++i) {
        std::string row;
        for (std::size_t j = 0; j < g->cols(); ++j) row += (j ? ", " : "") + (*g)(i, j).to_string(sys.table());
        out.lines.push_back("G[" + std::to_string(i) + "] = [" + row + "]");
      }
    } else {
      out.lines.push_back("no matrix with entries of degree <= " + std::to_string(bound));
    }
    all = all && g;
  }
  out.code = all ? kOk : kUnknown;
  return out;
}

Output run_hp_reduce(const ProblemFile& pf, const Settings& s) {
  if (!pf.program) throw UnsupportedInputError("problem has no 'program'");
  Polynomial p = need_poly(pf);
  Reduction r = reduce_box(*pf.program, p, s.cap);
  Certificate cert{pf.vars, std::nullopt, HpReductionCertificate{*pf.program, p, r.trace}};
  Output out;
  out.report["q"] = r.q.to_string(pf.vars);
  out.report["certificate"] = certificate_to_json(cert);
  out.report["verified"] = check_certificate(cert);
  out.lines.push_back("q = " + r.q.to_string(pf.vars));
  if (!check_certificate(cert)) {
    out.lines.push_back("trace failed re-verification");
    out.code = kUnknown;
  }
  return out;
}

std::vector<SideCondition> conditions_for(const ProblemFile& pf, const Settings& s) {
  const OdeSystem& sys = need_ode(pf);
  if (pf.poly) {
    RankResult r = rank(*pf.poly, sys, s.cap);
    return {dri_condition(*pf.poly, algebraic_domain(pf), r, sys.table())};
  }
  if (!pf.candidate) throw UnsupportedInputError("emit-smt needs 'poly' or 'candidate'");
  SaiPremises prem = sai_premises(to_normal_form(*pf.candidate), domain_nf(pf), sys, s.cap);
  return {make_condition(sys.table(), prem.forward_hypothesis, prem.forward, "sai forward"),
          make_condition(sys.table(), prem.backward_hypothesis, prem.backward, "sai backward")};
}

Output run_emit_smt(const ProblemFile& pf, const Settings& s, const Options& o) {
  Output out;
  out.report["queries"] = json::array();
  auto conds = conditions_for(pf, s);
  for (std::size_t i = 0; i < conds.size(); ++i) {
    std::string q = emit_smtlib(conds[i]);
    json entry = {{"provenance", conds[i].provenance}};
    if (!o.out_dir.empty()) {
      std::filesystem::create_directories(o.out_dir);
      auto path = std::filesystem::path(o.out_dir) / ("condition-" + std::to_string(i) + ".smt2");
      std::ofstream(path) << q;
      entry["file"] = path.string();
      out.lines.push_back(path.string());
    } else {
      entry["query"] = q;
      out.lines.push_back(q);
    }
    out.report["queries"].push_back(entry);
  }
  return out;
}

Output run_cert_check(const Options& o) {
  json doc;
  try {
    doc = json::parse(read_file(o.input));
  } catch (const json::parse_error& e) {
    throw FormatError(e.what());
  }
  Certificate cert = certificate_from_json(doc);
  DischargeConfig cfg;
  cfg.samples = 0;
  if (o.solver) cfg.solver = SolverConfig{*o.solver, o.solver_args, o.timeout.value_or(20)};
  bool ok = check_certificate(cert, cfg);
  Output out;
  out.report["kind"] = cert.kind();
  out.report["accepted"] = ok;
  out.lines.push_back(cert.kind() + (ok ? " certificate accepted" : " certificate rejected"));
  out.code = ok ? kOk : kRefuted;
  return out;
}

Output dispatch(const Options& o) {
  if (o.command == "cert-check") return run_cert_check(o);
  ProblemFile pf = parse_problem(read_file(o.input));
  Settings s = settings(pf, o);
  Output out;
  if (o.command == "lie") out = run_lie(pf, s);
  else if (o.command == "rank") out = run_rank(pf, s);
  else if (o.command == "radical") out = run_radical(pf, s);
  else if (o.command == "progress") out = run_progress(pf, s);
  else if (o.command == "check-alg") out = run_check_alg(pf, s);
  else if (o.command == "check-inv") out = run_check_inv(pf, s);
  else if (o.command == "darboux") out = run_darboux(pf, s);
  else if (o.command == "hp-reduce") out = run_hp_reduce(pf, s);
  else if (o.command == "emit-smt") out = run_emit_smt(pf, s, o);
  out.report["seed"] = s.discharge.seed;
  out.report["samples"] = s.discharge.samples;
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact invariance checking for polynomial ODEs and hybrid programs"};
  app.require_subcommand(1);
  Options o;
  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec specs[] = {
      {"lie", "Lie derivatives L^0 p .. L^order p"},
      {"rank", "rank of p with recombination cofactors"},
      {"radical", "differential radical formula of p"},
      {"progress", "local progress formulas of poly and/or candidate"},
      {"check-alg", "decide invariance of p = 0"},
      {"check-inv", "decide invariance of a semialgebraic candidate"},
      {"darboux", "Darboux cofactor (poly) or matrix (polys) search"},
      {"hp-reduce", "reduce [program] p = 0 to a polynomial equation"},
      {"emit-smt", "write side conditions as SMT-LIB queries"},
      {"cert-check", "re-verify a JSON certificate"},
  };
  for (const auto& spec : specs) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    bool cert = std::string(spec.name) == "cert-check";
    sub->add_option("input", o.input, cert ? "certificate JSON file" : "problem file")->required();
    sub->add_flag("--json", o.json_out, "print the JSON report");
    sub->add_option("--solver", o.solver, "external SMT solver binary");
    sub->add_option("--solver-arg", o.solver_args, "extra solver argument (repeatable)");
    sub->add_option("--timeout", o.timeout, "solver timeout in seconds")->check(CLI::PositiveNumber);
    if (cert) continue;
    sub->add_flag("--timing", o.timing, "include wall-clock time in the report");
    sub->add_option("--seed", o.seed, "sampling seed");
    sub->add_option("--samples", o.samples, "sampling budget");
    sub->add_option("--cap", o.cap, "rank and loop-chain cap");
    sub->add_option("--deg-bound", o.deg_bound, "cofactor degree bound")->check(CLI::NonNegativeNumber);
    sub->add_option("--order", o.order, "highest Lie derivative order");
    if (std::string(spec.name) == "emit-smt") sub->add_option("-o,--out", o.out_dir, "directory for .smt2 files");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kInputError;
  }
  o.command = app.get_subcommands().front()->get_name();

  auto start = std::chrono::steady_clock::now();
  Output out;
  try {
    out = dispatch(o);
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResourceError;
  } catch (const std::bad_alloc&) {
    std::cerr << "error: out of memory\n";
    return kResourceError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  out.report["version"] = 1;
  out.report["command"] = o.command;
  if (o.timing)
    out.report["timing_ms"] =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (o.json_out) {
    std::cout << out.report.dump(2) << "\n";
  } else {
    for (const auto& line : out.lines) std::cout << line << "\n";
  }
  return out.code;
}
