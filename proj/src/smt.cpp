#include "odeinv/smt.hpp"

#include <sys/wait.h>
#include <unistd.h>

#include <atomic>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace odeinv {

namespace {

std::string symbol(const std::string& name) {
  bool simple = !name.empty() && !std::isdigit(static_cast<unsigned char>(name[0]));
  for (char c : name) simple = simple && (std::isalnum(static_cast<unsigned char>(c)) || c == '_');
  return simple ? name : "|" + name + "|";
}

std::string decimal(const Integer& n) { return n.get_str() + ".0"; }

std::string numeral(const Rational& q) {
  Integer num = abs(q.get_num());
  std::string body = q.get_den() == 1 ? decimal(num) : "(/ " + decimal(num) + " " + decimal(q.get_den()) + ")";
  return q < 0 ? "(- " + body + ")" : body;
}

std::string monomial_term(const Monomial& m, const Rational& c, const VarTable& vars) {
  std::vector<std::string> factors;
  if (c != 1) factors.push_back(numeral(c));
  for (VarId v = 0; v < m.num_vars(); ++v)
    for (Monomial::Exponent e = 0; e < m[v]; ++e) factors.push_back(symbol(vars.name(v)));
  if (factors.empty()) return numeral(c);
  if (factors.size() == 1) return factors[0];
  std::string out = "(*";
  for (const auto& f : factors) out += " " + f;
  return out + ")";
}

const char* smt_rel(Rel r) {
  switch (r) {
    case Rel::Ge: return ">=";
    case Rel::Gt: return ">";
    case Rel::Le: return "<=";
    case Rel::Lt: return "<";
    default: return "=";
  }
}

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') out += "'\\''";
    else out += c;
  }
  return out + "'";
}

// Minimal s-expression reader for solver output.
struct SExpr {
  std::string atom;
  std::vector<SExpr> list;
  bool is_list = false;
};

class SExprReader {
 public:
  explicit SExprReader(const std::string& text) : text_(text) {}

  std::optional<SExpr> next() {
    skip();
    if (pos_ >= text_.size()) return std::nullopt;
    return read();
  }

 private:
  void skip() {
    while (pos_ < text_.size()) {
      if (std::isspace(static_cast<unsigned char>(text_[pos_]))) {
        ++pos_;
      } else if (text_[pos_] == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr e;
    if (text_[pos_] == '(') {
      ++pos_;
      e.is_list = true;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) break;
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        e.list.push_back(read());
      }
      return e;
    }
    if (text_[pos_] == ')') {
      ++pos_;
      return e;
    }
    if (text_[pos_] == '"' || text_[pos_] == '|') {
      char close = text_[pos_];
      std::size_t start = pos_++;
      while (pos_ < text_.size() && text_[pos_] != close) ++pos_;
      if (pos_ < text_.size()) ++pos_;
      e.atom = text_.substr(start, pos_ - start);
      if (close == '|') e.atom = e.atom.substr(1, e.atom.size() - 2);
      return e;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '(' &&
           text_[pos_] != ')')
      ++pos_;
    e.atom = text_.substr(start, pos_ - start);
    return e;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

std::optional<Rational> value_of(const SExpr& e) {
  if (!e.is_list) return parse_rational(e.atom);
  if (e.list.empty() || e.list[0].is_list) return std::nullopt;
  const std::string& op = e.list[0].atom;
  std::vector<Rational> args;
  for (std::size_t i = 1; i < e.list.size(); ++i) {
    auto v = value_of(e.list[i]);
    if (!v) return std::nullopt;
    args.push_back(*v);
  }
  if (args.empty()) return std::nullopt;
  if (op == "-") {
    if (args.size() == 1) return -args[0];
    Rational r = args[0];
    for (std::size_t i = 1; i < args.size(); ++i) r -= args[i];
    return r;
  }
  if (op == "+") {
    Rational r = 0;
    for (const auto& a : args) r += a;
    return r;
  }
  if (op == "*") {
    Rational r = 1;
    for (const auto& a : args) r *= a;
    return r;
  }
  if (op == "/" && args.size() == 2 && args[1] != 0) return Rational(args[0] / args[1]);
  return std::nullopt;
}

void collect_definitions(const SExpr& e, SolverResult& out) {
  if (!e.is_list) return;
  if (e.list.size() == 5 && !e.list[0].is_list && e.list[0].atom == "define-fun" && e.list[2].is_list &&
      e.list[2].list.empty()) {
    const std::string& name = e.list[1].atom;
    if (auto v = value_of(e.list[4])) out.model[name] = *v;
    else out.irrational.push_back(name);
    return;
  }
  for (const auto& c : e.list) collect_definitions(c, out);
}

}  // namespace

std::string smt_term(const Polynomial& p, const VarTable& vars) {
  if (p.is_zero()) return "0.0";
  std::vector<std::string> terms;
  for (const auto& [m, c] : p.terms()) terms.push_back(monomial_term(m, c, vars));
  if (terms.size() == 1) return terms[0];
  std::string out = "(+";
  for (const auto& t : terms) out += " " + t;
  return out + ")";
}

std::string smt_formula(const Formula& f, const VarTable& vars) {
  using K = Formula::Kind;
  auto nary = [&](const char* op) {
    std::string out = std::string("(") + op;
    for (const auto& c : f.children()) out += " " + smt_formula(c, vars);
    return out + ")";
  };
  switch (f.kind()) {
    case K::True: return "true";
    case K::False: return "false";
    case K::Atom: {
      std::string a = std::string("(") + smt_rel(f.relation()) + " " + smt_term(f.polynomial(), vars) + " 0.0)";
      return f.relation() == Rel::Ne ? "(not " + a + ")" : a;
    }
    case K::Not: return "(not " + smt_formula(f.children()[0], vars) + ")";
    case K::And: return nary("and");
    case K::Or: return nary("or");
    case K::Implies: return nary("=>");
    case K::Forall:
    case K::Exists: {
      std::string out = f.kind() == K::Forall ? "(forall (" : "(exists (";
      bool first = true;
      for (VarId v : f.bound_vars()) {
        out += (first ? "(" : " (") + symbol(vars.name(v)) + " Real)";
        first = false;
      }
      return out + ") " + smt_formula(f.children()[0], vars) + ")";
    }
  }
  return "true";
}

std::string emit_smtlib(const SideCondition& c) {
  std::ostringstream out;
  bool quantified = !c.hypothesis.is_quantifier_free() || !c.conclusion.is_quantifier_free();
  out << "(set-logic " << (quantified ? "NRA" : "QF_NRA") << ")\n";
  if (!c.provenance.empty()) out << "; " << c.provenance << "\n";
  for (const auto& name : c.vars.names()) out << "(declare-const " << symbol(name) << " Real)\n";
  out << "(assert " << smt_formula(c.hypothesis, c.vars) << ")\n";
  out << "(assert (not " << smt_formula(c.conclusion, c.vars) << "))\n";
  out << "(check-sat)\n(get-model)\n";
  return out.str();
}

SolverResult parse_solver_output(const std::string& output) {
  SolverResult r;
  std::istringstream lines(output);
  std::string line;
  while (std::getline(lines, line)) {
    auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    auto e = line.find_last_not_of(" \t\r");
    std::string word = line.substr(b, e - b + 1);
    if (word == "sat") r.answer = SolverAnswer::Sat;
    else if (word == "unsat") r.answer = SolverAnswer::Unsat;
    else if (word == "unknown") r.answer = SolverAnswer::Unknown;
    else continue;
    break;
  }
  if (r.answer == SolverAnswer::Error) {
    r.diagnostic = "solver produced no sat/unsat/unknown answer";
    return r;
  }
  if (r.answer == SolverAnswer::Sat) {
    SExprReader reader(output);
    while (auto e = reader.next()) collect_definitions(*e, r);
  }
  return r;
}

SolverResult run_solver(const SolverConfig& config, const std::string& query) {
  static std::atomic<unsigned> counter{0};
  namespace fs = std::filesystem;
  SolverResult failure;
  fs::path file = fs::temp_directory_path() /
                  ("odeinv-" + std::to_string(::getpid()) + "-" + std::to_string(counter++) + ".smt2");
  {
    std::ofstream out(file);
    if (!out) {
      failure.diagnostic = "cannot write query file " + file.string();
      return failure;
    }
    out << query;
  }
  std::ostringstream cmd;
  cmd << "timeout -k 1 " << config.timeout_seconds << " " << shell_quote(config.path);
  for (const auto& a : config.args) cmd << " " << shell_quote(a);
  cmd << " " << shell_quote(file.string()) << " 2>&1";
  FILE* pipe = ::popen(cmd.str().c_str(), "r");
  if (!pipe) {
    fs::remove(file);
    failure.diagnostic = "cannot start solver " + config.path;
    return failure;
  }
  std::string output;
  char buffer[4096];
  std::size_t n;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) output.append(buffer, n);
  int status = ::pclose(pipe);
  std::error_code ec;
  fs::remove(file, ec);
  if (WIFEXITED(status) && (WEXITSTATUS(status) == 124 || WEXITSTATUS(status) == 137)) {
    failure.answer = SolverAnswer::Unknown;
    failure.diagnostic = "solver timed out after " + std::to_string(config.timeout_seconds) + " s";
    return failure;
  }
  if (WIFEXITED(status) && WEXITSTATUS(status) == 127) {
    failure.diagnostic = "solver not found: " + config.path;
    return failure;
  }
  SolverResult r = parse_solver_output(output);
  if (r.answer == SolverAnswer::Error) r.diagnostic += ": " + output.substr(0, 200);
  return r;
}

}  // namespace odeinv
