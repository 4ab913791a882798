#include "odeinv/parser.hpp"

#include <cctype>
#include <string>
#include <vector>

#include "odeinv/errors.hpp"
#include "odeinv/rational.hpp"

namespace odeinv {

namespace {

enum class Tok {
  End, Ident, Number, Plus, Minus, Star, Slash, Caret, LParen, RParen, LBrace, RBrace, Comma, Prime,
  Eq, Ne, Ge, Gt, Le, Lt, Not, And, Or, Arrow, Assign, Question, Semi, Choice
};

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

std::vector<Token> tokenize(std::string_view src, SourceLocation origin) {
  std::vector<Token> out;
  std::size_t line = origin.line, col = origin.column;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      t.kind = Tok::Number;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    auto two = src.substr(i, 2);
    struct Sym { std::string_view s; Tok k; };
    static const Sym syms[] = {
        {":=", Tok::Assign}, {"->", Tok::Arrow}, {"!=", Tok::Ne}, {">=", Tok::Ge}, {"<=", Tok::Le},
        {"==", Tok::Eq},     {"&&", Tok::And},   {"||", Tok::Or}, {"++", Tok::Choice},
    };
    bool matched = false;
    for (const auto& s : syms) {
      if (two == s.s) {
        t.kind = s.k;
        t.text = std::string(s.s);
        advance(2);
        matched = true;
        break;
      }
    }
    if (!matched) {
      switch (c) {
        case '+': t.kind = Tok::Plus; break;
        case '-': t.kind = Tok::Minus; break;
        case '*': t.kind = Tok::Star; break;
        case '/': t.kind = Tok::Slash; break;
        case '^': t.kind = Tok::Caret; break;
        case '(': t.kind = Tok::LParen; break;
        case ')': t.kind = Tok::RParen; break;
        case '{': t.kind = Tok::LBrace; break;
        case '}': t.kind = Tok::RBrace; break;
        case ',': t.kind = Tok::Comma; break;
        case '\'': t.kind = Tok::Prime; break;
        case '=': t.kind = Tok::Eq; break;
        case '>': t.kind = Tok::Gt; break;
        case '<': t.kind = Tok::Lt; break;
        case '!': t.kind = Tok::Not; break;
        case '&': t.kind = Tok::And; break;
        case '|': t.kind = Tok::Or; break;
        case '?': t.kind = Tok::Question; break;
        case ';': t.kind = Tok::Semi; break;
        default:
          throw ParseError(std::string("unexpected character '") + c + "'", line, col);
      }
      t.text = std::string(1, c);
      advance(1);
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

class Parser {
 public:
  Parser(std::string_view text, VarTable& vars, const ParseOptions& options)
      : toks_(tokenize(text, options.origin)), vars_(vars), declare_new_(options.declare_new) {}

  Polynomial polynomial_only() {
    Polynomial p = expr();
    expect_end();
    return p;
  }

  Formula formula_only() {
    Formula f = formula();
    expect_end();
    return f;
  }

  HybridProgram program_only() {
    HybridProgram a = program();
    expect_end();
    return a;
  }

  OdeSystem ode_only() {
    std::vector<std::pair<VarId, Polynomial>> eqs = ode_equations();
    expect_end();
    return make_system(eqs);
  }

 private:
  const Token& peek(std::size_t ahead = 0) const { return toks_[std::min(pos_ + ahead, toks_.size() - 1)]; }
  bool at(Tok k) const { return peek().kind == k; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& t) const { throw ParseError(msg, t.line, t.column); }
  [[noreturn]] void fail(const std::string& msg) const { fail(msg, peek()); }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what + (at(Tok::End) ? " at end of input" : " near '" + peek().text + "'"));
  }
  void expect_end() {
    if (!at(Tok::End)) fail("unexpected '" + peek().text + "'");
  }

  VarId variable(const Token& t) {
    if (auto id = vars_.find(t.text)) return *id;
    if (t.text == "true" || t.text == "false") fail("boolean literal used as a term", t);
    if (!declare_new_) fail("undeclared variable '" + t.text + "'", t);
    return vars_.add(t.text);
  }

  // expr := term (('+'|'-') term)*
  Polynomial expr() {
    Polynomial p = term();
    while (at(Tok::Plus) || at(Tok::Minus)) {
      bool minus = next().kind == Tok::Minus;
      Polynomial q = term();
      if (minus) p -= q; else p += q;
    }
    return p;
  }

  // term := unary (('*'|'/') unary)*
  Polynomial term() {
    Polynomial p = unary();
    while (at(Tok::Star) || at(Tok::Slash)) {
      const Token& op = next();
      Polynomial q = unary();
      if (op.kind == Tok::Star) {
        p *= q;
      } else {
        if (!q.is_constant()) throw NonPolynomialError(std::to_string(op.line) + ":" + std::to_string(op.column) +
                                                       ": non-polynomial: division by a non-constant term");
        if (q.is_zero()) fail("division by zero", op);
        p *= Rational(1 / q.constant_term());
      }
    }
    return p;
  }

  Polynomial unary() {
    if (accept(Tok::Minus)) return -unary();
    if (accept(Tok::Plus)) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (!at(Tok::Caret)) return base;
    const Token& caret = next();
    bool negative = accept(Tok::Minus);
    if (!at(Tok::Number)) fail("expected an integer exponent");
    const Token& num = next();
    auto e = parse_rational(num.text);
    if (!e || e->get_den() != 1) fail("exponent must be an integer", num);
    if (negative && *e != 0) throw NonPolynomialError(std::to_string(caret.line) + ":" + std::to_string(caret.column) +
                                                      ": non-polynomial: negative exponent");
    if (!e->get_num().fits_slong_p() || e->get_num() > 10000) fail("exponent too large", num);
    return base.pow(e->get_num().get_si());
  }

  Polynomial primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number: {
        next();
        auto q = parse_rational(t.text);
        if (!q) fail("malformed number", t);
        return Polynomial::constant(vars_.size(), *q);
      }
      case Tok::Ident: {
        next();
        VarId id = variable(t);
        return Polynomial::variable(vars_.size(), id);
      }
      case Tok::LParen: {
        next();
        Polynomial p = expr();
        expect(Tok::RParen, "')'");
        return p;
      }
      default:
        fail(at(Tok::End) ? "unexpected end of input" : "unexpected '" + t.text + "'");
    }
  }

  // formula := disj ('->' formula)?
  Formula formula() {
    Formula lhs = disjunction();
    if (accept(Tok::Arrow)) return Formula::implication(lhs, formula());
    return lhs;
  }

  Formula disjunction() {
    std::vector<Formula> parts{conjunction()};
    while (accept(Tok::Or)) parts.push_back(conjunction());
    return Formula::disjunction(std::move(parts));
  }

  Formula conjunction() {
    std::vector<Formula> parts{negation()};
    while (accept(Tok::And)) parts.push_back(negation());
    return Formula::conjunction(std::move(parts));
  }

  Formula negation() {
    if (accept(Tok::Not)) return Formula::negation(negation());
    return basic();
  }

  Formula basic() {
    if (at(Tok::Ident) && (peek().text == "true" || peek().text == "false") && !vars_.contains(peek().text)) {
      return next().text == "true" ? Formula::truth() : Formula::falsity();
    }
    if (at(Tok::LParen)) {
      // Either a parenthesised formula or a comparison whose left term starts
      // with '('. Try the comparison first and backtrack.
      std::size_t saved = pos_;
      std::size_t saved_vars = vars_.size();
      try {
        return comparison();
      } catch (const ParseError& first) {
        pos_ = saved;
        if (vars_.size() != saved_vars) vars_ = truncated(vars_, saved_vars);
        next();
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
    }
    return comparison();
  }

  static VarTable truncated(const VarTable& t, std::size_t n) {
    std::vector<std::string> names(t.names().begin(), t.names().begin() + static_cast<long>(n));
    return VarTable(names);
  }

  Formula comparison() {
    Polynomial lhs = expr();
    const Token& op = peek();
    Rel rel;
    switch (op.kind) {
      case Tok::Eq: rel = Rel::Eq; break;
      case Tok::Ne: rel = Rel::Ne; break;
      case Tok::Ge: rel = Rel::Ge; break;
      case Tok::Gt: rel = Rel::Gt; break;
      case Tok::Le: rel = Rel::Le; break;
      case Tok::Lt: rel = Rel::Lt; break;
      default: fail("expected a comparison operator");
    }
    next();
    Polynomial rhs = expr();
    return Formula::atom(lhs - rhs, rel);
  }

  HybridProgram program() {
    HybridProgram a = sequence();
    while (accept(Tok::Choice)) a = HybridProgram::choice(std::move(a), sequence());
    return a;
  }

  HybridProgram sequence() {
    HybridProgram a = atomic_program();
    while (accept(Tok::Semi)) a = HybridProgram::seq(std::move(a), atomic_program());
    return a;
  }

  // r from `lhs != rhs`.
  Polynomial disequation(const char* where) {
    Polynomial lhs = expr();
    if (!accept(Tok::Ne)) fail(std::string(where) + " must have the form e != 0");
    return lhs - expr();
  }

  HybridProgram atomic_program() {
    if (accept(Tok::Question)) return HybridProgram::test(disequation("a test"));
    if (at(Tok::Ident) && peek(1).kind == Tok::Assign) {
      const Token& name = next();
      VarId id = variable(name);
      next();
      return HybridProgram::assign(id, expr());
    }
    if (accept(Tok::LBrace)) {
      std::optional<HybridProgram> body;
      if (at(Tok::Ident) && peek(1).kind == Tok::Prime) {
        auto eqs = ode_equations();
        std::optional<Polynomial> domain;
        if (accept(Tok::And)) domain = disequation("an evolution domain");
        OdeSystem sys = make_system(eqs);
        if (domain) domain = domain->extended(vars_.size());
        body = HybridProgram::ode(std::move(sys), std::move(domain));
      } else {
        body = program();
      }
      expect(Tok::RBrace, "'}'");
      if (accept(Tok::Star)) return HybridProgram::star(std::move(*body));
      return std::move(*body);
    }
    fail(at(Tok::End) ? "expected a program" : "unexpected '" + peek().text + "' in program");
  }

  std::vector<std::pair<VarId, Polynomial>> ode_equations() {
    std::vector<std::pair<VarId, Polynomial>> eqs;
    do {
      if (!at(Tok::Ident)) fail("expected a differential equation x' = ...");
      const Token& name = next();
      VarId id = variable(name);
      expect(Tok::Prime, "\"'\"");
      expect(Tok::Eq, "'='");
      eqs.emplace_back(id, expr());
    } while (accept(Tok::Comma));
    return eqs;
  }

  OdeSystem make_system(const std::vector<std::pair<VarId, Polynomial>>& eqs) {
    std::vector<OdeSystem::Equation> out;
    for (const auto& [v, rhs] : eqs) out.push_back({v, rhs.extended(vars_.size())});
    return OdeSystem(vars_, std::move(out));
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  VarTable& vars_;
  bool declare_new_;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, VarTable& vars, const ParseOptions& options) {
  Polynomial p = Parser(text, vars, options).polynomial_only();
  return p.extended(vars.size());
}

Formula parse_formula(std::string_view text, VarTable& vars, const ParseOptions& options) {
  return Parser(text, vars, options).formula_only();
}

HybridProgram parse_program(std::string_view text, VarTable& vars, const ParseOptions& options) {
  return Parser(text, vars, options).program_only();
}

OdeSystem parse_ode(std::string_view text, VarTable& vars, const ParseOptions& options) {
  return Parser(text, vars, options).ode_only();
}

}  // namespace odeinv
