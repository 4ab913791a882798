#include "odeinv/problem.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <set>
#include <sstream>

#include "odeinv/errors.hpp"
#include "odeinv/parser.hpp"

namespace odeinv {

namespace {

struct Entry {
  std::string value;
  SourceLocation at;
};

const std::set<std::string, std::less<>> kKeys{"vars",  "ode",       "domain",  "candidate", "poly",
                                               "polys", "program",   "order",   "cap",       "deg_bound",
                                               "samples", "seed",    "solver",  "solver_args", "timeout"};

std::string trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  if (lead) *lead = b;
  return std::string(s.substr(b, e - b));
}

std::string strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return std::string(line.substr(0, hash));
}

std::map<std::string, Entry, std::less<>> split_entries(std::string_view text) {
  std::map<std::string, Entry, std::less<>> entries;
  Entry* current = nullptr;
  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    std::string line = strip_comment(raw);
    if (trim(line).empty()) continue;
    if (std::isspace(static_cast<unsigned char>(line[0]))) {
      if (!current) throw ParseError("continuation line without a key", lineno, 1);
      current->value += std::string(lineno - current->at.line - std::count(current->value.begin(), current->value.end(), '\n'), '\n');
      current->value += line;
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'key: value'", lineno, 1);
    std::string key = trim(std::string_view(line).substr(0, colon));
    if (!kKeys.count(key)) throw ParseError("unknown key '" + key + "'", lineno, 1);
    if (entries.count(key)) throw ParseError("repeated key '" + key + "'", lineno, 1);
    std::size_t lead = 0;
    std::string value = std::string(std::string_view(line).substr(colon + 1));
    trim(value, &lead);
    current = &entries[key];
    current->value = value.substr(lead);
    current->at = {lineno, colon + 2 + lead};
  }
  return entries;
}

ParseOptions at(const Entry& e) { return {.declare_new = false, .origin = e.at}; }

template <class T>
T number(const Entry& e, const char* key) {
  std::string v = trim(e.value);
  T out{};
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size() || v.empty())
    throw ParseError(std::string("'") + key + "' expects a number", e.at.line, e.at.column);
  return out;
}

double decimal(const Entry& e, const char* key) {
  std::istringstream in(trim(e.value));
  double d = 0;
  if (!(in >> d) || !in.eof() || d <= 0)
    throw ParseError(std::string("'") + key + "' expects a positive number", e.at.line, e.at.column);
  return d;
}

std::vector<std::string> words(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

ProblemFile parse_problem(std::string_view text) {
  auto entries = split_entries(text);
  ProblemFile pf;
  auto find = [&](const char* key) -> const Entry* {
    auto it = entries.find(key);
    return it == entries.end() ? nullptr : &it->second;
  };
  if (const Entry* e = find("vars")) {
    std::size_t col = e->at.column;
    std::string name;
    std::size_t start = col;
    auto flush = [&] {
      std::string n = trim(name);
      if (n.empty()) throw ParseError("empty variable name", e->at.line, start);
      for (char c : n)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
          throw ParseError("invalid variable name '" + n + "'", e->at.line, start);
      if (std::isdigit(static_cast<unsigned char>(n[0])))
        throw ParseError("invalid variable name '" + n + "'", e->at.line, start);
      if (pf.vars.contains(n)) throw ParseError("variable '" + n + "' declared twice", e->at.line, start);
      pf.vars.add(n);
      name.clear();
    };
    for (char c : e->value) {
      if (c == ',') {
        flush();
        start = col + 1;
      } else if (c != '\n') {
        name += c;
      }
      ++col;
    }
    flush();
  } else {
    throw ParseError("missing 'vars'", 1, 1);
  }
  if (const Entry* e = find("ode")) pf.ode = parse_ode(e->value, pf.vars, at(*e));
  if (const Entry* e = find("domain")) pf.domain = parse_formula(e->value, pf.vars, at(*e));
  if (const Entry* e = find("candidate")) pf.candidate = parse_formula(e->value, pf.vars, at(*e));
  if (const Entry* e = find("poly")) pf.poly = parse_polynomial(e->value, pf.vars, at(*e));
  if (const Entry* e = find("polys")) {
    SourceLocation loc = e->at;
    std::size_t begin = 0;
    for (std::size_t i = 0; i <= e->value.size(); ++i) {
      if (i < e->value.size() && e->value[i] != ',') continue;
      std::string piece = e->value.substr(begin, i - begin);
      pf.polys.push_back(parse_polynomial(piece, pf.vars, {.declare_new = false, .origin = loc}));
      for (char c : piece) {
        if (c == '\n') {
          ++loc.line;
          loc.column = 1;
        } else {
          ++loc.column;
        }
      }
      ++loc.column;
      begin = i + 1;
    }
  }
  if (const Entry* e = find("program")) pf.program = parse_program(e->value, pf.vars, at(*e));
  if (const Entry* e = find("order")) pf.order = number<std::size_t>(*e, "order");
  if (const Entry* e = find("cap")) pf.cap = number<std::size_t>(*e, "cap");
  if (const Entry* e = find("deg_bound")) pf.deg_bound = number<int>(*e, "deg_bound");
  if (const Entry* e = find("samples")) pf.samples = number<std::size_t>(*e, "samples");
  if (const Entry* e = find("seed")) pf.seed = number<std::uint64_t>(*e, "seed");
  if (const Entry* e = find("solver")) pf.solver = trim(e->value);
  if (const Entry* e = find("solver_args")) pf.solver_args = words(e->value);
  if (const Entry* e = find("timeout")) pf.timeout = decimal(*e, "timeout");
  if (pf.deg_bound && *pf.deg_bound < 0) {
    const Entry* e = find("deg_bound");
    throw ParseError("'deg_bound' must be non-negative", e->at.line, e->at.column);
  }
  // Polynomials parsed before later declarations may have fewer variables.
  std::size_t n = pf.vars.size();
  if (pf.poly) pf.poly = pf.poly->extended(n);
  for (auto& p : pf.polys) p = p.extended(n);
  return pf;
}

}  // namespace odeinv
