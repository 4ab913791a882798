#include "odeinv/combination.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "odeinv/errors.hpp"

namespace odeinv {

namespace {

using Row = std::vector<std::pair<std::size_t, Rational>>;  // sorted by column

// row -= factor * pivot, both sorted by column.
Row subtract(const Row& row, const Rational& factor, const Row& pivot) {
  Row out;
  out.reserve(row.size() + pivot.size());
  std::size_t a = 0, b = 0;
  while (a < row.size() || b < pivot.size()) {
    if (b == pivot.size() || (a < row.size() && row[a].first < pivot[b].first)) {
      out.push_back(row[a++]);
    } else if (a == row.size() || pivot[b].first < row[a].first) {
      out.emplace_back(pivot[b].first, -factor * pivot[b].second);
      ++b;
    } else {
      Rational v = row[a].second - factor * pivot[b].second;
      if (v != 0) out.emplace_back(row[a].first, std::move(v));
      ++a;
      ++b;
    }
  }
  return out;
}

void enumerate(std::size_t nvars, int remaining, std::size_t var, std::vector<Monomial::Exponent>& cur,
               std::vector<Monomial>& out) {
  if (var == nvars) {
    out.emplace_back(cur);
    return;
  }
  for (int e = 0; e <= remaining; ++e) {
    cur[var] = static_cast<Monomial::Exponent>(e);
    enumerate(nvars, remaining - e, var + 1, cur, out);
  }
  cur[var] = 0;
}

}  // namespace

std::optional<std::vector<Rational>> solve_sparse(std::size_t rows, const std::vector<SparseColumn>& columns,
                                                  const std::vector<std::pair<std::size_t, Rational>>& rhs) {
  std::vector<Row> by_row(rows);
  for (std::size_t c = 0; c < columns.size(); ++c)
    for (const auto& [r, v] : columns[c].entries)
      if (v != 0) by_row[r].emplace_back(c, v);
  std::vector<Rational> b(rows);
  for (const auto& [r, v] : rhs) b[r] += v;

  // Incremental echelon form keyed by leading column.
  std::map<std::size_t, std::pair<Row, Rational>> pivots;
  for (std::size_t r = 0; r < rows; ++r) {
    Row row = std::move(by_row[r]);
    std::sort(row.begin(), row.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
    Rational value = b[r];
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) break;
      Rational factor = row.front().second;
      row = subtract(row, factor, it->second.first);
      value -= factor * it->second.second;
    }
    if (row.empty()) {
      if (value != 0) return std::nullopt;
      continue;
    }
    Rational inv = 1 / row.front().second;
    for (auto& e : row) e.second *= inv;
    value *= inv;
    std::size_t lead = row.front().first;
    pivots.emplace(lead, std::make_pair(std::move(row), std::move(value)));
  }

  std::vector<Rational> x(columns.size());
  for (auto it = pivots.rbegin(); it != pivots.rend(); ++it) {
    const auto& [row, value] = it->second;
    Rational v = value;
    for (std::size_t k = 1; k < row.size(); ++k) v -= row[k].second * x[row[k].first];
    x[it->first] = v;
  }
  return x;
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, int degree) {
  std::vector<Monomial> out;
  if (degree < 0) return out;
  std::vector<Monomial::Exponent> cur(nvars, 0);
  enumerate(nvars, degree, 0, cur, out);
  std::sort(out.begin(), out.end(),
            [](const Monomial& a, const Monomial& b) { return compare(a, b, MonomialOrder::Grevlex) < 0; });
  return out;
}

std::optional<std::vector<Polynomial>> bounded_combination(const std::vector<Polynomial>& gens,
                                                           const Polynomial& target, const std::vector<int>& bounds,
                                                           std::size_t max_unknowns) {
  std::size_t nvars = target.num_vars();
  for (const auto& g : gens) nvars = std::max(nvars, g.num_vars());

  std::vector<std::vector<Monomial>> support(gens.size());
  std::size_t unknowns = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].is_zero()) continue;
    support[i] = monomials_up_to(nvars, bounds.at(i));
    unknowns += support[i].size();
    if (unknowns > max_unknowns) return std::nullopt;
  }

  std::unordered_map<Monomial, std::size_t, MonomialHash> row_of;
  auto row = [&](const Monomial& m) {
    auto [it, inserted] = row_of.emplace(m, row_of.size());
    return it->second;
  };
  std::vector<SparseColumn> columns;
  columns.reserve(unknowns);
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (const auto& m : support[i]) {
      SparseColumn col;
      for (const auto& [gm, gc] : gens[i].terms()) col.entries.emplace_back(row(m * gm.extended(nvars)), gc);
      columns.push_back(std::move(col));
    }
  }
  std::vector<std::pair<std::size_t, Rational>> rhs;
  for (const auto& [tm, tc] : target.terms()) rhs.emplace_back(row(tm.extended(nvars)), tc);

  auto x = solve_sparse(row_of.size(), columns, rhs);
  if (!x) return std::nullopt;
  std::vector<Polynomial> out;
  std::size_t k = 0;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    std::vector<Polynomial::Term> terms;
    for (const auto& m : support[i]) {
      if ((*x)[k] != 0) terms.emplace_back(m, (*x)[k]);
      ++k;
    }
    out.push_back(Polynomial::from_terms(nvars, std::move(terms)));
  }
  return out;
}

std::vector<Polynomial> combination_witness(const std::vector<Polynomial>& gens, const Polynomial& target,
                                            const GroebnerOptions& options) {
  if (gens.size() > 1) {
    long top = target.degree();
    for (const auto& g : gens) top = std::max(top, g.degree());
    for (long d = std::max(target.degree(), 0L); d <= top + 3; ++d) {
      std::vector<int> bounds;
      for (const auto& g : gens) bounds.push_back(static_cast<int>(d - g.degree()));
      if (auto c = bounded_combination(gens, target, bounds, 6000)) return *c;
    }
  }
  GroebnerOptions tracked = options;
  tracked.track_cofactors = true;
  auto w = groebner(gens, tracked).member(target);
  if (!w) throw Error("internal error: target is not in the ideal");
  return std::move(w->cofactors);
}

}  // namespace odeinv
