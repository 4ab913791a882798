#include "odeinv/rational.hpp"

#include <cctype>

namespace odeinv {

std::string to_string(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

std::optional<Rational> parse_unsigned(std::string_view s) {
  auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    if (!all_digits(s)) return std::nullopt;
    return Rational(Integer(std::string(s), 10));
  }
  std::string_view whole = s.substr(0, dot);
  std::string_view frac = s.substr(dot + 1);
  if (whole.empty() && frac.empty()) return std::nullopt;
  if (!whole.empty() && !all_digits(whole)) return std::nullopt;
  if (!frac.empty() && !all_digits(frac)) return std::nullopt;
  Integer num(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
  Rational q(num, den);
  q.canonicalize();
  return q;
}

}  // namespace

std::optional<Rational> parse_rational(std::string_view text) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  std::optional<Rational> value;
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    value = parse_unsigned(text);
  } else {
    auto num = parse_unsigned(text.substr(0, slash));
    auto den = parse_unsigned(text.substr(slash + 1));
    if (!num || !den || *den == 0) return std::nullopt;
    value = *num / *den;
  }
  if (value && negative) *value = -*value;
  return value;
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (q < 0) return std::nullopt;
  Integer num_root, den_root;
  if (!mpz_perfect_square_p(q.get_num_mpz_t()) || !mpz_perfect_square_p(q.get_den_mpz_t()))
    return std::nullopt;
  mpz_sqrt(num_root.get_mpz_t(), q.get_num_mpz_t());
  mpz_sqrt(den_root.get_mpz_t(), q.get_den_mpz_t());
  return Rational(num_root, den_root);
}

}  // namespace odeinv
