#include "carpetq/rational.hpp"

#include "carpetq/errors.hpp"

#include <cctype>

namespace carpetq {

std::string to_string(const Rational& r) { return r.str(); }

std::string to_string(const Point& p) {
  return "(" + to_string(p.x()) + ", " + to_string(p.y()) + ")";
}

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' ||
      den.front() == '+') {
    throw ParseError("not a rational literal: '" + std::string(text) + "'");
  }
  if (den.find_first_not_of('0') == std::string_view::npos) {
    throw ParseError("zero denominator: '" + std::string(text) + "'");
  }
  std::string n(num);
  if (n.front() == '+') n.erase(0, 1);
  return Rational(n) / Rational(std::string(den));
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational pow_rational(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= b;
    b *= b;
    exponent >>= 1u;
  }
  return result;
}

}  // namespace carpetq
