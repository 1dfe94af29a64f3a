#include "logbm/scalar.hpp"

#include <cctype>
#include <sstream>

#include "logbm/errors.hpp"

namespace logbm {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) {
    throw ParseError("rational", "malformed rational \"" + std::string(text) + "\"");
  }
  const Integer p{std::string(num)};
  const Integer q{std::string(den)};
  if (q == 0) throw ParseError("rational", "zero denominator in \"" + std::string(text) + "\"");
  Rational r(p, q);
  return negative ? Rational(-r) : r;
}

std::string to_string(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

Vec unit_vector(int n, int i) {
  Vec e = Vec::Zero(n);
  e[i] = 1;
  return e;
}

std::string to_string(const Vec& v) {
  std::ostringstream out;
  out << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i) out << ", ";
    out << to_string(v[i]);
  }
  out << ')';
  return out.str();
}

}  // namespace logbm
