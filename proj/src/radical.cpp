#include "logbm/radical.hpp"

#include <cmath>
#include <stdexcept>

namespace logbm {

namespace {

// Square factors below this bound are always folded into the coefficient.
constexpr unsigned kTrialDivisionBound = 20000;

}  // namespace

RadicalScalar::RadicalScalar(const Rational& q) : q_(q) {}

RadicalScalar::RadicalScalar(const Rational& q, const Rational& g) : q_(q) { canonicalize(g); }

void RadicalScalar::canonicalize(const Rational& g) {
  if (g < 0) throw std::domain_error("negative radicand");
  if (q_ == 0 || g == 0) {
    q_ = 0;
    g_ = 1;
    return;
  }
  // sqrt(a/b) = sqrt(a b) / b
  q_ /= Rational(denominator(g));
  Integer rest = numerator(g) * denominator(g);
  Integer root(1);
  for (unsigned p = 2; p <= kTrialDivisionBound; ++p) {
    const Integer sq(p * p);
    if (sq > rest) break;
    while (rest % sq == 0) {
      rest /= sq;
      root *= p;
    }
  }
  const Integer r = mp::sqrt(rest);
  if (r * r == rest) {
    root *= r;
    rest = 1;
  }
  q_ *= Rational(root);
  g_ = rest;
}

Rational RadicalScalar::signed_square() const {
  Rational s = q_ * q_ * Rational(g_);
  return q_ < 0 ? Rational(-s) : s;
}

double RadicalScalar::to_double() const { return logbm::to_double(q_) * std::sqrt(g_.convert_to<double>()); }

std::string RadicalScalar::to_string() const {
  if (g_ == 1) return logbm::to_string(q_);
  return logbm::to_string(q_) + "*sqrt(" + g_.str() + ")";
}

RadicalScalar RadicalScalar::operator-() const {
  RadicalScalar out = *this;
  out.q_ = -out.q_;
  return out;
}

RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b) {
  return RadicalScalar(a.q_ * b.q_, Rational(a.g_ * b.g_));
}

RadicalScalar operator/(const RadicalScalar& a, const RadicalScalar& b) {
  if (b.q_ == 0) throw std::domain_error("division by zero radical");
  // q1 sqrt(g1) / (q2 sqrt(g2)) = (q1 / q2) sqrt(g1 / g2)
  return RadicalScalar(a.q_ / b.q_, Rational(a.g_, b.g_));
}

RadicalScalar operator+(const RadicalScalar& a, const RadicalScalar& b) {
  if (a.q_ == 0) return b;
  if (b.q_ == 0) return a;
  if (a.g_ != b.g_) throw std::domain_error("sum of unlike radicals");
  RadicalScalar out;
  out.q_ = a.q_ + b.q_;
  out.g_ = out.q_ == 0 ? Integer(1) : a.g_;
  return out;
}

RadicalScalar operator-(const RadicalScalar& a, const RadicalScalar& b) { return a + (-b); }

std::strong_ordering operator<=>(const RadicalScalar& a, const RadicalScalar& b) {
  const Rational sa = a.signed_square();
  const Rational sb = b.signed_square();
  if (sa < sb) return std::strong_ordering::less;
  if (sb < sa) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace logbm
