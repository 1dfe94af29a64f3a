#pragma once

#include <compare>
#include <string>

#include "logbm/scalar.hpp"

namespace logbm {

/// The real number q * sqrt(g) with q rational and g a nonnegative integer.
///
/// Lower-dimensional contents of rational polytopes (sections, projections)
/// carry a Gram-determinant square root; keeping it symbolic lets those
/// values be compared exactly. Canonical form folds square factors of g into
/// q (trial division up to a fixed bound; the remaining cofactor is folded
/// only when it is itself a perfect square) and maps zero to q = 0, g = 1.
class RadicalScalar {
 public:
  RadicalScalar() = default;
  RadicalScalar(const Rational& q);  // NOLINT: implicit lift of rationals
  RadicalScalar(const Rational& q, const Rational& g);

  static RadicalScalar sqrt(const Rational& g) { return {Rational(1), g}; }

  const Rational& coefficient() const { return q_; }
  const Integer& radicand() const { return g_; }
  bool is_rational() const { return g_ == 1; }
  int sign() const { return q_.sign(); }

  /// q^2 * g with the sign of q: an exact order-preserving image.
  Rational signed_square() const;

  double to_double() const;
  std::string to_string() const;

  RadicalScalar operator-() const;
  friend RadicalScalar operator*(const RadicalScalar& a, const RadicalScalar& b);
  friend RadicalScalar operator/(const RadicalScalar& a, const RadicalScalar& b);
  /// Defined only for like radicands; throws std::domain_error otherwise.
  friend RadicalScalar operator+(const RadicalScalar& a, const RadicalScalar& b);
  friend RadicalScalar operator-(const RadicalScalar& a, const RadicalScalar& b);

  static bool like(const RadicalScalar& a, const RadicalScalar& b) {
    return a.q_ == 0 || b.q_ == 0 || a.g_ == b.g_;
  }

  friend bool operator==(const RadicalScalar& a, const RadicalScalar& b) {
    return a.signed_square() == b.signed_square();
  }
  friend std::strong_ordering operator<=>(const RadicalScalar& a, const RadicalScalar& b);

 private:
  void canonicalize(const Rational& g);

  Rational q_{0};
  Integer g_{1};
};

}  // namespace logbm
