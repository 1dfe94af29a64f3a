#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>

namespace logbm {

namespace mp = boost::multiprecision;

/// Exact rational scalar. GMP keeps it in canonical reduced form with a
/// positive denominator.
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Integer = mp::number<mp::gmp_int, mp::et_off>;

template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using Vec = VectorX<Rational>;
using Mat = MatrixX<Rational>;

/// Parses "p", "p/q" or "-p/q". Throws ParseError on malformed input or a
/// zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" rendering ("p" when the denominator is 1).
std::string to_string(const Rational& value);

double to_double(const Rational& value);

template <typename Scalar>
Scalar scalar_cast(const Rational& value) {
  if constexpr (std::is_same_v<Scalar, Rational>) {
    return value;
  } else {
    return static_cast<Scalar>(to_double(value));
  }
}

template <typename Scalar>
VectorX<Scalar> vector_cast(const Vec& v) {
  VectorX<Scalar> out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] = scalar_cast<Scalar>(v[i]);
  return out;
}

template <typename Scalar>
Scalar abs_value(const Scalar& x) {
  return x < Scalar(0) ? Scalar(-x) : x;
}

inline int sign(const Rational& x) { return x.sign(); }

Vec unit_vector(int n, int i);
std::string to_string(const Vec& v);

}  // namespace logbm
