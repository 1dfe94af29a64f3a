#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "logbm/scalar.hpp"

namespace logbm::testing {

inline Rational R(const std::string& text) { return parse_rational(text); }
inline Rational R(long p, long q = 1) { return Rational(p, q); }

inline Vec V(std::initializer_list<Rational> xs) {
  Vec v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const Rational& x : xs) v[i++] = x;
  return v;
}

inline Mat M(std::initializer_list<std::initializer_list<Rational>> rows) {
  Mat m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    Eigen::Index c = 0;
    for (const Rational& x : row) m(r, c++) = x;
    ++r;
  }
  return m;
}

inline Vec e(int n, int i) { return unit_vector(n, i); }

}  // namespace logbm::testing
