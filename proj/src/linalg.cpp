#include "logbm/linalg.hpp"

namespace logbm {

Vec generalized_cross(const Mat& rows) {
  const Eigen::Index n = rows.cols();
  Vec c(n);
  Mat minor(n - 1, n - 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index col = 0, k = 0; col < n; ++col) {
      if (col == i) continue;
      minor.col(k++) = rows.col(col);
    }
    const Rational d = determinant(minor);
    c[i] = ((n - 1 + i) % 2 == 0) ? d : Rational(-d);
  }
  return c;
}

std::vector<Vec> nullspace(const Mat& rows) {
  const Eigen::Index n = rows.cols();
  Mat m = rows;
  const auto pivots = row_echelon(m, true);
  std::vector<bool> is_pivot(n, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec x = Vec::Zero(n);
    x[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = -m(r, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

Vec primitive_direction(const Vec& v) {
  Integer den_lcm(1);
  for (Eigen::Index i = 0; i < v.size(); ++i) den_lcm = mp::lcm(den_lcm, denominator(v[i]));
  Integer num_gcd(0);
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    num_gcd = mp::gcd(num_gcd, Integer(abs(numerator(v[i]) * (den_lcm / denominator(v[i])))));
  }
  if (num_gcd == 0) return v;
  const Rational factor(den_lcm, num_gcd);
  Vec out = v;
  for (Eigen::Index i = 0; i < v.size(); ++i) out[i] *= factor;
  return out;
}

Vec canonical_direction(const Vec& v) {
  Vec out = primitive_direction(v);
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    if (out[i] == 0) continue;
    if (out[i] < 0) out = -out;
    break;
  }
  return out;
}

Mat rows_to_matrix(const std::vector<Vec>& rows) {
  if (rows.empty()) return Mat(0, 0);
  Mat m(static_cast<Eigen::Index>(rows.size()), rows.front().size());
  for (std::size_t r = 0; r < rows.size(); ++r) m.row(static_cast<Eigen::Index>(r)) = rows[r].transpose();
  return m;
}

}  // namespace logbm
