#pragma once

#include <optional>
#include <vector>

#include "logbm/errors.hpp"
#include "logbm/linalg.hpp"
#include "logbm/polytope.hpp"
#include "logbm/scalar.hpp"

namespace logbm {

/// A semi-norm on R^n, either max |<x, v>| over a finite set (the support
/// function of conv(+-Omega)) or sum alpha_i |<x, v_i>| (the support function
/// of a zonotope).
class SemiNorm {
 public:
  enum class Form { Max, Sum };

  static SemiNorm max_form(std::vector<Vec> omega);
  /// Throws std::invalid_argument for a negative weight.
  static SemiNorm sum_form(std::vector<Rational> weights, std::vector<Vec> vectors);

  Form form() const { return form_; }
  int dim() const { return dim_; }
  const std::vector<Vec>& vectors() const { return vectors_; }
  const std::vector<Rational>& weights() const { return weights_; }

  Rational operator()(const Vec& x) const { return evaluate<Rational>(x, vectors_); }
  double operator()(const VectorX<double>& x) const { return evaluate<double>(x, vectorsD_); }

  /// Direction v when the semi-norm equals c |<., v>| with c > 0.
  std::optional<Vec> rank_one_direction() const;
  bool is_zero() const;
  /// Symmetric body whose support function is this semi-norm.
  Polytope unit_body() const;

 private:
  template <typename Scalar>
  Scalar evaluate(const VectorX<Scalar>& x, const std::vector<VectorX<Scalar>>& vs) const {
    Scalar out(0);
    for (std::size_t i = 0; i < vs.size(); ++i) {
      Scalar t = abs_value<Scalar>(vs[i].dot(x));
      if (form_ == Form::Max) {
        if (t > out) out = t;
      } else {
        out += scalar_cast<Scalar>(weights_[i]) * t;
      }
    }
    return out;
  }

  Form form_ = Form::Max;
  int dim_ = 0;
  std::vector<Vec> vectors_;
  std::vector<VectorX<double>> vectorsD_;
  std::vector<Rational> weights_;
};

Rational seminorm_eval(const SemiNorm& norm, const Vec& x);

/// Facet pieces of a full-dimensional polytope in a chosen scalar type.
template <typename Scalar>
struct FacetSet {
  int dim = 0;
  std::vector<VectorX<Scalar>> areas;
  std::vector<Scalar> supports;
  Scalar volume{0};
};

template <typename Scalar>
FacetSet<Scalar> facet_set(const Polytope& k) {
  if (!k.full_dimensional()) throw DegenerateInput("body must be full-dimensional");
  FacetSet<Scalar> out;
  out.dim = k.dim();
  out.areas.reserve(k.facets().size());
  for (const FacetData& f : k.facets()) {
    out.areas.push_back(vector_cast<Scalar>(f.areaVector));
    out.supports.push_back(scalar_cast<Scalar>(f.supportValue));
  }
  out.volume = scalar_cast<Scalar>(k.volume());
  return out;
}

/// Vertices of M in a chosen scalar type, for support evaluations.
template <typename Scalar>
std::vector<VectorX<Scalar>> vertex_set(const Polytope& m) {
  std::vector<VectorX<Scalar>> out;
  out.reserve(m.vertices().size());
  for (const Vec& v : m.vertices()) out.push_back(vector_cast<Scalar>(v));
  return out;
}

template <typename Scalar>
Scalar support_of(const std::vector<VectorX<Scalar>>& vertices, const VectorX<Scalar>& u) {
  Scalar best = vertices.front().dot(u);
  for (const auto& v : vertices) {
    Scalar d = v.dot(u);
    if (d > best) best = d;
  }
  return best;
}

// Sums over facet pieces. Every summand is 1-homogeneous in the area vector
// (or 2-homogeneous divided by the support value), so coplanar pieces may be
// split or merged without changing the result.

template <typename Scalar>
Scalar surface_linear(const FacetSet<Scalar>& k, const SemiNorm& norm) {
  Scalar sum(0);
  for (const auto& a : k.areas) sum += norm(a);
  return sum;
}

template <typename Scalar>
Scalar surface_quadratic(const FacetSet<Scalar>& k, const SemiNorm& norm) {
  Scalar sum(0);
  for (std::size_t i = 0; i < k.areas.size(); ++i) {
    const Scalar v = norm(k.areas[i]);
    sum += v * v / k.supports[i];
  }
  return sum;
}

/// Sum of h_M(a)^2 / s.
template <typename Scalar>
Scalar weighted_surface_quadratic(const FacetSet<Scalar>& k, const std::vector<VectorX<Scalar>>& m) {
  Scalar sum(0);
  for (std::size_t i = 0; i < k.areas.size(); ++i) {
    const Scalar h = support_of(m, k.areas[i]);
    sum += h * h / k.supports[i];
  }
  return sum;
}

/// Sum of h_M(a) = n V_1(K, M).
template <typename Scalar>
Scalar surface_support_sum(const FacetSet<Scalar>& k, const std::vector<VectorX<Scalar>>& m) {
  Scalar sum(0);
  for (const auto& a : k.areas) sum += support_of(m, a);
  return sum;
}

/// (1/2) sum |<a, v>|.
template <typename Scalar>
Scalar cauchy_projection(const FacetSet<Scalar>& k, const VectorX<Scalar>& v) {
  Scalar sum(0);
  for (const auto& a : k.areas) sum += abs_value<Scalar>(a.dot(v));
  return sum / Scalar(2);
}

Rational surface_linear(const Polytope& k, const SemiNorm& norm);
Rational surface_quadratic(const Polytope& k, const SemiNorm& norm);
Rational weighted_surface_quadratic(const Polytope& k, const Polytope& m);
/// (1/2) sum |<a_f, v>| = |v| |K|(v/|v|)^perp|. Throws ZeroVector.
Rational cauchy_projection(const Polytope& k, const Vec& v);

/// V_0 .. V_n of (K, M) with V_k = ((n-k)!/n!) d^k/dt^k |K + tM| at t = 0,
/// so that |K + tM| = sum_k binom(n, k) V_k t^k.
template <typename Scalar>
struct MixedVolumes {
  std::vector<Scalar> values;

  int dim() const { return static_cast<int>(values.size()) - 1; }
  const Scalar& operator[](int k) const { return values[static_cast<std::size_t>(k)]; }
};

using MixedVolumeVector = MixedVolumes<Rational>;

/// |K + tM| for t = 0, 1, ..., n.
std::vector<Rational> volume_samples(const Polytope& k, const Polytope& m);

/// Interpolates the volume polynomial through samples at t = 0..n and
/// normalizes its coefficients by binomials.
template <typename Scalar>
MixedVolumes<Scalar> fit_mixed_volumes(const std::vector<Rational>& samples) {
  const int n = static_cast<int>(samples.size()) - 1;
  MatrixX<Scalar> vandermonde(n + 1, n + 1);
  VectorX<Scalar> rhs(n + 1);
  for (int t = 0; t <= n; ++t) {
    Scalar power(1);
    for (int k = 0; k <= n; ++k) {
      vandermonde(t, k) = power;
      power *= Scalar(t);
    }
    rhs[t] = scalar_cast<Scalar>(samples[static_cast<std::size_t>(t)]);
  }
  const VectorX<Scalar> coeffs = solve(vandermonde, rhs);
  MixedVolumes<Scalar> out;
  Scalar binom(1);
  for (int k = 0; k <= n; ++k) {
    out.values.push_back(coeffs[k] / binom);
    binom = binom * Scalar(n - k) / Scalar(k + 1);
  }
  return out;
}

/// Exact mixed volumes, cross-checked against c_0 = |K|, c_n = |M| (or 0)
/// and n V_1 = sum h_M(a_f). Throws InternalInconsistency on a mismatch.
MixedVolumeVector mixed_volumes(const Polytope& k, const Polytope& m);
MixedVolumeVector mixed_volumes_from_samples(const Polytope& k, const Polytope& m,
                                             const std::vector<Rational>& samples);

/// V(K[n-2], M1, M2) by polarization of V_2.
Rational mixed_volume_pair(const Polytope& k, const Polytope& m1, const Polytope& m2);

/// Both sides of n(n-1) V_2(K,M) + sum h_M(a)^2/s <= n^2 V_1(K,M)^2 / |K|.
template <typename Scalar>
struct LogbmTerms {
  Scalar v1{0};
  Scalar v2{0};
  Scalar weightedQuadratic{0};
  Scalar lhs{0};
  Scalar rhs{0};
  Scalar gap{0};
};

template <typename Scalar>
LogbmTerms<Scalar> logbm_terms(const FacetSet<Scalar>& k, const std::vector<VectorX<Scalar>>& m,
                               const MixedVolumes<Scalar>& mv) {
  const Scalar n(k.dim);
  LogbmTerms<Scalar> out;
  out.v1 = mv[1];
  out.v2 = k.dim >= 2 ? mv[2] : Scalar(0);
  out.weightedQuadratic = weighted_surface_quadratic(k, m);
  out.lhs = n * (n - Scalar(1)) * out.v2 + out.weightedQuadratic;
  out.rhs = n * n * out.v1 * out.v1 / k.volume;
  out.gap = out.rhs - out.lhs;
  return out;
}

struct LogbmGap {
  Rational lhs;
  Rational rhs;
  Rational gap;
};

LogbmGap logbm_gap(const Polytope& k, const Polytope& m);

/// sum h_M(a)^2/s - n V_1^2 / |K|; nonnegative by Cauchy-Schwarz.
Rational holder_gap(const Polytope& k, const Polytope& m);

}  // namespace logbm
