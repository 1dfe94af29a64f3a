#include "logbm/functionals.hpp"

#include <stdexcept>

namespace logbm {

namespace {

bool parallel(const Vec& a, const Vec& b) { return canonical_direction(a) == canonical_direction(b); }

void require_body(const Polytope& k) {
  if (!k.full_dimensional()) throw DegenerateInput("body must be full-dimensional");
}

}  // namespace

SemiNorm SemiNorm::max_form(std::vector<Vec> omega) {
  if (omega.empty()) throw std::invalid_argument("max-form semi-norm needs at least one vector");
  SemiNorm out;
  out.form_ = Form::Max;
  out.dim_ = static_cast<int>(omega.front().size());
  out.weights_.assign(omega.size(), Rational(1));
  out.vectors_ = std::move(omega);
  for (const Vec& v : out.vectors_) out.vectorsD_.push_back(vector_cast<double>(v));
  return out;
}

SemiNorm SemiNorm::sum_form(std::vector<Rational> weights, std::vector<Vec> vectors) {
  if (vectors.empty() || weights.size() != vectors.size()) {
    throw std::invalid_argument("sum-form semi-norm needs matching weights and vectors");
  }
  for (const Rational& w : weights) {
    if (w < 0) throw std::invalid_argument("sum-form weights must be nonnegative");
  }
  SemiNorm out;
  out.form_ = Form::Sum;
  out.dim_ = static_cast<int>(vectors.front().size());
  out.weights_ = std::move(weights);
  out.vectors_ = std::move(vectors);
  for (const Vec& v : out.vectors_) out.vectorsD_.push_back(vector_cast<double>(v));
  return out;
}

std::optional<Vec> SemiNorm::rank_one_direction() const {
  std::optional<Vec> dir;
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (vectors_[i].isZero() || weights_[i] == 0) continue;
    if (!dir) {
      dir = canonical_direction(vectors_[i]);
    } else if (!parallel(*dir, vectors_[i])) {
      return std::nullopt;
    }
  }
  return dir;
}

bool SemiNorm::is_zero() const {
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    if (!vectors_[i].isZero() && weights_[i] != 0) return false;
  }
  return true;
}

Polytope SemiNorm::unit_body() const {
  if (form_ == Form::Max) {
    std::vector<Vec> points;
    for (const Vec& v : vectors_) {
      points.push_back(v);
      points.push_back(-v);
    }
    return Polytope::span_hull(std::move(points));
  }
  Polytope body = Polytope::origin(dim_);
  for (std::size_t i = 0; i < vectors_.size(); ++i) {
    const Vec g = vectors_[i] * weights_[i];
    if (g.isZero()) continue;
    body = minkowski_sum(body, Polytope::span_hull({g, Vec(-g)}));
  }
  return body;
}

Rational seminorm_eval(const SemiNorm& norm, const Vec& x) {
  if (x.size() != norm.dim()) throw DegenerateInput("dimension mismatch");
  return norm(x);
}

Rational surface_linear(const Polytope& k, const SemiNorm& norm) {
  return surface_linear(facet_set<Rational>(k), norm);
}

Rational surface_quadratic(const Polytope& k, const SemiNorm& norm) {
  return surface_quadratic(facet_set<Rational>(k), norm);
}

Rational weighted_surface_quadratic(const Polytope& k, const Polytope& m) {
  return weighted_surface_quadratic(facet_set<Rational>(k), vertex_set<Rational>(m));
}

Rational cauchy_projection(const Polytope& k, const Vec& v) {
  if (v.isZero()) throw ZeroVector("projection direction is zero");
  return cauchy_projection(facet_set<Rational>(k), v);
}

std::vector<Rational> volume_samples(const Polytope& k, const Polytope& m) {
  require_body(k);
  if (m.dim() != k.dim()) throw DegenerateInput("dimension mismatch");
  const int n = k.dim();
  std::vector<Rational> samples{k.volume()};
  for (int t = 1; t <= n; ++t) samples.push_back(minkowski_sum(k, scale(m, Rational(t))).volume());
  return samples;
}

MixedVolumeVector mixed_volumes_from_samples(const Polytope& k, const Polytope& m,
                                             const std::vector<Rational>& samples) {
  const int n = k.dim();
  MixedVolumeVector mv = fit_mixed_volumes<Rational>(samples);
  if (mv[0] != k.volume()) throw InternalInconsistency("volume polynomial: c_0 != |K|");
  if (mv[n] != m.volume()) throw InternalInconsistency("volume polynomial: leading coefficient != |M|");
  const Rational facet_route = surface_support_sum(facet_set<Rational>(k), vertex_set<Rational>(m));
  if (Rational(n) * mv[1] != facet_route) {
    throw InternalInconsistency("n V_1 from the volume polynomial disagrees with sum h_M(a_f)");
  }
  for (const Rational& v : mv.values) {
    if (v < 0) throw InternalInconsistency("negative mixed volume");
  }
  return mv;
}

MixedVolumeVector mixed_volumes(const Polytope& k, const Polytope& m) {
  return mixed_volumes_from_samples(k, m, volume_samples(k, m));
}

Rational mixed_volume_pair(const Polytope& k, const Polytope& m1, const Polytope& m2) {
  if (k.dim() < 2) throw DegenerateInput("pair mixed volume needs n >= 2");
  const Rational joint = mixed_volumes(k, minkowski_sum(m1, m2))[2];
  return (joint - mixed_volumes(k, m1)[2] - mixed_volumes(k, m2)[2]) / Rational(2);
}

LogbmGap logbm_gap(const Polytope& k, const Polytope& m) {
  const auto terms = logbm_terms(facet_set<Rational>(k), vertex_set<Rational>(m), mixed_volumes(k, m));
  return {terms.lhs, terms.rhs, terms.gap};
}

Rational holder_gap(const Polytope& k, const Polytope& m) {
  const auto facets = facet_set<Rational>(k);
  const auto ms = vertex_set<Rational>(m);
  const Rational n(k.dim());
  const Rational v1 = surface_support_sum(facets, ms) / n;
  return weighted_surface_quadratic(facets, ms) - n * v1 * v1 / facets.volume;
}

}  // namespace logbm
