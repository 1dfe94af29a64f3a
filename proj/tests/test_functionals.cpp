#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "logbm/bodies.hpp"
#include "logbm/functionals.hpp"
#include "support.hpp"

using namespace logbm;
using namespace logbm::testing;

namespace {

Rational binomial(int n, int k) {
  Rational b(1);
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

// |Z(G) + t Z(H)| = 2^n sum over n-subsets S of G u H of |det S| t^{#(S n H)},
// so the mixed volumes of two zonotopes follow from determinants alone.
std::vector<Rational> zonotope_mixed_volumes(const std::vector<Vec>& gk, const std::vector<Vec>& gm) {
  const int n = static_cast<int>(gk.front().size());
  std::vector<Vec> all = gk;
  all.insert(all.end(), gm.begin(), gm.end());
  const int count = static_cast<int>(all.size());
  std::vector<Rational> c(n + 1, Rational(0));
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    Mat m(n, n);
    int from_m = 0;
    for (int r = 0; r < n; ++r) {
      m.row(r) = all[idx[r]].transpose();
      if (idx[r] >= static_cast<int>(gk.size())) ++from_m;
    }
    c[from_m] += abs_value(determinant(m));
    int k = n - 1;
    while (k >= 0 && idx[k] == count - n + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::vector<Rational> v;
  for (int k = 0; k <= n; ++k) v.push_back(Rational(1 << n) * c[k] / binomial(n, k));
  return v;
}

std::vector<Vec> random_generators(std::mt19937_64& rng, int n, int count) {
  std::uniform_int_distribution<int> coord(-3, 3);
  std::vector<Vec> gens;
  while (static_cast<int>(gens.size()) < count) {
    Vec g(n);
    for (int i = 0; i < n; ++i) g[i] = coord(rng);
    if (!g.isZero()) gens.push_back(g);
  }
  return gens;
}

Polytope random_body(std::mt19937_64& rng, int n) {
  return random_symmetric_polytope(n, n + 2, rng(), 5);
}

}  // namespace

TEST(SemiNorms, Evaluation) {
  EXPECT_EQ(seminorm_eval(SemiNorm::max_form({e(2, 0)}), V({3, -4})), R(3));
  EXPECT_EQ(seminorm_eval(SemiNorm::sum_form({R(1), R(1)}, {e(2, 0), e(2, 1)}), V({3, -4})), R(7));
  EXPECT_EQ(seminorm_eval(SemiNorm::max_form({V({1, 1}), V({1, -1})}), V({2, 1})), R(3));
  EXPECT_THROW(SemiNorm::sum_form({R(-1)}, {e(2, 0)}), std::invalid_argument);
  EXPECT_EQ(SemiNorm::max_form({V({2, 0}), V({-1, 0}), V({0, 0})}).rank_one_direction(), V({1, 0}));
  EXPECT_FALSE(SemiNorm::max_form({e(2, 0), e(2, 1)}).rank_one_direction());
  EXPECT_TRUE(SemiNorm::sum_form({R(0)}, {e(2, 0)}).is_zero());
}

TEST(SemiNorms, NormAxiomsOnRandomTriples) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<int> coord(-9, 9);
  auto rv = [&] { return V({R(coord(rng), 2), R(coord(rng), 3), R(coord(rng))}); };
  for (int trial = 0; trial < 30; ++trial) {
    const SemiNorm mx = SemiNorm::max_form({rv(), rv()});
    const SemiNorm sm = SemiNorm::sum_form({R(1, 2), R(3)}, {rv(), rv()});
    for (const SemiNorm* nrm : {&mx, &sm}) {
      const Vec x = rv();
      const Vec y = rv();
      const Rational lambda(coord(rng), 4);
      EXPECT_GE((*nrm)(x), 0);
      EXPECT_EQ((*nrm)(Vec(-x)), (*nrm)(x));
      EXPECT_EQ((*nrm)(Vec(lambda * x)), abs_value(lambda) * (*nrm)(x));
      EXPECT_LE((*nrm)(Vec(x + y)), (*nrm)(x) + (*nrm)(y));
    }
    // The semi-norm is the support function of its unit body.
    const Vec u = rv();
    EXPECT_EQ(support(mx.unit_body(), u), mx(u));
    EXPECT_EQ(support(sm.unit_body(), u), sm(u));
  }
}

TEST(SurfaceSums, Examples) {
  const Polytope c2 = cube(2);
  const Polytope b2 = cross_polytope(2);
  const SemiNorm x1 = SemiNorm::max_form({e(2, 0)});
  const SemiNorm l1 = SemiNorm::sum_form({R(1), R(1)}, {e(2, 0), e(2, 1)});
  EXPECT_EQ(surface_linear(c2, x1), R(4));
  EXPECT_EQ(surface_linear(c2, l1), R(8));
  EXPECT_EQ(surface_linear(c2, SemiNorm::sum_form({R(0)}, {e(2, 0)})), R(0));
  EXPECT_EQ(surface_quadratic(c2, x1), R(4));
  EXPECT_EQ(surface_quadratic(b2, x1), R(4));
  EXPECT_EQ(surface_quadratic(c2, l1), R(8));  // 4 facets, |a| = 2, 2^2/2 each
  EXPECT_EQ(weighted_surface_quadratic(c2, c2), R(8));
  EXPECT_EQ(weighted_surface_quadratic(c2, segment(e(2, 0))), R(4));
  EXPECT_EQ(weighted_surface_quadratic(c2, Polytope::origin(2)), R(0));
  EXPECT_EQ(cauchy_projection(cube(3), e(3, 0)), R(4));
  EXPECT_EQ(cauchy_projection(c2, V({1, 1})), R(4));
  EXPECT_EQ(cauchy_projection(b2, e(2, 0)), R(2));
  EXPECT_THROW(cauchy_projection(c2, V({0, 0})), ZeroVector);
}

TEST(SurfaceSums, WeightedQuadraticOfKIsNTimesVolume) {
  std::mt19937_64 rng(31);
  for (int n = 2; n <= 4; ++n) {
    const Polytope k = random_body(rng, n);
    EXPECT_EQ(weighted_surface_quadratic(k, k), Rational(n) * k.volume());
  }
}

TEST(SurfaceSums, InvariantUnderSplittingAFacet) {
  const Polytope sq = cube(2);
  std::vector<FacetData> pieces;
  for (const FacetData& f : sq.facets()) {
    if (f.areaVector == V({2, 0})) {
      pieces.push_back({V({1, 0}), R(1)});
      pieces.push_back({V({1, 0}), R(1)});
    } else {
      pieces.push_back(f);
    }
  }
  const Polytope split = Polytope::from_facets(sq.vertices(), pieces);
  const SemiNorm l1 = SemiNorm::sum_form({R(1), R(2)}, {e(2, 0), V({1, 1})});
  EXPECT_EQ(surface_linear(split, l1), surface_linear(sq, l1));
  EXPECT_EQ(surface_quadratic(split, l1), surface_quadratic(sq, l1));
  const Polytope m = cross_polytope(2);
  EXPECT_EQ(weighted_surface_quadratic(split, m), weighted_surface_quadratic(sq, m));
  EXPECT_EQ(cauchy_projection(split, V({1, 3})), cauchy_projection(sq, V({1, 3})));
}

TEST(SurfaceSums, CauchyProjectionMatchesDirectProjection) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + trial % 2;
    const Polytope k = random_body(rng, n);
    const Vec v = random_generators(rng, n, 1).front();
    const RadicalScalar direct = complement_projection_volume(k, {v});
    const Rational norm_sq = v.squaredNorm();
    EXPECT_EQ(RadicalScalar(cauchy_projection(k, v)), direct * RadicalScalar::sqrt(norm_sq));
  }
}

TEST(MixedVolumes, Examples) {
  const auto mv = mixed_volumes(cube(2), cube(2));
  EXPECT_EQ(mv.values, (std::vector<Rational>{4, 4, 4}));
  const auto seg = mixed_volumes(cube(2), segment(e(2, 0)));
  EXPECT_EQ(seg[1], R(2));
  EXPECT_EQ(seg[2], R(0));
  const auto sq = mixed_volumes(cube(3), square2d(3, 0, 1));
  EXPECT_EQ(sq.values, (std::vector<Rational>{8, R(16, 3), R(8, 3), 0}));
  EXPECT_EQ(6 * sq[2], R(16));
  EXPECT_EQ(volume_samples(cube(3), square2d(3, 0, 1)), (std::vector<Rational>{8, 32, 72, 128}));
}

TEST(MixedVolumes, PairByPolarization) {
  const Polytope k = cube(3);
  const Polytope m = cross_polytope(3);
  EXPECT_EQ(mixed_volume_pair(k, m, m), mixed_volumes(k, m)[2]);
  EXPECT_EQ(mixed_volume_pair(k, segment(e(3, 0)), segment(e(3, 1))), R(4, 3));
  EXPECT_EQ(mixed_volume_pair(k, m, Polytope::origin(3)), R(0));
}

TEST(MixedVolumes, ZonotopeDeterminantOracle) {
  std::mt19937_64 rng(41);
  for (int n = 2; n <= 3; ++n) {
    for (int trial = 0; trial < 4; ++trial) {
      const auto gk = random_generators(rng, n, n + 1);
      const auto gm = random_generators(rng, n, n);
      const Polytope k = zonotope(gk);
      if (!k.full_dimensional()) continue;
      EXPECT_EQ(mixed_volumes(k, zonotope(gm)).values, zonotope_mixed_volumes(gk, gm));
    }
  }
}

TEST(MixedVolumes, DegreeMonotonicityAndSign) {
  std::mt19937_64 rng(9);
  for (int n = 2; n <= 3; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      const Polytope k = random_body(rng, n);
      const Polytope m = random_body(rng, n);
      const Rational lambda(5, 3);
      const auto base = mixed_volumes(k, m);
      const auto scaled_k = mixed_volumes(scale(k, lambda), m);
      const auto scaled_m = mixed_volumes(k, scale(m, lambda));
      const auto bigger = mixed_volumes(k, minkowski_sum(m, cross_polytope(n)));
      Rational pk(1);
      for (int i = 0; i < n; ++i) pk *= lambda;
      Rational pm(1);
      for (int j = 0; j <= n; ++j) {
        EXPECT_EQ(scaled_k[j], pk * base[j]);
        EXPECT_EQ(scaled_m[j], pm * base[j]);
        EXPECT_GE(base[j], 0);
        EXPECT_LE(base[j], bigger[j]);
        pk /= lambda;
        pm *= lambda;
      }
    }
  }
}

TEST(MixedVolumes, SegmentAnnihilation) {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 3;
    const Polytope k = random_body(rng, n);
    const Vec v = random_generators(rng, n, 1).front();
    const auto mv = mixed_volumes(k, segment(v));
    for (int j = 2; j <= n; ++j) EXPECT_EQ(mv[j], R(0));
    EXPECT_EQ(Rational(n) * mv[1], Rational(2) * cauchy_projection(k, v));
  }
}

TEST(MixedVolumes, FloatFitAgreesWithExact) {
  std::mt19937_64 rng(15);
  for (int n = 2; n <= 4; ++n) {
    const Polytope k = random_body(rng, n);
    const Polytope m = random_body(rng, n);
    const auto samples = volume_samples(k, m);
    const auto exact = mixed_volumes_from_samples(k, m, samples);
    const auto approx = fit_mixed_volumes<double>(samples);
    for (int j = 0; j <= n; ++j) EXPECT_NEAR(approx[j], to_double(exact[j]), 1e-9 * to_double(exact[0]));
  }
}

TEST(LogbmGap, Examples) {
  const Polytope c2 = cube(2);
  const auto same = logbm_gap(c2, c2);
  EXPECT_EQ(same.gap, R(0));
  EXPECT_EQ(same.lhs, R(16));
  const auto seg = logbm_gap(c2, segment(e(2, 0)));
  EXPECT_EQ(seg.lhs, R(4));
  EXPECT_EQ(seg.rhs, R(4));
  const auto box11 = logbm_gap(c2, box({R(1), R(1)}));
  EXPECT_EQ(box11.lhs, R(16));
  EXPECT_EQ(box11.rhs, R(16));
  EXPECT_EQ(holder_gap(c2, c2), R(0));
  EXPECT_EQ(holder_gap(c2, segment(e(2, 0))), R(2));
  EXPECT_EQ(holder_gap(c2, scale(c2, R(7, 2))), R(0));
}

TEST(LogbmGap, SelfPairsAreEqualities) {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 4; ++n) {
    const Polytope k = random_body(rng, n);
    const auto g = logbm_gap(k, k);
    EXPECT_EQ(g.gap, R(0));
    EXPECT_EQ(g.lhs, Rational(n * n) * k.volume());
  }
}

TEST(LogbmGap, InvariantUnderAddingMultiplesOfK) {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 4; ++trial) {
    const int n = 2 + trial % 2;
    const Polytope k = random_body(rng, n);
    const Polytope m = random_body(rng, n);
    const Rational base = logbm_gap(k, m).gap;
    for (int t = 1; t <= 3; ++t) EXPECT_EQ(logbm_gap(k, minkowski_sum(m, scale(k, Rational(t)))).gap, base);
  }
  const auto lifted = logbm_gap(cube(2), minkowski_sum(segment(e(2, 0)), cube(2)));
  EXPECT_EQ(lifted.lhs, R(36));
  EXPECT_EQ(lifted.rhs, R(36));
}

// Gauge of a symmetric full-dimensional polytope: max over facets of <x, a>/s.
Rational gauge(const Polytope& m, const Vec& x) {
  Rational best(0);
  for (const FacetData& f : m.facets()) best = std::max(best, Rational(f.areaVector.dot(x) / f.supportValue));
  return best;
}

Rational gauge_surface_quadratic(const Polytope& k, const Polytope& m) {
  Rational sum(0);
  for (const FacetData& f : k.facets()) {
    const Rational g = gauge(m, f.areaVector);
    sum += g * g / f.supportValue;
  }
  return sum;
}

TEST(LogbmGap, VolumePreservingTransport) {
  std::mt19937_64 rng(23);
  const Mat t = M({{R(2), R(1), R(0)}, {R(1), R(1), R(0)}, {R(0), R(3), R(1)}});  // det 1
  for (int trial = 0; trial < 3; ++trial) {
    const Polytope k = random_body(rng, 3);
    const Polytope m = random_body(rng, 3);
    // With h_M on normals, (K, M) -> (TK, TM) preserves both sides.
    const auto before = logbm_gap(k, m);
    const auto after = logbm_gap(linear_image(k, t), linear_image(m, t));
    EXPECT_EQ(after.lhs, before.lhs);
    EXPECT_EQ(after.rhs, before.rhs);
    // With the gauge of M on normals: normals of TK are T^{-T} a, so TK
    // pairs with T^T M.
    EXPECT_EQ(gauge_surface_quadratic(linear_image(k, t), m),
              gauge_surface_quadratic(k, linear_image(m, Mat(t.transpose()))));
  }
}

TEST(LogbmGap, CubeWithBoxesMatchesCoordinateExpansion) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> num(1, 9);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<Rational> phi;
      for (int i = 0; i < n; ++i) phi.push_back(Rational(num(rng), num(rng)));
      Rational pairs(0);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) pairs += phi[i] * phi[j];
      }
      const auto mv = mixed_volumes(cube(n), box(phi));
      EXPECT_EQ(Rational(n * (n - 1)) * mv[2], Rational(2 * (1 << n)) * pairs);
    }
  }
  // n = 2, phi = (1, 1): |K + tM| = 4 (1 + t)^2 has second derivative 8.
  EXPECT_EQ(2 * mixed_volumes(cube(2), box({R(1), R(1)}))[2], R(8));
}

TEST(LogbmGap, MinkowskiInequalitiesAndHolder) {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 8; ++trial) {
    const int n = 2 + trial % 3;
    const Polytope k = random_body(rng, n);
    const Polytope m = random_body(rng, n);
    const auto mv = mixed_volumes(k, m);
    EXPECT_LE(mv[2] * k.volume(), mv[1] * mv[1]);
    Rational lhs(1);
    Rational rhs(m.volume());
    for (int i = 0; i < n; ++i) lhs *= mv[1];
    for (int i = 0; i < n - 1; ++i) rhs *= k.volume();
    EXPECT_LE(rhs, lhs);
    EXPECT_GE(holder_gap(k, m), 0);
  }
}
