#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "logbm/errors.hpp"
#include "logbm/hull.hpp"
#include "logbm/linalg.hpp"
#include "logbm/polytope.hpp"
#include "logbm/radical.hpp"
#include "support.hpp"

using namespace logbm;
using namespace logbm::testing;

namespace {

std::vector<Vec> random_points(std::mt19937_64& rng, int n, int count, int bound, int denom = 1) {
  std::uniform_int_distribution<int> coord(-bound, bound);
  std::vector<Vec> pts;
  for (int i = 0; i < count; ++i) {
    Vec v(n);
    for (int k = 0; k < n; ++k) v[k] = Rational(coord(rng), denom);
    pts.push_back(v);
  }
  return pts;
}

Polytope symmetric_hull(std::vector<Vec> pts) {
  const std::size_t count = pts.size();
  for (std::size_t i = 0; i < count; ++i) pts.push_back(-pts[i]);
  return Polytope::hull(std::move(pts));
}

Rational factorial(int n) {
  Rational f(1);
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Shoelace area of a planar convex polygon from its vertices, sorted by angle
// around their centroid.
Rational shoelace(std::vector<Vec> vs) {
  Vec c = Vec::Zero(2);
  for (const Vec& v : vs) c += v;
  c /= Rational(static_cast<long>(vs.size()));
  std::sort(vs.begin(), vs.end(), [&](const Vec& a, const Vec& b) {
    return std::atan2(to_double(a[1] - c[1]), to_double(a[0] - c[0])) <
           std::atan2(to_double(b[1] - c[1]), to_double(b[0] - c[0]));
  });
  Rational twice(0);
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const Vec& p = vs[i];
    const Vec& q = vs[(i + 1) % vs.size()];
    twice += p[0] * q[1] - p[1] * q[0];
  }
  return abs_value(twice) / 2;
}

}  // namespace

TEST(Rationals, ParseAndRender) {
  EXPECT_EQ(parse_rational("3/6"), R(1, 2));
  EXPECT_EQ(parse_rational("-2"), R(-2));
  EXPECT_EQ(to_string(R(-4, 6)), "-2/3");
  EXPECT_EQ(to_string(R(5)), "5");
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("abc"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
}

TEST(Radicals, CanonicalFormAndOrder) {
  const RadicalScalar r(R(1), R(8));
  EXPECT_EQ(r.coefficient(), R(2));
  EXPECT_EQ(r.radicand(), Integer(2));
  EXPECT_EQ(r.to_string(), "2*sqrt(2)");
  EXPECT_TRUE(RadicalScalar(R(3), R(1, 4)).is_rational());
  EXPECT_EQ(RadicalScalar(R(0), R(7)), RadicalScalar(R(0)));
  const RadicalScalar inv_sqrt2 = RadicalScalar(R(1)) / RadicalScalar::sqrt(R(2));
  EXPECT_LT(inv_sqrt2, RadicalScalar::sqrt(R(2)));
  EXPECT_LT(RadicalScalar::sqrt(R(2)), RadicalScalar(R(3, 2)));
  EXPECT_GT(RadicalScalar::sqrt(R(3)), RadicalScalar(R(17, 10)));
  EXPECT_LT(-RadicalScalar::sqrt(R(3)), RadicalScalar(R(0)));
  EXPECT_EQ(RadicalScalar::sqrt(R(2)) + RadicalScalar::sqrt(R(8)), RadicalScalar(R(3), R(2)));
  EXPECT_THROW(RadicalScalar::sqrt(R(2)) + RadicalScalar::sqrt(R(3)), std::domain_error);
  EXPECT_NEAR(RadicalScalar(R(2), R(2)).to_double(), 2 * std::sqrt(2.0), 1e-15);
}

TEST(LinearAlgebra, DeterminantCrossAndNullspace) {
  EXPECT_EQ(determinant(M({{R(2), R(1)}, {R(1), R(3)}})), R(5));
  EXPECT_EQ(determinant(M({{R(0), R(1), R(0)}, {R(1), R(0), R(0)}, {R(0), R(0), R(4)}})), R(-4));
  const Vec c = generalized_cross(M({{R(1), R(0), R(0)}, {R(0), R(1), R(0)}}));
  EXPECT_EQ(c.head(2), V({0, 0}));
  EXPECT_EQ(abs_value(Rational(c[2])), R(1));
  const auto ns = nullspace(M({{R(1), R(1), R(0)}}));
  ASSERT_EQ(ns.size(), 2u);
  for (const Vec& v : ns) EXPECT_EQ(v[0] + v[1], R(0));
  EXPECT_EQ(primitive_direction(V({R(2, 3), R(-4, 3)})), V({1, -2}));
  EXPECT_EQ(canonical_direction(V({R(-2), R(4)})), V({1, -2}));
  EXPECT_EQ(rank(M({{R(1), R(2)}, {R(2), R(4)}})), 1);
  EXPECT_THROW(inverse(M({{R(1), R(2)}, {R(2), R(4)}})), SingularMatrix);
}

TEST(Hull, SquareFacetData) {
  const Polytope sq = Polytope::hull({V({1, 1}), V({1, -1}), V({-1, 1}), V({-1, -1})});
  EXPECT_EQ(sq.volume(), R(4));
  ASSERT_EQ(sq.facets().size(), 4u);
  std::vector<Vec> expected{V({2, 0}), V({-2, 0}), V({0, 2}), V({0, -2})};
  for (const FacetData& f : sq.facets()) {
    EXPECT_EQ(f.supportValue, R(2));
    EXPECT_NE(std::find(expected.begin(), expected.end(), f.areaVector), expected.end());
  }
}

TEST(Hull, CrossPolytopeFacetData) {
  const Polytope b = Polytope::hull({V({1, 0}), V({-1, 0}), V({0, 1}), V({0, -1})});
  EXPECT_EQ(b.volume(), R(2));
  ASSERT_EQ(b.facets().size(), 4u);
  for (const FacetData& f : b.facets()) {
    EXPECT_EQ(f.supportValue, R(1));
    EXPECT_EQ(abs_value(Rational(f.areaVector[0])), R(1));
    EXPECT_EQ(abs_value(Rational(f.areaVector[1])), R(1));
  }
}

TEST(Hull, InteriorPointsAreNotVertices) {
  std::vector<Vec> pts;
  for (int mask = 0; mask < 8; ++mask) {
    pts.push_back(V({mask & 1 ? 1 : -1, mask & 2 ? 1 : -1, mask & 4 ? 1 : -1}));
  }
  pts.push_back(V({0, 0, 0}));
  pts.push_back(V({R(1, 2), 0, R(-1, 3)}));
  pts.push_back(V({1, 0, 0}));  // on a facet
  pts.push_back(V({1, 1, 0}));  // on an edge
  const Polytope cube = Polytope::hull(pts);
  EXPECT_EQ(cube.volume(), R(8));
  EXPECT_EQ(cube.vertices().size(), 8u);
}

TEST(Hull, DegenerateInputsRejected) {
  EXPECT_THROW(Polytope::hull({V({0, 0, 0}), V({1, 0, 0}), V({0, 1, 0}), V({1, 1, 0})}), DegenerateInput);
  EXPECT_THROW(Polytope::hull({V({1, 1}), V({2, 2}), V({3, 3})}), DegenerateInput);
  EXPECT_THROW(Polytope::hull({V({1, 0}), V({0, 1})}), DegenerateInput);
  const Polytope flat = Polytope::span_hull({V({1, 0, 0}), V({-1, 0, 0}), V({0, 1, 0}), V({0, -1, 0})});
  EXPECT_EQ(flat.affine_dim(), 2);
  EXPECT_FALSE(flat.full_dimensional());
  EXPECT_EQ(flat.volume(), R(0));
  EXPECT_EQ(affine_dimension({V({1, 1}), V({2, 2})}), 1);
}

TEST(Hull, RandomPointSetsAgainstBruteForceContainment) {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 6; ++trial) {
      const auto pts = random_points(rng, n, 3 * n + 4, 5, trial % 2 ? 3 : 1);
      if (affine_dimension(pts) < n) continue;
      const Polytope p = Polytope::hull(pts);
      for (const Vec& q : pts) {
        for (const FacetData& f : p.facets()) EXPECT_LE(f.areaVector.dot(q), f.supportValue);
      }
      for (const Vec& v : p.vertices()) EXPECT_NE(std::find(pts.begin(), pts.end(), v), pts.end());
      // Every vertex is extreme: dropping it shrinks the volume.
      for (const Vec& v : p.vertices()) {
        std::vector<Vec> rest;
        for (const Vec& q : pts) {
          if (q != v) rest.push_back(q);
        }
        if (affine_dimension(rest) == n) {
          EXPECT_LT(Polytope::hull(rest).volume(), p.volume());
        }
      }
    }
  }
}

TEST(Volume, NamedBodies) {
  std::vector<Vec> cube3;
  for (int mask = 0; mask < 8; ++mask) cube3.push_back(V({mask & 1 ? 1 : -1, mask & 2 ? 1 : -1, mask & 4 ? 1 : -1}));
  EXPECT_EQ(Polytope::hull(cube3).volume(), R(8));
  for (int n = 2; n <= 5; ++n) {
    std::vector<Vec> pts;
    for (int i = 0; i < n; ++i) {
      pts.push_back(e(n, i));
      pts.push_back(-e(n, i));
    }
    EXPECT_EQ(Polytope::hull(pts).volume(), Rational(1 << n) / factorial(n)) << "n=" << n;
  }
  const Polytope sq = Polytope::hull({V({1, 1}), V({1, -1}), V({-1, 1}), V({-1, -1})});
  const Polytope diag = Polytope::span_hull({V({1, 1}), V({-1, -1})});
  EXPECT_EQ(minkowski_sum(sq, diag).volume(), R(12));
}

TEST(Volume, SimplexDeterminantOracle) {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const auto pts = random_points(rng, n, n + 1, 7, 2);
      Mat edges(n, n);
      for (int k = 0; k < n; ++k) edges.row(k) = (pts[k + 1] - pts[0]).transpose();
      const Rational det = abs_value(determinant(edges));
      if (det == 0) continue;
      EXPECT_EQ(Polytope::hull(pts).volume(), det / factorial(n));
    }
  }
}

TEST(Volume, ShoelaceOracleInThePlane) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const Polytope p = symmetric_hull(random_points(rng, 2, 5, 9, trial % 3 + 1));
    EXPECT_EQ(p.volume(), shoelace(p.vertices()));
  }
}

TEST(Volume, DivergenceIdentityClosedSurfaceAndSymmetry) {
  std::mt19937_64 rng(21);
  for (int n = 2; n <= 4; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const Polytope p = symmetric_hull(random_points(rng, n, n + 3, 6));
      Rational sum(0);
      for (const FacetData& f : p.facets()) {
        EXPECT_GT(f.supportValue, 0);
        sum += f.supportValue;
      }
      EXPECT_EQ(sum / n, p.volume());
      EXPECT_TRUE(area_vector_sum(p).isZero());
      EXPECT_TRUE(p.is_symmetric());
      EXPECT_EQ(scale(p, R(-1)).volume(), p.volume());
      // Hull idempotence.
      const Polytope again = Polytope::hull(p.vertices());
      EXPECT_EQ(again.volume(), p.volume());
      EXPECT_EQ(again.vertices(), p.vertices());
    }
  }
}

TEST(Support, ExamplesAndAdditivity) {
  const Polytope sq = Polytope::hull({V({1, 1}), V({1, -1}), V({-1, 1}), V({-1, -1})});
  const Polytope b = Polytope::hull({V({1, 0}), V({-1, 0}), V({0, 1}), V({0, -1})});
  EXPECT_EQ(support(sq, V({3, 4})), R(7));
  EXPECT_EQ(support(b, V({3, 4})), R(4));
  EXPECT_EQ(support(sq, V({0, 0})), R(0));
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const Polytope p = symmetric_hull(random_points(rng, 3, 4, 5));
    const Polytope q = symmetric_hull(random_points(rng, 3, 4, 5));
    const Polytope s = minkowski_sum(p, q);
    for (const Vec& u : random_points(rng, 3, 5, 9, 4)) EXPECT_EQ(support(s, u), support(p, u) + support(q, u));
  }
}

TEST(MinkowskiSum, Examples) {
  const Polytope sq = Polytope::hull({V({1, 1}), V({1, -1}), V({-1, 1}), V({-1, -1})});
  const Polytope s = minkowski_sum(sq, Polytope::span_hull({V({1, 0}), V({-1, 0})}));
  EXPECT_EQ(s.volume(), R(8));
  EXPECT_EQ(support(s, V({1, 0})), R(2));
  EXPECT_EQ(support(s, V({0, 1})), R(1));
  const Polytope c = Polytope::span_hull({V({R(1, 2), R(-1, 2)}), V({R(-1, 2), R(1, 2)})});
  const Polytope v = Polytope::span_hull({V({R(1, 2), R(1, 2)}), V({R(-1, 2), R(-1, 2)})});
  const Polytope b = Polytope::hull({V({1, 0}), V({-1, 0}), V({0, 1}), V({0, -1})});
  EXPECT_EQ(minkowski_sum(c, v).vertices(), b.vertices());
  EXPECT_EQ(minkowski_sum(sq, Polytope::origin(2)).vertices(), sq.vertices());
}

TEST(LinearImage, Examples) {
  const Polytope sq = Polytope::hull({V({1, 1}), V({1, -1}), V({-1, 1}), V({-1, -1})});
  const Polytope b = Polytope::hull({V({1, 0}), V({-1, 0}), V({0, 1}), V({0, -1})});
  EXPECT_EQ(linear_image(sq, M({{R(2), R(0)}, {R(0), R(1, 2)}})).volume(), R(4));
  EXPECT_EQ(linear_image(b, M({{R(0), R(-1)}, {R(1), R(0)}})).vertices(), b.vertices());
  EXPECT_EQ(linear_image(sq, M({{R(1), R(1)}, {R(0), R(1)}})).volume(), R(4));
  EXPECT_EQ(linear_image(sq, M({{R(3), R(1)}, {R(1), R(2)}})).volume(), R(20));
  EXPECT_THROW(linear_image(sq, M({{R(1), R(2)}, {R(2), R(4)}})), SingularMatrix);
}

TEST(Projections, Examples) {
  std::vector<Vec> pts;
  for (int mask = 0; mask < 8; ++mask) pts.push_back(V({mask & 1 ? 1 : -1, mask & 2 ? 1 : -1, mask & 4 ? 1 : -1}));
  const Polytope cube3 = Polytope::hull(pts);
  EXPECT_EQ(subspace_projection_volume(cube3, {e(3, 0), e(3, 1)}), RadicalScalar(R(4)));
  EXPECT_EQ(subspace_projection_volume(cube3, {e(3, 2)}), RadicalScalar(R(2)));
  EXPECT_EQ(complement_projection_volume(cube3, {e(3, 2)}), RadicalScalar(R(4)));
  EXPECT_EQ(complement_projection_volume(cube3, {e(3, 0), e(3, 1)}), RadicalScalar(R(2)));
  const Polytope sq = Polytope::hull({V({1, 1}), V({1, -1}), V({-1, 1}), V({-1, -1})});
  const RadicalScalar diag = subspace_projection_volume(sq, {V({1, 1})});
  EXPECT_EQ(diag.coefficient(), R(2));
  EXPECT_EQ(diag.radicand(), Integer(2));
  EXPECT_THROW(subspace_projection_volume(cube3, {e(3, 0), V({2, 0, 0})}), DegenerateInput);
}

TEST(Projections, CoordinateProjectionMatchesDroppedCoordinates) {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 8; ++trial) {
    const Polytope p = symmetric_hull(random_points(rng, 3, 5, 6));
    for (int drop = 0; drop < 3; ++drop) {
      std::vector<Vec> shadow;
      for (const Vec& v : p.vertices()) {
        Vec w(2);
        int c = 0;
        for (int i = 0; i < 3; ++i) {
          if (i != drop) w[c++] = v[i];
        }
        shadow.push_back(w);
      }
      EXPECT_EQ(complement_projection_volume(p, {e(3, drop)}), RadicalScalar(Polytope::hull(shadow).volume()));
    }
  }
}

TEST(Sections, Examples) {
  const Polytope sq = Polytope::hull({V({1, 1}), V({1, -1}), V({-1, 1}), V({-1, -1})});
  EXPECT_EQ(central_section_volume(sq, e(2, 0)), RadicalScalar(R(2)));
  EXPECT_EQ(central_section_volume(sq, V({1, 1})), RadicalScalar(R(2), R(2)));
  std::vector<Vec> pts;
  for (int mask = 0; mask < 8; ++mask) pts.push_back(V({mask & 1 ? 1 : -1, mask & 2 ? 1 : -1, mask & 4 ? 1 : -1}));
  EXPECT_EQ(central_section_volume(Polytope::hull(pts), V({1, 1, 0})), RadicalScalar(R(4), R(2)));
  // Scale invariance in u.
  EXPECT_EQ(central_section_volume(Polytope::hull(pts), V({3, 3, 0})), RadicalScalar(R(4), R(2)));
}

TEST(Metrics, InradiusDiameterInscribedScaling) {
  std::vector<Vec> pts;
  for (int mask = 0; mask < 8; ++mask) pts.push_back(V({mask & 1 ? 1 : -1, mask & 2 ? 1 : -1, mask & 4 ? 1 : -1}));
  const Polytope cube3 = Polytope::hull(pts);
  const Polytope sq = Polytope::hull({V({1, 1}), V({1, -1}), V({-1, 1}), V({-1, -1})});
  const Polytope b = Polytope::hull({V({1, 0}), V({-1, 0}), V({0, 1}), V({0, -1})});
  const Polytope wide = Polytope::hull({V({2, 1}), V({2, -1}), V({-2, 1}), V({-2, -1})});
  EXPECT_EQ(inradius_sq(cube3), R(1));
  EXPECT_EQ(inradius_sq(b), R(1, 2));
  EXPECT_EQ(inradius_sq(wide), R(1));
  EXPECT_EQ(diameter_sq(sq), R(8));
  EXPECT_EQ(diameter_sq(b), R(4));
  EXPECT_EQ(diameter_sq(wide), R(20));
  EXPECT_EQ(max_inscribed_scaling(b, sq), R(1));
  EXPECT_EQ(max_inscribed_scaling(sq, b), R(1, 2));
  EXPECT_EQ(max_inscribed_scaling(sq, sq), R(1));
  EXPECT_THROW(max_inscribed_scaling(Polytope::origin(2), sq), Unbounded);
}

TEST(NormalGroups, MergesCoplanarPieces) {
  std::vector<Vec> pts;
  for (int mask = 0; mask < 8; ++mask) pts.push_back(V({mask & 1 ? 1 : -1, mask & 2 ? 1 : -1, mask & 4 ? 1 : -1}));
  const auto groups = normal_groups(Polytope::hull(pts));
  ASSERT_EQ(groups.size(), 3u);
  for (const NormalGroup& g : groups) {
    EXPECT_EQ(g.plusArea, Rational(4) * g.direction);
    EXPECT_EQ(g.minusArea, Rational(-4) * g.direction);
  }
}

TEST(Hull, RationalCoordinatesScaleExactly) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 5; ++trial) {
    const Polytope p = symmetric_hull(random_points(rng, 3, 5, 6));
    const Polytope q = scale(p, R(2, 7));
    EXPECT_EQ(q.volume(), p.volume() * R(8, 343));
    for (std::size_t i = 0; i < q.facets().size(); ++i) EXPECT_GT(q.facets()[i].supportValue, 0);
  }
}
