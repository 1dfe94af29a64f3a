#pragma once

#include <span>
#include <vector>

#include "logbm/radical.hpp"
#include "logbm/scalar.hpp"

namespace logbm {

/// One boundary piece of a full-dimensional polytope: a = F * u (content
/// times outward unit normal) and s = <x, a> for any x on the piece.
struct FacetData {
  Vec areaVector;
  Rational supportValue;
};

/// Convex hull of finitely many rational points in R^n.
///
/// Full-dimensional polytopes carry their triangulated boundary and exact
/// volume. Lower-dimensional ones (segments, planar squares in R^3) keep
/// only their extreme points; they serve as the second argument of mixed
/// volumes and support evaluations.
class Polytope {
 public:
  /// Full-dimensional hull. Throws DegenerateInput otherwise.
  static Polytope hull(std::vector<Vec> points);
  /// Hull of any dimension; facets are computed when it is full-dimensional.
  static Polytope span_hull(std::vector<Vec> points);
  /// The single point 0 in R^n.
  static Polytope origin(int n);
  /// Assembles a full-dimensional polytope from explicit facet pieces. Used
  /// to exercise functionals on alternative triangulations.
  static Polytope from_facets(std::vector<Vec> vertices, std::vector<FacetData> facets);

  int dim() const { return dim_; }
  int affine_dim() const { return affine_dim_; }
  bool full_dimensional() const { return affine_dim_ == dim_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  const std::vector<FacetData>& facets() const { return facets_; }
  /// n-volume; zero when not full-dimensional.
  const Rational& volume() const { return volume_; }
  bool is_symmetric() const;

 private:
  int dim_ = 0;
  int affine_dim_ = -1;
  std::vector<Vec> vertices_;
  std::vector<FacetData> facets_;
  Rational volume_{0};
};

Polytope convex_hull(std::vector<Vec> points);
const Rational& volume(const Polytope& p);
Rational support(const Polytope& p, const Vec& u);
Polytope minkowski_sum(const Polytope& p, const Polytope& q);
Polytope scale(const Polytope& p, const Rational& factor);
/// Hull of {T v}. Throws SingularMatrix for non-invertible T.
Polytope linear_image(const Polytope& p, const Mat& t);

/// |P|H| where H = span(basis). Throws DegenerateInput if the basis is
/// dependent.
RadicalScalar subspace_projection_volume(const Polytope& p, const std::vector<Vec>& basis);
/// |P|H| where H is the orthogonal complement of span(normals).
RadicalScalar complement_projection_volume(const Polytope& p, const std::vector<Vec>& normals);
/// |P cap u^perp|_{n-1}.
RadicalScalar central_section_volume(const Polytope& p, const Vec& u);

/// Squared inradius of a symmetric body: min over facets of s^2 / |a|^2.
Rational inradius_sq(const Polytope& p);
Rational diameter_sq(const Polytope& p);
/// Largest lambda with lambda * M inside K. Throws Unbounded for M = {0}.
Rational max_inscribed_scaling(const Polytope& m, const Polytope& k);

/// Facet pieces grouped by canonical normal direction; a direction and its
/// antipode share one group.
struct NormalGroup {
  Vec direction;  // primitive integer, first nonzero coordinate positive
  Vec plusArea;   // summed area vectors on the +direction side
  Vec minusArea;  // summed area vectors on the -direction side
  int pieces = 0;
};
std::vector<NormalGroup> normal_groups(const Polytope& p);

/// Sum of area vectors; zero for every closed boundary.
Vec area_vector_sum(const Polytope& p);

}  // namespace logbm
