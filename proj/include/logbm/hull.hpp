#pragma once

#include <vector>

#include "logbm/scalar.hpp"

namespace logbm {

/// Boundary triangulation of a full-dimensional point set.
struct HullResult {
  int dim = 0;
  std::vector<Vec> points;               // input, deduplicated and sorted
  std::vector<std::vector<int>> facets;  // corner indices of boundary simplices
  std::vector<Vec> areaVectors;          // outward, |a| = (dim-1)-content
  std::vector<int> extreme;              // indices of extreme points, ascending
};

/// Incremental beneath-beyond hull with exact orientation tests. Points on a
/// facet hyperplane never count as beyond it, so coplanar facets stay split
/// into separate simplices. Throws DegenerateInput when the affine hull of
/// `points` is not full-dimensional.
HullResult triangulated_hull(std::vector<Vec> points);

/// Affine dimension of a point set (-1 for the empty set).
int affine_dimension(const std::vector<Vec>& points);

}  // namespace logbm
