#include "logbm/polytope.hpp"

#include <algorithm>
#include <map>

#include "logbm/errors.hpp"
#include "logbm/hull.hpp"
#include "logbm/linalg.hpp"

namespace logbm {

namespace {

struct VecLess {
  bool operator()(const Vec& a, const Vec& b) const {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a[i] < b[i]) return true;
      if (b[i] < a[i]) return false;
    }
    return false;
  }
};

void require_same_dim(const Polytope& p, Eigen::Index n) {
  if (p.dim() != n) throw DegenerateInput("dimension mismatch");
}

// Basis of the linear span of the differences points[i] - points[0].
std::vector<Vec> affine_directions(const std::vector<Vec>& points) {
  Mat diffs(static_cast<Eigen::Index>(points.size()) - 1, points.front().size());
  for (std::size_t i = 1; i < points.size(); ++i) {
    diffs.row(static_cast<Eigen::Index>(i) - 1) = (points[i] - points[0]).transpose();
  }
  Mat echelon = diffs;
  const auto pivots = row_echelon(echelon);
  std::vector<Vec> basis;
  for (std::size_t r = 0; r < pivots.size(); ++r) basis.push_back(echelon.row(static_cast<Eigen::Index>(r)).transpose());
  return basis;
}

// Coordinates of x in span(basis) for x already in that span, or of the
// orthogonal projection of x otherwise: Gram^{-1} B^T x.
class BasisCoordinates {
 public:
  explicit BasisCoordinates(const std::vector<Vec>& basis) : b_(rows_to_matrix(basis)) {
    gram_ = b_ * b_.transpose();
    gram_inverse_ = inverse(gram_);
  }

  Vec operator()(const Vec& x) const { return gram_inverse_ * (b_ * x); }
  Rational gram_determinant() const { return determinant(gram_); }

 private:
  Mat b_;
  Mat gram_;
  Mat gram_inverse_;
};

// k-volume of conv(points) where every point is given in k coordinates.
Rational coordinate_volume(std::vector<Vec> coords) {
  const Eigen::Index k = coords.front().size();
  if (k == 0) return Rational(1);
  if (affine_dimension(coords) < k) return Rational(0);
  return Polytope::hull(std::move(coords)).volume();
}

RadicalScalar content_in_basis(const std::vector<Vec>& points, const std::vector<Vec>& basis) {
  if (basis.empty()) return RadicalScalar(Rational(1));
  if (rank(rows_to_matrix(basis)) < static_cast<int>(basis.size())) {
    throw DegenerateInput("subspace basis is linearly dependent");
  }
  const BasisCoordinates coords(basis);
  std::vector<Vec> projected;
  projected.reserve(points.size());
  for (const Vec& p : points) projected.push_back(coords(p));
  const Rational base = coordinate_volume(std::move(projected));
  return RadicalScalar(base, coords.gram_determinant());
}

}  // namespace

Polytope Polytope::hull(std::vector<Vec> points) {
  if (points.empty()) throw DegenerateInput("empty point set");
  const int n = static_cast<int>(points.front().size());
  Polytope out;
  out.dim_ = n;
  out.affine_dim_ = n;
  if (n == 1) {
    auto [lo, hi] = std::minmax_element(points.begin(), points.end(),
                                        [](const Vec& a, const Vec& b) { return a[0] < b[0]; });
    if ((*lo)[0] == (*hi)[0]) throw DegenerateInput("interval of zero length");
    out.vertices_ = {*lo, *hi};
    out.facets_ = {FacetData{-Vec::Ones(1), -(*lo)[0]}, FacetData{Vec::Ones(1), (*hi)[0]}};
    out.volume_ = (*hi)[0] - (*lo)[0];
    return out;
  }
  HullResult h = triangulated_hull(std::move(points));
  for (int idx : h.extreme) out.vertices_.push_back(h.points[idx]);
  out.facets_.reserve(h.facets.size());
  Rational sum(0);
  for (std::size_t f = 0; f < h.facets.size(); ++f) {
    const Vec& corner = h.points[h.facets[f].front()];
    Rational s = corner.dot(h.areaVectors[f]);
    sum += s;
    out.facets_.push_back(FacetData{std::move(h.areaVectors[f]), std::move(s)});
  }
  // Cone volumes from the origin: sum of <x_f, a_f> / n.
  out.volume_ = sum / Rational(n);
  if (out.volume_ <= 0) throw InternalInconsistency("non-positive hull volume");
  return out;
}

Polytope Polytope::span_hull(std::vector<Vec> points) {
  if (points.empty()) throw DegenerateInput("empty point set");
  const int n = static_cast<int>(points.front().size());
  std::sort(points.begin(), points.end(), VecLess{});
  points.erase(std::unique(points.begin(), points.end(), [](const Vec& a, const Vec& b) { return a == b; }),
               points.end());
  const int r = affine_dimension(points);
  if (r == n) return hull(std::move(points));

  Polytope out;
  out.dim_ = n;
  out.affine_dim_ = r;
  if (r == 0) {
    out.vertices_ = {points.front()};
    return out;
  }
  const std::vector<Vec> basis = affine_directions(points);
  const BasisCoordinates coords(basis);
  std::vector<Vec> local;
  local.reserve(points.size());
  for (const Vec& p : points) local.push_back(coords(Vec(p - points.front())));
  if (r == 1) {
    auto [lo, hi] = std::minmax_element(local.begin(), local.end(),
                                        [](const Vec& a, const Vec& b) { return a[0] < b[0]; });
    out.vertices_ = {points[lo - local.begin()], points[hi - local.begin()]};
    return out;
  }
  // Extreme points in span coordinates map back one-to-one.
  const HullResult h = triangulated_hull(local);
  std::map<Vec, int, VecLess> index;
  for (std::size_t i = 0; i < local.size(); ++i) index.emplace(local[i], static_cast<int>(i));
  for (int idx : h.extreme) out.vertices_.push_back(points[index.at(h.points[idx])]);
  std::sort(out.vertices_.begin(), out.vertices_.end(), VecLess{});
  return out;
}

Polytope Polytope::origin(int n) {
  Polytope out;
  out.dim_ = n;
  out.affine_dim_ = 0;
  out.vertices_ = {Vec::Zero(n)};
  return out;
}

Polytope Polytope::from_facets(std::vector<Vec> vertices, std::vector<FacetData> facets) {
  if (vertices.empty() || facets.empty()) throw DegenerateInput("empty facet description");
  Polytope out;
  out.dim_ = static_cast<int>(vertices.front().size());
  out.affine_dim_ = out.dim_;
  Rational sum(0);
  for (const FacetData& f : facets) sum += f.supportValue;
  out.volume_ = sum / Rational(out.dim_);
  out.vertices_ = std::move(vertices);
  out.facets_ = std::move(facets);
  return out;
}

bool Polytope::is_symmetric() const {
  std::map<Vec, bool, VecLess> present;
  for (const Vec& v : vertices_) present.emplace(v, true);
  for (const Vec& v : vertices_) {
    if (!present.contains(Vec(-v))) return false;
  }
  return true;
}

Polytope convex_hull(std::vector<Vec> points) { return Polytope::hull(std::move(points)); }

const Rational& volume(const Polytope& p) { return p.volume(); }

Rational support(const Polytope& p, const Vec& u) {
  require_same_dim(p, u.size());
  Rational best = p.vertices().front().dot(u);
  for (const Vec& v : p.vertices()) {
    Rational d = v.dot(u);
    if (d > best) best = std::move(d);
  }
  return best;
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  require_same_dim(q, p.dim());
  std::vector<Vec> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const Vec& a : p.vertices()) {
    for (const Vec& b : q.vertices()) sums.push_back(a + b);
  }
  return Polytope::span_hull(std::move(sums));
}

Polytope scale(const Polytope& p, const Rational& factor) {
  if (factor == 0) return Polytope::origin(p.dim());
  std::vector<Vec> vertices;
  vertices.reserve(p.vertices().size());
  for (const Vec& v : p.vertices()) vertices.push_back(v * factor);
  if (factor < 0 || !p.full_dimensional()) return Polytope::span_hull(std::move(vertices));
  // a -> factor^{n-1} a, s -> factor^n s
  Rational area_factor(1);
  for (int i = 1; i < p.dim(); ++i) area_factor *= factor;
  std::vector<FacetData> facets;
  facets.reserve(p.facets().size());
  for (const FacetData& f : p.facets()) {
    facets.push_back(FacetData{f.areaVector * area_factor, f.supportValue * area_factor * factor});
  }
  return Polytope::from_facets(std::move(vertices), std::move(facets));
}

Polytope linear_image(const Polytope& p, const Mat& t) {
  if (t.rows() != p.dim() || t.cols() != p.dim()) throw DegenerateInput("matrix dimension mismatch");
  if (determinant(t) == 0) throw SingularMatrix("linear image by a singular matrix");
  std::vector<Vec> image;
  image.reserve(p.vertices().size());
  for (const Vec& v : p.vertices()) image.push_back(t * v);
  return Polytope::span_hull(std::move(image));
}

RadicalScalar subspace_projection_volume(const Polytope& p, const std::vector<Vec>& basis) {
  for (const Vec& b : basis) require_same_dim(p, b.size());
  return content_in_basis(p.vertices(), basis);
}

RadicalScalar complement_projection_volume(const Polytope& p, const std::vector<Vec>& normals) {
  if (normals.empty()) return RadicalScalar(p.volume());
  for (const Vec& v : normals) require_same_dim(p, v.size());
  const Mat rows = rows_to_matrix(normals);
  if (rank(rows) < static_cast<int>(normals.size())) throw DegenerateInput("normals are linearly dependent");
  return content_in_basis(p.vertices(), nullspace(rows));
}

RadicalScalar central_section_volume(const Polytope& p, const Vec& u) {
  require_same_dim(p, u.size());
  if (u.isZero()) throw ZeroVector("section normal is zero");
  std::vector<Rational> heights;
  heights.reserve(p.vertices().size());
  for (const Vec& v : p.vertices()) heights.push_back(v.dot(u));
  // Every edge crossing u^perp is among the vertex pairs of opposite sign,
  // and every pair segment lies inside P.
  std::vector<Vec> cut;
  const auto& vs = p.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (heights[i] == 0) cut.push_back(vs[i]);
    if (heights[i] >= 0) continue;
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (heights[j] <= 0) continue;
      const Rational t = heights[i] / (heights[i] - heights[j]);
      cut.push_back(vs[i] + t * (vs[j] - vs[i]));
    }
  }
  if (cut.empty()) throw DegenerateInput("hyperplane misses the body");
  std::sort(cut.begin(), cut.end(), VecLess{});
  cut.erase(std::unique(cut.begin(), cut.end(), [](const Vec& a, const Vec& b) { return a == b; }), cut.end());
  Mat row(1, u.size());
  row.row(0) = u.transpose();
  return content_in_basis(cut, nullspace(row));
}

Rational inradius_sq(const Polytope& p) {
  if (!p.full_dimensional()) return Rational(0);
  Rational best(-1);
  for (const FacetData& f : p.facets()) {
    const Rational r = f.supportValue * f.supportValue / f.areaVector.squaredNorm();
    if (best < 0 || r < best) best = r;
  }
  return best;
}

Rational diameter_sq(const Polytope& p) {
  Rational best(0);
  const auto& vs = p.vertices();
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = i + 1; j < vs.size(); ++j) {
      Rational d = (vs[i] - vs[j]).squaredNorm();
      if (d > best) best = std::move(d);
    }
  }
  return best;
}

Rational max_inscribed_scaling(const Polytope& m, const Polytope& k) {
  require_same_dim(m, k.dim());
  if (!k.full_dimensional()) throw DegenerateInput("container body is not full-dimensional");
  bool found = false;
  Rational best;
  for (const FacetData& f : k.facets()) {
    for (const Vec& v : m.vertices()) {
      const Rational d = v.dot(f.areaVector);
      if (d <= 0) continue;
      const Rational lambda = f.supportValue / d;
      if (!found || lambda < best) {
        best = lambda;
        found = true;
      }
    }
  }
  if (!found) throw Unbounded("every multiple of the body fits: it is {0}");
  return best;
}

std::vector<NormalGroup> normal_groups(const Polytope& p) {
  std::map<Vec, NormalGroup, VecLess> groups;
  const Vec zero = Vec::Zero(p.dim());
  for (const FacetData& f : p.facets()) {
    const Vec dir = canonical_direction(f.areaVector);
    auto [it, inserted] = groups.try_emplace(dir);
    NormalGroup& g = it->second;
    if (inserted) {
      g.direction = dir;
      g.plusArea = zero;
      g.minusArea = zero;
    }
    if (f.areaVector.dot(dir) > 0) {
      g.plusArea += f.areaVector;
    } else {
      g.minusArea += f.areaVector;
    }
    ++g.pieces;
  }
  std::vector<NormalGroup> out;
  out.reserve(groups.size());
  for (auto& [key, g] : groups) out.push_back(std::move(g));
  return out;
}

Vec area_vector_sum(const Polytope& p) {
  Vec sum = Vec::Zero(p.dim());
  for (const FacetData& f : p.facets()) sum += f.areaVector;
  return sum;
}

}  // namespace logbm
