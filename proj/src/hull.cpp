#include "logbm/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "logbm/errors.hpp"
#include "logbm/linalg.hpp"

namespace logbm {

namespace {

bool lex_less(const Vec& a, const Vec& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return true;
    if (b[i] < a[i]) return false;
  }
  return false;
}

// Incrementally maintained echelon basis of difference vectors.
class SpanTracker {
 public:
  explicit SpanTracker(Eigen::Index n) : n_(n) {}

  // Adds v if it is independent of the current basis.
  bool add(Vec v) {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = v[pivots_[r]];
      if (f != 0) v -= f * rows_[r];
    }
    Eigen::Index pivot = -1;
    for (Eigen::Index i = 0; i < n_; ++i) {
      if (v[i] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return false;
    v /= Rational(v[pivot]);
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = rows_[r][pivot];
      if (f != 0) rows_[r] -= f * v;
    }
    rows_.push_back(std::move(v));
    pivots_.push_back(pivot);
    return true;
  }

  int size() const { return static_cast<int>(rows_.size()); }

 private:
  Eigen::Index n_;
  std::vector<Vec> rows_;
  std::vector<Eigen::Index> pivots_;
};

using IntVec = std::vector<Integer>;

// Fraction-free determinant of a k x k row-major matrix.
Integer bareiss_det(std::vector<Integer> m, int k) {
  Integer prev(1);
  int sign = 1;
  for (int c = 0; c < k; ++c) {
    int pivot = c;
    while (pivot < k && m[pivot * k + c] == 0) ++pivot;
    if (pivot == k) return Integer(0);
    if (pivot != c) {
      for (int j = 0; j < k; ++j) std::swap(m[pivot * k + j], m[c * k + j]);
      sign = -sign;
    }
    for (int r = c + 1; r < k; ++r) {
      for (int j = c + 1; j < k; ++j) {
        m[r * k + j] = (m[c * k + c] * m[r * k + j] - m[r * k + c] * m[c * k + j]) / prev;
      }
    }
    prev = m[c * k + c];
  }
  return sign > 0 ? m[k * k - 1] : Integer(-m[k * k - 1]);
}

struct Facet {
  std::vector<int> corners;
  std::vector<int> neighbors;  // neighbors[k] lies across the ridge opposite corners[k]
  IntVec cross;                // outward cross product of the scaled integer edges
  Integer offset;
  std::vector<double> normalD;
  double offsetD = 0;
  bool alive = true;
};

// Works on integer coordinates: every point is multiplied by the common
// denominator D, so cross products of scaled edges are D^(dim-1) times the
// rational ones.
class Builder {
 public:
  explicit Builder(std::vector<Vec> points) : points_(std::move(points)) {
    dim_ = static_cast<int>(points_.front().size());
    Integer denom(1);
    for (const Vec& p : points_) {
      for (int i = 0; i < dim_; ++i) denom = lcm(denom, Integer(mp::denominator(p[i])));
    }
    denom_ = denom;
    pointsD_.reserve(points_.size());
    ipoints_.reserve(points_.size());
    for (const Vec& p : points_) {
      std::vector<double> d(dim_);
      IntVec q(dim_);
      for (int i = 0; i < dim_; ++i) {
        q[i] = mp::numerator(p[i]) * (denom / mp::denominator(p[i]));
        d[i] = q[i].convert_to<double>();
      }
      pointsD_.push_back(std::move(d));
      ipoints_.push_back(std::move(q));
    }
  }

  HullResult run() {
    const std::vector<int> simplex = initial_simplex();
    interiorSum_.assign(dim_, Integer(0));
    for (int idx : simplex) {
      for (int i = 0; i < dim_; ++i) interiorSum_[i] += ipoints_[idx][i];
    }

    for (int skip = 0; skip <= dim_; ++skip) {
      std::vector<int> corners;
      for (int k = 0; k <= dim_; ++k) {
        if (k != skip) corners.push_back(simplex[k]);
      }
      add_facet(std::move(corners));
    }
    // Facet `f` omits simplex[f]; its neighbor across the ridge opposite a
    // corner simplex[g] is facet g.
    for (int f = 0; f <= dim_; ++f) {
      Facet& facet = facets_[f];
      facet.neighbors.assign(dim_, -1);
      for (int k = 0; k < dim_; ++k) {
        const int vertex = facet.corners[k];
        facet.neighbors[k] = static_cast<int>(std::find(simplex.begin(), simplex.end(), vertex) - simplex.begin());
      }
    }

    std::vector<bool> in_simplex(points_.size(), false);
    for (int idx : simplex) in_simplex[idx] = true;
    std::vector<int> order;
    std::vector<double> dist(points_.size(), 0.0);
    std::vector<double> centre(dim_);
    for (int i = 0; i < dim_; ++i) centre[i] = interiorSum_[i].convert_to<double>() / (dim_ + 1);
    for (std::size_t i = 0; i < points_.size(); ++i) {
      if (in_simplex[i]) continue;
      order.push_back(static_cast<int>(i));
      for (int k = 0; k < dim_; ++k) {
        const double d = pointsD_[i][k] - centre[k];
        dist[i] += d * d;
      }
    }
    // Far points first: most of the remaining points then fall inside early.
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] > dist[b]; });

    visitStamp_.assign(facets_.size(), 0);
    for (int idx : order) insert(idx);

    return finish();
  }

 private:
  std::vector<int> initial_simplex() {
    SpanTracker span(dim_);
    std::vector<int> chosen{0};
    for (std::size_t i = 1; i < points_.size() && span.size() < dim_; ++i) {
      if (span.add(points_[i] - points_[0])) chosen.push_back(static_cast<int>(i));
    }
    if (span.size() < dim_) {
      throw DegenerateInput("point set spans an affine subspace of dimension " + std::to_string(span.size()) +
                            " < " + std::to_string(dim_));
    }
    return chosen;
  }

  Integer dot(const IntVec& a, const IntVec& b) const {
    Integer s(0);
    for (int i = 0; i < dim_; ++i) s += a[i] * b[i];
    return s;
  }

  int add_facet(std::vector<int> corners) {
    const int rows = dim_ - 1;
    std::vector<IntVec> edges(rows, IntVec(dim_));
    for (int k = 1; k < dim_; ++k) {
      for (int i = 0; i < dim_; ++i) edges[k - 1][i] = ipoints_[corners[k]][i] - ipoints_[corners[0]][i];
    }
    Facet f;
    f.cross.resize(dim_);
    std::vector<Integer> minor(static_cast<std::size_t>(rows) * rows);
    for (int col = 0; col < dim_; ++col) {
      for (int r = 0; r < rows; ++r) {
        int c = 0;
        for (int i = 0; i < dim_; ++i) {
          if (i != col) minor[r * rows + c++] = edges[r][i];
        }
      }
      const Integer d = rows == 0 ? Integer(1) : bareiss_det(minor, rows);
      f.cross[col] = ((col + rows) % 2 == 0) ? d : Integer(-d);
    }
    f.offset = dot(f.cross, ipoints_[corners[0]]);
    const Integer inner = dot(f.cross, interiorSum_);
    const Integer off_scaled = f.offset * (dim_ + 1);
    if (inner == off_scaled) throw InternalInconsistency("hull facet through the interior reference point");
    if (inner > off_scaled) {
      for (Integer& x : f.cross) x = -x;
      f.offset = -f.offset;
    }
    f.normalD.resize(dim_);
    for (int i = 0; i < dim_; ++i) f.normalD[i] = f.cross[i].convert_to<double>();
    f.offsetD = f.offset.convert_to<double>();
    f.corners = std::move(corners);
    f.neighbors.assign(dim_, -1);
    facets_.push_back(std::move(f));
    visitStamp_.push_back(0);
    return static_cast<int>(facets_.size()) - 1;
  }

  // Sign of <normal, p> - offset, decided in floating point when the result
  // is far from the rounding error bound and exactly otherwise.
  int side(const Facet& f, int idx) const {
    const std::vector<double>& p = pointsD_[idx];
    double value = -f.offsetD;
    double magnitude = std::abs(f.offsetD);
    for (int i = 0; i < dim_; ++i) {
      const double t = f.normalD[i] * p[i];
      value += t;
      magnitude += std::abs(t);
    }
    if (std::isfinite(value) && std::isfinite(magnitude)) {
      const double bound = 1e-10 * magnitude;
      if (value > bound) return 1;
      if (value < -bound) return -1;
    }
    const Integer exact = dot(f.cross, ipoints_[idx]) - f.offset;
    return exact > 0 ? 1 : (exact < 0 ? -1 : 0);
  }

  void insert(int idx) {
    int seed = -1;
    for (std::size_t f = 0; f < facets_.size(); ++f) {
      if (facets_[f].alive && side(facets_[f], idx) > 0) {
        seed = static_cast<int>(f);
        break;
      }
    }
    if (seed < 0) return;

    ++stamp_;
    std::vector<int> visible{seed};
    visitStamp_[seed] = stamp_;
    visibleStamp_.resize(facets_.size(), 0);
    visibleStamp_[seed] = stamp_;
    for (std::size_t head = 0; head < visible.size(); ++head) {
      const Facet& f = facets_[visible[head]];
      for (int nb : f.neighbors) {
        if (visitStamp_[nb] == stamp_) continue;
        visitStamp_[nb] = stamp_;
        if (side(facets_[nb], idx) > 0) {
          visibleStamp_[nb] = stamp_;
          visible.push_back(nb);
        }
      }
    }

    // Ridge (sorted corner indices) -> (new facet, slot) awaiting a partner.
    std::map<std::vector<int>, std::pair<int, int>> open_ridges;
    for (int fv : visible) {
      for (int k = 0; k < dim_; ++k) {
        const int nb = facets_[fv].neighbors[k];
        if (visibleStamp_[nb] == stamp_) continue;
        std::vector<int> corners;
        corners.reserve(dim_);
        for (int j = 0; j < dim_; ++j) {
          if (j != k) corners.push_back(facets_[fv].corners[j]);
        }
        corners.push_back(idx);
        const int created = add_facet(corners);
        Facet& nf = facets_[created];
        nf.neighbors[dim_ - 1] = nb;
        Facet& outer = facets_[nb];
        for (int j = 0; j < dim_; ++j) {
          if (outer.neighbors[j] == fv) outer.neighbors[j] = created;
        }
        for (int j = 0; j < dim_ - 1; ++j) {
          std::vector<int> ridge;
          for (int m = 0; m < dim_; ++m) {
            if (m != j) ridge.push_back(nf.corners[m]);
          }
          std::sort(ridge.begin(), ridge.end());
          auto it = open_ridges.find(ridge);
          if (it == open_ridges.end()) {
            open_ridges.emplace(std::move(ridge), std::make_pair(created, j));
          } else {
            nf.neighbors[j] = it->second.first;
            facets_[it->second.first].neighbors[it->second.second] = created;
            open_ridges.erase(it);
          }
        }
      }
    }
    if (!open_ridges.empty()) throw InternalInconsistency("hull update left unmatched ridges");
    for (int fv : visible) facets_[fv].alive = false;
  }

  HullResult finish() {
    HullResult out;
    out.dim = dim_;
    Integer scale_int(1);
    for (int k = 2; k < dim_; ++k) scale_int *= k;  // (dim-1)!
    for (int k = 1; k < dim_; ++k) scale_int *= denom_;
    const Rational scale(scale_int);

    std::vector<std::vector<int>> incident(points_.size());
    for (const Facet& f : facets_) {
      if (!f.alive) continue;
      const int id = static_cast<int>(out.facets.size());
      out.facets.push_back(f.corners);
      Vec a(dim_);
      for (int i = 0; i < dim_; ++i) a[i] = Rational(f.cross[i]) / scale;
      out.areaVectors.push_back(std::move(a));
      for (int c : f.corners) incident[c].push_back(id);
    }
    const std::vector<Vec>& normals = out.areaVectors;
    for (std::size_t p = 0; p < points_.size(); ++p) {
      if (incident[p].empty()) continue;
      SpanTracker span(dim_);
      for (int id : incident[p]) {
        span.add(normals[id]);
        if (span.size() == dim_) break;
      }
      if (span.size() == dim_) out.extreme.push_back(static_cast<int>(p));
    }
    out.points = std::move(points_);
    return out;
  }

  int dim_ = 0;
  std::vector<Vec> points_;
  std::vector<std::vector<double>> pointsD_;
  std::vector<IntVec> ipoints_;
  Integer denom_;
  IntVec interiorSum_;  // sum of the initial simplex corners
  std::vector<Facet> facets_;
  std::vector<unsigned> visitStamp_;
  std::vector<unsigned> visibleStamp_;
  unsigned stamp_ = 0;
};

void sort_unique(std::vector<Vec>& points) {
  std::sort(points.begin(), points.end(), lex_less);
  points.erase(std::unique(points.begin(), points.end(), [](const Vec& a, const Vec& b) { return a == b; }),
               points.end());
}

}  // namespace

HullResult triangulated_hull(std::vector<Vec> points) {
  if (points.empty()) throw DegenerateInput("empty point set");
  const auto n = points.front().size();
  if (n < 2) throw DegenerateInput("triangulated hull needs dimension >= 2");
  for (const Vec& p : points) {
    if (p.size() != n) throw DegenerateInput("points of mixed dimension");
  }
  sort_unique(points);
  if (static_cast<Eigen::Index>(points.size()) < n + 1) {
    throw DegenerateInput("fewer than n+1 distinct points");
  }
  return Builder(std::move(points)).run();
}

int affine_dimension(const std::vector<Vec>& points) {
  if (points.empty()) return -1;
  SpanTracker span(points.front().size());
  for (std::size_t i = 1; i < points.size(); ++i) span.add(points[i] - points[0]);
  return span.size();
}

}  // namespace logbm
