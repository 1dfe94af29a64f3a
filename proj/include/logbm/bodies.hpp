#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "logbm/functionals.hpp"
#include "logbm/polytope.hpp"

namespace logbm {

// Named bodies. Coordinate indices are 0-based here; the textual body
// format uses 1-based indices for square2d to match e_1, e_2, ...

/// [-1, 1]^n
Polytope cube(int n);
/// Coordinate box with the given half-sides.
Polytope box(const std::vector<Rational>& half_sides);
/// conv(+-e_i)
Polytope cross_polytope(int n);
/// [-v, v]
Polytope segment(const Vec& v);
/// [-e_i, e_i] + [-e_j, e_j] in R^n.
Polytope square2d(int n, int i, int j);
/// sum of [-g, g] over the generators.
Polytope zonotope(const std::vector<Vec>& generators);
/// base + [-axis, axis]; throws DegenerateInput unless full-dimensional.
Polytope cylinder(const Polytope& base, const Vec& axis);

/// Hull of +-p for k integer points with coordinates in [-bound, bound],
/// drawn from std::mt19937_64(seed) through
/// std::uniform_int_distribution. Zero draws are rejected; lower-dimensional
/// draws are retried up to kRandomRetryLimit times before RetryExhausted.
Polytope random_symmetric_polytope(int n, int k, std::uint64_t seed, int coord_bound);
inline constexpr int kRandomRetryLimit = 64;
inline constexpr const char* kRandomAlgorithm = "mt19937_64+uniform_int_distribution";

/// Tree of tagged records describing a symmetric body, for example
/// {"kind":"cylinder","base":{"kind":"vertices","points":[["0","1"],["0","-1"]]},"axis":["1","0"]}.
struct BodySpec {
  enum class Kind { Vertices, Cube, Box, CrossPolytope, Segment, Square2d, Zonotope, Cylinder, LinearImage, MinkowskiSum };

  Kind kind = Kind::Vertices;
  int dim = 0;
  std::vector<Vec> points;           // vertices, zonotope generators
  std::vector<Rational> halfSides;   // box
  Vec vector;                        // segment, cylinder axis
  Mat matrix;                        // linearImage
  int first = 0;                     // square2d, 0-based
  int second = 1;
  bool symmetrize = false;           // vertices: add the negated points
  std::vector<BodySpec> operands;    // cylinder/linearImage base, minkowskiSum terms

  /// Throws ParseError naming the offending field.
  static BodySpec from_json(const nlohmann::json& j, const std::string& path = "body");
  static BodySpec parse(std::string_view text);
  nlohmann::json to_json() const;

  /// A vertex-list spec reproducing `p` exactly.
  static BodySpec of(const Polytope& p);
};

/// Resolves a spec. Throws DegenerateInput if the result is not
/// origin-symmetric.
Polytope construct(const BodySpec& spec);
/// As construct, additionally requiring a full-dimensional result.
Polytope construct_body(const BodySpec& spec);

/// {"form":"max","vectors":[...]} or {"form":"sum","vectors":[...],"weights":[...]};
/// sum-form weights default to 1.
SemiNorm seminorm_from_json(const nlohmann::json& j, const std::string& path = "norm");
nlohmann::json seminorm_to_json(const SemiNorm& norm);

nlohmann::json vector_to_json(const Vec& v);
Vec vector_from_json(const nlohmann::json& j, const std::string& path);
Rational rational_from_json(const nlohmann::json& j, const std::string& path);

}  // namespace logbm
