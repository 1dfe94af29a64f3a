#include "logbm/bodies.hpp"

#include <random>

#include "logbm/errors.hpp"
#include "logbm/linalg.hpp"

namespace logbm {

namespace {

std::vector<Vec> sign_vertices(const std::vector<Rational>& half_sides) {
  const int n = static_cast<int>(half_sides.size());
  std::vector<Vec> out;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = (mask >> i) & 1u ? Rational(-half_sides[i]) : half_sides[i];
    out.push_back(std::move(v));
  }
  return out;
}

const std::pair<const char*, BodySpec::Kind> kKindNames[] = {
    {"vertices", BodySpec::Kind::Vertices},
    {"cube", BodySpec::Kind::Cube},
    {"box", BodySpec::Kind::Box},
    {"crossPolytope", BodySpec::Kind::CrossPolytope},
    {"segment", BodySpec::Kind::Segment},
    {"square2d", BodySpec::Kind::Square2d},
    {"zonotope", BodySpec::Kind::Zonotope},
    {"cylinder", BodySpec::Kind::Cylinder},
    {"linearImage", BodySpec::Kind::LinearImage},
    {"minkowskiSum", BodySpec::Kind::MinkowskiSum},
};

const nlohmann::json& field(const nlohmann::json& j, const char* name, const std::string& path) {
  if (!j.is_object() || !j.contains(name)) throw ParseError(path + "." + name, "missing field");
  return j.at(name);
}

int int_field(const nlohmann::json& j, const char* name, const std::string& path) {
  const auto& v = field(j, name, path);
  if (!v.is_number_integer()) throw ParseError(path + "." + name, "expected an integer");
  return v.get<int>();
}

std::vector<Vec> points_from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(path, "expected a nonempty array of vectors");
  std::vector<Vec> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(vector_from_json(j[i], path + "[" + std::to_string(i) + "]"));
    if (out.back().size() != out.front().size()) throw ParseError(path, "vectors of mixed dimension");
  }
  return out;
}

void require_symmetric(const Polytope& p) {
  if (!p.is_symmetric()) throw DegenerateInput("body is not origin-symmetric");
}

}  // namespace

Polytope cube(int n) { return box(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1))); }

Polytope box(const std::vector<Rational>& half_sides) {
  for (const Rational& h : half_sides) {
    if (h <= 0) throw DegenerateInput("box half-sides must be positive");
  }
  return Polytope::hull(sign_vertices(half_sides));
}

Polytope cross_polytope(int n) {
  std::vector<Vec> points;
  for (int i = 0; i < n; ++i) {
    points.push_back(unit_vector(n, i));
    points.push_back(-unit_vector(n, i));
  }
  return Polytope::hull(std::move(points));
}

Polytope segment(const Vec& v) { return Polytope::span_hull({v, Vec(-v)}); }

Polytope square2d(int n, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= n || j >= n) throw DegenerateInput("square2d needs two distinct axes");
  return minkowski_sum(segment(unit_vector(n, i)), segment(unit_vector(n, j)));
}

Polytope zonotope(const std::vector<Vec>& generators) {
  if (generators.empty()) throw DegenerateInput("zonotope needs generators");
  Polytope z = Polytope::origin(static_cast<int>(generators.front().size()));
  for (const Vec& g : generators) {
    if (!g.isZero()) z = minkowski_sum(z, segment(g));
  }
  return z;
}

Polytope cylinder(const Polytope& base, const Vec& axis) {
  Polytope out = minkowski_sum(base, segment(axis));
  if (!out.full_dimensional()) throw DegenerateInput("cylinder is not full-dimensional");
  return out;
}

Polytope random_symmetric_polytope(int n, int k, std::uint64_t seed, int coord_bound) {
  if (n < 2 || k < n || coord_bound < 1) throw DegenerateInput("random polytope needs n >= 2, k >= n, bound >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coord(-coord_bound, coord_bound);
  for (int attempt = 0; attempt < kRandomRetryLimit; ++attempt) {
    std::vector<Vec> points;
    while (static_cast<int>(points.size()) < 2 * k) {
      Vec v(n);
      for (int i = 0; i < n; ++i) v[i] = coord(rng);
      if (v.isZero()) continue;
      points.push_back(v);
      points.push_back(-v);
    }
    Polytope p = Polytope::span_hull(std::move(points));
    if (p.full_dimensional()) return p;
  }
  throw RetryExhausted("no full-dimensional draw within the retry limit");
}

nlohmann::json vector_to_json(const Vec& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_string(v[i]));
  return out;
}

Rational rational_from_json(const nlohmann::json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (!j.is_string()) throw ParseError(path, "expected a rational string \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(path, e.what());
  }
}

Vec vector_from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_array() || j.empty()) throw ParseError(path, "expected a nonempty array of rationals");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Eigen::Index>(i)] = rational_from_json(j[i], path + "[" + std::to_string(i) + "]");
  }
  return v;
}

BodySpec BodySpec::from_json(const nlohmann::json& j, const std::string& path) {
  const auto& kind_field = field(j, "kind", path);
  if (!kind_field.is_string()) throw ParseError(path + ".kind", "expected a string");
  const std::string kind = kind_field.get<std::string>();
  BodySpec spec;
  bool known = false;
  for (const auto& [name, k] : kKindNames) {
    if (kind == name) {
      spec.kind = k;
      known = true;
    }
  }
  if (!known) throw ParseError(path + ".kind", "unknown body kind \"" + kind + "\"");

  switch (spec.kind) {
    case Kind::Vertices:
      spec.points = points_from_json(field(j, "points", path), path + ".points");
      spec.dim = static_cast<int>(spec.points.front().size());
      if (j.contains("symmetrize")) spec.symmetrize = j.at("symmetrize").get<bool>();
      break;
    case Kind::Cube:
    case Kind::CrossPolytope:
      spec.dim = int_field(j, "dim", path);
      if (spec.dim < 1) throw ParseError(path + ".dim", "dimension must be positive");
      break;
    case Kind::Box: {
      const Vec h = vector_from_json(field(j, "halfSides", path), path + ".halfSides");
      for (Eigen::Index i = 0; i < h.size(); ++i) spec.halfSides.push_back(h[i]);
      spec.dim = static_cast<int>(h.size());
      break;
    }
    case Kind::Segment:
      spec.vector = vector_from_json(field(j, "vector", path), path + ".vector");
      spec.dim = static_cast<int>(spec.vector.size());
      break;
    case Kind::Square2d:
      spec.dim = int_field(j, "dim", path);
      spec.first = int_field(j, "i", path) - 1;
      spec.second = int_field(j, "j", path) - 1;
      break;
    case Kind::Zonotope:
      spec.points = points_from_json(field(j, "generators", path), path + ".generators");
      spec.dim = static_cast<int>(spec.points.front().size());
      break;
    case Kind::Cylinder:
      spec.operands.push_back(from_json(field(j, "base", path), path + ".base"));
      spec.vector = vector_from_json(field(j, "axis", path), path + ".axis");
      spec.dim = static_cast<int>(spec.vector.size());
      break;
    case Kind::LinearImage: {
      spec.operands.push_back(from_json(field(j, "base", path), path + ".base"));
      const auto rows = points_from_json(field(j, "matrix", path), path + ".matrix");
      spec.matrix = rows_to_matrix(rows);
      spec.dim = static_cast<int>(rows.size());
      break;
    }
    case Kind::MinkowskiSum: {
      const auto& ops = field(j, "operands", path);
      if (!ops.is_array() || ops.empty()) throw ParseError(path + ".operands", "expected a nonempty array");
      for (std::size_t i = 0; i < ops.size(); ++i) {
        spec.operands.push_back(from_json(ops[i], path + ".operands[" + std::to_string(i) + "]"));
      }
      spec.dim = spec.operands.front().dim;
      break;
    }
  }
  for (const BodySpec& op : spec.operands) {
    if (op.dim != spec.dim) throw ParseError(path, "operand dimension mismatch");
  }
  return spec;
}

BodySpec BodySpec::parse(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("body", e.what());
  }
  return from_json(j);
}

nlohmann::json BodySpec::to_json() const {
  nlohmann::json j;
  for (const auto& [name, k] : kKindNames) {
    if (k == kind) j["kind"] = name;
  }
  auto points_json = [](const std::vector<Vec>& ps) {
    nlohmann::json arr = nlohmann::json::array();
    for (const Vec& p : ps) arr.push_back(vector_to_json(p));
    return arr;
  };
  switch (kind) {
    case Kind::Vertices:
      j["points"] = points_json(points);
      if (symmetrize) j["symmetrize"] = true;
      break;
    case Kind::Cube:
    case Kind::CrossPolytope:
      j["dim"] = dim;
      break;
    case Kind::Box: {
      Vec h(static_cast<Eigen::Index>(halfSides.size()));
      for (std::size_t i = 0; i < halfSides.size(); ++i) h[static_cast<Eigen::Index>(i)] = halfSides[i];
      j["halfSides"] = vector_to_json(h);
      break;
    }
    case Kind::Segment:
      j["vector"] = vector_to_json(vector);
      break;
    case Kind::Square2d:
      j["dim"] = dim;
      j["i"] = first + 1;
      j["j"] = second + 1;
      break;
    case Kind::Zonotope:
      j["generators"] = points_json(points);
      break;
    case Kind::Cylinder:
      j["base"] = operands.front().to_json();
      j["axis"] = vector_to_json(vector);
      break;
    case Kind::LinearImage: {
      std::vector<Vec> rows;
      for (Eigen::Index r = 0; r < matrix.rows(); ++r) rows.push_back(matrix.row(r).transpose());
      j["base"] = operands.front().to_json();
      j["matrix"] = points_json(rows);
      break;
    }
    case Kind::MinkowskiSum:
      j["operands"] = nlohmann::json::array();
      for (const BodySpec& op : operands) j["operands"].push_back(op.to_json());
      break;
  }
  return j;
}

BodySpec BodySpec::of(const Polytope& p) {
  BodySpec spec;
  spec.kind = Kind::Vertices;
  spec.dim = p.dim();
  spec.points = p.vertices();
  return spec;
}

Polytope construct(const BodySpec& spec) {
  Polytope out = [&] {
    switch (spec.kind) {
      case BodySpec::Kind::Vertices: {
        std::vector<Vec> points = spec.points;
        if (spec.symmetrize) {
          for (const Vec& p : spec.points) points.push_back(-p);
        }
        return Polytope::span_hull(std::move(points));
      }
      case BodySpec::Kind::Cube:
        return cube(spec.dim);
      case BodySpec::Kind::Box:
        return box(spec.halfSides);
      case BodySpec::Kind::CrossPolytope:
        return cross_polytope(spec.dim);
      case BodySpec::Kind::Segment:
        return segment(spec.vector);
      case BodySpec::Kind::Square2d:
        return square2d(spec.dim, spec.first, spec.second);
      case BodySpec::Kind::Zonotope:
        return zonotope(spec.points);
      case BodySpec::Kind::Cylinder:
        return cylinder(construct(spec.operands.front()), spec.vector);
      case BodySpec::Kind::LinearImage:
        return linear_image(construct(spec.operands.front()), spec.matrix);
      case BodySpec::Kind::MinkowskiSum: {
        Polytope sum = construct(spec.operands.front());
        for (std::size_t i = 1; i < spec.operands.size(); ++i) sum = minkowski_sum(sum, construct(spec.operands[i]));
        return sum;
      }
    }
    throw DegenerateInput("unknown body kind");
  }();
  require_symmetric(out);
  return out;
}

Polytope construct_body(const BodySpec& spec) {
  Polytope out = construct(spec);
  if (!out.full_dimensional()) throw DegenerateInput("body is not full-dimensional");
  return out;
}

SemiNorm seminorm_from_json(const nlohmann::json& j, const std::string& path) {
  if (!j.is_object()) throw ParseError(path, "expected an object");
  const auto& form_field = field(j, "form", path);
  if (!form_field.is_string()) throw ParseError(path + ".form", "expected \"max\" or \"sum\"");
  const std::string form = form_field.get<std::string>();
  if (form != "max" && form != "sum") throw ParseError(path + ".form", "expected \"max\" or \"sum\"");
  const std::vector<Vec> vectors = points_from_json(field(j, "vectors", path), path + ".vectors");
  if (form == "max") {
    if (j.contains("weights")) throw ParseError(path + ".weights", "max-form semi-norms take no weights");
    return SemiNorm::max_form(vectors);
  }
  std::vector<Rational> weights(vectors.size(), Rational(1));
  if (j.contains("weights")) {
    const auto& w = j.at("weights");
    if (!w.is_array() || w.size() != vectors.size()) {
      throw ParseError(path + ".weights", "expected one weight per vector");
    }
    for (std::size_t i = 0; i < w.size(); ++i) {
      weights[i] = rational_from_json(w[i], path + ".weights[" + std::to_string(i) + "]");
      if (weights[i] < 0) throw ParseError(path + ".weights[" + std::to_string(i) + "]", "weight is negative");
    }
  }
  return SemiNorm::sum_form(std::move(weights), vectors);
}

nlohmann::json seminorm_to_json(const SemiNorm& norm) {
  nlohmann::json j;
  j["form"] = norm.form() == SemiNorm::Form::Max ? "max" : "sum";
  j["vectors"] = nlohmann::json::array();
  for (const Vec& v : norm.vectors()) j["vectors"].push_back(vector_to_json(v));
  if (norm.form() == SemiNorm::Form::Sum) {
    j["weights"] = nlohmann::json::array();
    for (const Rational& w : norm.weights()) j["weights"].push_back(to_string(w));
  }
  return j;
}

}  // namespace logbm
