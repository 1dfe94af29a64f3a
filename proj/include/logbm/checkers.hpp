#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "logbm/functionals.hpp"
#include "logbm/polytope.hpp"
#include "logbm/radical.hpp"

namespace logbm {

/// Proved statements must hold on every valid input; probes evaluate
/// conditional or open statements and only report; demos reproduce a
/// known outcome.
enum class CheckKind { Proved, Probe, Demo };
enum class Mode { Exact, Float };
enum class Status { Ok, Violation, InternalInconsistency, CounterexampleCandidate };

using Value = std::variant<Rational, RadicalScalar, double>;

double to_double(const Value& v);
/// "p/q", "q*sqrt(g)" or a round-trip decimal.
std::string to_string(const Value& v);
std::string to_string(CheckKind k);
std::string to_string(Mode m);
std::string to_string(Status s);

inline constexpr double kIdentityTolerance = 1e-9;
inline constexpr double kInequalityTolerance = 1e-7;

struct CheckOptions {
  Mode mode = Mode::Exact;
  /// Relative tolerance for float mode; the identity or inequality default
  /// applies when unset.
  std::optional<double> tolerance;
};

struct CheckReport {
  std::string checkName;
  CheckKind kind = CheckKind::Proved;
  Mode mode = Mode::Exact;
  Value lhs = Rational(0);
  Value rhs = Rational(0);
  bool holds = true;
  bool equality = false;
  /// (rhs - lhs) / rhs, exact when representable; unset when rhs <= 0.
  std::optional<Value> relativeMargin;
  /// Verdict of the combinatorial equality detector, where one exists.
  std::optional<bool> structuralEquality;
  double tolerance = 0;
  Status status = Status::Ok;
  std::map<std::string, std::string> details;
  std::vector<CheckReport> subchecks;
  /// Bodies and parameters reproducing a counterexample candidate.
  nlohmann::json instance;

  /// This report and all nested subchecks, depth first.
  std::vector<const CheckReport*> flatten() const;
  /// True when this report or a subcheck is a Violation or
  /// InternalInconsistency.
  bool has_failure() const;
};

// Every checker below is pure. Exact mode decides with zero tolerance;
// float mode evaluates the same functionals in double precision from the
// exact facet data and decides lhs <= rhs + tol * scale.

/// sum ||a||^2/s <= (sum ||a||)^2 / |K|, with equality exactly when the
/// semi-norm is |<., v>| up to scale and K is a cylinder with axis v (or the
/// semi-norm vanishes).
CheckReport check_seminorm_surface(const Polytope& k, const SemiNorm& norm, const CheckOptions& opts = {});

/// Local log-BM inequality for M = [-v, v], plus V_2(K, [-v, v]) = 0.
/// Equality exactly for cylinders with axis v.
CheckReport check_segment_logbm(const Polytope& k, const Vec& v, const CheckOptions& opts = {});

/// Probe of n(n-1)V_2 + sum h_M(a)^2/s <= n^2 V_1^2/|K| with the proved
/// Minkowski and Cauchy-Schwarz side checks as subchecks.
CheckReport check_logbm_conjecture(const Polytope& k, const Polytope& m, const CheckOptions& opts = {});
CheckReport check_logbm_conjecture(const Polytope& k, const Polytope& m, const MixedVolumeVector& mv,
                                   const CheckOptions& opts = {});

/// V_2 <= V_1^2 / |K|.
CheckReport check_minkowski_second(const Polytope& k, const Polytope& m, const MixedVolumeVector& mv,
                                   const CheckOptions& opts = {});
/// |K|^(n-1) |M| <= V_1^n.
CheckReport check_minkowski_first(const Polytope& k, const Polytope& m, const MixedVolumeVector& mv,
                                  const CheckOptions& opts = {});
/// n V_1^2 / |K| <= sum h_M(a)^2/s.
CheckReport check_holder(const Polytope& k, const Polytope& m, const MixedVolumeVector& mv,
                         const CheckOptions& opts = {});

/// gap(K, M + tK) = gap(K, M) for each t.
CheckReport check_invariance(const Polytope& k, const Polytope& m, const std::vector<Rational>& ts,
                             const CheckOptions& opts = {});

/// 1/h_K(u/|u|) <= 2 |K cap u^perp| / |K|; equality exactly for cylinders
/// whose base lies in u^perp.
CheckReport check_section_bound(const Polytope& k, const Vec& u, const CheckOptions& opts = {});

/// |<u,v>| / h_K(u) <= sum |<a,v>| / |K|; equality exactly for cylinders with
/// axis along v and base in u^perp.
CheckReport check_direction_bound(const Polytope& k, const Vec& u, const Vec& v, const CheckOptions& opts = {});

/// sum ||a||^2/s <= (2B/r) (sum ||a||)^2 / |K| with B = diam/pi bounding the
/// Poincare constant of a convex body and r the inradius. Float only.
CheckReport check_poincare_bound(const Polytope& k, const SemiNorm& norm, double tol = kInequalityTolerance);

/// log-BM left side <= ((2n-1)/n) right side, exactly; the Poincare-bound
/// factor (n-1)/n + min(1, 2B/r) is a float subcheck.
CheckReport check_factor_bound(const Polytope& k, const Polytope& m, const CheckOptions& opts = {});
CheckReport check_factor_bound(const Polytope& k, const Polytope& m, const MixedVolumeVector& mv,
                               const CheckOptions& opts = {});

/// n(n-1) V_2(K, [-e_i,e_i] + [-e_j,e_j]) = 8 |K|span(e_i,e_j)^perp| (proved)
/// with the resulting coordinate-square log-BM inequality as a probe subcheck.
/// Indices are 0-based; requires n >= 3.
CheckReport check_square_identity(const Polytope& k, int i, int j, const CheckOptions& opts = {});

/// Pairwise sufficient condition for zonoidal M, for unit v and w:
///   4|K|span(v,w)^perp| + sum |<a,v>||<a,w>|/s <= 2 |K|v^perp| |K|w^perp| / |K|.
/// A subcheck evaluates the same left side against the constant 4, the
/// remainder left after splitting the coordinate-square inequality term by
/// term. Both are probes.
CheckReport check_pair_probe(const Polytope& k, const Vec& v, const Vec& w, const CheckOptions& opts = {});

/// n(n-1) V_2(K, Z) equals the sum over pairs of 2 n(n-1) V(K.., [-v_i,v_i],
/// [-v_j,v_j]) (proved), with each pair term compared against
/// 4 |v_i ^ v_j| |K|span(v_i,v_j)^perp| as a reported subcheck.
CheckReport check_zonotope_decomposition(const Polytope& k, const std::vector<Vec>& generators,
                                         const CheckOptions& opts = {});

/// With lambda M the largest copy of M inside K: sum h(a)^2/s <= sum h(a)
/// (proved), and Minkowski's first inequality for lambda M as a subcheck.
/// Reports the volume ratio (|K| / |lambda M|)^(1/n) next to sqrt(n) log n.
CheckReport check_containment_chain(const Polytope& k, const Polytope& m, const CheckOptions& opts = {});

/// (1/2) sum |<a, v>| = |v| |K|v^perp|.
CheckReport check_cauchy_consistency(const Polytope& k, const Vec& v, const CheckOptions& opts = {});

/// The indicator of one antipodal facet pair of the cross-polytope is not a
/// semi-norm, and sum f^2 <= (n / #facets) (sum f)^2 fails for n > 2.
CheckReport demo_indicator_failure(int n);

enum class Relation { LessEqual, Equal };

/// Exact comparison report for derived statements assembled by scenarios.
CheckReport exact_comparison(std::string name, CheckKind kind, const Rational& lhs, const Rational& rhs,
                             Relation rel);
/// The same in double precision, decided with the float-mode tolerances.
CheckReport float_comparison(std::string name, CheckKind kind, double lhs, double rhs, Relation rel,
                             const CheckOptions& opts = {Mode::Float, std::nullopt});

/// Combinatorial detectors on merged facet normals.
struct CylinderInfo {
  bool cylinder = false;
  std::optional<Vec> capNormal;  // the only normal direction not orthogonal to the axis
};
CylinderInfo detect_cylinder(const Polytope& k, const Vec& axis);
/// True when u is a facet normal and the remaining normals span a hyperplane.
bool detect_cylinder_with_cap(const Polytope& k, const Vec& u);

/// Canonical check names accepted by the harness and the CLI.
const std::vector<std::string>& check_names();

}  // namespace logbm
