#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "logbm/checkers.hpp"

namespace logbm {

/// Where the second body M of a trial comes from.
enum class MSource { RandomPolytope, Zonotope, CrossPolytope, ScaledK, Segment };
/// Which semi-norms the surface checks draw.
enum class NormFamily { MaxForm, SumForm, Mixed };

std::string to_string(MSource s);
std::string to_string(NormFamily f);

struct CampaignConfig {
  std::vector<int> dims{2, 3};
  int trialsPerDim = 100;
  /// Per-dimension override of trialsPerDim.
  std::map<int, int> trialsByDim;
  /// Points drawn for K; 0 picks n + 2.
  int pointBudget = 0;
  int coordBound = 6;
  std::uint64_t seed = 1;
  std::vector<std::string> checks;
  Mode mode = Mode::Exact;
  std::optional<double> tolerance;
  NormFamily normFamily = NormFamily::Mixed;
  /// Most vectors in a random semi-norm.
  int normTerms = 3;
  /// Cycled by trial index.
  std::vector<MSource> mSources{MSource::RandomPolytope, MSource::Zonotope, MSource::CrossPolytope,
                                MSource::ScaledK, MSource::Segment};
  /// Every cylinderEvery-th trial uses a cylinder for K (0 disables).
  int cylinderEvery = 4;
  /// Worker cap; 0 means hardware concurrency. LOGBM_THREADS lowers it further.
  unsigned threads = 0;

  int trials_for(int n) const;
  nlohmann::json to_json() const;
  /// Missing fields keep their defaults. Throws ParseError.
  static CampaignConfig from_json(const nlohmann::json& j);
};

/// The zero-violation gate over dimensions 2..5 with every proved check and
/// the conjecture probes.
CampaignConfig default_campaign();

struct CheckStats {
  long trials = 0;
  long violations = 0;
  long internalInconsistencies = 0;
  long counterexampleCandidates = 0;
  long equalityCount = 0;
  /// Equality flag and structural detector disagreed (counted in exact mode
  /// as internal inconsistencies too).
  long structuralDisagreements = 0;
  std::optional<double> minRelativeMargin;
};

/// A reproducible failing or suspicious instance.
struct TrialRecord {
  int dim = 0;
  int trial = 0;
  std::string checkName;
  std::string message;
  nlohmann::json instance;
  nlohmann::json report;
};

struct MarginRow {
  int dim = 0;
  int trial = 0;
  std::string checkName;
  double margin = 0;
  bool equality = false;
  std::optional<bool> structuralEquality;
};

struct CampaignSummary {
  std::map<std::string, CheckStats> perCheck;
  std::vector<TrialRecord> counterexampleCandidates;
  /// Violations of proved checks, internal inconsistencies and unexpected
  /// errors, each with its serialized instance.
  std::vector<TrialRecord> failures;
  std::vector<MarginRow> margins;
  long trials = 0;
  double wallTimeSeconds = 0;

  bool clean() const { return failures.empty(); }
  /// Everything except wallTimeSeconds; margins only when collected.
  nlohmann::json to_json() const;
};

/// Seed of one trial, derived from the campaign seed, the dimension and the
/// trial index through std::seed_seq so that scheduling cannot matter.
std::uint64_t trial_seed(std::uint64_t seed, int n, int trial);

/// Worker count after applying the config cap and LOGBM_THREADS.
unsigned worker_count(unsigned requested);

/// With collect_margins the summary also carries every report's relative
/// margin, sorted ascending as in margin_study.
CampaignSummary run_campaign(const CampaignConfig& config, bool collect_margins = false);

/// Per-instance relative margins of every report in the campaign, sorted
/// ascending. Rows below kNearEqualityThreshold mark near-equality cases.
std::vector<MarginRow> margin_study(const CampaignConfig& config);
inline constexpr double kNearEqualityThreshold = 1e-6;

/// Re-runs the check that produced a serialized instance and returns the
/// report with the given name (possibly a subcheck).
CheckReport replay_instance(const std::string& check_name, const nlohmann::json& instance,
                            const CheckOptions& opts = {});

/// Symmetric hexagons H_e = conv{+-(1, 1-e), +-(1-e, 1), +-(1, -1)}, the
/// square at e = 0, and the prisms H_e x [-1, 1].
Polytope hexagon(const Rational& eps);
Polytope hexagon_prism(const Rational& eps);

struct HexagonRow {
  Rational eps;
  CheckReport square;  // coordinate-square identity with the aggregate probe
  CheckReport pair;    // pairwise probe with the term-by-term remainder
  bool aggregateHolds = false;
  bool remainderHolds = false;
};

struct HexagonScenario {
  std::vector<HexagonRow> rows;
  /// Some grid point has the aggregate inequality holding while the
  /// term-by-term remainder fails. When false the scenario is inconclusive.
  bool splitObserved = false;
};

std::vector<Rational> default_hexagon_grid();
HexagonScenario hexagon_scenario(const std::vector<Rational>& grid = default_hexagon_grid(),
                                 const CheckOptions& opts = {});

/// Cube identities for random half-side vectors phi:
///   n(n-1) V_2(cube, B_phi) = 2 * 2^n * sum_{i<j} phi_i phi_j,
///   V_2(cube, M) <= V_2(cube, B_phi) for M = conv(+-phi_i e_i) inside B_phi,
///   the local log-BM inequality on the cube in coordinate form, with
///   equality at M = B_phi.
/// Float mode fits the mixed volumes in double precision and compares with
/// the float tolerances.
struct CubeRemarkCase {
  int dim = 0;
  std::vector<Rational> phi;
  std::vector<CheckReport> reports;
};
std::vector<CubeRemarkCase> cube_remark_scenario(const std::vector<int>& dims, int random_cases,
                                                 std::uint64_t seed, const CheckOptions& opts = {});

}  // namespace logbm
