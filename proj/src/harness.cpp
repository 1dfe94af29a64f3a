#include "logbm/harness.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <random>
#include <thread>

#include "logbm/bodies.hpp"
#include "logbm/errors.hpp"
#include "logbm/linalg.hpp"
#include "logbm/report.hpp"

namespace logbm {

namespace {

const std::pair<const char*, MSource> kSourceNames[] = {
    {"randomPolytope", MSource::RandomPolytope}, {"zonotope", MSource::Zonotope},
    {"crossPolytope", MSource::CrossPolytope},   {"scaledK", MSource::ScaledK},
    {"segment", MSource::Segment},
};

const std::pair<const char*, NormFamily> kFamilyNames[] = {
    {"maxForm", NormFamily::MaxForm}, {"sumForm", NormFamily::SumForm}, {"mixed", NormFamily::Mixed}};

using Rng = std::mt19937_64;

int draw(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Vec random_vector(Rng& rng, int n, int bound) {
  Vec v(n);
  do {
    for (int i = 0; i < n; ++i) v[i] = draw(rng, -bound, bound);
  } while (v.isZero());
  return v;
}

Rational random_positive_rational(Rng& rng) { return Rational(draw(rng, 1, 9), draw(rng, 1, 5)); }

std::vector<Vec> random_independent(Rng& rng, int n, int count, int bound) {
  std::vector<Vec> out;
  while (static_cast<int>(out.size()) < count) {
    Vec v = random_vector(rng, n, bound);
    bool ok = true;
    for (const Vec& w : out) {
      if (rank(rows_to_matrix({v, w})) < 2) ok = false;
    }
    if (ok) out.push_back(std::move(v));
  }
  return out;
}

// Everything one trial needs, drawn in a fixed order from the trial seed.
struct Trial {
  int n = 0;
  int index = 0;
  Polytope k;
  bool isCylinder = false;
  Vec axis;
  Vec capNormal;
  MSource source = MSource::RandomPolytope;
  Polytope m;
  // M itself when full-dimensional, else M + B_1^n (containment needs a body).
  Polytope containmentM;
  bool containmentFattened = false;
  SemiNorm norm;
  Vec segmentDirection;
  Vec sectionDirection;
  Vec boundU;
  Vec boundV;
  int squareI = 0;
  int squareJ = 1;
  Vec pairV;
  Vec pairW;
  std::vector<Vec> generators;
  Vec cauchyDirection;

  nlohmann::json instance() const {
    nlohmann::json norm_json = nlohmann::json::array();
    for (std::size_t i = 0; i < norm.vectors().size(); ++i) {
      norm_json.push_back({{"weight", to_string(norm.weights()[i])}, {"vector", vector_to_json(norm.vectors()[i])}});
    }
    nlohmann::json gens = nlohmann::json::array();
    for (const Vec& g : generators) gens.push_back(vector_to_json(g));
    nlohmann::json j = {{"K", BodySpec::of(k).to_json()},
            {"M", BodySpec::of(m).to_json()},
            {"mSource", to_string(source)},
            {"norm", {{"form", norm.form() == SemiNorm::Form::Max ? "max" : "sum"}, {"terms", norm_json}}},
            {"segmentDirection", vector_to_json(segmentDirection)},
            {"sectionDirection", vector_to_json(sectionDirection)},
            {"u", vector_to_json(boundU)},
            {"v", vector_to_json(boundV)},
            {"square", {squareI + 1, squareJ + 1}},
            {"pair", {vector_to_json(pairV), vector_to_json(pairW)}},
            {"generators", gens},
            {"cauchyDirection", vector_to_json(cauchyDirection)}};
    if (containmentFattened) j["containmentM"] = BodySpec::of(containmentM).to_json();
    return j;
  }
};

Polytope random_cylinder(Rng& rng, int n, int bound, Vec& axis, Vec& cap) {
  for (int attempt = 0; attempt < kRandomRetryLimit; ++attempt) {
    const Vec w = random_vector(rng, n, 3);
    Mat row(1, n);
    row.row(0) = w.transpose();
    std::vector<Vec> basis;
    for (const Vec& b : nullspace(row)) basis.push_back(primitive_direction(b));
    std::vector<Vec> points;
    for (int p = 0; p < n + 1; ++p) {
      Vec x = Vec::Zero(n);
      for (const Vec& b : basis) x += Rational(draw(rng, -bound / 2 - 1, bound / 2 + 1)) * b;
      if (x.isZero()) continue;
      points.push_back(x);
      points.push_back(-x);
    }
    if (points.empty()) continue;
    const Polytope base = Polytope::span_hull(points);
    if (base.affine_dim() != n - 1) continue;
    Vec v = random_vector(rng, n, bound);
    if (v.dot(w) == 0) continue;
    axis = v;
    cap = canonical_direction(w);
    return cylinder(base, v);
  }
  throw RetryExhausted("no cylinder within the retry limit");
}

SemiNorm random_norm(Rng& rng, const CampaignConfig& cfg, int n, const Trial& t) {
  bool use_max = cfg.normFamily == NormFamily::MaxForm;
  if (cfg.normFamily == NormFamily::Mixed) use_max = draw(rng, 0, 1) == 0;
  const int terms = draw(rng, 1, std::max(1, cfg.normTerms));
  std::vector<Vec> vectors;
  std::vector<Rational> weights;
  const bool along_axis = t.isCylinder && draw(rng, 0, 1) == 0;
  for (int i = 0; i < terms; ++i) {
    vectors.push_back(along_axis ? Vec(t.axis * Rational(draw(rng, 1, 3))) : random_vector(rng, n, cfg.coordBound));
    weights.push_back(random_positive_rational(rng));
  }
  if (use_max) return SemiNorm::max_form(std::move(vectors));
  return SemiNorm::sum_form(std::move(weights), std::move(vectors));
}

Polytope random_m(Rng& rng, const CampaignConfig& cfg, int n, MSource source, const Polytope& k) {
  switch (source) {
    case MSource::RandomPolytope:
      return random_symmetric_polytope(n, n + 1, rng(), cfg.coordBound);
    case MSource::Zonotope: {
      std::vector<Vec> gens;
      const int count = draw(rng, 1, n + 1);
      for (int i = 0; i < count; ++i) gens.push_back(random_vector(rng, n, 3));
      return zonotope(gens);
    }
    case MSource::CrossPolytope: {
      Mat t(n, n);
      do {
        for (int r = 0; r < n; ++r) {
          for (int c = 0; c < n; ++c) t(r, c) = draw(rng, -2, 2);
        }
      } while (determinant(t) == 0);
      return linear_image(cross_polytope(n), t);
    }
    case MSource::ScaledK:
      return scale(k, random_positive_rational(rng));
    case MSource::Segment:
      return segment(random_vector(rng, n, cfg.coordBound));
  }
  throw DegenerateInput("unknown M source");
}

Vec facet_direction(Rng& rng, const Polytope& k) {
  const auto groups = normal_groups(k);
  return groups[static_cast<std::size_t>(draw(rng, 0, static_cast<int>(groups.size()) - 1))].direction;
}

Trial make_trial(const CampaignConfig& cfg, int n, int index) {
  Rng rng(trial_seed(cfg.seed, n, index));
  Trial t;
  t.n = n;
  t.index = index;
  const int budget = cfg.pointBudget > 0 ? cfg.pointBudget : n + 2;
  t.isCylinder = cfg.cylinderEvery > 0 && index % cfg.cylinderEvery == cfg.cylinderEvery - 1;
  if (t.isCylinder) {
    t.k = random_cylinder(rng, n, cfg.coordBound, t.axis, t.capNormal);
  } else {
    t.k = random_symmetric_polytope(n, budget, rng(), cfg.coordBound);
  }
  t.source = cfg.mSources[static_cast<std::size_t>(index) % cfg.mSources.size()];
  t.m = random_m(rng, cfg, n, t.source, t.k);
  t.containmentFattened = !t.m.full_dimensional();
  t.containmentM = t.containmentFattened ? minkowski_sum(t.m, cross_polytope(n)) : t.m;
  t.norm = random_norm(rng, cfg, n, t);

  const bool favour_axis = t.isCylinder && draw(rng, 0, 1) == 0;
  t.segmentDirection = favour_axis ? t.axis : random_vector(rng, n, cfg.coordBound);
  if (t.isCylinder && draw(rng, 0, 1) == 0) {
    t.sectionDirection = t.capNormal;
  } else {
    t.sectionDirection = draw(rng, 0, 1) == 0 ? facet_direction(rng, t.k) : random_vector(rng, n, cfg.coordBound);
  }
  if (favour_axis) {
    t.boundU = t.capNormal;
    t.boundV = t.axis;
  } else {
    t.boundU = draw(rng, 0, 1) == 0 ? facet_direction(rng, t.k) : random_vector(rng, n, cfg.coordBound);
    t.boundV = random_vector(rng, n, cfg.coordBound);
  }
  t.squareI = draw(rng, 0, n - 1);
  do {
    t.squareJ = draw(rng, 0, n - 1);
  } while (t.squareJ == t.squareI);
  if (draw(rng, 0, 1) == 0) {
    t.pairV = unit_vector(n, t.squareI);
    t.pairW = unit_vector(n, t.squareJ);
  } else {
    const auto pair = random_independent(rng, n, 2, 3);
    t.pairV = pair[0];
    t.pairW = pair[1];
  }
  t.generators = random_independent(rng, n, draw(rng, 2, 3), 2);
  t.cauchyDirection = random_vector(rng, n, cfg.coordBound);
  return t;
}

struct TrialOutcome {
  std::vector<CheckReport> reports;
  std::vector<TrialRecord> errors;
  nlohmann::json instance;
};

TrialOutcome run_trial(const CampaignConfig& cfg, int n, int index) {
  TrialOutcome out;
  const CheckOptions opts{cfg.mode, cfg.tolerance};
  auto record_error = [&](const std::string& name, const std::string& message) {
    TrialRecord rec;
    rec.dim = n;
    rec.trial = index;
    rec.checkName = name;
    rec.message = message;
    out.errors.push_back(std::move(rec));
  };

  Trial t;
  try {
    t = make_trial(cfg, n, index);
  } catch (const std::exception& e) {
    record_error("trial_generation", e.what());
    return out;
  }
  out.instance = t.instance();

  std::optional<MixedVolumeVector> mv;
  auto pair_mv = [&]() -> const MixedVolumeVector& {
    if (!mv) mv = mixed_volumes(t.k, t.m);
    return *mv;
  };
  const bool conjecture = std::find(cfg.checks.begin(), cfg.checks.end(), "logbm_conjecture") != cfg.checks.end();

  for (const std::string& name : cfg.checks) {
    try {
      if (name == "seminorm_surface") {
        out.reports.push_back(check_seminorm_surface(t.k, t.norm, opts));
      } else if (name == "segment_logbm") {
        out.reports.push_back(check_segment_logbm(t.k, t.segmentDirection, opts));
      } else if (name == "logbm_conjecture") {
        out.reports.push_back(check_logbm_conjecture(t.k, t.m, pair_mv(), opts));
      } else if (name == "minkowski_second" || name == "minkowski_first" || name == "holder") {
        // Already reported as subchecks of the conjecture probe.
        if (conjecture) continue;
        if (name == "minkowski_second") out.reports.push_back(check_minkowski_second(t.k, t.m, pair_mv(), opts));
        if (name == "minkowski_first") out.reports.push_back(check_minkowski_first(t.k, t.m, pair_mv(), opts));
        if (name == "holder") out.reports.push_back(check_holder(t.k, t.m, pair_mv(), opts));
      } else if (name == "invariance") {
        out.reports.push_back(check_invariance(t.k, t.m, {Rational(1), Rational(2), Rational(3)}, opts));
      } else if (name == "section_bound") {
        out.reports.push_back(check_section_bound(t.k, t.sectionDirection, opts));
      } else if (name == "direction_bound") {
        out.reports.push_back(check_direction_bound(t.k, t.boundU, t.boundV, opts));
      } else if (name == "poincare_bound") {
        out.reports.push_back(check_poincare_bound(t.k, t.norm, cfg.tolerance.value_or(kInequalityTolerance)));
      } else if (name == "factor_bound") {
        out.reports.push_back(check_factor_bound(t.k, t.m, pair_mv(), opts));
      } else if (name == "square_identity") {
        if (n < 3) continue;
        out.reports.push_back(check_square_identity(t.k, t.squareI, t.squareJ, opts));
      } else if (name == "pair_probe") {
        if (n < 3) continue;
        out.reports.push_back(check_pair_probe(t.k, t.pairV, t.pairW, opts));
      } else if (name == "zonotope_decomposition") {
        if (n < 3) continue;
        out.reports.push_back(check_zonotope_decomposition(t.k, t.generators, opts));
      } else if (name == "containment_chain") {
        out.reports.push_back(check_containment_chain(t.k, t.containmentM, opts));
      } else if (name == "cauchy_consistency") {
        out.reports.push_back(check_cauchy_consistency(t.k, t.cauchyDirection, opts));
      } else {
        record_error(name, "unknown check");
      }
    } catch (const InternalInconsistency& e) {
      record_error(name, std::string("internal inconsistency: ") + e.what());
    } catch (const std::exception& e) {
      record_error(name, e.what());
    }
  }
  return out;
}

void merge(CampaignSummary& summary, TrialOutcome&& outcome, int n, int index, bool keep_margins) {
  ++summary.trials;
  for (TrialRecord& rec : outcome.errors) {
    rec.instance = outcome.instance;
    summary.perCheck[rec.checkName].internalInconsistencies += 1;
    summary.failures.push_back(std::move(rec));
  }
  for (const CheckReport& top : outcome.reports) {
    for (const CheckReport* r : top.flatten()) {
      CheckStats& stats = summary.perCheck[r->checkName];
      ++stats.trials;
      if (r->equality) ++stats.equalityCount;
      if (r->structuralEquality && *r->structuralEquality != r->equality) ++stats.structuralDisagreements;
      if (r->relativeMargin) {
        const double margin = to_double(*r->relativeMargin);
        if (!stats.minRelativeMargin || margin < *stats.minRelativeMargin) stats.minRelativeMargin = margin;
        if (keep_margins) {
          summary.margins.push_back({n, index, r->checkName, margin, r->equality, r->structuralEquality});
        }
      }
      TrialRecord rec;
      rec.dim = n;
      rec.trial = index;
      rec.checkName = r->checkName;
      switch (r->status) {
        case Status::Ok:
          continue;
        case Status::Violation:
          ++stats.violations;
          rec.message = "violation of a proved statement";
          break;
        case Status::InternalInconsistency:
          ++stats.internalInconsistencies;
          rec.message = "equality flag and structural detector disagree";
          break;
        case Status::CounterexampleCandidate:
          ++stats.counterexampleCandidates;
          rec.message = "negative gap";
          break;
      }
      rec.instance = r->instance.is_null() ? outcome.instance : r->instance;
      rec.report = report_to_json(*r);
      rec.report.erase("subchecks");
      if (r->status == Status::CounterexampleCandidate) {
        summary.counterexampleCandidates.push_back(std::move(rec));
      } else {
        summary.failures.push_back(std::move(rec));
      }
    }
  }
}

nlohmann::json record_json(const TrialRecord& r) {
  nlohmann::json j = {{"dim", r.dim}, {"trial", r.trial}, {"checkName", r.checkName}, {"message", r.message}};
  j["instance"] = r.instance;
  if (!r.report.is_null()) j["report"] = r.report;
  return j;
}

CampaignSummary campaign(const CampaignConfig& config, bool keep_margins) {
  if (config.mSources.empty()) throw DegenerateInput("campaign needs at least one M source");
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::pair<int, int>> jobs;
  for (int n : config.dims) {
    if (n < 2) throw DegenerateInput("campaign dimensions must be >= 2");
    for (int i = 0; i < config.trials_for(n); ++i) jobs.emplace_back(n, i);
  }
  std::vector<TrialOutcome> outcomes(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t j = next++; j < jobs.size(); j = next++) {
      outcomes[j] = run_trial(config, jobs[j].first, jobs[j].second);
    }
  };
  const unsigned workers = std::min<std::size_t>(worker_count(config.threads), std::max<std::size_t>(1, jobs.size()));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (std::thread& th : pool) th.join();

  CampaignSummary summary;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    merge(summary, std::move(outcomes[j]), jobs[j].first, jobs[j].second, keep_margins);
  }
  summary.wallTimeSeconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

}  // namespace

std::string to_string(MSource s) {
  for (const auto& [name, value] : kSourceNames) {
    if (value == s) return name;
  }
  return "?";
}

std::string to_string(NormFamily f) {
  for (const auto& [name, value] : kFamilyNames) {
    if (value == f) return name;
  }
  return "?";
}

int CampaignConfig::trials_for(int n) const {
  const auto it = trialsByDim.find(n);
  return it == trialsByDim.end() ? trialsPerDim : it->second;
}

nlohmann::json CampaignConfig::to_json() const {
  nlohmann::json j;
  j["dims"] = dims;
  j["trialsPerDim"] = trialsPerDim;
  nlohmann::json by_dim = nlohmann::json::object();
  for (const auto& [n, count] : trialsByDim) by_dim[std::to_string(n)] = count;
  j["trialsByDim"] = by_dim;
  j["pointBudget"] = pointBudget;
  j["coordBound"] = coordBound;
  j["seed"] = seed;
  j["checks"] = checks;
  j["mode"] = logbm::to_string(mode);
  j["tolerance"] = tolerance ? nlohmann::json(*tolerance) : nlohmann::json(nullptr);
  j["normFamily"] = logbm::to_string(normFamily);
  j["normTerms"] = normTerms;
  j["mSources"] = nlohmann::json::array();
  for (MSource s : mSources) j["mSources"].push_back(logbm::to_string(s));
  j["cylinderEvery"] = cylinderEvery;
  j["prng"] = std::string("mt19937_64 seeded by seed_seq(seed, n, trial); ") + kRandomAlgorithm;
  return j;
}

CampaignConfig CampaignConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ParseError("config", "expected an object");
  static const char* known[] = {"dims",       "trialsPerDim", "trialsByDim", "pointBudget", "coordBound",
                                "seed",       "checks",       "mode",        "tolerance",   "normFamily",
                                "normTerms",  "mSources",     "cylinderEvery", "threads",   "prng"};
  for (const auto& [key, value] : j.items()) {
    if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) ==
        std::end(known)) {
      throw ParseError("config." + key, "unknown field");
    }
  }
  CampaignConfig c;
  try {
    if (j.contains("dims")) c.dims = j.at("dims").get<std::vector<int>>();
    if (j.contains("trialsPerDim")) c.trialsPerDim = j.at("trialsPerDim").get<int>();
    if (j.contains("trialsByDim")) {
      for (const auto& [key, value] : j.at("trialsByDim").items()) c.trialsByDim[std::stoi(key)] = value.get<int>();
    }
    if (j.contains("pointBudget")) c.pointBudget = j.at("pointBudget").get<int>();
    if (j.contains("coordBound")) c.coordBound = j.at("coordBound").get<int>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("checks")) c.checks = j.at("checks").get<std::vector<std::string>>();
    if (j.contains("mode")) {
      const std::string m = j.at("mode").get<std::string>();
      if (m != "exact" && m != "float") throw ParseError("config.mode", "expected exact or float");
      c.mode = m == "exact" ? Mode::Exact : Mode::Float;
    }
    if (j.contains("tolerance") && !j.at("tolerance").is_null()) c.tolerance = j.at("tolerance").get<double>();
    if (j.contains("normFamily")) {
      const std::string f = j.at("normFamily").get<std::string>();
      bool found = false;
      for (const auto& [name, value] : kFamilyNames) {
        if (f == name) {
          c.normFamily = value;
          found = true;
        }
      }
      if (!found) throw ParseError("config.normFamily", "unknown family \"" + f + "\"");
    }
    if (j.contains("normTerms")) c.normTerms = j.at("normTerms").get<int>();
    if (j.contains("mSources")) {
      c.mSources.clear();
      for (const auto& s : j.at("mSources")) {
        const std::string name = s.get<std::string>();
        bool found = false;
        for (const auto& [known_name, value] : kSourceNames) {
          if (name == known_name) {
            c.mSources.push_back(value);
            found = true;
          }
        }
        if (!found) throw ParseError("config.mSources", "unknown source \"" + name + "\"");
      }
    }
    if (j.contains("cylinderEvery")) c.cylinderEvery = j.at("cylinderEvery").get<int>();
    if (j.contains("threads")) c.threads = j.at("threads").get<unsigned>();
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("config", e.what());
  }
  for (const std::string& name : c.checks) {
    const auto& names = check_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw ParseError("config.checks", "unknown check \"" + name + "\"");
    }
  }
  return c;
}

CampaignConfig default_campaign() {
  CampaignConfig c;
  c.dims = {2, 3, 4, 5};
  c.trialsByDim = {{2, 1000}, {3, 1000}, {4, 300}, {5, 50}};
  c.checks = {"seminorm_surface", "segment_logbm",   "logbm_conjecture", "section_bound",
              "direction_bound",  "containment_chain", "factor_bound",   "poincare_bound",
              "square_identity"};
  return c;
}

nlohmann::json CampaignSummary::to_json() const {
  nlohmann::json j;
  j["trials"] = trials;
  j["perCheck"] = nlohmann::json::object();
  for (const auto& [name, s] : perCheck) {
    j["perCheck"][name] = {{"trials", s.trials},
                           {"violations", s.violations},
                           {"internalInconsistencies", s.internalInconsistencies},
                           {"counterexampleCandidates", s.counterexampleCandidates},
                           {"equalityCount", s.equalityCount},
                           {"structuralDisagreements", s.structuralDisagreements},
                           {"minRelativeMargin", s.minRelativeMargin ? nlohmann::json(*s.minRelativeMargin)
                                                                     : nlohmann::json(nullptr)}};
  }
  j["counterexampleCandidates"] = nlohmann::json::array();
  for (const TrialRecord& r : counterexampleCandidates) j["counterexampleCandidates"].push_back(record_json(r));
  j["failures"] = nlohmann::json::array();
  for (const TrialRecord& r : failures) j["failures"].push_back(record_json(r));
  if (!margins.empty()) {
    j["margins"] = nlohmann::json::array();
    for (const MarginRow& m : margins) {
      nlohmann::json row{{"dim", m.dim}, {"trial", m.trial}, {"checkName", m.checkName}, {"margin", m.margin},
                         {"equality", m.equality}, {"nearEquality", m.margin < kNearEqualityThreshold}};
      if (m.structuralEquality) row["structuralEquality"] = *m.structuralEquality;
      j["margins"].push_back(std::move(row));
    }
  }
  return j;
}

std::uint64_t trial_seed(std::uint64_t seed, int n, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(trial)};
  std::array<std::uint32_t, 2> words{};
  seq.generate(words.begin(), words.end());
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

unsigned worker_count(unsigned requested) {
  unsigned count = requested > 0 ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("LOGBM_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap >= 1) count = std::min<unsigned>(count, static_cast<unsigned>(cap));
  }
  return count;
}

CampaignSummary run_campaign(const CampaignConfig& config, bool collect_margins) {
  CampaignSummary summary = campaign(config, collect_margins);
  std::stable_sort(summary.margins.begin(), summary.margins.end(),
                   [](const MarginRow& a, const MarginRow& b) { return a.margin < b.margin; });
  return summary;
}

std::vector<MarginRow> margin_study(const CampaignConfig& config) { return run_campaign(config, true).margins; }

CheckReport replay_instance(const std::string& check_name, const nlohmann::json& instance, const CheckOptions& opts) {
  if (!instance.is_object() || !instance.contains("K")) throw ParseError("instance", "missing K");
  const Polytope k = construct_body(BodySpec::from_json(instance.at("K"), "instance.K"));
  CheckReport top;
  if (check_name == "logbm_conjecture" || check_name == "minkowski_second" || check_name == "minkowski_first" ||
      check_name == "holder") {
    const Polytope m = construct(BodySpec::from_json(instance.at("M"), "instance.M"));
    top = check_logbm_conjecture(k, m, opts);
  } else if (check_name == "square_identity" || check_name == "square_probe") {
    top = check_square_identity(k, instance.at("i").get<int>() - 1, instance.at("j").get<int>() - 1, opts);
  } else if (check_name == "pair_probe" || check_name == "pair_probe_signed" || check_name == "pair_remainder") {
    top = check_pair_probe(k, vector_from_json(instance.at("v"), "instance.v"),
                           vector_from_json(instance.at("w"), "instance.w"), opts);
  } else if (check_name == "zonotope_decomposition" || check_name == "zonotope_pair_identity") {
    std::vector<Vec> gens;
    for (const auto& g : instance.at("generators")) gens.push_back(vector_from_json(g, "instance.generators"));
    top = check_zonotope_decomposition(k, gens, opts);
  } else {
    throw ParseError("checkName", "no replay for \"" + check_name + "\"");
  }
  for (const CheckReport* r : top.flatten()) {
    if (r->checkName == check_name) return *r;
  }
  throw InternalInconsistency("replayed check did not produce " + check_name);
}

Polytope hexagon(const Rational& eps) {
  if (eps < 0 || eps >= 2) throw DegenerateInput("hexagon parameter must lie in [0, 2)");
  std::vector<Vec> points;
  for (const auto& [x, y] : {std::pair<Rational, Rational>{1, 1 - eps}, {1 - eps, 1}, {1, -1}}) {
    Vec p(2);
    p << x, y;
    points.push_back(p);
    points.push_back(-p);
  }
  return Polytope::hull(std::move(points));
}

Polytope hexagon_prism(const Rational& eps) {
  const Polytope h = hexagon(eps);
  std::vector<Vec> points;
  for (const Vec& v : h.vertices()) {
    for (int s : {-1, 1}) {
      Vec p(3);
      p << v[0], v[1], Rational(s);
      points.push_back(p);
    }
  }
  return Polytope::hull(std::move(points));
}

std::vector<Rational> default_hexagon_grid() {
  return {Rational(0), Rational(1, 100), Rational(1, 20), Rational(1, 10), Rational(1, 5), Rational(1, 3),
          Rational(1, 2), Rational(1)};
}

HexagonScenario hexagon_scenario(const std::vector<Rational>& grid, const CheckOptions& opts) {
  HexagonScenario out;
  for (const Rational& eps : grid) {
    const Polytope k = hexagon_prism(eps);
    HexagonRow row;
    row.eps = eps;
    row.square = check_square_identity(k, 0, 1, opts);
    row.pair = check_pair_probe(k, unit_vector(3, 0), unit_vector(3, 1), opts);
    row.square.details["eps"] = to_string(eps);
    row.pair.details["eps"] = to_string(eps);
    for (const CheckReport* r : row.square.flatten()) {
      if (r->checkName == "square_probe") row.aggregateHolds = r->holds;
    }
    for (const CheckReport* r : row.pair.flatten()) {
      if (r->checkName == "pair_remainder") row.remainderHolds = r->holds;
    }
    if (row.aggregateHolds && !row.remainderHolds) out.splitObserved = true;
    out.rows.push_back(std::move(row));
  }
  return out;
}

namespace {

CheckReport compare(const std::string& name, const Rational& lhs, const Rational& rhs, Relation rel,
                    const CheckOptions&) {
  return exact_comparison(name, CheckKind::Proved, lhs, rhs, rel);
}

CheckReport compare(const std::string& name, double lhs, double rhs, Relation rel, const CheckOptions& opts) {
  return float_comparison(name, CheckKind::Proved, lhs, rhs, rel, opts);
}

template <typename S>
void cube_remark_reports(CubeRemarkCase& rc, const Polytope& k, const Polytope& b, const Polytope& inner,
                         const CheckOptions& opts) {
  const int n = rc.dim;
  auto fit = [&](const Polytope& m) {
    if constexpr (std::is_same_v<S, Rational>) {
      return mixed_volumes(k, m);
    } else {
      return fit_mixed_volumes<double>(volume_samples(k, m));
    }
  };
  S sum(0);
  S sum_sq(0);
  S pairs(0);
  for (int i = 0; i < n; ++i) {
    const S p = scalar_cast<S>(rc.phi[i]);
    sum += p;
    sum_sq += p * p;
    for (int j = i + 1; j < n; ++j) pairs += p * scalar_cast<S>(rc.phi[j]);
  }
  const S corner(1 << n);
  const S nn(n * (n - 1));
  const auto mvb = fit(b);
  const auto mvi = fit(inner);

  CheckReport identity = compare("cube_mixed_identity", S(nn * mvb[2]), S(S(2) * corner * pairs), Relation::Equal, opts);
  identity.details["orderedPairReading"] = to_string(Value(S(S(4) * corner * pairs)));
  rc.reports.push_back(std::move(identity));
  rc.reports.push_back(compare("cube_monotonicity", mvi[2], mvb[2], Relation::LessEqual, opts));

  for (const auto& [label, m, mv] :
       {std::tuple<const char*, const Polytope&, const MixedVolumes<S>&>{"box", b, mvb}, {"crossPolytope", inner, mvi}}) {
    const S lhs = nn * mv[2] + corner * sum_sq;
    const S rhs = corner * sum * sum;
    CheckReport logbm = compare("cube_logbm", lhs, rhs, Relation::LessEqual, opts);
    logbm.details["M"] = label;
    const auto general = logbm_terms(facet_set<S>(k), vertex_set<S>(m), mv);
    logbm.subchecks.push_back(compare("cube_coordinate_form", rhs, S(lhs + general.gap), Relation::Equal, opts));
    if (std::string(label) == "box" && !logbm.equality) {
      logbm.status = Status::InternalInconsistency;
      logbm.details["expected"] = "equality";
    }
    rc.reports.push_back(std::move(logbm));
  }
}

}  // namespace

std::vector<CubeRemarkCase> cube_remark_scenario(const std::vector<int>& dims, int random_cases, std::uint64_t seed,
                                                 const CheckOptions& opts) {
  std::vector<CubeRemarkCase> out;
  for (int n : dims) {
    if (n < 2) throw DegenerateInput("cube remark needs n >= 2");
    Rng rng(trial_seed(seed, n, 0));
    const Polytope k = cube(n);
    for (int c = 0; c <= random_cases; ++c) {
      CubeRemarkCase rc;
      rc.dim = n;
      for (int i = 0; i < n; ++i) rc.phi.push_back(c == 0 ? Rational(1) : random_positive_rational(rng));
      Mat diag = Mat::Zero(n, n);
      for (int i = 0; i < n; ++i) diag(i, i) = rc.phi[i];
      const Polytope b = box(rc.phi);
      const Polytope inner = linear_image(cross_polytope(n), diag);
      if (opts.mode == Mode::Exact) {
        cube_remark_reports<Rational>(rc, k, b, inner, opts);
      } else {
        cube_remark_reports<double>(rc, k, b, inner, opts);
      }
      out.push_back(std::move(rc));
    }
  }
  return out;
}

}  // namespace logbm
