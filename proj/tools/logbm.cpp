#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "logbm/bodies.hpp"
#include "logbm/checkers.hpp"
#include "logbm/errors.hpp"
#include "logbm/functionals.hpp"
#include "logbm/harness.hpp"
#include "logbm/report.hpp"

using namespace logbm;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitFailure = 3;

// Alternate check names used in external write-ups, mapped to the canonical
// ones.
const std::map<std::string, std::string>& check_aliases() {
  static const std::map<std::string, std::string> aliases{
      {"theorem_1_4", "seminorm_surface"},   {"theorem_1_7", "segment_logbm"},
      {"lemma_3_1", "section_bound"},        {"corollary_3_3", "direction_bound"},
      {"theorem_1_5", "poincare_bound"},     {"corollary_1_6", "factor_bound"},
      {"prop_6_1", "square_identity"},       {"airplane", "square_identity"},
      {"eq_square", "square_identity"},      {"eq-square", "square_identity"},
      {"prop_6_2_pair", "pair_probe"},       {"aggregation", "zonotope_decomposition"},
      {"prop_1_6_chain", "containment_chain"}, {"est_chain", "containment_chain"},
      {"est-chain", "containment_chain"},    {"claim_1_1", "invariance"}};
  return aliases;
}

std::string canonical_check(const std::string& name, const std::string& field) {
  const auto& names = check_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) return name;
  const auto it = check_aliases().find(name);
  if (it != check_aliases().end()) return it->second;
  throw ParseError(field, "unknown check \"" + name + "\"");
}

std::vector<std::string> canonical_checks(const std::vector<std::string>& names, const std::string& field) {
  std::vector<std::string> out;
  for (const std::string& n : names) {
    const std::string c = canonical_check(n, field);
    if (std::find(out.begin(), out.end(), c) == out.end()) out.push_back(c);
  }
  return out;
}

std::string read_file(const std::string& path, const std::string& field) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(field, "cannot read file \"" + path + "\"");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json parse_json(const std::string& text, const std::string& field) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(field, std::string("invalid JSON: ") + e.what());
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) out.push_back(item);
  return out;
}

Vec parse_vector(const std::string& text, const std::string& field) {
  const auto parts = split(text, ',');
  if (parts.empty()) throw ParseError(field, "expected comma-separated rationals");
  Vec v(static_cast<Eigen::Index>(parts.size()));
  for (std::size_t i = 0; i < parts.size(); ++i) {
    try {
      v[static_cast<Eigen::Index>(i)] = parse_rational(parts[i]);
    } catch (const ParseError& e) {
      throw ParseError(field + "[" + std::to_string(i) + "]", e.what());
    }
  }
  return v;
}

// "max:1,0;0,1" or "sum:2@1,0;0,1" (weight@vector, weight 1 when omitted),
// or an inline JSON object.
json parse_inline_norm(const std::string& text) {
  if (!text.empty() && text.front() == '{') return parse_json(text, "norm");
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw ParseError("norm", "expected max:<vectors> or sum:<vectors>");
  const std::string form = text.substr(0, colon);
  if (form != "max" && form != "sum") throw ParseError("norm.form", "expected max or sum");
  json j{{"form", form}, {"vectors", json::array()}};
  if (form == "sum") j["weights"] = json::array();
  const auto terms = split(text.substr(colon + 1), ';');
  for (std::size_t i = 0; i < terms.size(); ++i) {
    std::string term = terms[i];
    std::string weight = "1";
    const auto at = term.find('@');
    if (at != std::string::npos) {
      if (form == "max") throw ParseError("norm.weights", "max-form semi-norms take no weights");
      weight = term.substr(0, at);
      term = term.substr(at + 1);
    }
    json vec = json::array();
    for (const std::string& c : split(term, ',')) vec.push_back(c);
    j["vectors"].push_back(vec);
    if (form == "sum") j["weights"].push_back(weight);
  }
  return j;
}

struct OutputOptions {
  std::string format = "json";
  std::string out;
  bool timing = false;
};

void emit(const OutputOptions& o, const std::string& command, const json& invocation, const json& payload,
          const std::string& table, double seconds) {
  std::string text;
  if (o.format == "table") {
    text = table;
    if (o.timing) text += "wall time: " + std::to_string(seconds) + " s\n";
  } else {
    text = report_document(command, invocation, payload, o.timing ? std::optional<double>(seconds) : std::nullopt)
               .dump(2) +
           "\n";
  }
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.out, std::ios::binary);
  if (!out) throw ParseError("--out", "cannot write \"" + o.out + "\"");
  out << text;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

int exit_for(const std::vector<CheckReport>& reports) {
  for (const CheckReport& r : reports) {
    if (r.has_failure()) return kExitFailure;
  }
  return kExitOk;
}

json reports_json(const std::vector<CheckReport>& reports) {
  json out = json::array();
  for (const CheckReport& r : reports) out.push_back(report_to_json(r));
  return out;
}

CheckOptions check_options(const std::string& mode, const std::optional<double>& tol) {
  CheckOptions opts;
  opts.mode = mode == "float" ? Mode::Float : Mode::Exact;
  opts.tolerance = tol;
  return opts;
}

json common_invocation(const std::string& mode, const std::optional<double>& tol, const OutputOptions& o) {
  return {{"mode", mode}, {"tolerance", tol ? json(*tol) : json(nullptr)}, {"format", o.format}};
}

// verify

struct VerifyArgs {
  std::string bodyK;
  std::string second;
  std::string replay;
  std::vector<std::string> checks;
  std::string u, v, w, pair, ts;
};

Polytope body_from(const BodySpec& spec, const std::string& field) {
  try {
    return construct_body(spec);
  } catch (const DegenerateInput& e) {
    throw ParseError(field, e.what());
  } catch (const ZeroVector& e) {
    throw ParseError(field, e.what());
  }
}

int cmd_verify(const VerifyArgs& a, const std::string& mode, const std::optional<double>& tol,
               const OutputOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  const CheckOptions opts = check_options(mode, tol);
  json invocation = common_invocation(mode, tol, o);
  std::vector<CheckReport> reports;

  if (!a.replay.empty()) {
    const json record = parse_json(read_file(a.replay, "--replay"), "--replay");
    if (!record.is_object() || !record.contains("checkName") || !record.contains("instance")) {
      throw ParseError("--replay", "expected a record with checkName and instance");
    }
    const std::string name = record.at("checkName").get<std::string>();
    try {
      reports.push_back(replay_instance(name, record.at("instance"), opts));
    } catch (const json::exception& e) {
      throw ParseError("--replay.instance", e.what());
    }
    invocation["replay"] = record;
    bool identical = true;
    if (record.contains("report")) {
      json expected = record.at("report");
      json got = report_to_json(reports.back());
      identical = expected.value("lhs", json()) == got["lhs"] && expected.value("rhs", json()) == got["rhs"] &&
                  expected.value("holds", json()) == got["holds"];
    }
    const std::string table = report_table(reports) + "replay identical: " + (identical ? "yes" : "no") + "\n";
    emit(o, "verify", invocation, {{"reports", reports_json(reports)}, {"replayIdentical", identical}}, table,
         seconds_since(start));
    if (!identical) return kExitFailure;
    return exit_for(reports);
  }

  if (a.bodyK.empty()) throw ParseError("K", "a body file is required");
  const BodySpec spec_k = BodySpec::parse(read_file(a.bodyK, "K"));
  const Polytope k = body_from(spec_k, "K");
  const int n = k.dim();
  invocation["K"] = spec_k.to_json();

  std::optional<BodySpec> spec_m;
  std::optional<Polytope> m;
  std::optional<SemiNorm> norm;
  if (!a.second.empty()) {
    json j;
    if (a.second.rfind("norm=", 0) == 0) {
      j = parse_inline_norm(a.second.substr(5));
    } else {
      j = parse_json(read_file(a.second, "M"), "M");
    }
    if (j.is_object() && j.contains("form")) {
      norm = seminorm_from_json(j, "norm");
      if (norm->dim() != n) throw ParseError("norm.vectors", "dimension differs from K");
      invocation["norm"] = seminorm_to_json(*norm);
    } else {
      spec_m = BodySpec::from_json(j, "M");
      try {
        m = construct(*spec_m);
      } catch (const Error& e) {
        throw ParseError("M", e.what());
      }
      if (m->dim() != n) throw ParseError("M", "dimension differs from K");
      invocation["M"] = spec_m->to_json();
    }
  }

  auto vec_flag = [&](const std::string& text, const std::string& field, int axis) {
    if (text.empty()) {
      Vec e = Vec::Zero(n);
      e[axis] = 1;
      return e;
    }
    Vec v = parse_vector(text, field);
    if (v.size() != n) throw ParseError(field, "expected " + std::to_string(n) + " coordinates");
    if (v.isZero()) throw ParseError(field, "vector is zero");
    return v;
  };
  const Vec u = vec_flag(a.u, "--u", 0);
  Vec v = vec_flag(a.v, "--v", 0);
  if (a.v.empty() && spec_m && spec_m->kind == BodySpec::Kind::Segment) v = spec_m->vector;
  const Vec w = vec_flag(a.w, "--w", std::min(1, n - 1));
  int pi = 0;
  int pj = 1;
  if (!a.pair.empty()) {
    const auto parts = split(a.pair, ',');
    try {
      if (parts.size() != 2) throw std::invalid_argument("pair");
      pi = std::stoi(parts[0]) - 1;
      pj = std::stoi(parts[1]) - 1;
    } catch (const std::exception&) {
      throw ParseError("--pair", "expected two 1-based indices i,j");
    }
    if (pi < 0 || pj < 0 || pi >= n || pj >= n || pi == pj) throw ParseError("--pair", "indices out of range");
  }
  std::vector<Rational> ts{Rational(1), Rational(2), Rational(3)};
  if (!a.ts.empty()) {
    const Vec t = parse_vector(a.ts, "--t");
    ts.assign(t.begin(), t.end());
    for (const Rational& x : ts) {
      if (x < 0) throw ParseError("--t", "values must be nonnegative");
    }
  }
  invocation["u"] = vector_to_json(u);
  invocation["v"] = vector_to_json(v);
  invocation["w"] = vector_to_json(w);
  invocation["pair"] = {pi + 1, pj + 1};
  json ts_json = json::array();
  for (const Rational& t : ts) ts_json.push_back(to_string(t));
  invocation["t"] = ts_json;

  std::vector<std::string> checks = canonical_checks(a.checks, "--checks");
  if (checks.empty()) {
    if (norm) checks.insert(checks.end(), {"seminorm_surface", "poincare_bound"});
    checks.insert(checks.end(), {"segment_logbm", "section_bound", "direction_bound", "cauchy_consistency"});
    if (n >= 3) checks.push_back("square_identity");
    if (m) checks.insert(checks.end(), {"logbm_conjecture", "invariance", "factor_bound", "containment_chain"});
    if (spec_m && spec_m->kind == BodySpec::Kind::Zonotope) checks.push_back("zonotope_decomposition");
  }
  invocation["checks"] = checks;

  auto need_m = [&](const std::string& c) -> const Polytope& {
    if (!m) throw ParseError("--checks", "check " + c + " needs a second body M");
    return *m;
  };
  auto need_norm = [&](const std::string& c) -> const SemiNorm& {
    if (!norm) throw ParseError("--checks", "check " + c + " needs a semi-norm (norm=...)");
    return *norm;
  };
  std::optional<MixedVolumeVector> mv;
  auto mixed = [&](const std::string& c) -> const MixedVolumeVector& {
    if (!mv) mv = mixed_volumes(k, need_m(c));
    return *mv;
  };

  for (const std::string& c : checks) {
    try {
      if (c == "seminorm_surface") {
        reports.push_back(check_seminorm_surface(k, need_norm(c), opts));
      } else if (c == "poincare_bound") {
        reports.push_back(check_poincare_bound(k, need_norm(c), tol.value_or(kInequalityTolerance)));
      } else if (c == "segment_logbm") {
        reports.push_back(check_segment_logbm(k, v, opts));
      } else if (c == "logbm_conjecture") {
        reports.push_back(check_logbm_conjecture(k, need_m(c), mixed(c), opts));
      } else if (c == "minkowski_second") {
        reports.push_back(check_minkowski_second(k, need_m(c), mixed(c), opts));
      } else if (c == "minkowski_first") {
        reports.push_back(check_minkowski_first(k, need_m(c), mixed(c), opts));
      } else if (c == "holder") {
        reports.push_back(check_holder(k, need_m(c), mixed(c), opts));
      } else if (c == "invariance") {
        reports.push_back(check_invariance(k, need_m(c), ts, opts));
      } else if (c == "section_bound") {
        reports.push_back(check_section_bound(k, u, opts));
      } else if (c == "direction_bound") {
        reports.push_back(check_direction_bound(k, u, v, opts));
      } else if (c == "factor_bound") {
        reports.push_back(check_factor_bound(k, need_m(c), mixed(c), opts));
      } else if (c == "square_identity") {
        reports.push_back(check_square_identity(k, pi, pj, opts));
      } else if (c == "pair_probe") {
        reports.push_back(check_pair_probe(k, v, w, opts));
      } else if (c == "zonotope_decomposition") {
        if (!spec_m || spec_m->kind != BodySpec::Kind::Zonotope) {
          throw ParseError("--checks", "zonotope_decomposition needs M given as a zonotope spec");
        }
        reports.push_back(check_zonotope_decomposition(k, spec_m->points, opts));
      } else if (c == "containment_chain") {
        reports.push_back(check_containment_chain(k, need_m(c), opts));
      } else if (c == "cauchy_consistency") {
        reports.push_back(check_cauchy_consistency(k, v, opts));
      }
    } catch (const DegenerateInput& e) {
      throw ParseError("--checks", c + ": " + e.what());
    }
  }

  emit(o, "verify", invocation, {{"reports", reports_json(reports)}}, report_table(reports), seconds_since(start));
  return exit_for(reports);
}

// mixed-volumes

int cmd_mixed_volumes(const std::string& file_k, const std::string& file_m, const std::string& mode,
                      const OutputOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  const BodySpec spec_k = BodySpec::parse(read_file(file_k, "K"));
  const BodySpec spec_m = BodySpec::parse(read_file(file_m, "M"));
  const Polytope k = body_from(spec_k, "K");
  Polytope m = [&] {
    try {
      return construct(spec_m);
    } catch (const Error& e) {
      throw ParseError("M", e.what());
    }
  }();
  if (m.dim() != k.dim()) throw ParseError("M", "dimension differs from K");
  json invocation{{"K", spec_k.to_json()}, {"M", spec_m.to_json()}, {"mode", mode}, {"format", o.format}};

  const std::vector<Rational> samples = volume_samples(k, m);
  const MixedVolumeVector mv = mixed_volumes_from_samples(k, m, samples);
  json values = json::array();
  std::string line;
  if (mode == "float") {
    const MixedVolumes<double> mvd = fit_mixed_volumes<double>(samples);
    for (double x : mvd.values) {
      values.push_back(x == 0 ? 0.0 : x);
      line += (line.empty() ? "" : ", ") + to_string(Value(x == 0 ? 0.0 : x));
    }
  } else {
    for (const Rational& x : mv.values) {
      values.push_back(to_string(x));
      line += (line.empty() ? "" : ", ") + to_string(x);
    }
  }
  emit(o, "mixed-volumes", invocation, {{"mixedVolumes", values}}, "V_0..V_n: " + line + "\n", seconds_since(start));
  return kExitOk;
}

// campaign

struct CampaignArgs {
  std::string config;
  std::vector<int> dims;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> checks;
  bool margins = false;
};

std::string campaign_table(const CampaignSummary& s) {
  std::ostringstream os;
  os << std::left << std::setw(30) << "check" << std::setw(9) << "trials" << std::setw(11) << "violations"
     << std::setw(10) << "internal" << std::setw(12) << "candidates" << std::setw(10) << "equality"
     << "min margin\n";
  for (const auto& [name, st] : s.perCheck) {
    os << std::left << std::setw(30) << name << std::setw(9) << st.trials << std::setw(11) << st.violations
       << std::setw(10) << st.internalInconsistencies << std::setw(12) << st.counterexampleCandidates
       << std::setw(10) << st.equalityCount
       << (st.minRelativeMargin ? to_string(Value(*st.minRelativeMargin)) : std::string("-")) << "\n";
  }
  os << "trials: " << s.trials << ", failures: " << s.failures.size()
     << ", counterexample candidates: " << s.counterexampleCandidates.size() << "\n";
  for (const TrialRecord& r : s.failures) {
    os << "failure: n=" << r.dim << " trial=" << r.trial << " " << r.checkName << ": " << r.message << "\n";
  }
  return os.str();
}

int cmd_campaign(const CampaignArgs& a, const std::optional<std::string>& mode, const std::optional<double>& tol,
                 const OutputOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  CampaignConfig config = default_campaign();
  if (!a.config.empty()) {
    json j = parse_json(read_file(a.config, "config"), "config");
    if (j.is_object() && j.contains("checks") && j.at("checks").is_array()) {
      json names = json::array();
      for (const auto& c : j.at("checks")) {
        if (!c.is_string()) throw ParseError("config.checks", "expected check names");
        names.push_back(canonical_check(c.get<std::string>(), "config.checks"));
      }
      j["checks"] = names;
    }
    config = CampaignConfig::from_json(j);
  }
  if (!a.dims.empty()) {
    for (int n : a.dims) {
      if (n < 2) throw ParseError("--dim", "dimensions must be >= 2");
    }
    config.dims = a.dims;
  }
  if (a.trials) {
    if (*a.trials < 0) throw ParseError("--trials", "must be nonnegative");
    config.trialsPerDim = *a.trials;
    config.trialsByDim.clear();
  }
  if (a.seed) config.seed = *a.seed;
  if (!a.checks.empty()) config.checks = canonical_checks(a.checks, "--checks");
  if (mode) config.mode = *mode == "float" ? Mode::Float : Mode::Exact;
  if (tol) config.tolerance = tol;

  const CampaignSummary summary = run_campaign(config, a.margins);
  json invocation{{"config", config.to_json()}, {"format", o.format}};
  emit(o, "campaign", invocation, {{"summary", summary.to_json()}}, campaign_table(summary), seconds_since(start));
  return summary.clean() ? kExitOk : kExitFailure;
}

// demo

int cmd_demo(const std::string& name, std::optional<int> dim, std::optional<int> trials,
             std::optional<std::uint64_t> seed, const std::string& mode, const std::optional<double>& tol,
             const OutputOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  json invocation{{"demo", name}, {"format", o.format}};
  if (name == "false-inequality") {
    const int n = dim.value_or(3);
    if (n < 2) throw ParseError("--dim", "must be >= 2");
    invocation["dim"] = n;
    const CheckReport r = demo_indicator_failure(n);
    const std::string verdict = r.holds ? "holds: " + to_string(r.lhs) + " <= " + to_string(r.rhs)
                                        : "violated: " + to_string(r.lhs) + " > " + to_string(r.rhs);
    emit(o, "demo", invocation, {{"reports", reports_json({r})}, {"verdict", verdict}},
         report_table({r}) + verdict + "\n", seconds_since(start));
    return r.status == Status::Ok ? kExitOk : kExitFailure;
  }
  if (name == "hexagon") {
    invocation["mode"] = mode;
    const HexagonScenario sc = hexagon_scenario(default_hexagon_grid(), check_options(mode, tol));
    json rows = json::array();
    std::vector<CheckReport> all;
    std::ostringstream os;
    os << std::left << std::setw(8) << "eps" << std::setw(26) << "aggregate lhs" << std::setw(26) << "aggregate rhs"
       << std::setw(10) << "holds" << std::setw(26) << "remainder lhs" << std::setw(26) << "remainder rhs"
       << "holds\n";
    for (const HexagonRow& row : sc.rows) {
      rows.push_back({{"eps", to_string(row.eps)},
                      {"aggregateHolds", row.aggregateHolds},
                      {"remainderHolds", row.remainderHolds},
                      {"square", report_to_json(row.square)},
                      {"pair", report_to_json(row.pair)}});
      all.push_back(row.square);
      all.push_back(row.pair);
      const CheckReport& agg = row.square.subchecks.front();
      const CheckReport* rem = nullptr;
      for (const CheckReport& s : row.pair.subchecks) {
        if (s.checkName == "pair_remainder") rem = &s;
      }
      os << std::left << std::setw(8) << to_string(row.eps) << std::setw(26) << to_string(agg.lhs) << std::setw(26)
         << to_string(agg.rhs) << std::setw(10) << (row.aggregateHolds ? "yes" : "no") << std::setw(26)
         << (rem ? to_string(rem->lhs) : "-") << std::setw(26) << (rem ? to_string(rem->rhs) : "-")
         << (row.remainderHolds ? "yes" : "no") << "\n";
    }
    os << (sc.splitObserved ? "split observed: aggregate holds where the term-by-term remainder fails\n"
                            : "inconclusive: no grid point separates the aggregate from the remainder\n");
    emit(o, "demo", invocation, {{"rows", rows}, {"splitObserved", sc.splitObserved}}, os.str(),
         seconds_since(start));
    return exit_for(all);
  }
  if (name == "cube-remark") {
    std::vector<int> dims{2, 3, 4};
    if (dim) {
      if (*dim < 2) throw ParseError("--dim", "must be >= 2");
      dims = {*dim};
    }
    const int cases = trials.value_or(5);
    if (cases < 0) throw ParseError("--trials", "must be nonnegative");
    const std::uint64_t s = seed.value_or(1);
    invocation["dims"] = dims;
    invocation["randomCases"] = cases;
    invocation["seed"] = s;
    invocation["mode"] = mode;
    const auto result = cube_remark_scenario(dims, cases, s, check_options(mode, tol));
    json out = json::array();
    std::vector<CheckReport> all;
    std::ostringstream os;
    for (const CubeRemarkCase& c : result) {
      json phi = json::array();
      std::string phi_text;
      for (const Rational& x : c.phi) {
        phi.push_back(to_string(x));
        phi_text += (phi_text.empty() ? "" : ", ") + to_string(x);
      }
      out.push_back({{"dim", c.dim}, {"phi", phi}, {"reports", reports_json(c.reports)}});
      os << "n=" << c.dim << " phi=(" << phi_text << ")\n";
      for (const CheckReport& r : c.reports) {
        const char* rel = r.equality ? " = " : (r.holds ? " <= " : " > ");
        os << "  " << r.checkName;
        if (r.details.count("M")) os << " [" << r.details.at("M") << "]";
        os << ": " << to_string(r.lhs) << rel << to_string(r.rhs) << "  " << to_string(r.status) << "\n";
        all.push_back(r);
      }
    }
    emit(o, "demo", invocation, {{"cases", out}}, os.str(), seconds_since(start));
    return exit_for(all);
  }
  throw ParseError("demo", "unknown demo \"" + name + "\"");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks around the local log-Brunn-Minkowski inequality for symmetric polytopes"};
  app.require_subcommand(1);

  OutputOptions out;
  std::string mode = "exact";
  std::optional<double> tol;
  auto add_common = [&](CLI::App* sub, bool with_mode) {
    if (with_mode) {
      sub->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
      sub->add_option("--tol", tol, "relative tolerance for float mode")->check(CLI::NonNegativeNumber);
    }
    sub->add_option("--format", out.format, "json or table")->check(CLI::IsMember({"json", "table"}));
    sub->add_option("--out", out.out, "write the report to this file");
    sub->add_flag("--timing", out.timing, "record wall time in the report header");
  };

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "run checks on a body K and a second body M or a semi-norm");
  verify->add_option("K", va.bodyK, "body spec file");
  verify->add_option("M", va.second, "body spec file, semi-norm file, or norm=max:1,0;0,1");
  verify->add_option("--checks", va.checks, "comma-separated check names")->delimiter(',');
  verify->add_option("--u", va.u, "direction u (default e1)");
  verify->add_option("--v", va.v, "direction v (default e1, or the segment of M)");
  verify->add_option("--w", va.w, "direction w (default e2)");
  verify->add_option("--pair", va.pair, "1-based coordinate pair i,j (default 1,2)");
  verify->add_option("--t", va.ts, "invariance parameters (default 1,2,3)");
  verify->add_option("--replay", va.replay, "re-run a serialized candidate or failure record");
  add_common(verify, true);

  std::string mv_k, mv_m;
  CLI::App* mixed = app.add_subcommand("mixed-volumes", "print V_0..V_n of (K, M)");
  mixed->add_option("K", mv_k, "body spec file")->required();
  mixed->add_option("M", mv_m, "body spec file")->required();
  add_common(mixed, true);

  CampaignArgs ca;
  std::optional<std::string> campaign_mode;
  CLI::App* campaign = app.add_subcommand("campaign", "seeded randomized campaign");
  campaign->add_option("config", ca.config, "campaign config file (default: the full default campaign)");
  campaign->add_option("--dim", ca.dims, "dimensions, comma-separated")->delimiter(',');
  campaign->add_option("--trials", ca.trials, "trials per dimension");
  campaign->add_option("--seed", ca.seed, "campaign seed");
  campaign->add_option("--checks", ca.checks, "comma-separated check names")->delimiter(',');
  campaign->add_option("--mode", campaign_mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  campaign->add_option("--tol", tol, "relative tolerance for float mode")->check(CLI::NonNegativeNumber);
  campaign->add_flag("--margins", ca.margins, "include every relative margin, sorted ascending");
  add_common(campaign, false);

  std::string demo_name;
  std::optional<int> demo_dim, demo_trials;
  std::optional<std::uint64_t> demo_seed;
  CLI::App* demo = app.add_subcommand("demo", "named scenarios");
  demo->add_option("name", demo_name, "false-inequality, hexagon or cube-remark")
      ->required()
      ->check(CLI::IsMember({"false-inequality", "hexagon", "cube-remark"}));
  demo->add_option("--dim", demo_dim, "dimension");
  demo->add_option("--trials", demo_trials, "random cases (cube-remark)");
  demo->add_option("--seed", demo_seed, "seed (cube-remark)");
  add_common(demo, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*verify) return cmd_verify(va, mode, tol, out);
    if (*mixed) return cmd_mixed_volumes(mv_k, mv_m, mode, out);
    if (*campaign) return cmd_campaign(ca, campaign_mode, tol, out);
    if (*demo) return cmd_demo(demo_name, demo_dim, demo_trials, demo_seed, mode, tol, out);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InternalInconsistency& e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return kExitFailure;
  } catch (const DegenerateInput& e) {
    std::cerr << "error: input: " << e.what() << "\n";
    return kExitInput;
  } catch (const ZeroVector& e) {
    std::cerr << "error: input: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitInput;
}
