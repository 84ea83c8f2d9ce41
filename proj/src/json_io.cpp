#include "oodlab/json_io.hpp"

#include "oodlab/errors.hpp"
#include "oodlab/version.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace oodlab {
namespace io {

void check_keys(const json& doc, const std::vector<std::string>& allowed,
                const std::string& context) {
  if (!doc.is_object())
    throw ValidationError("config", context + ": expected a JSON object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : doc.items()) {
    (void)value;
    if (!ok.count(key))
      throw ValidationError("config",
                            context + ": unknown key '" + key + "'");
  }
}

namespace {

std::string require_string(const json& doc, const std::string& key,
                           const std::string& context) {
  if (!doc.contains(key) || !doc[key].is_string())
    throw ValidationError("config",
                          context + ": missing string field '" + key + "'");
  return doc[key].get<std::string>();
}

json require_field(const json& doc, const std::string& key,
                   const std::string& context) {
  if (!doc.contains(key))
    throw ValidationError("config",
                          context + ": missing field '" + key + "'");
  return doc[key];
}

int value_index(const FeatureSpace& space, const std::string& label) {
  for (int v = 0; v < space.value_count(); ++v)
    if (space.values[v] == label) return v;
  throw ValidationError("point", "unknown feature value '" + label + "'");
}

}  // namespace

json space_to_json(const FeatureSpace& space) {
  json doc;
  doc["n"] = space.n;
  doc["values"] = space.values;
  return doc;
}

FeatureSpacePtr space_from_json(const json& doc) {
  check_keys(doc, {"n", "values"}, "feature space");
  const json n = require_field(doc, "n", "feature space");
  const json values = require_field(doc, "values", "feature space");
  if (!n.is_number_integer() || n.get<int>() < 1)
    throw ValidationError("feature-space", "n must be a positive integer");
  if (!values.is_array() || values.empty())
    throw ValidationError("feature-space", "values must be a nonempty array");
  std::vector<std::string> labels;
  for (const auto& v : values) {
    if (v.is_string())
      labels.push_back(v.get<std::string>());
    else
      labels.push_back(v.dump());
  }
  return make_space(n.get<int>(), std::move(labels));
}

namespace {

json point_to_json(const FeatureSpace& space, const StructuredPoint& p) {
  json arr = json::array();
  for (auto c : p.coords) arr.push_back(space.values[c]);
  return arr;
}

StructuredPoint point_from_json(const FeatureSpace& space, const json& doc) {
  if (!doc.is_array() || static_cast<int>(doc.size()) != space.n)
    throw ValidationError("point", "point must be an array of n values");
  StructuredPoint p;
  for (const auto& v : doc) {
    const std::string label = v.is_string() ? v.get<std::string>() : v.dump();
    p.coords.push_back(value_index(space, label));
  }
  return p;
}

}  // namespace

json distribution_to_json(const FiniteDistribution& d) {
  json doc = space_to_json(d.space());
  json atoms = json::array();
  for (const auto& a : d.atoms()) {
    json atom;
    atom["point"] = point_to_json(d.space(), a.point);
    atom["p"] = rat_to_string(a.p);
    atoms.push_back(std::move(atom));
  }
  doc["atoms"] = std::move(atoms);
  return doc;
}

FiniteDistribution distribution_from_json(const json& doc) {
  check_keys(doc, {"n", "values", "atoms"}, "distribution");
  json space_doc;
  space_doc["n"] = require_field(doc, "n", "distribution");
  space_doc["values"] = require_field(doc, "values", "distribution");
  auto space = space_from_json(space_doc);
  const json atoms = require_field(doc, "atoms", "distribution");
  if (!atoms.is_array())
    throw ValidationError("distribution", "atoms must be an array");
  std::vector<Atom> parsed;
  for (const auto& a : atoms) {
    check_keys(a, {"point", "p"}, "distribution atom");
    parsed.push_back(
        Atom{point_from_json(*space, require_field(a, "point", "atom")),
             rat_from_string(require_string(a, "p", "atom"))});
  }
  return FiniteDistribution::make(space, std::move(parsed));
}

namespace {

json member_to_json(const Hypothesis& h) {
  json doc;
  doc["kind"] = "table";
  std::string bits;
  bits.reserve(h.table().size());
  for (auto b : h.table()) bits += static_cast<char>('0' + b);
  doc["bits"] = bits;
  doc["label"] = h.label();
  return doc;
}

Hypothesis member_from_json(const FeatureSpacePtr& space, const json& doc) {
  const std::string kind = require_string(doc, "kind", "class member");
  if (kind == "constant") {
    check_keys(doc, {"kind", "value"}, "constant member");
    return Hypothesis::constant(space,
                                require_field(doc, "value", "member").get<int>());
  }
  if (kind == "dictator") {
    check_keys(doc, {"kind", "feature"}, "dictator member");
    return Hypothesis::dictator(
        space, require_field(doc, "feature", "member").get<int>());
  }
  if (kind == "negated_dictator") {
    check_keys(doc, {"kind", "feature"}, "negated dictator member");
    return Hypothesis::negated_dictator(
        space, require_field(doc, "feature", "member").get<int>());
  }
  if (kind == "threshold") {
    check_keys(doc, {"kind", "feature", "cutoff"}, "threshold member");
    return Hypothesis::threshold(
        space, require_field(doc, "feature", "member").get<int>(),
        require_field(doc, "cutoff", "member").get<int>());
  }
  if (kind == "xor") {
    check_keys(doc, {"kind", "features"}, "xor member");
    const json features = require_field(doc, "features", "member");
    if (!features.is_array() || features.size() != 2)
      throw ValidationError("hypothesis", "xor needs exactly two features");
    return Hypothesis::xor_pair(space, features[0].get<int>(),
                                features[1].get<int>());
  }
  if (kind == "grue") {
    check_keys(doc, {"kind", "time_feature", "value_feature", "switch"},
               "grue member");
    return Hypothesis::grue_switch(
        space, require_field(doc, "time_feature", "member").get<int>(),
        require_field(doc, "value_feature", "member").get<int>(),
        require_field(doc, "switch", "member").get<int>());
  }
  if (kind == "table") {
    check_keys(doc, {"kind", "bits", "label"}, "table member");
    const std::string bits = require_string(doc, "bits", "member");
    std::vector<uint8_t> table;
    table.reserve(bits.size());
    for (char c : bits) {
      if (c != '0' && c != '1')
        throw ValidationError("hypothesis", "bits must be 0/1 characters");
      table.push_back(static_cast<uint8_t>(c - '0'));
    }
    std::string label;
    if (doc.contains("label")) label = doc["label"].get<std::string>();
    return Hypothesis::from_table(space, std::move(table), std::move(label));
  }
  throw ValidationError("hypothesis", "unknown member kind '" + kind + "'");
}

}  // namespace

json class_to_json(const HypothesisClass& cls) {
  json doc;
  doc["domain"] = space_to_json(cls.space());
  json members = json::array();
  for (const auto& h : cls.members()) members.push_back(member_to_json(h));
  doc["members"] = std::move(members);
  return doc;
}

HypothesisClass class_from_json(const json& doc) {
  check_keys(doc, {"domain", "members"}, "class");
  auto space = space_from_json(require_field(doc, "domain", "class"));
  const json members = require_field(doc, "members", "class");
  if (!members.is_array() || members.empty())
    throw ValidationError("hypothesis", "class needs at least one member");
  std::vector<Hypothesis> parsed;
  for (const auto& m : members) parsed.push_back(member_from_json(space, m));
  return HypothesisClass::make(space, std::move(parsed));
}

json points_to_json(const FeatureSpace& space,
                    const std::vector<StructuredPoint>& points) {
  json arr = json::array();
  for (const auto& p : points) arr.push_back(point_to_json(space, p));
  return arr;
}

std::vector<StructuredPoint> points_from_json(const FeatureSpace& space,
                                              const json& doc) {
  if (!doc.is_array())
    throw ValidationError("points", "expected an array of points");
  std::vector<StructuredPoint> out;
  for (const auto& p : doc) out.push_back(point_from_json(space, p));
  return out;
}

namespace {

json ratvec_to_json(const RatVec& v) {
  json arr = json::array();
  for (const auto& c : v) arr.push_back(rat_to_string(c));
  return arr;
}

RatVec ratvec_from_json(const json& doc) {
  if (!doc.is_array())
    throw ValidationError("junta", "expected an array of rationals");
  RatVec out;
  for (const auto& c : doc)
    out.push_back(rat_from_string(
        c.is_string() ? c.get<std::string>() : c.dump()));
  return out;
}

json ptf_to_json(const Ptf& q) {
  json doc;
  doc["kind"] = "ptf";
  doc["degree"] = q.degree;
  json terms = json::array();
  for (const auto& t : q.terms) {
    json term;
    term["exponents"] = t.exponents;
    term["coeff"] = rat_to_string(t.coeff);
    terms.push_back(std::move(term));
  }
  doc["terms"] = std::move(terms);
  return doc;
}

Ptf ptf_from_json(const json& doc) {
  check_keys(doc, {"kind", "degree", "terms"}, "ptf");
  Ptf q;
  q.degree = require_field(doc, "degree", "ptf").get<int>();
  const json terms = require_field(doc, "terms", "ptf");
  if (!terms.is_array())
    throw ValidationError("junta", "ptf terms must be an array");
  for (const auto& t : terms) {
    check_keys(t, {"exponents", "coeff"}, "ptf term");
    Monomial mono;
    for (const auto& e : require_field(t, "exponents", "term"))
      mono.exponents.push_back(e.get<int>());
    mono.coeff = rat_from_string(require_string(t, "coeff", "term"));
    q.terms.push_back(std::move(mono));
  }
  return q;
}

json inner_to_json(const InnerFunction& g) {
  if (const auto* hs = std::get_if<Halfspace>(&g)) {
    json doc;
    doc["kind"] = "halfspace";
    doc["weights"] = ratvec_to_json(hs->weights);
    doc["threshold"] = rat_to_string(hs->threshold);
    return doc;
  }
  if (const auto* q = std::get_if<Ptf>(&g)) return ptf_to_json(*q);
  if (const auto* combo = std::get_if<BoolCombination>(&g)) {
    json doc;
    doc["kind"] = "boolean_combination";
    json ptfs = json::array();
    for (const auto& p : combo->ptfs) ptfs.push_back(ptf_to_json(p));
    doc["ptfs"] = std::move(ptfs);
    std::string bits;
    for (auto b : combo->table) bits += static_cast<char>('0' + b);
    doc["table"] = bits;
    return doc;
  }
  json doc;
  doc["kind"] = "square_wave";
  return doc;
}

InnerFunction inner_from_json(const json& doc) {
  const std::string kind = require_string(doc, "kind", "inner function");
  if (kind == "halfspace") {
    check_keys(doc, {"kind", "weights", "threshold"}, "halfspace");
    Halfspace hs;
    hs.weights = ratvec_from_json(require_field(doc, "weights", "halfspace"));
    hs.threshold =
        rat_from_string(require_string(doc, "threshold", "halfspace"));
    return hs;
  }
  if (kind == "ptf") return ptf_from_json(doc);
  if (kind == "boolean_combination") {
    check_keys(doc, {"kind", "ptfs", "table"}, "boolean combination");
    BoolCombination combo;
    for (const auto& p : require_field(doc, "ptfs", "combination"))
      combo.ptfs.push_back(ptf_from_json(p));
    const std::string bits = require_string(doc, "table", "combination");
    for (char c : bits) {
      if (c != '0' && c != '1')
        throw ValidationError("junta", "table must be 0/1 characters");
      combo.table.push_back(static_cast<uint8_t>(c - '0'));
    }
    return combo;
  }
  if (kind == "square_wave") {
    check_keys(doc, {"kind"}, "square wave");
    return SquareWaveInner{};
  }
  throw ValidationError("junta", "unknown inner kind '" + kind + "'");
}

}  // namespace

json junta_to_json(const SubspaceJunta& junta) {
  json doc;
  doc["n"] = junta.n();
  doc["k"] = junta.k();
  json rows = json::array();
  for (const auto& row : junta.w()) rows.push_back(ratvec_to_json(row));
  doc["W"] = std::move(rows);
  doc["inner"] = inner_to_json(junta.inner());
  if (!junta.label().empty()) doc["label"] = junta.label();
  return doc;
}

SubspaceJunta junta_from_json(const json& doc) {
  check_keys(doc, {"n", "k", "W", "inner", "label"}, "junta");
  const int n = require_field(doc, "n", "junta").get<int>();
  const int k = require_field(doc, "k", "junta").get<int>();
  const json rows = require_field(doc, "W", "junta");
  if (!rows.is_array() || static_cast<int>(rows.size()) != k)
    throw ValidationError("junta", "W must have k rows");
  RatMat w;
  for (const auto& row : rows) {
    RatVec parsed = ratvec_from_json(row);
    if (static_cast<int>(parsed.size()) != n)
      throw ValidationError("junta", "W rows must have n entries");
    w.push_back(std::move(parsed));
  }
  std::string label;
  if (doc.contains("label")) label = doc["label"].get<std::string>();
  return SubspaceJunta::make(std::move(w),
                             inner_from_json(require_field(doc, "inner", "junta")),
                             std::move(label));
}

json measure_to_json(const PointMassMeasure& measure) {
  json doc;
  doc["n"] = measure.dimension();
  json atoms = json::array();
  for (const auto& a : measure.atoms()) {
    json atom;
    atom["x"] = ratvec_to_json(a.x);
    atom["p"] = rat_to_string(a.p);
    atoms.push_back(std::move(atom));
  }
  doc["atoms"] = std::move(atoms);
  return doc;
}

PointMassMeasure measure_from_json(const json& doc) {
  check_keys(doc, {"n", "atoms"}, "measure");
  const int n = require_field(doc, "n", "measure").get<int>();
  std::vector<WeightedPoint> atoms;
  for (const auto& a : require_field(doc, "atoms", "measure")) {
    check_keys(a, {"x", "p"}, "measure atom");
    RatVec x = ratvec_from_json(require_field(a, "x", "atom"));
    if (static_cast<int>(x.size()) != n)
      throw ValidationError("measure", "atom dimension != n");
    atoms.push_back(WeightedPoint{
        std::move(x), rat_from_string(require_string(a, "p", "atom"))});
  }
  return PointMassMeasure::make(std::move(atoms));
}

// --- reports -------------------------------------------------------------------

json report_envelope(const std::string& kind) {
  json doc;
  doc["report"] = kind;
  doc["version"] = kVersion;
  doc["rng"] = kRngId;
  return doc;
}

namespace {

json rat_pair(const Rat& value) {
  json doc;
  doc["rational"] = rat_to_string(value);
  doc["decimal"] = rat_to_double(value);
  return doc;
}

}  // namespace

json alpha_result_to_json(const AlphaResult& result, const FeatureSpace& space,
                          const Rat& epsilon) {
  json doc = report_envelope("alpha-exact");
  doc["epsilon"] = rat_to_string(epsilon);
  doc["alpha"] = rat_pair(result.value);
  doc["method"] =
      result.method == AlphaMethod::kExact ? "exact" : "greedy-bounds";
  doc["solver"] = result.solver;
  doc["nodes_explored"] = result.nodes_explored;
  doc["witness_event"] = points_to_json(space, result.witness_event);
  return doc;
}

json alpha_bounds_to_json(const AlphaBounds& bounds, const FeatureSpace& space,
                          const Rat& epsilon) {
  json doc = report_envelope("alpha-bounds");
  doc["epsilon"] = rat_to_string(epsilon);
  doc["method"] = "greedy-bounds";
  doc["lower"] = rat_pair(bounds.lower);
  doc["upper"] = rat_pair(bounds.upper);
  doc["greedy_event"] = points_to_json(space, bounds.greedy_event);
  return doc;
}

json vc_result_to_json(const VcResult& result, const FeatureSpace& space) {
  json doc = report_envelope("vc-exact");
  doc["dimension"] = result.dimension;
  doc["capped"] = result.capped;
  doc["witness_points"] = points_to_json(space, result.witness.points);
  return doc;
}

json sauer_to_json(const SauerCheck& check) {
  json doc = report_envelope("sauer-check");
  doc["holds"] = check.holds;
  doc["vc_dimension"] = check.vc_dimension;
  doc["class_size"] = check.class_size.str();
  doc["sauer_sum"] = check.sauer_sum.str();
  return doc;
}

json shatter_outcome_to_json(const ShatterOutcome& outcome,
                             const FeatureSpace& space) {
  json doc = report_envelope("shatter-check");
  doc["shattered"] = outcome.shattered;
  if (outcome.certificate)
    doc["points"] = points_to_json(space, outcome.certificate->points);
  if (outcome.missing_labeling) {
    std::string bits;
    for (auto b : *outcome.missing_labeling)
      bits += static_cast<char>('0' + b);
    doc["first_missing_labeling"] = bits;
  }
  return doc;
}

json contrast_report_to_json(const ContrastSweepReport& report) {
  json doc = report_envelope("contrast-sweep");
  doc["scenario"] = report.scenario;
  doc["seed"] = report.config.seed;
  doc["trials"] = report.config.trials;
  doc["delta"] = rat_to_string(report.config.delta);
  doc["overlapping_supports"] = report.overlapping_supports;
  doc["canonical_sparse_worst"] = rat_pair(report.canonical_sparse_worst);
  doc["canonical_full_worst"] = rat_pair(report.canonical_full_worst);
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row;
    row["m"] = r.m;
    row["trials"] = r.trials;
    row["sparse"] = {{"min", rat_to_string(r.sparse_min)},
                     {"median", rat_to_string(r.sparse_median)},
                     {"quantile", rat_to_string(r.sparse_quantile)},
                     {"max", rat_to_string(r.sparse_max)},
                     {"reached_zero", r.sparse_reached_zero}};
    row["full"] = {{"min", rat_to_string(r.full_min)},
                   {"median", rat_to_string(r.full_median)},
                   {"quantile", rat_to_string(r.full_quantile)},
                   {"max", rat_to_string(r.full_max)},
                   {"at_one", r.full_at_one}};
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

json identity_report_to_json(const IdentityEngineReport& report,
                             const std::string& engine) {
  json doc = report_envelope(engine);
  doc["instances"] = report.instances;
  doc["hypotheses_checked"] = report.hypotheses_checked;
  doc["triggered"] = report.triggered;
  doc["vacuous_instances"] = report.vacuous_instances;
  doc["violations"] = report.violations;
  doc["min_margin"] = rat_pair(report.min_margin);
  return doc;
}

json subspace_report_to_json(const SubspaceTransferReport& report) {
  json doc = report_envelope("subspace-transfer");
  doc["instances"] = report.instances;
  doc["candidates_checked"] = report.candidates_checked;
  doc["precondition_rejections"] = report.precondition_rejections;
  doc["violations"] = report.violations;
  return doc;
}

json sweep_report_to_json(const SweepReport& report) {
  json doc = report_envelope("sample-complexity-sweep");
  doc["scenario"] = report.config.scenario;
  doc["class_mode"] = report.config.class_mode;
  doc["seed"] = report.config.seed;
  doc["trials"] = report.config.trials;
  doc["delta"] = rat_to_string(report.config.delta);
  doc["epsilon"] = rat_to_string(report.config.epsilon);
  doc["inner_vc"] = report.inner_vc;
  // Order-statistic quantiles need about 50/delta trials to resolve the
  // tail; smaller runs are still exact but coarse.
  doc["quantile_resolution_ok"] =
      Rat(static_cast<unsigned long long>(report.config.trials)) *
          report.config.delta >=
      50;
  json bounds = json::array();
  for (std::size_t i = 0; i < report.bound_values.size(); ++i) {
    json b;
    b["C"] = report.config.bound_constants[i];
    b["m_bound"] = report.bound_values[i];
    bounds.push_back(std::move(b));
  }
  doc["sample_bounds"] = std::move(bounds);
  if (report.smallest_m_meeting_target)
    doc["smallest_m_meeting_target"] = *report.smallest_m_meeting_target;
  else
    doc["smallest_m_meeting_target"] = nullptr;
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row;
    row["m"] = r.m;
    row["trials"] = r.trials;
    row["min"] = rat_to_string(r.min_err);
    row["median"] = rat_to_string(r.median_err);
    row["quantile"] = rat_to_string(r.quantile_err);
    row["max"] = rat_to_string(r.max_err);
    row["best_max"] = rat_to_string(r.best_max);
    row["passed"] = r.passed;
    row["pass_ci_low"] = r.pass_ci_low;
    row["pass_ci_high"] = r.pass_ci_high;
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc;
}

namespace {

std::string csv_escape_rat(const Rat& r) { return rat_to_string(r); }

}  // namespace

std::string contrast_report_to_csv(const ContrastSweepReport& report) {
  std::ostringstream out;
  out << "m,trials,sparse_min,sparse_median,sparse_quantile,sparse_max,"
         "sparse_reached_zero,full_min,full_median,full_quantile,full_max,"
         "full_at_one\n";
  for (const auto& r : report.rows) {
    out << r.m << ',' << r.trials << ',' << csv_escape_rat(r.sparse_min) << ','
        << csv_escape_rat(r.sparse_median) << ','
        << csv_escape_rat(r.sparse_quantile) << ','
        << csv_escape_rat(r.sparse_max) << ',' << r.sparse_reached_zero << ','
        << csv_escape_rat(r.full_min) << ',' << csv_escape_rat(r.full_median)
        << ',' << csv_escape_rat(r.full_quantile) << ','
        << csv_escape_rat(r.full_max) << ',' << r.full_at_one << '\n';
  }
  return out.str();
}

std::string sweep_report_to_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "m,trials,min,median,quantile,max,best_max,passed,pass_ci_low,"
         "pass_ci_high";
  for (const double c : report.config.bound_constants)
    out << ",bound_C" << c;
  out << '\n';
  for (const auto& r : report.rows) {
    out << r.m << ',' << r.trials << ',' << csv_escape_rat(r.min_err) << ','
        << csv_escape_rat(r.median_err) << ','
        << csv_escape_rat(r.quantile_err) << ',' << csv_escape_rat(r.max_err)
        << ',' << csv_escape_rat(r.best_max) << ',' << r.passed << ','
        << r.pass_ci_low << ',' << r.pass_ci_high;
    for (const double b : report.bound_values) out << ',' << b;
    out << '\n';
  }
  return out.str();
}

// --- configs -------------------------------------------------------------------

namespace {

Rat rat_field(const json& doc, const std::string& key, const Rat& fallback) {
  if (!doc.contains(key)) return fallback;
  const json& v = doc[key];
  if (v.is_string()) return rat_from_string(v.get<std::string>());
  if (v.is_number_integer()) return Rat(v.get<long long>());
  if (v.is_number_float()) return rat_from_double(v.get<double>());
  throw ValidationError("config", "field '" + key + "' must be rational");
}

std::vector<std::size_t> size_grid(const json& doc, const std::string& key,
                                   std::vector<std::size_t> fallback) {
  if (!doc.contains(key)) return fallback;
  std::vector<std::size_t> out;
  for (const auto& v : doc[key]) out.push_back(v.get<std::size_t>());
  return out;
}

}  // namespace

ContrastSweepConfig contrast_config_from_json(const json& doc) {
  check_keys(doc,
             {"scenario", "time_grid", "switch", "test_min_time", "m_grid",
              "trials", "delta", "seed", "threads"},
             "contrast config");
  ContrastSweepConfig config;
  config.scenario = require_string(doc, "scenario", "contrast config");
  if (doc.contains("time_grid")) config.time_grid = doc["time_grid"].get<int>();
  if (doc.contains("switch")) config.switch_index = doc["switch"].get<int>();
  if (doc.contains("test_min_time"))
    config.test_min_time = doc["test_min_time"].get<int>();
  config.m_grid = size_grid(doc, "m_grid", config.m_grid);
  if (doc.contains("trials")) config.trials = doc["trials"].get<std::size_t>();
  config.delta = rat_field(doc, "delta", config.delta);
  if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("threads")) config.threads = doc["threads"].get<int>();
  return config;
}

RandomInstanceConfig instance_config_from_json(const json& doc) {
  check_keys(doc,
             {"scenario", "instances", "n_max", "values_max", "k_max",
              "support_max", "m_max", "epsilon", "seed"},
             "instance config");
  RandomInstanceConfig config;
  if (doc.contains("instances")) config.instances = doc["instances"].get<int>();
  if (doc.contains("n_max")) config.n_max = doc["n_max"].get<int>();
  if (doc.contains("values_max"))
    config.values_max = doc["values_max"].get<int>();
  if (doc.contains("k_max")) config.k_max = doc["k_max"].get<int>();
  if (doc.contains("support_max"))
    config.support_max = doc["support_max"].get<int>();
  if (doc.contains("m_max")) config.m_max = doc["m_max"].get<int>();
  config.epsilon = rat_field(doc, "epsilon", config.epsilon);
  if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
  return config;
}

SubspaceTransferConfig subspace_config_from_json(const json& doc) {
  check_keys(doc,
             {"scenario", "instances", "n_max", "k_max", "dictionary_max",
              "support_max", "m_max", "seed"},
             "subspace config");
  SubspaceTransferConfig config;
  if (doc.contains("instances")) config.instances = doc["instances"].get<int>();
  if (doc.contains("n_max")) config.n_max = doc["n_max"].get<int>();
  if (doc.contains("k_max")) config.k_max = doc["k_max"].get<int>();
  if (doc.contains("dictionary_max"))
    config.dictionary_max = doc["dictionary_max"].get<int>();
  if (doc.contains("support_max"))
    config.support_max = doc["support_max"].get<int>();
  if (doc.contains("m_max")) config.m_max = doc["m_max"].get<int>();
  if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
  return config;
}

SweepConfig sweep_config_from_json(const json& doc) {
  check_keys(doc,
             {"scenario", "class_mode", "time_grid", "switch", "test_min_time",
              "m_grid", "trials", "delta", "epsilon", "bound_constants",
              "seed", "threads"},
             "sweep config");
  SweepConfig config;
  if (doc.contains("scenario"))
    config.scenario = doc["scenario"].get<std::string>();
  if (doc.contains("class_mode"))
    config.class_mode = doc["class_mode"].get<std::string>();
  if (doc.contains("time_grid")) config.time_grid = doc["time_grid"].get<int>();
  if (doc.contains("switch")) config.switch_index = doc["switch"].get<int>();
  if (doc.contains("test_min_time"))
    config.test_min_time = doc["test_min_time"].get<int>();
  config.m_grid = size_grid(doc, "m_grid", config.m_grid);
  if (doc.contains("trials")) config.trials = doc["trials"].get<std::size_t>();
  config.delta = rat_field(doc, "delta", config.delta);
  config.epsilon = rat_field(doc, "epsilon", config.epsilon);
  if (doc.contains("bound_constants")) {
    config.bound_constants.clear();
    for (const auto& c : doc["bound_constants"])
      config.bound_constants.push_back(c.get<double>());
  }
  if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("threads")) config.threads = doc["threads"].get<int>();
  return config;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw ValidationError("io", "cannot open file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("io", "malformed JSON in " + path + ": " + e.what());
  }
  return doc;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out)
    throw ValidationError("io", "cannot write file: " + path);
  out << text;
}

std::string dump_pretty(const json& doc) { return doc.dump(2) + "\n"; }

}  // namespace io
}  // namespace oodlab
