#pragma once

#include "oodlab/alpha.hpp"
#include "oodlab/distribution.hpp"
#include "oodlab/experiments.hpp"
#include "oodlab/hypothesis.hpp"
#include "oodlab/subspace.hpp"

#include <json.hpp>

#include <string>

namespace oodlab {
namespace io {

using json = nlohmann::ordered_json;

// Rejects documents carrying keys outside the schema; typos must not be
// silently ignored.
void check_keys(const json& doc, const std::vector<std::string>& allowed,
                const std::string& context);

// --- core documents ---------------------------------------------------------

json space_to_json(const FeatureSpace& space);
FeatureSpacePtr space_from_json(const json& doc);

json distribution_to_json(const FiniteDistribution& d);
FiniteDistribution distribution_from_json(const json& doc);

json class_to_json(const HypothesisClass& cls);
HypothesisClass class_from_json(const json& doc);

json points_to_json(const FeatureSpace& space,
                    const std::vector<StructuredPoint>& points);
std::vector<StructuredPoint> points_from_json(const FeatureSpace& space,
                                              const json& doc);

json junta_to_json(const SubspaceJunta& junta);
SubspaceJunta junta_from_json(const json& doc);

json measure_to_json(const PointMassMeasure& measure);
PointMassMeasure measure_from_json(const json& doc);

// --- report documents ---------------------------------------------------------

// Every report embeds the library version and the sampling generator id.
json report_envelope(const std::string& kind);

json alpha_result_to_json(const AlphaResult& result, const FeatureSpace& space,
                          const Rat& epsilon);
json alpha_bounds_to_json(const AlphaBounds& bounds, const FeatureSpace& space,
                          const Rat& epsilon);
json vc_result_to_json(const VcResult& result, const FeatureSpace& space);
json sauer_to_json(const SauerCheck& check);
json shatter_outcome_to_json(const ShatterOutcome& outcome,
                             const FeatureSpace& space);
json contrast_report_to_json(const ContrastSweepReport& report);
json identity_report_to_json(const IdentityEngineReport& report,
                             const std::string& engine);
json subspace_report_to_json(const SubspaceTransferReport& report);
json sweep_report_to_json(const SweepReport& report);

std::string contrast_report_to_csv(const ContrastSweepReport& report);
std::string sweep_report_to_csv(const SweepReport& report);

// --- config documents ---------------------------------------------------------

ContrastSweepConfig contrast_config_from_json(const json& doc);
RandomInstanceConfig instance_config_from_json(const json& doc);
SubspaceTransferConfig subspace_config_from_json(const json& doc);
SweepConfig sweep_config_from_json(const json& doc);

// --- files --------------------------------------------------------------------

json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
std::string dump_pretty(const json& doc);

}  // namespace io
}  // namespace oodlab
