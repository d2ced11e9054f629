#pragma once

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "fairlin/dataset.hpp"
#include "fairlin/experiments.hpp"
#include "fairlin/fair_predictor.hpp"
#include "fairlin/metrics.hpp"
#include "fairlin/synth.hpp"
#include "fairlin/unfairness.hpp"

namespace fairlin {

inline constexpr const char* kToolVersion = "0.1.0";

using json = nlohmann::json;

// ---- CSV ------------------------------------------------------------------
// Dialect: comma-separated, '.' decimal point, UTF-8, header row required,
// no quoting. Floats are written as the shortest decimal that parses back to
// the same bits, so written files reload bit-identically and diff cleanly.

struct CsvSchema {
  std::string sensitive;
  std::string target;
  std::vector<std::string> features;  // empty = every other column, file order
  bool drop_bad_rows = false;
};

struct LoadedCsv {
  Dataset data;
  std::vector<std::string> feature_names;
  long dropped_rows = 0;
};

// Sensitive labels are mapped to 1..M by sorting the distinct raw labels
// ascending (numerically when every label parses as a number, otherwise
// lexicographically); the mapping rides along in Dataset::group_labels.
LoadedCsv load_csv(const std::string& path, const CsvSchema& schema);

void write_dataset_csv(const std::string& path, const Dataset& data,
                       const std::vector<std::string>& feature_names = {});

std::string format_double(double value);

// Write-temp-then-rename; the destination never holds a partial file.
void atomic_write(const std::string& path, const std::string& content);

// ---- JSON documents ---------------------------------------------------------

json model_to_json(const BaseLinearModel& model, const std::vector<std::string>& feature_names);
BaseLinearModel model_from_json(const json& j);
std::vector<std::string> feature_names_from_json(const json& j);

json stats_to_json(const GroupStats& stats);
GroupStats stats_from_json(const json& j);

json fair_model_to_json(const FairPredictor& fp, const std::vector<std::string>& feature_names);
FairPredictor fair_model_from_json(const json& j);

json unfairness_to_json(const UnfairnessReport& r);
json fit_report_to_json(const FitReport& r);
json feature_contribution_to_json(const FeatureContribution& fc,
                                  const std::vector<std::string>& feature_names);
json equality_to_json(const EqualityConditions& ec);

json synth_config_to_json(const SynthConfig& cfg);
SynthConfig synth_config_from_json(const json& j);
json ground_truth_to_json(const SynthGroundTruth& gt, const SynthConfig& cfg);

json sweep_to_json(const SweepResult& result);
std::string sweep_to_csv(const SweepResult& result);
std::string comparison_table_csv(const SweepResult& result);
std::string coefficient_shift_csv(const std::vector<CoefficientShiftRow>& rows);

// Full audit output: everything needed to replay or inspect one model audit.
struct AuditDocument {
  std::string tool_version;
  std::string config_hash;
  BaseLinearModel model;
  std::vector<std::string> feature_names;
  GroupStats stats;
  FitReport fit;
  UnfairnessReport unfairness;
  FeatureContribution features;
  EqualityConditions equality;
};

json audit_to_json(const AuditDocument& doc);
AuditDocument audit_from_json(const json& j);

// Minimal structural validator for the schema file shipped under schemas/
// (supports type / properties / required / items / $ref into $defs).
bool schema_validate(const json& document, const json& schema, const json& root,
                     std::string* error = nullptr);

}  // namespace fairlin
