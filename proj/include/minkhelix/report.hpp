#pragma once

// Orchestration of one analysis run and its machine-readable report.

#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "minkhelix/classifiers.hpp"
#include "minkhelix/config.hpp"

namespace minkhelix {

inline constexpr const char* kToolVersion = "minkhelix 0.1.0";

/// One sampled function of the curve parameter.
struct Series {
  std::string quantity;
  std::vector<double> s;
  std::vector<double> values;
  friend bool operator==(const Series&, const Series&) = default;
};

struct VerdictRecord {
  std::string check;
  std::string definition;
  ConstancyReport report;
  bool admissible = false;
  bool holds = false;
  friend bool operator==(const VerdictRecord&, const VerdictRecord&) = default;
};

struct RunReport {
  std::string tool_version = kToolVersion;
  std::string config_text;  // canonical serialisation of the config
  std::string convention;
  std::string causal_kind;  // spacelike, timelike or null
  bool arc_length = false;
  int n_samples = 0;
  std::optional<ConstancyReport> eikonal;
  ConstancyReport kappa;
  ConstancyReport tau;
  bool frames_continuous = true;
  std::vector<VerdictRecord> verdicts;
  std::vector<TheoremReport> theorems;
  std::map<std::string, double> residuals;
  /// Checks requested but not applicable to the causal kind, or that hit a
  /// geometric precondition, with the reason.
  std::map<std::string, std::string> skipped;
  std::vector<Series> series;

  const VerdictRecord& verdict(const std::string& check) const;
  const TheoremReport& theorem(const std::string& name) const;
  const Series& find_series(const std::string& quantity) const;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

void to_json(nlohmann::json& j, const ConstancyReport& r);
void from_json(const nlohmann::json& j, ConstancyReport& r);
void to_json(nlohmann::json& j, const TheoremReport& r);
void from_json(const nlohmann::json& j, TheoremReport& r);
void to_json(nlohmann::json& j, const RunReport& r);
void from_json(const nlohmann::json& j, RunReport& r);

/// Serialised report; deterministic for a given config.
std::string report_to_string(const RunReport& r);
RunReport report_from_string(const std::string& text);

/// Runs the configured checks.  Geometric preconditions of the frame
/// construction (and MixedCausality) propagate as GeometryError.
RunReport run_analysis(const AnalysisConfig& cfg);

/// One CSV file per series in `dir`, named after the quantity.  Returns the
/// written paths.  Throws IoError.
std::vector<std::filesystem::path> emit_plot_data(const RunReport& report, const std::filesystem::path& dir);

/// File-name stem used for a quantity.
std::string series_file_stem(const std::string& quantity);

}  // namespace minkhelix
