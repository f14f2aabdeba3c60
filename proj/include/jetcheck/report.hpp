#pragma once

// Analysis reports: a plain-double snapshot of a verdict and its estimate,
// serialized as JSON (schema "jetcheck.report/1") or as a per-radius CSV.

#include "jetcheck/verdict.hpp"

#include <map>
#include "json.hpp"
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace jetcheck {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "jetcheck.report/1";

struct SampleRecord {
  double radius = 0;
  double min_value = 0;
  double sample_max = 0;
  std::vector<double> argmin_x;
  std::optional<std::vector<double>> argmin_y;
  bool found = true;
  bool zero = false;
};

struct EstimateRecord {
  double kappa_hat = 0;
  double intercept = 0;
  double std_error = 0;
  double residual_max = 0;
  bool degenerate = false;
  int fitted = 0;
  std::vector<SampleRecord> samples;
};

struct VerdictRecord {
  Status status = Status::Inconclusive;
  std::string criterion;
  double kappa_hat = 0;
  double threshold = 0;
  double tolerance = 0;
  double margin = 0;
  std::string note;
  std::optional<SampleRecord> witness;
};

struct CrossRecord {
  VerdictRecord r, t, kuo;
  bool agree = false;
};

struct ProblemRecord {
  std::size_t n = 0, m = 0;
  unsigned r = 1;
  Smoothness smoothness = Smoothness::Er;
  unsigned p = 2;
  QuantityKind kind = QuantityKind::R;
  std::vector<std::string> input;  // component text as given
  std::string source;              // "inline", a file path, or "corpus:NAME"
};

struct AnalysisReport {
  std::string tool_version = kToolVersion;
  ProblemRecord problem;
  SamplerConfig config;
  EstimateRecord estimate;
  VerdictRecord verdict;
  std::optional<CrossRecord> cross_validation;
  std::optional<std::map<std::string, double>> timings;  // seconds per stage
};

SampleRecord to_record(const SphereMinimum& s);
EstimateRecord to_record(const ExponentEstimate& e);
VerdictRecord to_record(const SufficiencyVerdict& v);

AnalysisReport make_report(const JetProblem& problem, std::vector<std::string> input,
                           std::string source, const SamplerConfig& cfg,
                           const SufficiencyVerdict& verdict,
                           const std::optional<AgreementReport>& cross = std::nullopt);

/// Non-finite numbers are written as the strings "NaN", "Infinity" and
/// "-Infinity" so that reading back is lossless.
nlohmann::ordered_json to_json(const AnalysisReport& report);
AnalysisReport report_from_json(const nlohmann::ordered_json& j);
/// Two-space indented JSON followed by a newline.
std::string serialize(const AnalysisReport& report);

/// Problems found in a serialized report; empty when it is valid.
std::vector<std::string> validate_report(const nlohmann::ordered_json& j);

/// radius,min_value,x1..xn[,y1..ym], one row per radius (decreasing), %.17g.
void write_csv(std::ostream& out, const AnalysisReport& report);

bool operator==(const SampleRecord& a, const SampleRecord& b);
bool operator==(const EstimateRecord& a, const EstimateRecord& b);
bool operator==(const VerdictRecord& a, const VerdictRecord& b);
bool operator==(const CrossRecord& a, const CrossRecord& b);
bool operator==(const ProblemRecord& a, const ProblemRecord& b);
bool operator==(const AnalysisReport& a, const AnalysisReport& b);
// NaN compares equal to NaN here: the point is lossless round-tripping.

}  // namespace jetcheck
