// Copyright 2026 The Synthweb Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "synthweb/evalpipe/grade.hpp"
#include "synthweb/jsonio.hpp"

namespace synthweb::stats {

inline constexpr double kZ95 = 1.96;
// Smallest p-value printed in reports.
inline constexpr double kPValueFloor = 1e-16;

struct ProportionCI {
  int successes = 0;
  int n = 0;
  double point = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double z_crit = kZ95;
};

// Wilson score interval. confidence = 0.95 uses z = 1.96 exactly.
ProportionCI wilson_ci(int successes, int n, double confidence = 0.95);

struct SignificanceResult {
  double p1 = 0.0, p2 = 0.0;
  int n1 = 0, n2 = 0;
  double delta_points = 0.0;  // 100 * (p1 - p2)
  double z = 0.0;
  double p_value = 1.0;           // two-sided, unfloored
  double p_value_reported = 1.0;  // max(p_value, kPValueFloor)
};

// Pooled two-proportion z-test, two-sided.
SignificanceResult two_prop_z(int s1, int n1, int s2, int n2);

struct ClusterSummary {
  std::vector<double> accuracies;
  double mean = 0.0;
  double half_width = 0.0;  // 95% Student-t
  int n_clusters = 0;
};

ClusterSummary cluster_means(const std::vector<double>& cluster_accuracies);

struct ConfidencePoint {
  double confidence = 0.0;  // in [0, 1]
  bool correct = false;
};

struct CalibrationBin {
  double lo = 0.0, hi = 0.0;
  int count = 0;
  double mean_confidence = 0.0;
  double accuracy = 0.0;
};

struct CalibrationReport {
  double ece = 0.0;
  double brier = 0.0;
  int n = 0;
  std::vector<CalibrationBin> bins;
};

// Bin of a confidence in [0, 1] among `bins` right-closed equal-width bins;
// 0 falls in the first bin.
int calibration_bin(double confidence, int bins);
double ece(const std::vector<ConfidencePoint>& points, int bins = 10);
double brier(const std::vector<ConfidencePoint>& points);
CalibrationReport calibration(const std::vector<ConfidencePoint>& points, int bins = 10);

struct ToolUsageSummary {
  double avg_calls = 0.0;
  double p_ge5 = 0.0;
  int n = 0;
};

ToolUsageSummary tool_usage(const std::vector<int>& calls_per_session);

// ------------------------------------------------------------------ report

inline constexpr std::string_view kReportSchema = "synthweb.report/1";

struct ReportInput {
  std::vector<eval::Grade> grades;
  // Per-world content statistics from run manifests, keyed by world id.
  std::map<std::string, json> content_stats;
  // Expired and aborted sessions count as incorrect; otherwise they leave
  // the accuracy denominator.
  bool aborted_incorrect = true;
};

// All report tables as one JSON document. Throws kInvalidArgument listing
// orphaned pairing keys when both conditions are present but unmatched, and
// on mixed grader or schema versions.
json build_report(const ReportInput& input);

std::string report_markdown(const json& report);
// One CSV document per table, keyed by table name.
std::map<std::string, std::string> report_csv(const json& report);
void write_report(const std::filesystem::path& out_dir, const json& report);

}  // namespace synthweb::stats
