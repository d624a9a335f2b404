// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OSM_REPORT_HPP_
#define OSM_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "osm/estimate.hpp"

namespace osm {

inline constexpr int kReportSchemaVersion = 1;

std::string to_string(Estimator estimator);
Estimator parse_estimator(const std::string& name);  // "realized" or "conditional"

struct AlgorithmRow {
  std::string name;
  std::string estimator = "realized";
  std::int64_t trials = 0;
  double mean = 0.0;
  double std_error = 0.0;
  std::optional<double> ratio_vs_opt_online;
  std::optional<double> ratio_vs_exante;
};

struct OracleValues {
  std::optional<double> opt_online;
  std::optional<double> offline_opt;
  std::optional<double> offline_stderr;
  std::optional<double> lp_exante;
};

struct LemmaRow {
  std::string id;
  int premise_held = 0;
  int passed = 0;
  int required = 0;
  bool ok = false;
};

struct SimulationReport {
  int schema_version = kReportSchemaVersion;
  std::string digest;
  int n = 0;
  int T = 0;
  nlohmann::json config = nlohmann::json::object();
  OracleValues oracles;
  std::vector<AlgorithmRow> algorithms;
  std::vector<LemmaRow> lemma_checks;
  nlohmann::json pipeline;  // null unless a pipeline run is included
  std::optional<double> wall_time_s;

  // Fills the ratio columns from whichever oracles were run.
  void compute_ratios();
  nlohmann::json to_json() const;
  // Throws ParameterError on a malformed report.
  static SimulationReport from_json(const nlohmann::json& j);
};

// Merges runs on one instance: algorithm and lemma rows are concatenated,
// oracle values taken from the first report that has them. Throws
// ParameterError when digests differ.
SimulationReport merge_reports(const std::vector<SimulationReport>& reports);

// RFC 4180 with CRLF line ends, one row per algorithm. The column set is
// fixed; missing values are empty fields.
const std::vector<std::string>& csv_columns();
std::string reports_to_csv(const std::vector<SimulationReport>& reports);

}  // namespace osm

#endif  // OSM_REPORT_HPP_
