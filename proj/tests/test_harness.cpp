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

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "osm/algorithms.hpp"
#include "osm/errors.hpp"
#include "osm/estimate.hpp"
#include "osm/generators.hpp"
#include "osm/io.hpp"
#include "osm/lp_engine.hpp"
#include "osm/pipeline.hpp"
#include "osm/report.hpp"
#include "osm/suites.hpp"

using namespace osm;

namespace {

Instance sample_instance() {
  RandomInstanceParams p;
  p.n = 4;
  p.T = 7;
  p.density = 0.6;
  p.seed = 21;
  return gen_random_instance(p);
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

SimulationReport sample_report() {
  SimulationReport r;
  r.digest = instance_digest(sample_instance());
  r.n = 4;
  r.T = 7;
  r.config = {{"trials", 10}};
  r.oracles.opt_online = 2.0;
  r.oracles.lp_exante = 4.0;
  r.algorithms.push_back({"baseline", "realized", 10, 1.5, 0.1, std::nullopt, std::nullopt});
  r.algorithms.push_back({"pipe,\"line\"", "conditional", 10, 1.0, 0.0, std::nullopt, std::nullopt});
  r.lemma_checks.push_back({"obs3.1", 3, 3, 1, true});
  r.compute_ratios();
  return r;
}

}  // namespace

TEST_CASE("parallel and serial estimates agree bit for bit") {
  const Instance inst = gen_hard_instance(1e-2);
  const PipelineDecision d = plan(inst, practical_config());
  for (Estimator est : {Estimator::kRealized, Estimator::kConditional}) {
    const Estimate a = estimate(*d.policy, inst, 20000, 3, est);
    const Estimate b = estimate_serial(*d.policy, inst, 20000, 3, est);
    CHECK(same_bits(a.mean, b.mean));
    CHECK(same_bits(a.std_error, b.std_error));
    CHECK(a.trials == 20000);
  }
}

TEST_CASE("a deterministic policy has zero standard error") {
  Instance inst;
  inst.n = 1;
  inst.T = 1;
  inst.w = Matrix(1, 1);
  inst.w(0, 0) = 2.5;
  inst.p = {1.0};
  inst.arrival = FixedOrder{{0}};
  BaselinePolicy pol(inst, solve_ex_ante(inst).solution);
  const Estimate e = estimate(pol, inst, 500, 1);
  CHECK(e.mean == 2.5);
  CHECK(e.std_error == 0.0);
}

TEST_CASE("standard error shrinks with the square root of the trial count") {
  const Instance inst = sample_instance();
  BaselinePolicy pol(inst, solve_ex_ante(inst).solution);
  const Estimate a = estimate(pol, inst, 20000, 2);
  const Estimate b = estimate(pol, inst, 80000, 2);
  CHECK(b.std_error / a.std_error == doctest::Approx(0.5).epsilon(0.2));
}

TEST_CASE("seeds move the mean within its standard error") {
  const Instance inst = sample_instance();
  const FracSolution x = solve_ex_ante(inst).solution;
  BaselinePolicy pol(inst, x);
  const double exact = baseline_value(inst, x);
  int inside = 0;
  const int repeats = 40;
  for (int s = 0; s < repeats; ++s) {
    const Estimate e = estimate(pol, inst, 4000, 100 + static_cast<std::uint64_t>(s));
    if (std::abs(e.mean - exact) <= 4.0 * e.std_error) ++inside;
  }
  CHECK(inside >= 38);
}

TEST_CASE("summarize and the estimator names") {
  const Estimate e = summarize({1.0, 2.0, 3.0, 4.0});
  CHECK(e.mean == 2.5);
  CHECK(e.std_error == doctest::Approx(std::sqrt(5.0 / 3.0 / 4.0)));
  CHECK(parse_estimator(to_string(Estimator::kConditional)) == Estimator::kConditional);
  CHECK(parse_estimator("realized") == Estimator::kRealized);
  CHECK_THROWS_AS(parse_estimator("median"), ParameterError);
}

TEST_CASE("report JSON round-trips") {
  const SimulationReport r = sample_report();
  CHECK(r.algorithms[0].ratio_vs_opt_online == doctest::Approx(0.75));
  CHECK(r.algorithms[0].ratio_vs_exante == doctest::Approx(0.375));
  const nlohmann::json j = r.to_json();
  CHECK(SimulationReport::from_json(j).to_json() == j);
  CHECK(j["pipeline"].is_null());
  CHECK_FALSE(j.contains("wall_time_s"));
  nlohmann::json bad = j;
  bad.erase("algorithms");
  CHECK_THROWS_AS(SimulationReport::from_json(bad), ParameterError);
  bad = j;
  bad["schema_version"] = 99;
  CHECK_THROWS_AS(SimulationReport::from_json(bad), ParameterError);
}

TEST_CASE("CSV export has fixed columns and quotes fields") {
  const std::string csv = reports_to_csv({sample_report()});
  std::string header;
  for (std::size_t k = 0; k < csv_columns().size(); ++k) header += (k ? "," : "") + csv_columns()[k];
  CHECK(csv.rfind(header + "\r\n", 0) == 0);
  CHECK(csv.find("\"pipe,\"\"line\"\"\"") != std::string::npos);
  std::size_t lines = 0;
  for (std::size_t k = 0; k + 1 < csv.size(); ++k) lines += csv[k] == '\r' && csv[k + 1] == '\n';
  CHECK(lines == 3);
  CHECK(csv_columns().front() == "instance_digest");
}

TEST_CASE("merging reports") {
  SimulationReport a = sample_report();
  SimulationReport b = sample_report();
  b.oracles = {};
  b.algorithms.resize(1);
  const SimulationReport m = merge_reports({b, a});
  CHECK(m.algorithms.size() == 3);
  CHECK(m.oracles.opt_online == 2.0);
  CHECK(m.algorithms[0].ratio_vs_opt_online == doctest::Approx(0.75));
  b.digest = "0000000000000000";
  CHECK_THROWS_AS(merge_reports({a, b}), ParameterError);
}

TEST_CASE("suite registry") {
  CHECK(suite_ids().size() == 13);
  CHECK_THROWS_AS(run_suite("lemma9.9"), ParameterError);
  SuiteOptions o;
  o.trials = 0;
  CHECK_THROWS_AS(run_suite("obs3.1", o), ParameterError);
  const SuiteResult r = run_suite("obs3.1");
  CHECK(r.ok());
  CHECK(r.to_json()["id"] == "obs3.1");
}
