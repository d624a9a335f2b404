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

// Runs the verification suites behind each acceptance criterion and prints
// one PASS/FAIL line per criterion. Exits non-zero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "osm/suites.hpp"

namespace {

struct Criterion {
  int number;
  std::string title;
  std::vector<std::string> suites;
  std::optional<double> time_limit_s;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list = {
      {1, "baseline floor on 200 random instances", {"lemma2.1"}, 300.0},
      {2, "order-unaware search on the hard instance", {"obs3.1"}, 30.0},
      {3, "free-probability bounds on 500 premise-held rows", {"lemma4.1"}, std::nullopt},
      {4, "decomposition invariants on 200 near-tight instances", {"lemma4.2"}, std::nullopt},
      {5, "DP profiles satisfy the online relaxation", {"eq1"}, std::nullopt},
      {6, "small-slackness bound on 50 mixture-routed instances", {"lemma6.1"}, std::nullopt},
      {7, "stage-2 weight, reallocation gain and submodular LP", {"lemma6.2", "lemma6.3", "claimA1"}, std::nullopt},
      {8, "large-slackness solution on 50 two-optima instances", {"thm5.1"}, std::nullopt},
      {9, "end-to-end floor against the online optimum", {"floor"}, std::nullopt},
      {10, "benchmark chain ALG <= OPT_online <= offline <= LP", {"chain"}, std::nullopt},
      {11, "warm-up reaches 0.70 of the ex-ante bound", {"warmup"}, std::nullopt},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance checks"};
  osm::SuiteOptions options;
  bool verbose = false;
  app.add_option("--trials", options.trials, "Monte Carlo trials per instance")->check(CLI::PositiveNumber);
  app.add_option("--seed", options.seed, "master seed");
  app.add_flag("-v,--verbose", verbose, "print failures and notes");
  CLI11_PARSE(app, argc, argv);

  int failed = 0;
  for (const Criterion& c : criteria()) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string summary;
    std::vector<std::string> lines;
    for (const std::string& id : c.suites) {
      try {
        const osm::SuiteResult r = osm::run_suite(id, options);
        ok = ok && r.ok();
        if (!summary.empty()) summary += "; ";
        summary += id + " " + std::to_string(r.passed) + "/" + std::to_string(r.premise_held) + " (need " +
                   std::to_string(r.required) + ")";
        for (const std::string& f : r.failures) lines.push_back(id + ": " + f);
        if (verbose) {
          for (const std::string& n : r.notes) lines.push_back(id + " note: " + n);
        }
      } catch (const std::exception& e) {
        ok = false;
        summary += id + " threw: " + e.what();
      }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s && secs > *c.time_limit_s) {
      ok = false;
      lines.push_back("time limit " + std::to_string(*c.time_limit_s) + " s exceeded");
    }
    std::printf("%s criterion %d: %s: %s [%.1f s]\n", ok ? "PASS" : "FAIL", c.number, c.title.c_str(),
                summary.c_str(), secs);
    for (std::size_t k = 0; k < lines.size() && (verbose || k < 10); ++k) std::printf("    %s\n", lines[k].c_str());
    std::fflush(stdout);
    failed += !ok;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria().size()) - failed, criteria().size());
  return failed == 0 ? 0 : 1;
}
