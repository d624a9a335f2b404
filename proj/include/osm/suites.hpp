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

#ifndef OSM_SUITES_HPP_
#define OSM_SUITES_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace osm {

struct SuiteOptions {
  std::int64_t trials = 100000;  // Monte Carlo trials per instance
  std::uint64_t seed = 1;
};

// Outcome of a verification suite. Samples whose premise fails are counted
// but not checked.
struct SuiteResult {
  std::string id;
  std::string description;
  int samples = 0;
  int premise_held = 0;
  int passed = 0;
  int required = 1;  // minimum number of premise-held samples
  std::vector<std::string> failures;
  std::vector<std::string> notes;
  nlohmann::json details = nlohmann::json::object();

  bool ok() const { return premise_held >= required && passed == premise_held; }
  nlohmann::json to_json() const;
};

// lemma2.1 lemma4.1 lemma4.2 lemma6.1 lemma6.2 lemma6.3 claimA1 obs3.1 eq1,
// then thm5.1 floor chain warmup.
const std::vector<std::string>& suite_ids();

// Throws ParameterError for an unknown id.
SuiteResult run_suite(const std::string& id, const SuiteOptions& options = {});

}  // namespace osm

#endif  // OSM_SUITES_HPP_
