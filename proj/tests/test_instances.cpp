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
#include <set>
#include <string>

#include "doctest.h"
#include "osm/errors.hpp"
#include "osm/generators.hpp"
#include "osm/io.hpp"
#include "osm/lp_engine.hpp"

using namespace osm;

namespace {

Instance two_by_two() {
  Instance inst;
  inst.n = 2;
  inst.T = 2;
  inst.w = Matrix(2, 2);
  inst.w(0, 0) = 1.0;
  inst.w(1, 1) = 2.0;
  inst.p = {0.5, 1.0};
  inst.arrival = FixedOrder{{0, 1}};
  return inst;
}

bool has_field(const std::vector<Violation>& v, const std::string& field, const std::string& text) {
  for (const Violation& x : v) {
    if (x.field == field && x.message.find(text) != std::string::npos) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("validate accepts a well-formed instance") { CHECK(validate(two_by_two()).empty()); }

TEST_CASE("validate names the offending probability") {
  Instance inst = two_by_two();
  inst.p[0] = 1.5;
  const auto v = validate(inst);
  REQUIRE(v.size() == 1);
  CHECK(v[0].field == "probs[0]");
  CHECK(v[0].message.find("out of [0,1]") != std::string::npos);
}

TEST_CASE("validate names the negative weight") {
  Instance inst = two_by_two();
  inst.w(0, 1) = -1.0;
  CHECK(has_field(validate(inst), "weights[0][1]", "negative"));
  CHECK_THROWS_AS(require_valid(inst), ParameterError);
}

TEST_CASE("validate checks permutations and order probabilities") {
  Instance inst = two_by_two();
  inst.arrival = FixedOrder{{0, 0}};
  CHECK_FALSE(validate(inst).empty());
  inst.arrival = StochasticOrder{{{{0, 1}, 0.5}, {{1, 0}, 0.4}}};
  CHECK_FALSE(validate(inst).empty());
  inst.arrival = StochasticOrder{{{{0, 1}, 0.5}, {{1, 0}, 0.5}}};
  CHECK(validate(inst).empty());
}

TEST_CASE("hard instance has the two-order structure") {
  const Instance inst = gen_hard_instance(1e-4);
  CHECK(inst.n == 3);
  CHECK(inst.T == 6);
  const auto orders = arrival_orders(inst.arrival);
  REQUIRE(orders.size() == 2);
  // F1 F2 D12 D13 F3 D23 and F1 F2 D12 D23 F3 D13.
  CHECK(orders[0].perm == std::vector<int>{0, 1, 3, 4, 2, 5});
  CHECK(orders[1].perm == std::vector<int>{0, 1, 3, 5, 2, 4});
  CHECK(orders[0].prob == doctest::Approx(0.5));
  for (int k = 0; k < 3; ++k) {
    CHECK(inst.p[static_cast<std::size_t>(k)] == 1e-4);
    for (int i = 0; i < 3; ++i) CHECK(inst.w(i, k) == (i == k ? 1e4 : 0.0));
    CHECK(inst.w(k, k) * inst.p[static_cast<std::size_t>(k)] == doctest::Approx(1.0));
  }
  const int a[] = {0, 0, 1};
  const int b[] = {1, 2, 2};
  for (int d = 0; d < 3; ++d) {
    const int t = 3 + d;
    CHECK(inst.p[static_cast<std::size_t>(t)] == 1.0);
    for (int i = 0; i < 3; ++i) CHECK(inst.w(i, t) == ((i == a[d] || i == b[d]) ? 1.0 : 0.0));
  }
  CHECK_THROWS_AS(gen_hard_instance(0.0), ParameterError);
  CHECK_THROWS_AS(gen_hard_instance(0.05), ParameterError);
}

TEST_CASE("warm-up generator satisfies every assumption") {
  for (int n = 1; n <= 6; ++n) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
      const WarmupInstance wu = gen_warmup_instance(n, 1e-4, seed);
      CHECK(check_warmup(wu).empty());
      for (int i = 0; i < n; ++i) {
        double v = 0.0;
        for (int t : wu.free_of(i)) v += wu.v[static_cast<std::size_t>(t)];
        CHECK(v == doctest::Approx(wu.w_i[static_cast<std::size_t>(i)]).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("warm-up n = 1 is one deterministic neighbour plus balanced free mass") {
  const WarmupInstance wu = gen_warmup_instance(1, 1e-3, 3);
  REQUIRE(wu.det_set.size() == 1);
  const int d = wu.det_set[0];
  double v = 0.0;
  for (int t : wu.free_set) v += wu.v[static_cast<std::size_t>(t)];
  CHECK(v == doctest::Approx(wu.base.w(0, d)));
}

TEST_CASE("warm-up generator is deterministic and checker catches broken balance") {
  const WarmupInstance a = gen_warmup_instance(3, 1e-4, 7);
  const WarmupInstance b = gen_warmup_instance(3, 1e-4, 7);
  CHECK(serialize_instance(a.base) == serialize_instance(b.base));
  WarmupInstance broken = a;
  broken.base.w(broken.unique_map[static_cast<std::size_t>(broken.free_set[0])], broken.free_set[0]) *= 2.0;
  CHECK_FALSE(check_warmup(broken).empty());
}

TEST_CASE("infer_warmup recovers the structure") {
  const WarmupInstance a = gen_warmup_instance(4, 1e-4, 11);
  const WarmupInstance b = infer_warmup(a.base);
  CHECK(b.free_set == a.free_set);
  CHECK(b.det_set == a.det_set);
  CHECK(b.unique_map == a.unique_map);
  CHECK_THROWS_AS(infer_warmup(gen_hard_instance(1e-4)), PreconditionError);
}

TEST_CASE("random instances are reproducible") {
  RandomInstanceParams p;
  p.n = 4;
  p.T = 8;
  p.density = 0.5;
  p.seed = 1;
  CHECK(serialize_instance(gen_random_instance(p)) == serialize_instance(gen_random_instance(p)));
  p.seed = 2;
  const Instance other = gen_random_instance(p);
  p.seed = 1;
  CHECK(serialize_instance(other) != serialize_instance(gen_random_instance(p)));
}

TEST_CASE("density 1 leaves no structural zeros") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    RandomInstanceParams p;
    p.n = 5;
    p.T = 7;
    p.density = 1.0;
    p.dist = WeightDist::kLognormal;
    p.seed = seed;
    const Instance inst = gen_random_instance(p);
    for (int i = 0; i < inst.n; ++i) {
      for (int t = 0; t < inst.T; ++t) CHECK(inst.w(i, t) > 0.0);
    }
    for (double q : inst.p) CHECK((q > 0.0 && q <= 1.0));
    CHECK(std::get<FixedOrder>(inst.arrival).perm == identity_perm(inst.T));
  }
}

TEST_CASE("prophet-hard weights put weight 1/p on probability p") {
  RandomInstanceParams p;
  p.n = 4;
  p.T = 10;
  p.density = 1.0;
  p.dist = WeightDist::kProphetHard;
  p.hard_p = 0.05;
  p.seed = 5;
  const Instance inst = gen_random_instance(p);
  bool found = false;
  for (int t = 0; t < inst.T; ++t) {
    for (int i = 0; i < inst.n; ++i) {
      if (inst.w(i, t) == 20.0 && inst.p[static_cast<std::size_t>(t)] == 0.05) found = true;
    }
  }
  CHECK(found);
  CHECK(parse_weight_dist("prophet-hard") == WeightDist::kProphetHard);
  CHECK_THROWS_AS(parse_weight_dist("cauchy"), ParameterError);
}

TEST_CASE("normalize scales weights") {
  Instance one;
  one.n = 1;
  one.T = 1;
  one.w = Matrix(1, 1);
  one.w(0, 0) = 5.0;
  one.p = {1.0};
  one.arrival = FixedOrder{{0}};
  CHECK(normalize(one, 5.0).w(0, 0) == 1.0);
  CHECK_THROWS_AS(normalize(one, 0.0), ParameterError);

  const Instance hard = gen_hard_instance(1e-4);
  const double lp = solve_ex_ante(hard).value;
  const Instance h = normalize(hard, lp);
  CHECK(h.w(0, 1) == 0.0);
  CHECK(h.w(0, 3) == doctest::Approx(1.0 / lp));
  CHECK(solve_ex_ante(h).value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("instance JSON round-trips byte for byte") {
  const Instance insts[] = {gen_hard_instance(1e-4), gen_warmup_instance(3, 1e-4, 7).base,
                            gen_near_tight(3, 1e-2, 4).instance};
  for (const Instance& inst : insts) {
    const std::string text = serialize_instance(inst);
    CHECK(serialize_instance(parse_instance(text)) == text);
    CHECK(instance_digest(parse_instance(text)) == instance_digest(inst));
  }
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_instance("{\n  \"n\": 1,\n  \"T\": }");
    FAIL("expected a parse error");
  } catch (const InstanceParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.column() > 1);
  }
  CHECK_THROWS_AS(parse_instance(R"({"n":1,"T":1,"p":[0.5],"w":[[1,2]],"arrival":{"kind":"fixed","perm":[0]}})"),
                  InstanceParseError);
  CHECK_THROWS_AS(parse_instance(R"({"n":1,"T":1,"p":[2.0],"w":[[1]],"arrival":{"kind":"fixed","perm":[0]}})"),
                  ParameterError);
}
