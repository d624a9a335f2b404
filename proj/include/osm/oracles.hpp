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

#ifndef OSM_ORACLES_HPP_
#define OSM_ORACLES_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "osm/instance.hpp"
#include "osm/matrix.hpp"

namespace osm {

inline constexpr int kMaxDpOffline = 16;
inline constexpr int kMaxExactOnline = 20;

struct OnlineOptProfile {
  double value = 0.0;
  Matrix y_star;
  std::vector<int> order;
};

// action(k, mask): offline vertex matched when the k-th arrival realizes
// with matched set `mask`, or -1 to skip.
class PolicyTable {
 public:
  PolicyTable() = default;
  PolicyTable(int steps, int n) : steps_(steps), n_(n), actions_(static_cast<std::size_t>(steps) << n, -1) {}

  int steps() const { return steps_; }
  int n() const { return n_; }
  int action(int k, std::uint32_t mask) const { return actions_[index(k, mask)]; }
  void set(int k, std::uint32_t mask, int a) { actions_[index(k, mask)] = static_cast<std::int8_t>(a); }

 private:
  std::size_t index(int k, std::uint32_t mask) const { return (static_cast<std::size_t>(k) << n_) | mask; }

  int steps_ = 0;
  int n_ = 0;
  std::vector<std::int8_t> actions_;
};

struct OnlineOptResult {
  OnlineOptProfile profile;
  PolicyTable policy;
};

// Order-aware optimum for a fixed order by backward DP over
// (arrival position, matched set). Ties prefer matching, then the lowest
// offline index. Throws CapacityError if n > kMaxDpOffline.
OnlineOptResult online_optimum(const Instance& instance, std::span<const int> perm);

// Probability-weighted average of the per-order optima of the instance's
// arrival model. `order` of the result is empty for stochastic models.
OnlineOptProfile online_optimum_stochastic(const Instance& instance);

// y*_it <= (1 - sum_{s before t} y*_is) p_t for all edges, plus membership in P.
bool verify_online_relaxation(const OnlineOptProfile& profile, const Instance& instance, double tol = 1e-9);

// Maximum weight matching of the n x m nonnegative matrix (Hungarian
// algorithm). Unmatched vertices are allowed.
double max_weight_matching(const Matrix& w);
double max_weight_matching(const Matrix& w, std::vector<int>& row_match);

enum class OfflineMode { kExact, kMonteCarlo };

struct OfflineResult {
  double value = 0.0;
  double std_error = 0.0;
};

// Expected maximum weight matching over realizations. Exact mode enumerates
// realizations of the vertices with 0 < p < 1 and requires T <= 20.
OfflineResult offline_optimum(const Instance& instance, OfflineMode mode, std::int64_t trials = 100000,
                              std::uint64_t seed = 1);
double offline_optimum_exact_serial(const Instance& instance);

struct UnawareSearchResult {
  double value = 0.0;
  double online_opt = 0.0;
  double ratio = 1.0;
  std::uint64_t nodes = 0;
};

struct UnawareSearchOptions {
  double free_threshold = 1e-2;  // p_t at or below is treated as p -> 0
  std::uint64_t max_nodes = 10'000'000;
};

// Best order-unaware policy by backward induction over the information trie
// (observed arrivals x matched set). Vertices with p_t <= free_threshold are
// taken in the limit p -> 0: they add p_t * max unmatched neighbour weight and
// do not consume their neighbour. The order-aware benchmark is the same
// model solved per order.
UnawareSearchResult best_order_unaware(const Instance& instance, const UnawareSearchOptions& options = {});

}  // namespace osm

#endif  // OSM_ORACLES_HPP_
