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

#include "osm/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <tuple>

#include "osm/errors.hpp"
#include "osm/parallel.hpp"
#include "osm/rng.hpp"

namespace osm {
namespace {

constexpr double kTieTol = 1e-12;

bool beats(double candidate, double incumbent) {
  return candidate > incumbent + kTieTol * std::max(1.0, std::abs(incumbent));
}

bool at_least(double candidate, double incumbent) {
  return candidate >= incumbent - kTieTol * std::max(1.0, std::abs(incumbent));
}

}  // namespace

OnlineOptResult online_optimum(const Instance& instance, std::span<const int> perm) {
  const int n = instance.n;
  const int T = instance.T;
  if (n > kMaxDpOffline) {
    throw CapacityError("online_optimum: n = " + std::to_string(n) + " exceeds the cap of " +
                        std::to_string(kMaxDpOffline) + " offline vertices");
  }
  if (static_cast<int>(perm.size()) != T) throw ParameterError("online_optimum: perm length must equal T");
  const std::uint32_t full = 1u << n;
  OnlineOptResult out;
  out.policy = PolicyTable(T, n);

  std::vector<double> next(full, 0.0);
  std::vector<double> cur(full, 0.0);
  for (int k = T - 1; k >= 0; --k) {
    const int t = perm[static_cast<std::size_t>(k)];
    const double p = instance.p[static_cast<std::size_t>(t)];
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      const double skip = next[mask];
      int best_i = -1;
      double best = -std::numeric_limits<double>::infinity();
      if (p > 0.0) {
        for (int i = 0; i < n; ++i) {
          if ((mask >> i) & 1u) continue;
          const double w = instance.w(i, t);
          if (w <= 0.0) continue;
          const double v = w + next[mask | (1u << i)];
          if (best_i < 0 || beats(v, best)) {
            best_i = i;
            best = v;
          }
        }
      }
      if (best_i >= 0 && at_least(best, skip)) {
        out.policy.set(k, mask, best_i);
        cur[mask] = p * best + (1.0 - p) * skip;
      } else {
        cur[mask] = skip;
      }
    }
    std::swap(cur, next);
  }

  // Forward propagation of the matched-set distribution.
  Matrix y(n, T);
  std::vector<double> dist(full, 0.0);
  std::vector<double> nd(full, 0.0);
  dist[0] = 1.0;
  for (int k = 0; k < T; ++k) {
    const int t = perm[static_cast<std::size_t>(k)];
    const double p = instance.p[static_cast<std::size_t>(t)];
    std::fill(nd.begin(), nd.end(), 0.0);
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      const double pr = dist[mask];
      if (pr == 0.0) continue;
      const int a = out.policy.action(k, mask);
      if (a >= 0) {
        y(a, t) += pr * p;
        nd[mask | (1u << a)] += pr * p;
        nd[mask] += pr * (1.0 - p);
      } else {
        nd[mask] += pr;
      }
    }
    std::swap(dist, nd);
  }
  double value = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int t = 0; t < T; ++t) value += instance.w(i, t) * y(i, t);
  }
  out.profile.value = value;
  out.profile.y_star = std::move(y);
  out.profile.order.assign(perm.begin(), perm.end());
  return out;
}

OnlineOptProfile online_optimum_stochastic(const Instance& instance) {
  const auto orders = arrival_orders(instance.arrival);
  if (orders.size() == 1) return online_optimum(instance, orders.front().perm).profile;
  OnlineOptProfile out;
  out.y_star = Matrix(instance.n, instance.T);
  for (const auto& o : orders) {
    const auto res = online_optimum(instance, o.perm);
    out.value += o.prob * res.profile.value;
    for (int i = 0; i < instance.n; ++i) {
      for (int t = 0; t < instance.T; ++t) out.y_star(i, t) += o.prob * res.profile.y_star(i, t);
    }
  }
  return out;
}

bool verify_online_relaxation(const OnlineOptProfile& profile, const Instance& instance, double tol) {
  const Matrix& y = profile.y_star;
  if (y.rows() != instance.n || y.cols() != instance.T) return false;
  for (int t = 0; t < instance.T; ++t) {
    double col = 0.0;
    for (int i = 0; i < instance.n; ++i) col += y(i, t);
    if (col > instance.p[static_cast<std::size_t>(t)] + tol) return false;
  }
  for (int i = 0; i < instance.n; ++i) {
    double row = 0.0;
    for (int t = 0; t < instance.T; ++t) {
      if (y(i, t) < -tol) return false;
      row += y(i, t);
    }
    if (row > 1.0 + tol) return false;
  }
  if (profile.order.empty()) return true;
  for (int i = 0; i < instance.n; ++i) {
    double before = 0.0;
    for (int t : profile.order) {
      if (y(i, t) > (1.0 - before) * instance.p[static_cast<std::size_t>(t)] + tol) return false;
      before += y(i, t);
    }
  }
  return true;
}

double max_weight_matching(const Matrix& w, std::vector<int>& row_match) {
  const bool transpose = w.rows() > w.cols();
  const int n = transpose ? w.cols() : w.rows();
  const int m = transpose ? w.rows() : w.cols();
  row_match.assign(static_cast<std::size_t>(w.rows()), -1);
  if (n == 0) return 0.0;
  auto cost = [&](int r, int c) { return transpose ? -w(c - 1, r - 1) : -w(r - 1, c - 1); };

  // Shortest augmenting path Hungarian method, 1-indexed with a virtual column 0.
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> u(static_cast<std::size_t>(n) + 1, 0.0), v(static_cast<std::size_t>(m) + 1, 0.0);
  std::vector<int> match_col(static_cast<std::size_t>(m) + 1, 0), way(static_cast<std::size_t>(m) + 1, 0);
  std::vector<double> minv(static_cast<std::size_t>(m) + 1);
  std::vector<char> used(static_cast<std::size_t>(m) + 1);
  for (int r = 1; r <= n; ++r) {
    match_col[0] = r;
    int c0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[static_cast<std::size_t>(c0)] = 1;
      const int r0 = match_col[static_cast<std::size_t>(c0)];
      double delta = inf;
      int c1 = 0;
      for (int c = 1; c <= m; ++c) {
        if (used[static_cast<std::size_t>(c)]) continue;
        const double cur = cost(r0, c) - u[static_cast<std::size_t>(r0)] - v[static_cast<std::size_t>(c)];
        if (cur < minv[static_cast<std::size_t>(c)]) {
          minv[static_cast<std::size_t>(c)] = cur;
          way[static_cast<std::size_t>(c)] = c0;
        }
        if (minv[static_cast<std::size_t>(c)] < delta) {
          delta = minv[static_cast<std::size_t>(c)];
          c1 = c;
        }
      }
      for (int c = 0; c <= m; ++c) {
        if (used[static_cast<std::size_t>(c)]) {
          u[static_cast<std::size_t>(match_col[static_cast<std::size_t>(c)])] += delta;
          v[static_cast<std::size_t>(c)] -= delta;
        } else {
          minv[static_cast<std::size_t>(c)] -= delta;
        }
      }
      c0 = c1;
    } while (match_col[static_cast<std::size_t>(c0)] != 0);
    do {
      const int c1 = way[static_cast<std::size_t>(c0)];
      match_col[static_cast<std::size_t>(c0)] = match_col[static_cast<std::size_t>(c1)];
      c0 = c1;
    } while (c0 != 0);
  }
  double total = 0.0;
  for (int c = 1; c <= m; ++c) {
    const int r = match_col[static_cast<std::size_t>(c)];
    if (r == 0) continue;
    const int row = transpose ? c - 1 : r - 1;
    const int col = transpose ? r - 1 : c - 1;
    const double weight = w(row, col);
    total += weight;
    if (weight > 0.0) row_match[static_cast<std::size_t>(row)] = col;
  }
  return total;
}

double max_weight_matching(const Matrix& w) {
  std::vector<int> unused;
  return max_weight_matching(w, unused);
}

namespace {

constexpr std::uint64_t kExactChunk = 1024;

struct ExactPlan {
  std::vector<int> certain;
  std::vector<int> uncertain;
};

ExactPlan exact_plan(const Instance& instance) {
  if (instance.T > kMaxExactOnline) {
    throw CapacityError("offline_optimum: exact mode supports T <= " + std::to_string(kMaxExactOnline));
  }
  ExactPlan plan;
  for (int t = 0; t < instance.T; ++t) {
    const double p = instance.p[static_cast<std::size_t>(t)];
    if (p >= 1.0) {
      plan.certain.push_back(t);
    } else if (p > 0.0) {
      plan.uncertain.push_back(t);
    }
  }
  return plan;
}

double realization_matching(const Instance& instance, const std::vector<int>& cols) {
  Matrix sub(instance.n, static_cast<int>(cols.size()));
  for (int i = 0; i < instance.n; ++i) {
    for (std::size_t c = 0; c < cols.size(); ++c) sub(i, static_cast<int>(c)) = instance.w(i, cols[c]);
  }
  return max_weight_matching(sub);
}

double exact_chunk(const Instance& instance, const ExactPlan& plan, std::uint64_t begin, std::uint64_t end) {
  double sum = 0.0;
  std::vector<int> cols;
  for (std::uint64_t mask = begin; mask < end; ++mask) {
    double prob = 1.0;
    cols = plan.certain;
    for (std::size_t j = 0; j < plan.uncertain.size(); ++j) {
      const int t = plan.uncertain[j];
      const double p = instance.p[static_cast<std::size_t>(t)];
      if ((mask >> j) & 1u) {
        prob *= p;
        cols.push_back(t);
      } else {
        prob *= 1.0 - p;
      }
    }
    if (prob == 0.0) continue;
    sum += prob * realization_matching(instance, cols);
  }
  return sum;
}

}  // namespace

double offline_optimum_exact_serial(const Instance& instance) {
  const ExactPlan plan = exact_plan(instance);
  const std::uint64_t total = std::uint64_t{1} << plan.uncertain.size();
  double value = 0.0;
  for (std::uint64_t begin = 0; begin < total; begin += kExactChunk) {
    value += exact_chunk(instance, plan, begin, std::min(total, begin + kExactChunk));
  }
  return value;
}

OfflineResult offline_optimum(const Instance& instance, OfflineMode mode, std::int64_t trials, std::uint64_t seed) {
  require_valid(instance);
  OfflineResult out;
  const int threads = worker_threads();
  if (mode == OfflineMode::kExact) {
    const ExactPlan plan = exact_plan(instance);
    const std::uint64_t total = std::uint64_t{1} << plan.uncertain.size();
    const auto chunks = static_cast<std::int64_t>((total + kExactChunk - 1) / kExactChunk);
    std::vector<double> partial(static_cast<std::size_t>(chunks), 0.0);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (std::int64_t c = 0; c < chunks; ++c) {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * kExactChunk;
      partial[static_cast<std::size_t>(c)] = exact_chunk(instance, plan, begin, std::min(total, begin + kExactChunk));
    }
    for (double v : partial) out.value += v;
    return out;
  }

  if (trials < 1) throw ParameterError("offline_optimum: trials must be positive");
  std::vector<double> values(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(static) num_threads(threads)
  for (std::int64_t k = 0; k < trials; ++k) {
    Rng rng = Rng::stream(seed, static_cast<std::uint64_t>(k));
    std::vector<int> cols;
    for (int t = 0; t < instance.T; ++t) {
      if (rng.bernoulli(instance.p[static_cast<std::size_t>(t)])) cols.push_back(t);
    }
    values[static_cast<std::size_t>(k)] = realization_matching(instance, cols);
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  out.value = sum / static_cast<double>(trials);
  double ss = 0.0;
  for (double v : values) ss += (v - out.value) * (v - out.value);
  out.std_error = trials > 1 ? std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials)) : 0.0;
  return out;
}

namespace {

class UnawareSearch {
 public:
  UnawareSearch(const Instance& instance, const std::vector<WeightedOrder>& orders, const UnawareSearchOptions& opt)
      : inst_(instance), orders_(orders), opt_(opt) {
    if (orders_.size() > 64) throw CapacityError("best_order_unaware: at most 64 arrival orders supported");
    if (instance.n > 30) throw CapacityError("best_order_unaware: too many offline vertices");
  }

  // Expected future value summed over the orders in `alive`, each weighted
  // by its probability.
  double value(std::uint64_t alive, int k, std::uint32_t mask) {
    if (k == inst_.T || alive == 0) return 0.0;
    const auto key = std::make_tuple(alive, k, mask);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (++nodes_ > opt_.max_nodes) {
      throw CapacityError("best_order_unaware: policy tree exceeds " + std::to_string(opt_.max_nodes) + " nodes");
    }

    // Group alive orders by their k-th arrival.
    std::map<int, std::pair<std::uint64_t, double>> next;
    for (std::size_t o = 0; o < orders_.size(); ++o) {
      if (!((alive >> o) & 1u)) continue;
      auto& slot = next[orders_[o].perm[static_cast<std::size_t>(k)]];
      slot.first |= std::uint64_t{1} << o;
      slot.second += orders_[o].prob;
    }
    double total = 0.0;
    for (const auto& [t, group] : next) {
      const auto [sub, mass] = group;
      const double p = inst_.p[static_cast<std::size_t>(t)];
      const double cont = value(sub, k + 1, mask);
      if (p <= 0.0) {
        total += cont;
        continue;
      }
      double best_w = 0.0;
      if (p <= opt_.free_threshold) {
        for (int i = 0; i < inst_.n; ++i) {
          if (!((mask >> i) & 1u)) best_w = std::max(best_w, inst_.w(i, t));
        }
        total += mass * p * best_w + cont;
        continue;
      }
      double best = cont;
      for (int i = 0; i < inst_.n; ++i) {
        if ((mask >> i) & 1u) continue;
        const double w = inst_.w(i, t);
        if (w <= 0.0) continue;
        best = std::max(best, mass * w + value(sub, k + 1, mask | (1u << i)));
      }
      total += p * best + (1.0 - p) * cont;
    }
    memo_.emplace(key, total);
    return total;
  }

  std::uint64_t nodes() const { return nodes_; }

 private:
  const Instance& inst_;
  const std::vector<WeightedOrder>& orders_;
  const UnawareSearchOptions& opt_;
  std::map<std::tuple<std::uint64_t, int, std::uint32_t>, double> memo_;
  std::uint64_t nodes_ = 0;
};

}  // namespace

UnawareSearchResult best_order_unaware(const Instance& instance, const UnawareSearchOptions& options) {
  require_valid(instance);
  const auto orders = arrival_orders(instance.arrival);
  UnawareSearchResult out;
  const std::uint64_t all = orders.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << orders.size()) - 1;
  UnawareSearch search(instance, orders, options);
  out.value = search.value(all, 0, 0);
  for (std::size_t o = 0; o < orders.size(); ++o) out.online_opt += search.value(std::uint64_t{1} << o, 0, 0);
  out.nodes = search.nodes();
  out.ratio = out.online_opt > 0.0 ? out.value / out.online_opt : 1.0;
  return out;
}

}  // namespace osm
