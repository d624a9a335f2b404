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

#include "osm/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "osm/errors.hpp"
#include "osm/oracles.hpp"

namespace osm {

Instance gen_hard_instance(double p_free) {
  if (!(p_free > 0.0 && p_free <= 1e-2)) throw ParameterError("gen_hard_instance: p_free must lie in (0, 1e-2]");
  Instance inst;
  inst.n = 3;
  inst.T = 6;
  inst.w = Matrix(3, 6);
  inst.p = {p_free, p_free, p_free, 1.0, 1.0, 1.0};
  for (int k = 0; k < 3; ++k) inst.w(k, k) = 1.0 / p_free;
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (int d = 0; d < 3; ++d) {
    inst.w(pairs[d][0], 3 + d) = 1.0;
    inst.w(pairs[d][1], 3 + d) = 1.0;
  }
  // F1 F2 D12 D13 F3 D23 and F1 F2 D12 D23 F3 D13.
  inst.arrival = StochasticOrder{{{{0, 1, 3, 4, 2, 5}, 0.5}, {{0, 1, 3, 5, 2, 4}, 0.5}}};
  return inst;
}

std::vector<int> WarmupInstance::free_of(int i) const {
  std::vector<int> out;
  for (int t : free_set) {
    if (unique_map[static_cast<std::size_t>(t)] == i) out.push_back(t);
  }
  return out;
}

WarmupInstance gen_warmup_instance(int n, double p_free, std::uint64_t seed) {
  if (n < 1) throw ParameterError("gen_warmup_instance: n must be at least 1");
  if (!(p_free > 0.0 && p_free <= 1e-2)) throw ParameterError("gen_warmup_instance: p_free must lie in (0, 1e-2]");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> free_count(1, 3);

  struct Vertex {
    std::vector<std::pair<int, double>> edges;
    double p;
    int owner;  // offline vertex for free and partner vertices, -1 for distractors
    bool partner;
  };
  std::vector<Vertex> verts;
  std::vector<double> w_i(static_cast<std::size_t>(n));
  std::vector<int> partner_idx(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double wi = 1.0 + unit(gen);
    w_i[static_cast<std::size_t>(i)] = wi;
    partner_idx[static_cast<std::size_t>(i)] = static_cast<int>(verts.size());
    verts.push_back({{{i, wi}}, 1.0, i, true});
    const int k = free_count(gen);
    std::vector<double> share(static_cast<std::size_t>(k));
    for (double& s : share) s = 0.5 + unit(gen);
    const double total = std::accumulate(share.begin(), share.end(), 0.0);
    for (double s : share) {
      const double v = wi * s / total;
      verts.push_back({{{i, v / p_free}}, p_free, i, false});
    }
  }
  if (n >= 2) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int distractors = 1 + static_cast<int>(unit(gen) * n);
    for (int d = 0; d < distractors; ++d) {
      const int a = pick(gen);
      int b = pick(gen);
      while (b == a) b = pick(gen);
      const double u = 0.3 + 0.6 * unit(gen);
      const double wt = u * std::min(w_i[static_cast<std::size_t>(a)], w_i[static_cast<std::size_t>(b)]);
      verts.push_back({{{std::min(a, b), wt}, {std::max(a, b), wt}}, 1.0, -1, false});
    }
    for (int i = 0; i < n; ++i) {
      if (unit(gen) >= 0.5) continue;
      std::vector<int> heavier;
      for (int j = 0; j < n; ++j) {
        if (j != i && w_i[static_cast<std::size_t>(j)] >= w_i[static_cast<std::size_t>(i)]) heavier.push_back(j);
      }
      if (heavier.empty()) continue;
      const int j = heavier[static_cast<std::size_t>(unit(gen) * static_cast<double>(heavier.size()))];
      verts[static_cast<std::size_t>(partner_idx[static_cast<std::size_t>(i)])].edges.push_back(
          {j, w_i[static_cast<std::size_t>(i)]});
    }
  }

  const int T = static_cast<int>(verts.size());
  WarmupInstance out;
  out.p_free = p_free;
  out.base.n = n;
  out.base.T = T;
  out.base.w = Matrix(n, T);
  out.base.p.resize(static_cast<std::size_t>(T));
  out.unique_map.assign(static_cast<std::size_t>(T), -1);
  out.v.resize(static_cast<std::size_t>(T));
  out.w_i = w_i;
  out.det_partner = partner_idx;
  for (int t = 0; t < T; ++t) {
    const Vertex& vx = verts[static_cast<std::size_t>(t)];
    for (const auto& [i, wt] : vx.edges) out.base.w(i, t) = wt;
    out.base.p[static_cast<std::size_t>(t)] = vx.p;
    out.v[static_cast<std::size_t>(t)] = vx.edges.front().second * vx.p;
    if (vx.p < 1.0) {
      out.free_set.push_back(t);
      out.unique_map[static_cast<std::size_t>(t)] = vx.owner;
    } else {
      out.det_set.push_back(t);
    }
  }

  // Random order with every partner moved behind its free vertices.
  std::vector<int> perm = identity_perm(T);
  std::shuffle(perm.begin(), perm.end(), gen);
  std::vector<int> pos(static_cast<std::size_t>(T));
  for (int k = 0; k < T; ++k) pos[static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] = k;
  for (int i = 0; i < n; ++i) {
    const int star = partner_idx[static_cast<std::size_t>(i)];
    int last = -1;
    for (int t : out.free_set) {
      if (out.unique_map[static_cast<std::size_t>(t)] == i &&
          (last < 0 || pos[static_cast<std::size_t>(t)] > pos[static_cast<std::size_t>(last)])) {
        last = t;
      }
    }
    if (last >= 0 && pos[static_cast<std::size_t>(star)] < pos[static_cast<std::size_t>(last)]) {
      std::swap(perm[static_cast<std::size_t>(pos[static_cast<std::size_t>(star)])],
                perm[static_cast<std::size_t>(pos[static_cast<std::size_t>(last)])]);
      std::swap(pos[static_cast<std::size_t>(star)], pos[static_cast<std::size_t>(last)]);
    }
  }
  out.base.arrival = FixedOrder{perm};
  return out;
}

std::vector<std::string> check_warmup(const WarmupInstance& wu) {
  std::vector<std::string> bad;
  const Instance& inst = wu.base;
  auto say = [&](auto&&... parts) {
    std::ostringstream os;
    (os << ... << parts);
    bad.push_back(os.str());
  };
  for (const auto& v : validate(inst)) bad.push_back(v.message);
  if (!bad.empty()) return bad;

  // 1. Free/deterministic split.
  std::vector<int> kind(static_cast<std::size_t>(inst.T), 0);
  for (int t : wu.free_set) kind[static_cast<std::size_t>(t)] += 1;
  for (int t : wu.det_set) kind[static_cast<std::size_t>(t)] += 2;
  for (int t = 0; t < inst.T; ++t) {
    const int k = kind[static_cast<std::size_t>(t)];
    const double p = inst.p[static_cast<std::size_t>(t)];
    if (k != 1 && k != 2) say("assumption 1: vertex ", t, " is not in exactly one of FR, DT");
    if (k == 1 && p != wu.p_free) say("assumption 1: free vertex ", t, " has p=", p);
    if (k == 2 && p != 1.0) say("assumption 1: deterministic vertex ", t, " has p=", p);
  }

  // 2. Vertex-weighted with at least one neighbour.
  for (int t = 0; t < inst.T; ++t) {
    double wt = 0.0;
    for (int i = 0; i < inst.n; ++i) {
      const double w = inst.w(i, t);
      if (w <= 0.0) continue;
      if (wt == 0.0) wt = w;
      if (w != wt) say("assumption 2: vertex ", t, " has unequal edge weights");
    }
    if (wt == 0.0) say("assumption 2: vertex ", t, " has no neighbour");
  }

  // 5. Unique neighbour of each free vertex.
  for (int t : wu.free_set) {
    int deg = 0;
    for (int i = 0; i < inst.n; ++i) deg += inst.w(i, t) > 0.0;
    if (deg != 1) say("assumption 5: free vertex ", t, " has ", deg, " neighbours");
    const int u = wu.unique_map[static_cast<std::size_t>(t)];
    if (u < 0 || u >= inst.n || inst.w(u, t) <= 0.0) say("assumption 5: unique_map of ", t, " is not its neighbour");
  }

  // 4. Balancedness against the maximum deterministic matching M*.
  Matrix det(inst.n, static_cast<int>(wu.det_set.size()));
  for (int i = 0; i < inst.n; ++i) {
    for (std::size_t c = 0; c < wu.det_set.size(); ++c) det(i, static_cast<int>(c)) = inst.w(i, wu.det_set[c]);
  }
  const double mwm = max_weight_matching(det);
  double partner_total = 0.0;
  for (int i = 0; i < inst.n; ++i) {
    const int star = wu.det_partner[static_cast<std::size_t>(i)];
    const double wi = star >= 0 ? inst.w(i, star) : 0.0;
    partner_total += wi;
    if (std::abs(wi - wu.w_i[static_cast<std::size_t>(i)]) > 1e-12) say("w_i of ", i, " does not match its partner edge");
    double vi = 0.0;
    for (int t : wu.free_of(i)) vi += inst.w(i, t) * inst.p[static_cast<std::size_t>(t)];
    if (std::abs(vi - wu.w_i[static_cast<std::size_t>(i)]) > 1e-9) say("assumption 4: w_", i, "=", wu.w_i[static_cast<std::size_t>(i)], " but v_", i, "=", vi);
  }
  if (std::abs(mwm - partner_total) > 1e-9 * std::max(1.0, mwm)) say("assumption 4: partners are not a maximum deterministic matching");

  // 3. Each partner arrives after every free neighbour of its vertex, so the
  // online optimum can collect both parts.
  for (const auto& o : arrival_orders(inst.arrival)) {
    std::vector<int> pos(static_cast<std::size_t>(inst.T));
    for (int k = 0; k < inst.T; ++k) pos[static_cast<std::size_t>(o.perm[static_cast<std::size_t>(k)])] = k;
    for (int i = 0; i < inst.n; ++i) {
      const int star = wu.det_partner[static_cast<std::size_t>(i)];
      if (star < 0) continue;
      for (int t : wu.free_of(i)) {
        if (pos[static_cast<std::size_t>(t)] > pos[static_cast<std::size_t>(star)]) {
          say("assumption 3: partner of ", i, " arrives before free vertex ", t);
        }
      }
    }
  }
  return bad;
}

WarmupInstance infer_warmup(const Instance& instance) {
  require_valid(instance);
  WarmupInstance wu;
  wu.base = instance;
  wu.unique_map.assign(static_cast<std::size_t>(instance.T), -1);
  wu.v.assign(static_cast<std::size_t>(instance.T), 0.0);
  for (int t = 0; t < instance.T; ++t) {
    const double p = instance.p[static_cast<std::size_t>(t)];
    double wt = 0.0;
    for (int i = 0; i < instance.n; ++i) {
      if (instance.w(i, t) > 0.0) {
        wt = std::max(wt, instance.w(i, t));
        if (p < 1.0) wu.unique_map[static_cast<std::size_t>(t)] = i;
      }
    }
    wu.v[static_cast<std::size_t>(t)] = wt * p;
    if (p < 1.0) {
      wu.free_set.push_back(t);
      wu.p_free = p;
    } else {
      wu.det_set.push_back(t);
    }
  }
  Matrix det(instance.n, static_cast<int>(wu.det_set.size()));
  for (int i = 0; i < instance.n; ++i) {
    for (std::size_t c = 0; c < wu.det_set.size(); ++c) det(i, static_cast<int>(c)) = instance.w(i, wu.det_set[c]);
  }
  std::vector<int> match;
  max_weight_matching(det, match);
  wu.det_partner.assign(static_cast<std::size_t>(instance.n), -1);
  wu.w_i.assign(static_cast<std::size_t>(instance.n), 0.0);
  for (int i = 0; i < instance.n; ++i) {
    const int c = match[static_cast<std::size_t>(i)];
    if (c < 0) continue;
    wu.det_partner[static_cast<std::size_t>(i)] = wu.det_set[static_cast<std::size_t>(c)];
    wu.w_i[static_cast<std::size_t>(i)] = instance.w(i, wu.det_set[static_cast<std::size_t>(c)]);
  }
  const auto bad = check_warmup(wu);
  if (!bad.empty()) throw PreconditionError("instance is not a warm-up instance: " + bad.front());
  return wu;
}

WeightDist parse_weight_dist(const std::string& name) {
  if (name == "uniform") return WeightDist::kUniform;
  if (name == "lognormal") return WeightDist::kLognormal;
  if (name == "prophet-hard") return WeightDist::kProphetHard;
  throw ParameterError("unknown weight distribution '" + name + "'");
}

std::string to_string(WeightDist dist) {
  switch (dist) {
    case WeightDist::kUniform: return "uniform";
    case WeightDist::kLognormal: return "lognormal";
    case WeightDist::kProphetHard: return "prophet-hard";
  }
  return "uniform";
}

Instance gen_random_instance(const RandomInstanceParams& prm) {
  if (prm.n < 1 || prm.T < 1) throw ParameterError("gen_random_instance: n and T must be at least 1");
  if (!(prm.density > 0.0 && prm.density <= 1.0)) throw ParameterError("gen_random_instance: density must lie in (0, 1]");
  if (!(prm.hard_p > 0.0 && prm.hard_p <= 1.0)) throw ParameterError("gen_random_instance: hard_p must lie in (0, 1]");
  std::mt19937_64 gen(prm.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::lognormal_distribution<double> logn(0.0, 1.0);
  Instance inst;
  inst.n = prm.n;
  inst.T = prm.T;
  inst.w = Matrix(prm.n, prm.T);
  inst.p.resize(static_cast<std::size_t>(prm.T));
  for (int t = 0; t < prm.T; ++t) {
    double vertex_weight = 0.0;
    if (prm.dist == WeightDist::kProphetHard) {
      const bool rare = unit(gen) < 0.5;
      inst.p[static_cast<std::size_t>(t)] = rare ? prm.hard_p : 1.0;
      vertex_weight = rare ? 1.0 / prm.hard_p : 1.0;
    } else {
      inst.p[static_cast<std::size_t>(t)] = 1.0 - unit(gen);
    }
    for (int i = 0; i < prm.n; ++i) {
      const bool present = prm.density >= 1.0 || unit(gen) < prm.density;
      double w = 0.0;
      switch (prm.dist) {
        case WeightDist::kUniform: w = 1.0 - unit(gen); break;
        case WeightDist::kLognormal: w = logn(gen); break;
        case WeightDist::kProphetHard: w = vertex_weight; break;
      }
      if (present) inst.w(i, t) = w;
    }
  }
  inst.arrival = FixedOrder{identity_perm(prm.T)};
  return inst;
}

namespace {

struct RowSpec {
  std::vector<double> det_weight;
  std::vector<double> det_mass;
  std::vector<double> free_weight;
  std::vector<double> free_mass;
};

std::vector<double> random_shares(std::mt19937_64& gen, int k) {
  std::uniform_real_distribution<double> unit(0.5, 1.5);
  std::vector<double> s(static_cast<std::size_t>(k));
  for (double& v : s) v = unit(gen);
  const double total = std::accumulate(s.begin(), s.end(), 0.0);
  for (double& v : s) v /= total;
  return s;
}

// Free part of value V and mass m split over k columns.
void add_free_part(std::mt19937_64& gen, RowSpec& row, double value, double mass, int k) {
  const auto vshare = random_shares(gen, k);
  const auto mshare = random_shares(gen, k);
  for (int j = 0; j < k; ++j) {
    const double mj = mass * mshare[static_cast<std::size_t>(j)];
    row.free_mass.push_back(mj);
    row.free_weight.push_back(value * vshare[static_cast<std::size_t>(j)] / mj);
  }
}

InstanceWithSolution assemble_rows(const std::vector<RowSpec>& rows) {
  int T = 0;
  for (const auto& r : rows) T += static_cast<int>(r.det_weight.size() + r.free_weight.size());
  const int n = static_cast<int>(rows.size());
  Instance inst;
  inst.n = n;
  inst.T = T;
  inst.w = Matrix(n, T);
  inst.p.assign(static_cast<std::size_t>(T), 1.0);
  Matrix a(n, T);
  int col = 0;
  for (int i = 0; i < n; ++i) {
    const auto& r = rows[static_cast<std::size_t>(i)];
    for (std::size_t k = 0; k < r.det_weight.size(); ++k, ++col) {
      inst.w(i, col) = r.det_weight[k];
      a(i, col) = r.det_mass[k];
    }
    for (std::size_t k = 0; k < r.free_weight.size(); ++k, ++col) {
      inst.w(i, col) = r.free_weight[k];
      inst.p[static_cast<std::size_t>(col)] = r.free_mass[k];
      a(i, col) = r.free_mass[k];
    }
  }
  inst.arrival = FixedOrder{identity_perm(T)};
  return {std::move(inst), FracSolution(std::move(a))};
}

}  // namespace

InstanceWithSolution gen_near_tight(int rows, double gamma, std::uint64_t seed) {
  if (rows < 1) throw ParameterError("gen_near_tight: rows must be at least 1");
  if (!(gamma > 0.0)) throw ParameterError("gen_near_tight: gamma must be positive");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> free_count(1, 3);
  for (;;) {
    std::vector<RowSpec> spec;
    for (int i = 0; i < rows; ++i) {
      RowSpec r;
      const double wd = 1.0 + 1e-6 * unit(gen);
      const double m = 1e-5 * (0.5 + unit(gen));
      const double xi = gamma * (2.0 * unit(gen) - 1.0);
      r.det_weight = {wd};
      r.det_mass = {1.0 - m};
      add_free_part(gen, r, wd * (1.0 - m) * (1.0 + xi), m, free_count(gen));
      spec.push_back(std::move(r));
    }
    if (rows >= 2 && unit(gen) < 0.3) {
      RowSpec light;
      light.det_weight = {1e-5 * (0.5 + unit(gen))};
      light.det_mass = {1.0};
      spec.push_back(std::move(light));
    }
    auto out = assemble_rows(spec);
    double lb = 0.0;
    double lp = 0.0;
    for (int i = 0; i < out.instance.n; ++i) {
      // Inline LB/LP to keep generators independent of the LP engine.
      std::vector<std::pair<double, double>> edges;
      for (int t = 0; t < out.instance.T; ++t) {
        if (out.a(i, t) > 0.0) edges.emplace_back(out.instance.w(i, t), out.a(i, t));
      }
      std::sort(edges.begin(), edges.end());
      double best = 0.0;
      for (std::size_t start = 0; start < edges.size(); ++start) {
        double v = 0.0;
        double surv = 1.0;
        for (std::size_t k = start; k < edges.size();) {
          std::size_t e = k;
          double gv = 0.0;
          double gs = 1.0;
          while (e < edges.size() && edges[e].first == edges[k].first) {
            gv += edges[e].first * edges[e].second;
            gs *= 1.0 - edges[e].second;
            ++e;
          }
          v += surv * gv;
          surv *= gs;
          k = e;
        }
        best = std::max(best, v);
      }
      lb += best;
      for (const auto& [w, x] : edges) lp += w * x;
    }
    if (lb <= (0.5 + gamma) * lp) return out;
  }
}

InstanceWithSolution gen_lemma41_row(std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> count(1, 3);
  RowSpec r;
  const double m = std::pow(10.0, -4.0 + 2.5 * unit(gen));
  const int kd = count(gen);
  const auto dshare = random_shares(gen, kd);
  double det_value = 0.0;
  for (int k = 0; k < kd; ++k) {
    const double w = 1.0 + 0.6 * (unit(gen) - 0.5);
    const double x = (1.0 - m) * dshare[static_cast<std::size_t>(k)];
    r.det_weight.push_back(w);
    r.det_mass.push_back(x);
    det_value += w * x;
  }
  const double xi = 0.1 * (unit(gen) - 0.5);
  add_free_part(gen, r, det_value * (1.0 + xi), m, count(gen));
  return assemble_rows({r});
}

Instance gen_two_optima_instance(int n, std::uint64_t seed) {
  if (n < 2) throw ParameterError("gen_two_optima_instance: n must be at least 2");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double eta = 5e-4 + 1.5e-3 * unit(gen);
  const double delta = 0.005 + 0.015 * unit(gen);
  Instance inst;
  inst.n = n;
  inst.T = 2 * n;
  inst.w = Matrix(n, 2 * n);
  inst.p.assign(static_cast<std::size_t>(2 * n), 1.0);
  for (int i = 0; i < n; ++i) {
    const double d = 0.9 + 0.2 * unit(gen);
    const double shared = d * (1.0 - eta);
    inst.w(i, i) = d;
    inst.p[static_cast<std::size_t>(n + i)] = eta;
    inst.w(i, n + i) = shared / eta;
    inst.w((i + 1) % n, n + i) = shared / (eta * (1.0 + delta));
  }
  inst.arrival = FixedOrder{identity_perm(2 * n)};
  return inst;
}

}  // namespace osm
