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

// Command line front end: instance generation, LP and oracle inspection,
// Monte Carlo runs, verification suites and report merging.
//
// Exit codes: 0 success, 1 a check failed, 2 usage or input error.

#include <chrono>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "osm/algorithms.hpp"
#include "osm/decomposition.hpp"
#include "osm/errors.hpp"
#include "osm/estimate.hpp"
#include "osm/generators.hpp"
#include "osm/io.hpp"
#include "osm/lp_engine.hpp"
#include "osm/oracles.hpp"
#include "osm/pipeline.hpp"
#include "osm/report.hpp"
#include "osm/suites.hpp"

namespace {

using nlohmann::json;
using namespace osm;

constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
  } else {
    write_text(path, text);
  }
}

Instance read_instance(const std::string& path) {
  if (path.empty()) return gen_hard_instance(1e-4);
  return load_instance(path);
}

json matrix_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (int t = 0; t < m.cols(); ++t) row.push_back(m(i, t));
    rows.push_back(row);
  }
  return rows;
}

json config_json(const AlgoConfig& c) {
  json j = {{"eps", c.eps},
            {"eps_o", c.eps_o},
            {"eps_s", c.eps_s},
            {"eps_alg", c.eps_alg},
            {"partition_samples", c.partition_samples},
            {"seed", c.seed}};
  j["delta_alg"] = c.delta_alg ? json(*c.delta_alg) : json(nullptr);
  return j;
}

json pipeline_json(const PipelineDecision& d) {
  json j = {{"branch", to_string(d.branch)},
            {"delta_alg", d.delta_alg},
            {"lb_x_star", d.lb_x_star},
            {"scale", d.scale},
            {"log", d.log}};
  if (d.slackness) j["slack_value"] = d.slackness->slack_value;
  if (d.large) {
    j["large"] = {{"chosen", d.large->chosen}, {"lb_z", d.large->lb}, {"shortcut", d.large->shortcut}};
  }
  return j;
}

json event_json(int trial, const ArrivalEvent& e) {
  json transfers = json::array();
  for (const Transfer& tr : e.transfers) transfers.push_back({{"i", tr.i}, {"j", tr.j}, {"s", tr.s}, {"delta", tr.delta}});
  return {{"trial", trial},
          {"t", e.t},
          {"realized", e.realized},
          {"proposals", e.proposal},
          {"acceptance", e.accept_prob},
          {"matched", e.matched},
          {"transitions", e.transitions},
          {"transfers", transfers}};
}

struct ConfigFlags {
  AlgoConfig config = practical_config();
  double delta_alg = -1.0;

  void add(CLI::App* app) {
    app->add_option("--eps", config.eps, "eps")->capture_default_str();
    app->add_option("--eps-o", config.eps_o, "eps_o")->capture_default_str();
    app->add_option("--eps-s", config.eps_s, "eps_s")->capture_default_str();
    app->add_option("--eps-alg", config.eps_alg, "eps_alg")->capture_default_str();
    app->add_option("--delta-alg", delta_alg, "override the mixture probability");
    app->add_option("--partition-samples", config.partition_samples, "random splits tried for a_split")
        ->capture_default_str();
  }
  AlgoConfig get() const {
    AlgoConfig c = config;
    if (delta_alg >= 0.0) c.delta_alg = delta_alg;
    validate_config(c);
    return c;
  }
};

// ------------------------------------------------------------------- gen

struct GenArgs {
  std::string kind = "hard";
  double p_free = 1e-4;
  int n = 3;
  int T = 8;
  double density = 0.5;
  std::string dist = "uniform";
  double hard_p = 0.05;
  double gamma = 1e-4;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_gen(const GenArgs& a) {
  Instance inst;
  if (a.kind == "hard") {
    inst = gen_hard_instance(a.p_free);
  } else if (a.kind == "warmup") {
    inst = gen_warmup_instance(a.n, a.p_free, a.seed).base;
  } else if (a.kind == "random") {
    RandomInstanceParams p;
    p.n = a.n;
    p.T = a.T;
    p.density = a.density;
    p.dist = parse_weight_dist(a.dist);
    p.hard_p = a.hard_p;
    p.seed = a.seed;
    inst = gen_random_instance(p);
  } else if (a.kind == "near-tight") {
    inst = gen_near_tight(a.n, a.gamma, a.seed).instance;
  } else if (a.kind == "two-optima") {
    inst = gen_two_optima_instance(a.n, a.seed);
  } else {
    throw UsageError("unknown --kind '" + a.kind + "'");
  }
  emit(serialize_instance(inst), a.out);
  return 0;
}

// ----------------------------------------------------------------- solve

int cmd_solve(const std::string& path, const ConfigFlags& flags, const std::string& out) {
  const Instance inst = read_instance(path);
  const AlgoConfig config = flags.get();
  const ExAnteResult ex = solve_ex_ante(inst);
  const ThresholdProfile prof = threshold_profile(inst, ex.solution);
  json j;
  j["instance"] = {{"digest", instance_digest(inst)}, {"n", inst.n}, {"T", inst.T}};
  j["config"] = config_json(config);
  j["lp_exante"] = {{"value", ex.value}, {"dual_value", ex.dual_value}, {"x", matrix_json(ex.solution.x())}};
  j["thresholds"] = {{"lb", prof.lb}, {"tau", prof.tau}, {"lp", prof.lp}, {"lb_total", prof.lb_total()}};
  const PipelineDecision d = plan(inst, config);
  j["pipeline"] = pipeline_json(d);
  if (d.decomposition) {
    const Decomposition& dec = *d.decomposition;
    json large = json::array();
    for (int i = 0; i < inst.n; ++i) {
      for (int t = 0; t < inst.T; ++t) {
        if (dec.large_edges(i, t)) large.push_back({i, t});
      }
    }
    j["decomposition"] = {{"gamma", dec.gamma},
                          {"alpha", dec.alpha},
                          {"delta_x", dec.delta_x},
                          {"pruned_set", dec.pruned_set},
                          {"large_edges", large},
                          {"x_tilde", matrix_json(dec.x_tilde.x())},
                          {"x_tilde_L", matrix_json(dec.x_tilde_L.x())},
                          {"warnings", dec.warnings}};
  }
  if (d.slackness) {
    j["slackness"] = {{"feasible", d.slackness->status == SlackStatus::kOptimal},
                      {"value", d.slackness->slack_value},
                      {"y_o", matrix_json(d.slackness->y_o.x())}};
  }
  if (d.large) {
    json cands = json::array();
    for (const Candidate& c : d.large->candidates) {
      cands.push_back({{"name", c.name}, {"lb", c.lb}, {"lp", c.lp}, {"feasible", c.feasible}});
    }
    j["large_slack"] = {{"chosen", d.large->chosen},
                        {"lb", d.large->lb},
                        {"candidates", cands},
                        {"z", matrix_json(d.large->z.x())},
                        {"warnings", d.large->warnings}};
  }
  emit(j.dump(2), out);
  return 0;
}

// ---------------------------------------------------------------- oracle

struct OracleArgs {
  std::string path;
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  bool unaware = false;
  std::string out;
};

int cmd_oracle(const OracleArgs& a) {
  const Instance inst = read_instance(a.path);
  SimulationReport r;
  r.digest = instance_digest(inst);
  r.n = inst.n;
  r.T = inst.T;
  r.config = {{"oracle_trials", a.trials}, {"seed", a.seed}};
  r.oracles.lp_exante = solve_ex_ante(inst).value;
  r.oracles.opt_online = online_optimum_stochastic(inst).value;
  int uncertain = 0;
  for (double p : inst.p) uncertain += (p > 0.0 && p < 1.0) ? 1 : 0;
  const OfflineResult off = uncertain <= kMaxExactOnline
                                ? offline_optimum(inst, OfflineMode::kExact)
                                : offline_optimum(inst, OfflineMode::kMonteCarlo, a.trials, a.seed);
  r.oracles.offline_opt = off.value;
  r.oracles.offline_stderr = off.std_error;
  if (a.unaware) {
    const UnawareSearchResult u = best_order_unaware(inst);
    r.config["best_order_unaware"] = {{"value", u.value}, {"benchmark", u.online_opt}, {"ratio", u.ratio}, {"nodes", u.nodes}};
  }
  emit(r.to_json().dump(2), a.out);
  return 0;
}

// ------------------------------------------------------------------- run

struct RunArgs {
  std::string path;
  std::vector<std::string> algs = {"pipeline"};
  std::int64_t trials = 100000;
  std::uint64_t seed = 1;
  std::string estimator = "realized";
  std::string trace;
  std::int64_t trace_trials = 1;
  bool oracles = false;
  bool timing = false;
  std::string out;
  std::string csv;
};

int cmd_run(const RunArgs& a, const ConfigFlags& flags) {
  const auto t0 = std::chrono::steady_clock::now();
  const Instance inst = read_instance(a.path);
  const AlgoConfig config = flags.get();
  const Estimator est = parse_estimator(a.estimator);

  SimulationReport r;
  r.digest = instance_digest(inst);
  r.n = inst.n;
  r.T = inst.T;
  r.config = config_json(config);
  r.config["trials"] = a.trials;
  r.config["seed"] = a.seed;
  r.config["estimator"] = a.estimator;

  std::optional<PipelineDecision> decision;
  auto get_plan = [&]() -> const PipelineDecision& {
    if (!decision) decision = plan(inst, config);
    return *decision;
  };

  std::optional<std::ofstream> trace;
  if (!a.trace.empty()) {
    trace.emplace(a.trace);
    if (!*trace) throw UsageError("cannot open trace file " + a.trace);
  }

  for (const std::string& name : a.algs) {
    std::shared_ptr<const Policy> policy;
    std::shared_ptr<const void> keep;  // owns data a policy refers to
    if (name == "baseline") {
      auto ex = std::make_shared<ExAnteResult>(solve_ex_ante(inst));
      policy = std::make_shared<BaselinePolicy>(inst, ex->solution);
      keep = ex;
    } else if (name == "warmup") {
      policy = std::make_shared<WarmupPolicy>(infer_warmup(inst));
    } else if (name == "small-slack") {
      const PipelineDecision& d = get_plan();
      Decomposition dec = d.decomposition ? *d.decomposition : decompose(d.normalized, d.x_star, config.eps, 2.0);
      policy = std::make_shared<SmallSlackPolicy>(d.normalized, std::move(dec), config);
    } else if (name == "pipeline") {
      policy = get_plan().policy;
    } else {
      throw UsageError("unknown --alg '" + name + "'");
    }
    const Estimate e = estimate(*policy, inst, a.trials, a.seed, est);
    r.algorithms.push_back({name, a.estimator, e.trials, e.mean, e.std_error, std::nullopt, std::nullopt});
    if (trace) {
      const auto orders = arrival_orders(inst.arrival);
      for (std::int64_t k = 0; k < a.trace_trials; ++k) {
        Rng rng = Rng::stream(a.seed, static_cast<std::uint64_t>(k));
        const std::span<const int> perm = sample_order(orders, rng);
        std::vector<ArrivalEvent> events;
        run_trial(*policy, inst, perm, rng, &events);
        for (const ArrivalEvent& ev : events) {
          json line = event_json(static_cast<int>(k), ev);
          line["alg"] = name;
          *trace << line.dump() << '\n';
        }
      }
    }
  }
  if (decision) r.pipeline = pipeline_json(*decision);
  if (a.oracles) {
    r.oracles.lp_exante = solve_ex_ante(inst).value;
    r.oracles.opt_online = online_optimum_stochastic(inst).value;
  }
  r.compute_ratios();
  if (a.timing) r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  emit(r.to_json().dump(2), a.out);
  if (!a.csv.empty()) write_text(a.csv, reports_to_csv({r}));
  return 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const std::vector<std::string>& suites, std::int64_t trials, std::uint64_t seed,
               const std::string& out) {
  std::vector<std::string> ids = suites;
  if (ids.empty() || (ids.size() == 1 && ids[0] == "all")) ids = suite_ids();
  SuiteOptions opt;
  opt.trials = trials;
  opt.seed = seed;
  json all = json::array();
  bool ok = true;
  for (const std::string& id : ids) {
    const SuiteResult r = run_suite(id, opt);
    ok = ok && r.ok();
    std::cout << (r.ok() ? "PASS " : "FAIL ") << id << ": " << r.passed << "/" << r.premise_held
              << " premise-held samples passed (" << r.samples << " sampled, " << r.required << " required)\n";
    for (const std::string& n : r.notes) std::cout << "  note: " << n << '\n';
    for (const std::string& f : r.failures) std::cout << "  failure: " << f << '\n';
    all.push_back(r.to_json());
  }
  if (!out.empty()) emit(all.dump(2), out);
  return ok ? 0 : kExitCheckFailed;
}

// ---------------------------------------------------------------- report

int cmd_report(const std::vector<std::string>& inputs, const std::string& out, const std::string& csv) {
  std::vector<SimulationReport> reports;
  for (const std::string& path : inputs) {
    json j;
    try {
      j = json::parse(read_text(path));
    } catch (const json::parse_error& e) {
      throw UsageError(path + ": " + e.what());
    }
    reports.push_back(SimulationReport::from_json(j));
  }
  if (!csv.empty()) write_text(csv, reports_to_csv(reports));
  if (!out.empty() || csv.empty()) emit(merge_reports(reports).to_json().dump(2), out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online stochastic matching: order-unaware algorithms and oracles"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "generate an instance as JSON");
  g->add_option("--kind", gen.kind, "hard|warmup|random|near-tight|two-optima")->capture_default_str();
  g->add_option("--p-free", gen.p_free, "probability of free vertices (hard, warmup)")->capture_default_str();
  g->add_option("--n", gen.n, "offline vertices (rows for near-tight)")->capture_default_str();
  g->add_option("--T", gen.T, "online vertices (random)")->capture_default_str();
  g->add_option("--density", gen.density, "edge density (random)")->capture_default_str();
  g->add_option("--dist", gen.dist, "uniform|lognormal|prophet-hard (random)")->capture_default_str();
  g->add_option("--hard-p", gen.hard_p, "probability of heavy vertices (prophet-hard)")->capture_default_str();
  g->add_option("--gamma", gen.gamma, "tightness (near-tight)")->capture_default_str();
  g->add_option("--seed", gen.seed)->capture_default_str();
  g->add_option("-o,--output", gen.out, "output file (default stdout)");

  std::string solve_path, solve_out;
  ConfigFlags solve_flags;
  auto* s = app.add_subcommand("solve", "ex-ante LP, thresholds, decomposition and branch");
  s->add_option("instance", solve_path, "instance JSON (default: hard instance, p_free 1e-4)");
  solve_flags.add(s);
  s->add_option("-o,--output", solve_out);

  OracleArgs orc;
  auto* o = app.add_subcommand("oracle", "online and offline optima and the ex-ante bound");
  o->add_option("instance", orc.path, "instance JSON (default: hard instance, p_free 1e-4)");
  o->add_option("--trials", orc.trials, "Monte Carlo trials when exact enumeration is too large")->capture_default_str();
  o->add_option("--seed", orc.seed)->capture_default_str();
  o->add_flag("--unaware", orc.unaware, "also search the best order-unaware policy");
  o->add_option("-o,--output", orc.out);

  RunArgs run;
  ConfigFlags run_flags;
  auto* r = app.add_subcommand("run", "Monte Carlo evaluation of algorithms");
  r->add_option("instance", run.path, "instance JSON (default: hard instance, p_free 1e-4)");
  r->add_option("--alg", run.algs, "baseline|warmup|small-slack|pipeline, repeatable")->capture_default_str();
  r->add_option("--trials", run.trials)->capture_default_str()->check(CLI::PositiveNumber);
  r->add_option("--seed", run.seed)->capture_default_str();
  r->add_option("--estimator", run.estimator, "realized|conditional")->capture_default_str();
  r->add_option("--trace", run.trace, "write per-arrival JSON lines here");
  r->add_option("--trace-trials", run.trace_trials, "trials written to the trace")->capture_default_str();
  r->add_flag("--oracles", run.oracles, "compute OPT_online and LP_ex-ante for the ratio columns");
  r->add_flag("--timing", run.timing, "record wall time (makes reports non-reproducible)");
  r->add_option("-o,--output", run.out);
  r->add_option("--csv", run.csv, "also write a CSV report");
  run_flags.add(r);

  std::vector<std::string> suites;
  std::int64_t verify_trials = 100000;
  std::uint64_t verify_seed = 1;
  std::string verify_out;
  auto* v = app.add_subcommand("verify", "run verification suites");
  v->add_option("--suite", suites, "suite id, repeatable, or all");
  v->add_option("--trials", verify_trials)->capture_default_str()->check(CLI::PositiveNumber);
  v->add_option("--seed", verify_seed)->capture_default_str();
  v->add_option("-o,--output", verify_out, "JSON results");

  std::vector<std::string> report_inputs;
  std::string report_out, report_csv;
  auto* rp = app.add_subcommand("report", "merge run reports into JSON and/or CSV");
  rp->add_option("reports", report_inputs, "report JSON files")->required();
  rp->add_option("-o,--output", report_out, "merged JSON (same instance only)");
  rp->add_option("--csv", report_csv, "CSV with one row per algorithm");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*g) return cmd_gen(gen);
    if (*s) return cmd_solve(solve_path, solve_flags, solve_out);
    if (*o) return cmd_oracle(orc);
    if (*r) return cmd_run(run, run_flags);
    if (*v) return cmd_verify(suites, verify_trials, verify_seed, verify_out);
    if (*rp) return cmd_report(report_inputs, report_out, report_csv);
  } catch (const InstanceParseError& e) {
    std::cerr << "error: " << e.what() << " at line " << e.line() << ", column " << e.column() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParameterError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return 0;
}
