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

#include "osm/report.hpp"

#include <cstdio>
#include <sstream>

#include "osm/errors.hpp"

namespace osm {

std::string to_string(Estimator estimator) {
  return estimator == Estimator::kConditional ? "conditional" : "realized";
}

Estimator parse_estimator(const std::string& name) {
  if (name == "realized") return Estimator::kRealized;
  if (name == "conditional") return Estimator::kConditional;
  throw ParameterError("unknown estimator '" + name + "' (expected realized or conditional)");
}

namespace {

nlohmann::json opt_json(const std::optional<double>& v) { return v ? nlohmann::json(*v) : nlohmann::json(nullptr); }

std::optional<double> opt_double(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<double>();
}

std::string number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string number(const std::optional<double>& v) { return v ? number(*v) : std::string(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

void SimulationReport::compute_ratios() {
  for (AlgorithmRow& row : algorithms) {
    row.ratio_vs_opt_online.reset();
    row.ratio_vs_exante.reset();
    if (oracles.opt_online && *oracles.opt_online > 0.0) row.ratio_vs_opt_online = row.mean / *oracles.opt_online;
    if (oracles.lp_exante && *oracles.lp_exante > 0.0) row.ratio_vs_exante = row.mean / *oracles.lp_exante;
  }
}

nlohmann::json SimulationReport::to_json() const {
  nlohmann::json j;
  j["schema_version"] = schema_version;
  j["instance"] = {{"digest", digest}, {"n", n}, {"T", T}};
  j["config"] = config;
  j["oracles"] = {{"opt_online", opt_json(oracles.opt_online)},
                  {"offline_opt", opt_json(oracles.offline_opt)},
                  {"offline_stderr", opt_json(oracles.offline_stderr)},
                  {"lp_exante", opt_json(oracles.lp_exante)}};
  j["algorithms"] = nlohmann::json::array();
  for (const AlgorithmRow& a : algorithms) {
    j["algorithms"].push_back({{"name", a.name},
                               {"estimator", a.estimator},
                               {"trials", a.trials},
                               {"mean", a.mean},
                               {"stderr", a.std_error},
                               {"ratio_vs_opt_online", opt_json(a.ratio_vs_opt_online)},
                               {"ratio_vs_exante", opt_json(a.ratio_vs_exante)}});
  }
  j["lemma_checks"] = nlohmann::json::array();
  for (const LemmaRow& l : lemma_checks) {
    j["lemma_checks"].push_back(
        {{"id", l.id}, {"premise_held", l.premise_held}, {"passed", l.passed}, {"required", l.required}, {"ok", l.ok}});
  }
  j["pipeline"] = pipeline;
  if (wall_time_s) j["wall_time_s"] = *wall_time_s;
  return j;
}

SimulationReport SimulationReport::from_json(const nlohmann::json& j) {
  try {
    SimulationReport r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kReportSchemaVersion) {
      throw ParameterError("unsupported report schema_version " + std::to_string(r.schema_version));
    }
    const auto& inst = j.at("instance");
    r.digest = inst.at("digest").get<std::string>();
    r.n = inst.at("n").get<int>();
    r.T = inst.at("T").get<int>();
    r.config = j.value("config", nlohmann::json::object());
    const auto& o = j.at("oracles");
    r.oracles.opt_online = opt_double(o, "opt_online");
    r.oracles.offline_opt = opt_double(o, "offline_opt");
    r.oracles.offline_stderr = opt_double(o, "offline_stderr");
    r.oracles.lp_exante = opt_double(o, "lp_exante");
    for (const auto& a : j.at("algorithms")) {
      AlgorithmRow row;
      row.name = a.at("name").get<std::string>();
      row.estimator = a.at("estimator").get<std::string>();
      row.trials = a.at("trials").get<std::int64_t>();
      row.mean = a.at("mean").get<double>();
      row.std_error = a.at("stderr").get<double>();
      row.ratio_vs_opt_online = opt_double(a, "ratio_vs_opt_online");
      row.ratio_vs_exante = opt_double(a, "ratio_vs_exante");
      r.algorithms.push_back(std::move(row));
    }
    for (const auto& l : j.at("lemma_checks")) {
      r.lemma_checks.push_back({l.at("id").get<std::string>(), l.at("premise_held").get<int>(),
                                l.at("passed").get<int>(), l.at("required").get<int>(), l.at("ok").get<bool>()});
    }
    r.pipeline = j.value("pipeline", nlohmann::json());
    r.wall_time_s = opt_double(j, "wall_time_s");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed report: ") + e.what());
  }
}

SimulationReport merge_reports(const std::vector<SimulationReport>& reports) {
  if (reports.empty()) throw ParameterError("merge_reports: nothing to merge");
  SimulationReport out = reports.front();
  auto take = [](std::optional<double>& dst, const std::optional<double>& src) {
    if (!dst && src) dst = src;
  };
  for (std::size_t k = 1; k < reports.size(); ++k) {
    const SimulationReport& r = reports[k];
    if (r.digest != out.digest) {
      throw ParameterError("merge_reports: instance digests differ (" + out.digest + " vs " + r.digest + ")");
    }
    take(out.oracles.opt_online, r.oracles.opt_online);
    take(out.oracles.offline_opt, r.oracles.offline_opt);
    take(out.oracles.offline_stderr, r.oracles.offline_stderr);
    take(out.oracles.lp_exante, r.oracles.lp_exante);
    out.algorithms.insert(out.algorithms.end(), r.algorithms.begin(), r.algorithms.end());
    out.lemma_checks.insert(out.lemma_checks.end(), r.lemma_checks.begin(), r.lemma_checks.end());
    if (out.pipeline.is_null()) out.pipeline = r.pipeline;
    if (out.wall_time_s && r.wall_time_s) {
      *out.wall_time_s += *r.wall_time_s;
    } else {
      out.wall_time_s.reset();
    }
  }
  out.compute_ratios();
  return out;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols = {
      "instance_digest", "n",          "T",           "algorithm",     "estimator",     "trials",
      "mean",            "stderr",     "ratio_vs_opt_online", "ratio_vs_exante", "opt_online", "offline_opt",
      "offline_stderr",  "lp_exante"};
  return cols;
}

std::string reports_to_csv(const std::vector<SimulationReport>& reports) {
  std::ostringstream os;
  const auto& cols = csv_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) os << (c ? "," : "") << cols[c];
  os << "\r\n";
  for (const SimulationReport& r : reports) {
    for (const AlgorithmRow& a : r.algorithms) {
      const std::vector<std::string> fields = {csv_field(r.digest),
                                               std::to_string(r.n),
                                               std::to_string(r.T),
                                               csv_field(a.name),
                                               csv_field(a.estimator),
                                               std::to_string(a.trials),
                                               number(a.mean),
                                               number(a.std_error),
                                               number(a.ratio_vs_opt_online),
                                               number(a.ratio_vs_exante),
                                               number(r.oracles.opt_online),
                                               number(r.oracles.offline_opt),
                                               number(r.oracles.offline_stderr),
                                               number(r.oracles.lp_exante)};
      for (std::size_t c = 0; c < fields.size(); ++c) os << (c ? "," : "") << fields[c];
      os << "\r\n";
    }
  }
  return os.str();
}

}  // namespace osm
