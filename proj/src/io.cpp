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

#include "osm/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "osm/errors.hpp"

namespace osm {
namespace {

void dump_number(double v, std::string& out) {
  if (!std::isfinite(v)) throw ParameterError("canonical_dump: non-finite number");
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

void dump_string(const std::string& s, std::string& out) {
  out += nlohmann::json(s).dump();
}

void dump(const nlohmann::json& v, std::string& out) {
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = v.begin(); it != v.end(); ++it) {
        if (!first) out += ',';
        first = false;
        dump_string(it.key(), out);
        out += ':';
        dump(it.value(), out);
      }
      out += '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out += '[';
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (k) out += ',';
        dump(v[k], out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::number_float:
      dump_number(v.get<double>(), out);
      break;
    default:
      out += v.dump();
  }
}

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
  int line = 1;
  int col = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

[[noreturn]] void schema_error(std::string_view text, const std::string& key, const std::string& what) {
  const std::size_t at = key.empty() ? std::string_view::npos : text.find("\"" + key + "\"");
  const auto [line, col] = line_column(text, at == std::string_view::npos ? 0 : at);
  throw InstanceParseError(what, line, col);
}

}  // namespace

std::string canonical_dump(const nlohmann::json& value) {
  std::string out;
  dump(value, out);
  return out;
}

nlohmann::json instance_to_json(const Instance& inst) {
  nlohmann::json j;
  j["n"] = inst.n;
  j["T"] = inst.T;
  j["p"] = inst.p;
  nlohmann::json w = nlohmann::json::array();
  for (int i = 0; i < inst.n; ++i) {
    const auto row = inst.w.row(i);
    w.push_back(std::vector<double>(row.begin(), row.end()));
  }
  j["w"] = std::move(w);
  if (const auto* fixed = std::get_if<FixedOrder>(&inst.arrival)) {
    j["arrival"] = {{"kind", "fixed"}, {"perm", fixed->perm}};
  } else {
    nlohmann::json orders = nlohmann::json::array();
    for (const auto& o : std::get<StochasticOrder>(inst.arrival).orders) {
      orders.push_back({{"perm", o.perm}, {"prob", o.prob}});
    }
    j["arrival"] = {{"kind", "stochastic"}, {"orders", std::move(orders)}};
  }
  return j;
}

std::string serialize_instance(const Instance& instance) { return canonical_dump(instance_to_json(instance)); }

Instance parse_instance(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    const auto [line, col] = line_column(text, offset);
    throw InstanceParseError("malformed JSON: " + std::string(e.what()), line, col);
  }
  if (!j.is_object()) schema_error(text, "", "instance must be a JSON object");
  for (const char* key : {"n", "T", "p", "w", "arrival"}) {
    if (!j.contains(key)) schema_error(text, "", std::string("missing key \"") + key + "\"");
  }
  Instance inst;
  try {
    inst.n = j.at("n").get<int>();
    inst.T = j.at("T").get<int>();
  } catch (const nlohmann::json::exception&) {
    schema_error(text, "n", "\"n\" and \"T\" must be integers");
  }
  if (inst.n < 1 || inst.T < 1) schema_error(text, "n", "\"n\" and \"T\" must be at least 1");
  const auto& p = j.at("p");
  if (!p.is_array() || static_cast<int>(p.size()) != inst.T) schema_error(text, "p", "\"p\" must be an array of length T");
  for (const auto& v : p) {
    if (!v.is_number()) schema_error(text, "p", "\"p\" entries must be numbers");
    inst.p.push_back(v.get<double>());
  }
  const auto& w = j.at("w");
  if (!w.is_array() || static_cast<int>(w.size()) != inst.n) schema_error(text, "w", "\"w\" must have n rows");
  inst.w = Matrix(inst.n, inst.T);
  for (int i = 0; i < inst.n; ++i) {
    const auto& row = w[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<int>(row.size()) != inst.T) schema_error(text, "w", "every row of \"w\" must have T entries");
    for (int t = 0; t < inst.T; ++t) {
      if (!row[static_cast<std::size_t>(t)].is_number()) schema_error(text, "w", "\"w\" entries must be numbers");
      inst.w(i, t) = row[static_cast<std::size_t>(t)].get<double>();
    }
  }
  const auto& arr = j.at("arrival");
  auto read_perm = [&](const nlohmann::json& pv) {
    if (!pv.is_array()) schema_error(text, "perm", "\"perm\" must be an array");
    std::vector<int> perm;
    for (const auto& v : pv) {
      if (!v.is_number_integer()) schema_error(text, "perm", "\"perm\" entries must be integers");
      perm.push_back(v.get<int>());
    }
    return perm;
  };
  if (!arr.is_object() || !arr.contains("kind") || !arr.at("kind").is_string()) {
    schema_error(text, "arrival", "\"arrival\" must be an object with a \"kind\"");
  }
  const std::string kind = arr.at("kind").get<std::string>();
  if (kind == "fixed") {
    if (!arr.contains("perm")) schema_error(text, "arrival", "fixed arrival needs \"perm\"");
    inst.arrival = FixedOrder{read_perm(arr.at("perm"))};
  } else if (kind == "stochastic") {
    if (!arr.contains("orders") || !arr.at("orders").is_array()) schema_error(text, "arrival", "stochastic arrival needs \"orders\"");
    StochasticOrder so;
    for (const auto& o : arr.at("orders")) {
      if (!o.is_object() || !o.contains("perm") || !o.contains("prob") || !o.at("prob").is_number()) {
        schema_error(text, "orders", "each order needs \"perm\" and numeric \"prob\"");
      }
      so.orders.push_back({read_perm(o.at("perm")), o.at("prob").get<double>()});
    }
    inst.arrival = std::move(so);
  } else {
    schema_error(text, "kind", "unknown arrival kind \"" + kind + "\"");
  }
  require_valid(inst);
  return inst;
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write " + path.string());
  out << text;
}

Instance load_instance(const std::filesystem::path& path) { return parse_instance(read_text(path)); }

void save_instance(const std::filesystem::path& path, const Instance& instance) {
  write_text(path, serialize_instance(instance) + "\n");
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string instance_digest(const Instance& instance) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(fnv1a64(serialize_instance(instance))));
  return buf;
}

}  // namespace osm
