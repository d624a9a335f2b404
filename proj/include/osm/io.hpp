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

#ifndef OSM_IO_HPP_
#define OSM_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>

#include "json.hpp"
#include "osm/instance.hpp"

namespace osm {

class InstanceParseError : public std::runtime_error {
 public:
  InstanceParseError(const std::string& what, int line, int column)
      : std::runtime_error(what), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

// Compact JSON with sorted keys and doubles printed with 17 significant
// digits. Integral values stored as integers print without a fraction.
std::string canonical_dump(const nlohmann::json& value);

nlohmann::json instance_to_json(const Instance& instance);
std::string serialize_instance(const Instance& instance);

// Throws InstanceParseError for malformed text or schema violations, and
// ParameterError if the parsed instance fails validation.
Instance parse_instance(std::string_view text);

Instance load_instance(const std::filesystem::path& path);
void save_instance(const std::filesystem::path& path, const Instance& instance);
std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

std::uint64_t fnv1a64(std::string_view bytes);
// 16 hex digits of the FNV-1a hash of the canonical serialization.
std::string instance_digest(const Instance& instance);

}  // namespace osm

#endif  // OSM_IO_HPP_
