// Copyright 2026 The phonoread Authors
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

#ifndef PHONOREAD_OUTPUT_HPP
#define PHONOREAD_OUTPUT_HPP

#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "phonoread/scenarios.hpp"

namespace phonoread {

inline constexpr const char* kCsvHeader = "time_s,outcome,probability,sigma,counts,shots";

/// Fixed-format CSV so equal tables give equal bytes.
void write_csv(std::ostream& out, const ResultTable& table);
std::string to_csv(const ResultTable& table);

struct RunManifest {
  std::string version;
  nlohmann::json config;
  std::uint64_t seed = 0;
  double wall_time_s = 0.0;
  std::vector<std::string> files;  // relative to the output directory

  nlohmann::json to_json() const;
};

/// Artifact version baked in at build time ("<semver>-g<hash>").
const char* version_string() noexcept;

}  // namespace phonoread

#endif  // PHONOREAD_OUTPUT_HPP
