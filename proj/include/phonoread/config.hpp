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

#ifndef PHONOREAD_CONFIG_HPP
#define PHONOREAD_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "phonoread/scenarios.hpp"

namespace phonoread {

/// Bad configuration input. `key()` names the offending entry.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

enum class Dimension { frequency, time, length, rate };

/// Parses "<number> <unit>" into SI. Frequencies given in Hz/kHz/MHz are
/// converted to angular frequency (x 2 pi); rad/s, krad/s and Mrad/s are
/// taken as is. Times: s, ms, us, ns. Lengths: m, mm, um, nm. Rates: /s,
/// /ms, /us. A bare number is rejected.
double parse_quantity(const std::string& text, Dimension dim, const std::string& key = {});

/// Command-line values; each one set here overrides the file.
struct ConfigOverrides {
  std::optional<std::string> scenario;
  std::optional<std::size_t> shots;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

ScenarioConfig config_from_json(const nlohmann::json& j);
ScenarioConfig parse_config_text(const std::string& text, const ConfigOverrides& overrides = {});
/// Empty path -> defaults. Precedence: built-in defaults < file < overrides.
ScenarioConfig parse_config(const std::string& path, const ConfigOverrides& overrides = {});

/// Resolved config using the same keys and unit strings the parser reads.
nlohmann::json config_to_json(const ScenarioConfig& config);

}  // namespace phonoread

#endif  // PHONOREAD_CONFIG_HPP
