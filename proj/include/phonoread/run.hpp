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

#ifndef PHONOREAD_RUN_HPP
#define PHONOREAD_RUN_HPP

#include <ostream>
#include <string>

#include "phonoread/config.hpp"

namespace phonoread {

enum ExitCode : int {
  kExitOk = 0,
  kExitConfigError = 1,  // also an unwritable output path
  kExitNumericalError = 2,
};

/// Runs the configured scenario, writing <scenario tables>.csv and
/// manifest.json into config.out_dir. Diagnostics go to `log`.
int run(const ScenarioConfig& config, std::ostream& log);

/// Parse and resolve, then run. Config errors map to kExitConfigError.
int run(const std::string& config_path, const ConfigOverrides& overrides, std::ostream& log);

/// Parse-only check; prints the resolved config as JSON to `out`.
int validate(const std::string& config_path, std::ostream& out, std::ostream& log);

}  // namespace phonoread

#endif  // PHONOREAD_RUN_HPP
