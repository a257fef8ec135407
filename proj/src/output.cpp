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

#include "phonoread/output.hpp"

#include <cstdio>
#include <sstream>

#ifndef PHONOREAD_VERSION_STRING
#define PHONOREAD_VERSION_STRING "0.0.0-unknown"
#endif

namespace phonoread {

void write_csv(std::ostream& out, const ResultTable& table) {
  out << kCsvHeader << '\n';
  char buf[256];
  for (const auto& r : table.rows) {
    // Clamp -0 so sign bits never leak into goldens.
    const double p = r.probability == 0.0 ? 0.0 : r.probability;
    std::snprintf(buf, sizeof buf, "%.9e,%s,%.12e,%.12e,%zu,%zu\n", r.time_s + 0.0, r.outcome.c_str(), p,
                  r.sigma + 0.0, r.counts, r.shots);
    out << buf;
  }
}

std::string to_csv(const ResultTable& table) {
  std::ostringstream ss;
  write_csv(ss, table);
  return ss.str();
}

nlohmann::json RunManifest::to_json() const {
  return {{"version", version},     {"seed", seed}, {"wall_time_s", wall_time_s},
          {"files", files},         {"config", config}};
}

const char* version_string() noexcept { return PHONOREAD_VERSION_STRING; }

}  // namespace phonoread
