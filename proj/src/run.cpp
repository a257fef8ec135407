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

#include "phonoread/run.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>

#include "phonoread/output.hpp"

namespace phonoread {

namespace fs = std::filesystem;

namespace {

bool write_file(const fs::path& path, const std::string& content, std::ostream& log) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    log << "error: cannot write " << path.string() << "\n";
    return false;
  }
  out << content;
  out.close();
  if (!out) {
    log << "error: failed writing " << path.string() << "\n";
    return false;
  }
  return true;
}

}  // namespace

int run(const ScenarioConfig& config, std::ostream& log) {
  const auto start = std::chrono::steady_clock::now();
  try {
    config.validate();
  } catch (const std::exception& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  const fs::path dir(config.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    log << "error: cannot create output directory " << dir.string() << "\n";
    return kExitConfigError;
  }

  std::vector<ResultTable> tables;
  try {
    tables = run_scenario(config);
  } catch (const NumericalError& e) {
    log << "numerical error: " << e.what() << "\n";
    return kExitNumericalError;
  } catch (const std::invalid_argument& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }

  RunManifest m;
  m.version = version_string();
  m.config = config_to_json(config);
  m.seed = config.seed;
  for (const auto& t : tables) {
    const std::string name = t.name + ".csv";
    if (!write_file(dir / name, to_csv(t), log)) return kExitConfigError;
    m.files.push_back(name);
  }
  m.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!write_file(dir / "manifest.json", m.to_json().dump(2) + "\n", log)) return kExitConfigError;
  log << "wrote " << m.files.size() << " table(s) to " << dir.string() << "\n";
  return kExitOk;
}

int run(const std::string& config_path, const ConfigOverrides& overrides, std::ostream& log) {
  ScenarioConfig config;
  try {
    config = parse_config(config_path, overrides);
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return run(config, log);
}

int validate(const std::string& config_path, std::ostream& out, std::ostream& log) {
  try {
    out << config_to_json(parse_config(config_path)).dump(2) << "\n";
  } catch (const ConfigError& e) {
    log << "config error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitOk;
}

}  // namespace phonoread
