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

// phonoread run --scenario fig3 --shots 500 --seed 7 --config cfg.json --out out/
// phonoread validate --config cfg.json

#include <iostream>

#include <CLI11.hpp>

#include "phonoread/output.hpp"
#include "phonoread/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Phonon-number-resolving detection simulator"};
  app.set_version_flag("--version", std::string(phonoread::version_string()));
  app.require_subcommand(1);

  phonoread::ConfigOverrides o;
  std::string config_path;
  std::string scenario;
  std::size_t shots = 0;
  std::uint64_t seed = 0;
  std::string out_dir;

  auto* run = app.add_subcommand("run", "Run a scenario and write CSV tables plus manifest.json");
  auto* scenario_opt = run->add_option("--scenario", scenario, "fig2, fig3, tqd or budget");
  auto* shots_opt = run->add_option("--shots", shots, "Shots per histogram (overrides the config file)");
  auto* seed_opt = run->add_option("--seed", seed, "Master seed (overrides the config file)");
  run->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  auto* out_opt = run->add_option("--out", out_dir, "Output directory (overrides the config file)");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Parse a config and print the resolved values");
  validate->add_option("--config", validate_path, "JSON config file")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : phonoread::kExitConfigError;
  }

  if (*validate) return phonoread::validate(validate_path, std::cout, std::cerr);

  if (*scenario_opt) o.scenario = scenario;
  if (*shots_opt) o.shots = shots;
  if (*seed_opt) o.seed = seed;
  if (*out_opt) o.out_dir = out_dir;
  return phonoread::run(config_path, o, std::cerr);
}
