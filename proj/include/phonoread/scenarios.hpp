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

#ifndef PHONOREAD_SCENARIOS_HPP
#define PHONOREAD_SCENARIOS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phonoread/shots.hpp"

namespace phonoread {

enum class ScenarioKind { fig2, fig3, tqd, budget };

const char* to_string(ScenarioKind kind) noexcept;
std::optional<ScenarioKind> parse_scenario(std::string_view name);

/// Everything a named experiment needs. All quantities are SI (s, m, rad/s).
struct ScenarioConfig {
  ScenarioKind scenario = ScenarioKind::fig3;
  std::size_t shots = 500;
  std::uint64_t seed = 20260101;
  std::string out_dir = "phonoread_out";

  // Hopping: `kappa` wins when set, otherwise derived from `physical`.
  PhysicalIonParams physical{};
  std::optional<double> kappa;
  DecoherenceParams decoherence{};

  Timing timing = Timing::ideal;
  MappingOrder order = MappingOrder::sequential;
  RabiParams rabi = RabiParams::standard();

  std::vector<std::size_t> fig2_states{0, 1, 2};
  std::vector<double> times;  // fig3 grid; empty -> 0..350 us every 10 us

  SweepSpec tqd_sweep{};
  std::size_t tqd_max_n = 7;

  std::vector<double> budget_kappas;  // empty -> 2pi x {1, 2, 3, 4} kHz
  IntegratorOptions integrator{};

  void validate() const;
  HoppingParams hopping(std::size_t n_ions = 2) const;
  std::vector<double> time_grid() const;
  std::vector<double> budget_grid() const;
};

/// Blue-sideband pi (angle calibrated per manifold) then carrier pi, n times.
/// Starting from |down,0> this lands on |down,n> up to a global phase.
StateVector prepare_fock(const StateVector& state, std::size_t ion, std::size_t n,
                         const RabiParams& rabi = RabiParams::standard());

/// One (time, outcome) cell; shared by every scenario's CSV.
struct ResultRow {
  double time_s = 0.0;
  std::string outcome;
  double probability = 0.0;
  double sigma = 0.0;
  std::size_t counts = 0;
  std::size_t shots = 0;

  bool operator==(const ResultRow&) const = default;
};

struct ResultTable {
  std::string name;  // file stem
  std::vector<ResultRow> rows;
};

std::string outcome_label(const JointOutcome& o);

struct Fig2Result {
  std::size_t prepared = 0;
  Histogram histogram;
  OutcomeDistribution exact;
};

struct Fig3Point {
  double time = 0.0;
  Histogram histogram;
  OutcomeDistribution exact;  // infinite-shot limit
  double analytic_11 = 0.0;   // cos^2(kappa t)
  double analytic_20 = 0.0;   // sin^2(kappa t)/2, same for (0,2)
};

struct TqdRow {
  std::size_t n = 0;
  double fidelity = 0.0;
};

struct BudgetRow {
  double kappa = 0.0;
  MappingOrder order = MappingOrder::simultaneous;
  double mapping_time = 0.0;
  double infidelity = 0.0;
};

std::vector<Fig2Result> scenario_fig2(const ScenarioConfig& config);
Fig2Result scenario_fig2(std::size_t n, std::size_t shots, std::uint64_t seed,
                         const DecoherenceParams& decoherence = {},
                         const RabiParams& rabi = RabiParams::standard());

std::vector<Fig3Point> scenario_fig3(const ScenarioConfig& config);

std::vector<TqdRow> scenario_tqd(const SweepSpec& sweep, std::size_t max_n,
                                 const IntegratorOptions& options = {});

/// Infidelity 1 - P(1,1) of the full mapping plus readout for |down,1>|down,1>
/// with hopping co-evolving during the timed pulses.
double mapping_infidelity(double kappa, MappingOrder order, const RabiParams& rabi = RabiParams::standard(),
                          Timing timing = Timing::hopping_aware);
std::vector<BudgetRow> scenario_mapping_budget(std::span<const double> kappas, Timing timing,
                                               const RabiParams& rabi = RabiParams::standard());

std::vector<ResultTable> to_tables(const std::vector<Fig2Result>& r);
std::vector<ResultTable> to_tables(const std::vector<Fig3Point>& r);
std::vector<ResultTable> to_tables(const std::vector<TqdRow>& r, double duration);
std::vector<ResultTable> to_tables(const std::vector<BudgetRow>& r);

/// Runs config.scenario end to end.
std::vector<ResultTable> run_scenario(const ScenarioConfig& config);

}  // namespace phonoread

#endif  // PHONOREAD_SCENARIOS_HPP
