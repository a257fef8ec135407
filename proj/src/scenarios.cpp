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

#include "phonoread/scenarios.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

namespace phonoread {

namespace {

constexpr std::array<ScenarioKind, 4> kAllScenarios{ScenarioKind::fig2, ScenarioKind::fig3, ScenarioKind::tqd,
                                                    ScenarioKind::budget};

ProtocolConfig simplified_config(const ScenarioConfig& c) {
  ProtocolConfig p;
  p.scheme = Scheme::simplified;
  p.timing = c.timing;
  p.order = c.order;
  p.rabi = c.rabi;
  p.integrator = c.integrator;
  return p;
}

}  // namespace

const char* to_string(ScenarioKind kind) noexcept {
  switch (kind) {
    case ScenarioKind::fig2:
      return "fig2";
    case ScenarioKind::fig3:
      return "fig3";
    case ScenarioKind::tqd:
      return "tqd";
    case ScenarioKind::budget:
      return "budget";
  }
  return "?";
}

std::optional<ScenarioKind> parse_scenario(std::string_view name) {
  for (auto k : kAllScenarios)
    if (name == to_string(k)) return k;
  return std::nullopt;
}

void ScenarioConfig::validate() const {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  physical.validate();
  if (kappa && !(*kappa >= 0.0 && std::isfinite(*kappa))) throw std::invalid_argument("kappa must be >= 0");
  decoherence.validate();
  rabi.validate();
  for (auto n : fig2_states)
    if (n > 2) throw std::invalid_argument("fig2_states entries must be <= 2");
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (!(times[i] >= 0.0)) throw std::invalid_argument("times must be non-negative");
    if (i > 0 && times[i] < times[i - 1]) throw std::invalid_argument("times must be sorted");
  }
  tqd_sweep.validate();
  integrator.validate();
  for (double k : budget_kappas)
    if (!(k >= 0.0)) throw std::invalid_argument("budget_kappas must be >= 0");
}

HoppingParams ScenarioConfig::hopping(std::size_t n_ions) const {
  HoppingParams h = hopping_from_physical(physical, n_ions);
  if (kappa) h.kappa = *kappa;
  return h;
}

std::vector<double> ScenarioConfig::time_grid() const {
  if (!times.empty()) return times;
  std::vector<double> g;
  for (int i = 0; i <= 35; ++i) g.push_back(i * 10e-6);
  return g;
}

std::vector<double> ScenarioConfig::budget_grid() const {
  if (!budget_kappas.empty()) return budget_kappas;
  return {constants::kTwoPi * 1e3, constants::kTwoPi * 2e3, constants::kTwoPi * 3e3, constants::kTwoPi * 4e3};
}

StateVector prepare_fock(const StateVector& state, std::size_t ion, std::size_t n, const RabiParams& rabi) {
  state.basis().check_ion(ion);
  if (n > state.basis().n_max()) throw std::invalid_argument("prepare_fock: n exceeds n_max");
  StateVector s = state;
  for (std::size_t k = 0; k < n; ++k) {
    // |down,k> -> |up,k+1> needs theta*sqrt(k+1) = pi.
    s = apply_pulse(s, PulseSpec::blue_sideband(ion, M_PI / std::sqrt(static_cast<double>(k + 1)), 0.0, rabi));
    s = apply_pulse(s, PulseSpec::carrier(ion, M_PI, 0.0, rabi));
  }
  return s;
}

std::string outcome_label(const JointOutcome& o) {
  std::string s;
  for (std::size_t i = 0; i < o.size(); ++i) {
    if (i) s += '-';
    s += std::to_string(o[i]);
  }
  return s;
}

Fig2Result scenario_fig2(std::size_t n, std::size_t shots, std::uint64_t seed, const DecoherenceParams& decoherence,
                         const RabiParams& rabi) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  const auto basis = build_space(1, 3, standard_levels(1));
  ProtocolConfig p;
  p.rabi = rabi;
  const StateVector psi = prepare_fock(StateVector(basis), 0, n, rabi);
  ShotRunner runner(psi, 0.0, p, HoppingParams{0.0, constants::kTwoPi * 3e6, 1}, decoherence);
  Fig2Result r;
  r.prepared = n;
  for (const auto& rec : sample_shots(runner, shots, seed)) r.histogram.add(rec);
  r.exact = runner.outcome_probabilities();
  return r;
}

std::vector<Fig2Result> scenario_fig2(const ScenarioConfig& c) {
  c.validate();
  std::vector<Fig2Result> out;
  for (std::size_t i = 0; i < c.fig2_states.size(); ++i)
    out.push_back(scenario_fig2(c.fig2_states[i], c.shots, derive_seed(c.seed, i), c.decoherence, c.rabi));
  return out;
}

std::vector<Fig3Point> scenario_fig3(const ScenarioConfig& c) {
  c.validate();
  const auto basis = build_space(2, 3, standard_levels(1));
  const HoppingParams hop = c.hopping(2);
  const ProtocolConfig p = simplified_config(c);
  StateVector psi(basis);
  psi = prepare_fock(psi, 0, 1, c.rabi);
  psi = prepare_fock(psi, 1, 1, c.rabi);

  const auto grid = c.time_grid();
  std::vector<Fig3Point> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double t = grid[i];
    ShotRunner runner(psi, t, p, hop, c.decoherence);
    Fig3Point pt;
    pt.time = t;
    for (const auto& rec : sample_shots(runner, c.shots, derive_seed(c.seed, i))) pt.histogram.add(rec);
    pt.exact = runner.outcome_probabilities();
    const double ct = std::cos(hop.kappa * t);
    const double st = std::sin(hop.kappa * t);
    pt.analytic_11 = ct * ct;
    pt.analytic_20 = st * st / 2.0;
    out.push_back(std::move(pt));
  }
  return out;
}

std::vector<TqdRow> scenario_tqd(const SweepSpec& sweep, std::size_t max_n, const IntegratorOptions& options) {
  const auto fid = passage_fidelities(sweep, max_n, options);
  std::vector<TqdRow> rows;
  for (std::size_t n = 0; n < fid.size(); ++n) rows.push_back({n, fid[n]});
  return rows;
}

double mapping_infidelity(double kappa, MappingOrder order, const RabiParams& rabi, Timing timing) {
  const auto basis = build_space(2, 3, standard_levels(1));
  ProtocolConfig p;
  p.timing = timing;
  p.order = order;
  p.rabi = rabi;
  HoppingParams hop{kappa, constants::kTwoPi * 3e6, 2};
  const std::array<std::size_t, 2> ones{1, 1};
  ShotRunner runner(StateVector::fock(basis, ones), 0.0, p, hop);
  return 1.0 - runner.outcome_probabilities().at({1, 1});
}

std::vector<BudgetRow> scenario_mapping_budget(std::span<const double> kappas, Timing timing,
                                               const RabiParams& rabi) {
  std::vector<BudgetRow> rows;
  for (double k : kappas) {
    for (auto order : {MappingOrder::simultaneous, MappingOrder::sequential}) {
      ProtocolConfig p;
      p.order = order;
      p.rabi = rabi;
      double t = 0.0;
      for (const auto& s : mapping_plan(p, 2)) t += step_duration(s);
      rows.push_back({k, order, t, mapping_infidelity(k, order, rabi, timing)});
    }
  }
  return rows;
}

std::vector<ResultTable> to_tables(const std::vector<Fig2Result>& results) {
  ResultTable t{"fig2", {}};
  for (const auto& r : results) {
    const std::string prefix = "prep" + std::to_string(r.prepared) + ":";
    for (std::size_t n = 0; n <= 2; ++n) {
      const JointOutcome o{n};
      t.rows.push_back({0.0, prefix + outcome_label(o), r.histogram.probability(o), r.histogram.sigma(o),
                        r.histogram.count(o), r.histogram.total()});
    }
  }
  return {t};
}

std::vector<ResultTable> to_tables(const std::vector<Fig3Point>& points) {
  const std::array<JointOutcome, 3> outcomes{JointOutcome{1, 1}, JointOutcome{2, 0}, JointOutcome{0, 2}};
  ResultTable sampled{"fig3", {}};
  ResultTable overlay{"fig3_overlay", {}};
  for (const auto& pt : points) {
    for (const auto& o : outcomes) {
      const auto& h = pt.histogram;
      sampled.rows.push_back({pt.time, outcome_label(o), h.probability(o), h.sigma(o), h.count(o), h.total()});
    }
    for (const auto& o : outcomes)
      overlay.rows.push_back({pt.time, "exact:" + outcome_label(o), pt.exact.at(o), 0.0, 0, 0});
    overlay.rows.push_back({pt.time, "analytic:1-1", pt.analytic_11, 0.0, 0, 0});
    overlay.rows.push_back({pt.time, "analytic:2-0", pt.analytic_20, 0.0, 0, 0});
    overlay.rows.push_back({pt.time, "analytic:0-2", pt.analytic_20, 0.0, 0, 0});
  }
  return {sampled, overlay};
}

std::vector<ResultTable> to_tables(const std::vector<TqdRow>& rows, double duration) {
  ResultTable t{"tqd", {}};
  for (const auto& r : rows) t.rows.push_back({duration, "n=" + std::to_string(r.n), r.fidelity, 0.0, 0, 0});
  return {t};
}

std::vector<ResultTable> to_tables(const std::vector<BudgetRow>& rows) {
  ResultTable t{"budget", {}};
  for (const auto& r : rows) {
    char label[96];
    std::snprintf(label, sizeof label, "kappa_2pi_khz=%.3f/%s", r.kappa / constants::kTwoPi / 1e3,
                  r.order == MappingOrder::simultaneous ? "simultaneous" : "sequential");
    t.rows.push_back({r.mapping_time, label, r.infidelity, 0.0, 0, 0});
  }
  return {t};
}

std::vector<ResultTable> run_scenario(const ScenarioConfig& c) {
  c.validate();
  switch (c.scenario) {
    case ScenarioKind::fig2:
      return to_tables(scenario_fig2(c));
    case ScenarioKind::fig3:
      return to_tables(scenario_fig3(c));
    case ScenarioKind::tqd:
      return to_tables(scenario_tqd(c.tqd_sweep, c.tqd_max_n, c.integrator), c.tqd_sweep.duration);
    case ScenarioKind::budget: {
      const auto grid = c.budget_grid();
      return to_tables(scenario_mapping_budget(grid, Timing::hopping_aware, c.rabi));
    }
  }
  throw std::logic_error("unknown scenario");
}

}  // namespace phonoread
