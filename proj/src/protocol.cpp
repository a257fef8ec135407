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

#include "phonoread/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace phonoread {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Dense matrix of a state-space map that is linear (a unitary kernel).
Eigen::MatrixXcd dense_unitary(const BasisPtr& basis, const std::function<StateVector(StateVector)>& f) {
  const auto d = static_cast<Eigen::Index>(basis->dimension());
  Eigen::MatrixXcd u(d, d);
  for (Eigen::Index k = 0; k < d; ++k) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
    e[k] = 1.0;
    u.col(k) = f(StateVector(basis, std::move(e))).amplitudes();
  }
  return u;
}

DensityOperator conjugate(const DensityOperator& rho, const Eigen::MatrixXcd& u) {
  Eigen::MatrixXcd m = u * rho.matrix() * u.adjoint();
  return DensityOperator(rho.basis_ptr(), std::move(m), 1e-8);
}

double group_duration(const PulseGroup& g) {
  if (g.pulses.empty()) throw std::invalid_argument("empty pulse group");
  const double t = g.pulses.front().duration;
  for (const auto& p : g.pulses)
    if (std::abs(p.duration - t) > 1e-15 * std::max(1.0, t))
      throw std::invalid_argument("concurrent pulses must share one duration");
  return t;
}

}  // namespace

std::vector<std::string> ProtocolConfig::auxiliary_levels() const {
  if (!aux_levels.empty()) return aux_levels;
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n_aux(); ++i) out.push_back(aux_level(i));
  return out;
}

std::vector<std::string> ProtocolConfig::required_levels() const {
  std::vector<std::string> out{std::string(kDown), std::string(kUp)};
  for (auto& l : auxiliary_levels()) out.push_back(l);
  return out;
}

std::vector<std::size_t> ProtocolConfig::ion_readout_order(std::size_t n_ions) const {
  if (readout_order.empty()) {
    std::vector<std::size_t> order(n_ions);
    for (std::size_t j = 0; j < n_ions; ++j) order[j] = j;
    return order;
  }
  std::vector<std::size_t> sorted = readout_order;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t j = 0; j < sorted.size(); ++j)
    if (sorted[j] != j || sorted.size() != n_ions)
      throw std::invalid_argument("readout_order must be a permutation of the ions");
  return readout_order;
}

void ProtocolConfig::validate() const {
  if (scheme == Scheme::general && max_n == 0) throw std::invalid_argument("general scheme needs max_n >= 1");
  const auto aux = auxiliary_levels();
  if (aux.size() < n_aux())
    throw std::invalid_argument("scheme needs " + std::to_string(n_aux()) + " auxiliary levels, got " +
                                std::to_string(aux.size()));
  for (const auto& l : aux)
    if (l == kDown || l == kUp) throw std::invalid_argument("auxiliary level cannot be down or up");
  if (bright_levels.empty()) throw std::invalid_argument("bright level set is empty");
  if (std::find(bright_levels.begin(), bright_levels.end(), kDown) == bright_levels.end())
    throw std::invalid_argument("bright level set must contain 'down'");
  for (const auto& l : aux)
    if (std::find(bright_levels.begin(), bright_levels.end(), l) != bright_levels.end())
      throw std::invalid_argument("auxiliary level '" + l + "' cannot be bright");
  if (shelve_duration < 0.0) throw std::invalid_argument("shelve_duration must be >= 0");
  rabi.validate();
  if (passage) passage->validate();
}

void ProtocolConfig::validate(const Basis& basis) const {
  validate();
  for (const auto& l : required_levels())
    if (!basis.has_level(l))
      throw std::invalid_argument("basis lacks level '" + l + "' needed by the detection scheme");
  for (const auto& l : bright_levels)
    if (!basis.has_level(l)) throw std::invalid_argument("basis lacks bright level '" + l + "'");
}

std::vector<MappingStep> mapping_steps(const ProtocolConfig& config, std::span<const std::size_t> ions) {
  config.validate();
  const std::vector<std::size_t> ion_list(ions.begin(), ions.end());
  const auto aux = config.auxiliary_levels();
  std::vector<MappingStep> steps;

  auto shelve_step = [&](const std::string& level) -> MappingStep {
    if (config.shelve_duration == 0.0) return LevelSwap{ion_list, std::string(kDown), level};
    PulseGroup g;
    for (auto j : ion_list) g.pulses.push_back(PulseSpec::shelve(j, std::string(kDown), level, config.shelve_duration));
    return g;
  };

  if (config.scheme == Scheme::simplified) {
    for (std::size_t k = 0; k < 3; ++k) {
      PulseGroup g;
      for (auto j : ion_list) g.pulses.push_back(composite_sequence(j, config.rabi)[2 - k]);
      steps.emplace_back(std::move(g));
    }
    steps.push_back(shelve_step(aux[0]));
    PulseGroup bsb;
    for (auto j : ion_list) bsb.pulses.push_back(PulseSpec::blue_sideband(j, kPi, 0.0, config.rabi));
    steps.emplace_back(std::move(bsb));
    return steps;
  }

  for (std::size_t i = 0; i < config.max_n; ++i) {
    if (config.passage)
      steps.emplace_back(SweepGroup{ion_list, *config.passage});
    else
      steps.emplace_back(IdealTransfer{ion_list});
    steps.push_back(shelve_step(aux[i]));
    PulseGroup carrier;
    for (auto j : ion_list) carrier.pulses.push_back(PulseSpec::carrier(j, kPi, 0.0, config.rabi));
    steps.emplace_back(std::move(carrier));
  }
  return steps;
}

std::vector<MappingStep> mapping_plan(const ProtocolConfig& config, std::size_t n_ions) {
  std::vector<MappingStep> plan;
  if (config.order == MappingOrder::simultaneous) {
    std::vector<std::size_t> all(n_ions);
    for (std::size_t j = 0; j < n_ions; ++j) all[j] = j;
    return mapping_steps(config, all);
  }
  for (std::size_t j = 0; j < n_ions; ++j) {
    const std::array<std::size_t, 1> one{j};
    auto part = mapping_steps(config, one);
    plan.insert(plan.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return plan;
}

double step_duration(const MappingStep& step) {
  return std::visit(Overloaded{
                        [](const PulseGroup& g) { return group_duration(g); },
                        [](const LevelSwap&) { return 0.0; },
                        [](const IdealTransfer&) { return 0.0; },
                        [](const SweepGroup& g) { return g.sweep.duration; },
                    },
                    step);
}

MappingExecutor::MappingExecutor(BasisPtr basis, ProtocolConfig config, HoppingParams hop,
                                 DecoherenceParams decoherence)
    : basis_(std::move(basis)), config_(std::move(config)), hop_(hop) {
  config_.validate(*basis_);
  if (config_.timing == Timing::hopping_aware && hop_.kappa > 0.0) {
    hop_.n_ions = basis_->n_ions();
    h_hop_ = build_hopping_hamiltonian(basis_, hop_, Frame::rotating);
  }
  jumps_ = dephasing_operators(basis_, decoherence);
}

bool MappingExecutor::hopping_active() const noexcept { return h_hop_.has_value(); }

StateVector MappingExecutor::apply(const StateVector& state, const MappingStep& step) const {
  return std::visit(
      Overloaded{
          [&](const PulseGroup& g) {
            const double t = group_duration(g);
            if (!h_hop_) {
              StateVector out = state;
              for (const auto& p : g.pulses) out = apply_pulse(out, p);
              return out;
            }
            OperatorMatrix h = *h_hop_;
            for (const auto& p : g.pulses) h = h + drive_hamiltonian(basis_, p);
            return evolve_unitary(state, h, t);
          },
          [&](const LevelSwap& s) {
            StateVector out = state;
            for (auto j : s.ions) out = shelve_swap(out, j, s.level_a, s.level_b);
            return out;
          },
          [&](const IdealTransfer& s) {
            StateVector out = state;
            for (auto j : s.ions) out = ideal_rsb_transfer(out, j);
            return out;
          },
          [&](const SweepGroup& s) {
            if (s.sweep.duration == 0.0) return state;
            auto h = sweep_hamiltonian(basis_, s.ions, s.sweep);
            if (h_hop_) h.add_constant(*h_hop_);
            return evolve_time_dependent(state, h, 0.0, s.sweep.duration, config_.integrator);
          },
      },
      step);
}

DensityOperator MappingExecutor::apply(const DensityOperator& rho, const MappingStep& step) const {
  return std::visit(
      Overloaded{
          [&](const PulseGroup& g) {
            const double t = group_duration(g);
            if (!h_hop_ && jumps_.empty()) {
              const auto u = dense_unitary(basis_, [&](StateVector s) { return apply(s, step); });
              return conjugate(rho, u);
            }
            const auto d = static_cast<Eigen::Index>(basis_->dimension());
            OperatorMatrix h = h_hop_ ? *h_hop_ : OperatorMatrix(basis_, SparseMatrix(d, d), true);
            for (const auto& p : g.pulses) h = h + drive_hamiltonian(basis_, p);
            return evolve_lindblad(rho, h, jumps_, t, config_.integrator);
          },
          [&](const auto& instantaneous) -> DensityOperator {
            using T = std::decay_t<decltype(instantaneous)>;
            if constexpr (std::is_same_v<T, SweepGroup>) {
              if (instantaneous.sweep.duration == 0.0) return rho;
              auto h = sweep_hamiltonian(basis_, instantaneous.ions, instantaneous.sweep);
              if (h_hop_) h.add_constant(*h_hop_);
              return evolve_lindblad(rho, h, jumps_, 0.0, instantaneous.sweep.duration, config_.integrator);
            } else {
              const auto u = dense_unitary(basis_, [&](StateVector s) { return apply(s, step); });
              return conjugate(rho, u);
            }
          },
      },
      step);
}

StateVector MappingExecutor::run(const StateVector& state, std::span<const MappingStep> steps) const {
  StateVector out = state;
  for (const auto& s : steps) out = apply(out, s);
  return out;
}

DensityOperator MappingExecutor::run(const DensityOperator& rho, std::span<const MappingStep> steps) const {
  DensityOperator out = rho;
  for (const auto& s : steps) out = apply(out, s);
  return out;
}

StateVector MappingExecutor::undo(const StateVector& state, std::span<const MappingStep> steps) const {
  if (h_hop_) throw std::logic_error("undo is only defined for ideal timing");
  StateVector out = state;
  for (auto it = steps.rbegin(); it != steps.rend(); ++it) {
    std::visit(Overloaded{
                   [&](const PulseGroup& g) {
                     for (const auto& p : g.pulses) out = unapply_pulse(out, p);
                   },
                   [&](const LevelSwap& s) {
                     for (auto j : s.ions) out = shelve_swap(out, j, s.level_a, s.level_b);
                   },
                   [&](const IdealTransfer& s) {
                     // Each block acts as i*sigma_x, so U^3 = U^-1.
                     for (auto j : s.ions)
                       for (int k = 0; k < 3; ++k) out = ideal_rsb_transfer(out, j);
                   },
                   [&](const SweepGroup&) {
                     throw std::logic_error("sweeps have no closed-form inverse");
                   },
               },
               *it);
  }
  return out;
}

StateVector MappingExecutor::map_all(const StateVector& state) const {
  const auto plan = mapping_plan(config_, basis_->n_ions());
  return run(state, plan);
}

DensityOperator MappingExecutor::map_all(const DensityOperator& rho) const {
  const auto plan = mapping_plan(config_, basis_->n_ions());
  return run(rho, plan);
}

StateVector simplified_map(const StateVector& state, std::size_t ion, const RabiParams& rabi) {
  ProtocolConfig config;
  config.scheme = Scheme::simplified;
  config.rabi = rabi;
  MappingExecutor exec(state.basis_ptr(), config);
  const std::array<std::size_t, 1> ions{ion};
  return exec.run(state, mapping_steps(config, ions));
}

StateVector general_map(const StateVector& state, std::size_t ion, std::size_t max_n, const RabiParams& rabi) {
  ProtocolConfig config;
  config.scheme = Scheme::general;
  config.max_n = max_n;
  config.rabi = rabi;
  MappingExecutor exec(state.basis_ptr(), config);
  const std::array<std::size_t, 1> ions{ion};
  return exec.run(state, mapping_steps(config, ions));
}

std::optional<std::size_t> ReadoutPlan::classify(const Basis& basis, std::size_t level,
                                                 const std::vector<std::size_t>& bright) const {
  const std::size_t down = basis.level(kDown);
  for (const auto& step : steps) {
    if (step.unshelve) {
      const std::size_t u = basis.level(*step.unshelve);
      if (level == down)
        level = u;
      else if (level == u)
        level = down;
    }
    if (std::find(bright.begin(), bright.end(), level) != bright.end()) return step.phonons_if_bright;
  }
  return all_dark;
}

ReadoutPlan readout_plan(const ProtocolConfig& config) {
  config.validate();
  const auto aux = config.auxiliary_levels();
  ReadoutPlan plan;
  if (config.scheme == Scheme::simplified) {
    plan.steps = {{std::nullopt, 2}, {aux[0], 0}};
    plan.all_dark = 1;
    return plan;
  }
  plan.steps.push_back({std::nullopt, config.max_n});
  for (std::size_t i = config.max_n; i-- > 0;) plan.steps.push_back({aux[i], i});
  return plan;
}

FluorescenceDetector::FluorescenceDetector(BasisPtr basis, const std::vector<std::string>& bright_levels)
    : basis_(std::move(basis)) {
  for (const auto& l : bright_levels) bright_.push_back(basis_->level(l));
  const auto id = identity(basis_);
  for (std::size_t j = 0; j < basis_->n_ions(); ++j) {
    const auto d = static_cast<Eigen::Index>(basis_->dimension());
    OperatorMatrix bright(basis_, SparseMatrix(d, d), true);
    for (const auto& l : bright_levels) bright = bright + level_projector(basis_, j, l);
    std::vector<OperatorMatrix> ps{bright, id - bright};
    per_ion_.emplace_back(std::move(ps));
  }
}

DetectResult FluorescenceDetector::detect(const StateVector& state, std::size_t ion, ShotRng& rng) const {
  basis_->check_ion(ion);
  auto r = born_sample(state, per_ion_[ion], rng);
  return {r.outcome == 0, std::move(r.collapsed)};
}

DetectResult fluorescence_detect(const StateVector& state, std::size_t ion, const ProtocolConfig& config,
                                 ShotRng& rng) {
  return FluorescenceDetector(state.basis_ptr(), config.bright_levels).detect(state, ion, rng);
}

IonReadout readout(StateVector& state, std::size_t ion, const ReadoutPlan& plan,
                   const FluorescenceDetector& detector, ShotRng& rng) {
  IonReadout out;
  for (const auto& step : plan.steps) {
    if (step.unshelve) state = shelve_swap(state, ion, kDown, *step.unshelve);
    auto r = detector.detect(state, ion, rng);
    state = std::move(r.collapsed);
    out.fluorescence.push_back(r.bright);
    if (r.bright) {
      out.phonons = step.phonons_if_bright;
      return out;
    }
  }
  out.phonons = plan.all_dark;
  return out;
}

IonReadout readout(StateVector& state, std::size_t ion, const ProtocolConfig& config, ShotRng& rng) {
  config.validate(state.basis());
  const FluorescenceDetector detector(state.basis_ptr(), config.bright_levels);
  return readout(state, ion, readout_plan(config), detector, rng);
}

}  // namespace phonoread
