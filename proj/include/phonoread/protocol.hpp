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

#ifndef PHONOREAD_PROTOCOL_HPP
#define PHONOREAD_PROTOCOL_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "phonoread/pulses.hpp"
#include "phonoread/sampling.hpp"

namespace phonoread {

enum class Scheme {
  simplified,  ///< composite red sideband, shelve |down,0>, blue-sideband pi; resolves n <= 2
  general,     ///< K rounds of (passage, shelve into e_i, carrier pi); resolves n <= K
};

enum class Timing {
  ideal,          ///< no hopping while mapping
  hopping_aware,  ///< hopping co-evolves with every timed pulse
};

enum class MappingOrder {
  sequential,    ///< ion 0's full mapping, then ion 1's, ...
  simultaneous,  ///< every ion driven in parallel, one beam per ion
};

/// How the detection protocol is run.
///
/// Mapping conventions:
///   simplified: n=0 -> |e0,0>, n=1 -> |up,0>, n=2 -> |down,0>
///   general(K): n<K -> |e_n,0>, n=K -> |down,0>
/// Readout then detects fluorescence (bright = internal level in
/// `bright_levels`) and unshelves auxiliary levels into |down> until a
/// bright outcome assigns the phonon number.
struct ProtocolConfig {
  Scheme scheme = Scheme::simplified;
  std::size_t max_n = 2;  // K for the general scheme
  std::vector<std::string> aux_levels;  // empty -> e0, e1, ...
  std::vector<std::string> bright_levels{std::string(kDown)};
  Timing timing = Timing::ideal;
  MappingOrder order = MappingOrder::sequential;
  RabiParams rabi = RabiParams::standard();
  /// General scheme passage. Unset -> exact instantaneous transfer.
  std::optional<SweepSpec> passage;
  /// Zero -> instantaneous ideal swap; otherwise a timed pi pulse.
  double shelve_duration = 0.0;
  /// Order in which ions are read out; empty -> 0, 1, ..., N-1.
  std::vector<std::size_t> readout_order;
  IntegratorOptions integrator{};

  std::size_t resolvable_max() const noexcept { return scheme == Scheme::simplified ? 2 : max_n; }
  std::size_t n_aux() const noexcept { return scheme == Scheme::simplified ? 1 : max_n; }
  std::vector<std::string> auxiliary_levels() const;
  /// down, up and the auxiliary levels.
  std::vector<std::string> required_levels() const;
  std::vector<std::size_t> ion_readout_order(std::size_t n_ions) const;
  void validate() const;
  /// Also checks that the basis carries every required level.
  void validate(const Basis& basis) const;
};

// Mapping steps. Steps naming several ions act on them at the same time.

struct PulseGroup {
  std::vector<PulseSpec> pulses;  // equal durations, distinct ions
};
struct LevelSwap {
  std::vector<std::size_t> ions;
  std::string level_a;
  std::string level_b;
};
struct IdealTransfer {
  std::vector<std::size_t> ions;
};
struct SweepGroup {
  std::vector<std::size_t> ions;
  SweepSpec sweep;
};
using MappingStep = std::variant<PulseGroup, LevelSwap, IdealTransfer, SweepGroup>;

/// Steps mapping the phonon number of `ions` (driven together) into
/// internal levels.
std::vector<MappingStep> mapping_steps(const ProtocolConfig& config, std::span<const std::size_t> ions);
/// Full plan for an N-ion chain honouring config.order.
std::vector<MappingStep> mapping_plan(const ProtocolConfig& config, std::size_t n_ions);
double step_duration(const MappingStep& step);

/// Applies mapping steps to pure or mixed states. Hopping acts during timed
/// steps only when config.timing is hopping_aware; decoherence (if active)
/// acts during every timed step.
class MappingExecutor {
 public:
  MappingExecutor(BasisPtr basis, ProtocolConfig config, HoppingParams hop = {},
                  DecoherenceParams decoherence = {});

  StateVector apply(const StateVector& state, const MappingStep& step) const;
  DensityOperator apply(const DensityOperator& rho, const MappingStep& step) const;
  StateVector run(const StateVector& state, std::span<const MappingStep> steps) const;
  DensityOperator run(const DensityOperator& rho, std::span<const MappingStep> steps) const;
  /// Ideal-mode inverse of run().
  StateVector undo(const StateVector& state, std::span<const MappingStep> steps) const;

  StateVector map_all(const StateVector& state) const;
  DensityOperator map_all(const DensityOperator& rho) const;

  const ProtocolConfig& config() const noexcept { return config_; }
  bool hopping_active() const noexcept;

 private:
  BasisPtr basis_;
  ProtocolConfig config_;
  HoppingParams hop_;
  std::optional<OperatorMatrix> h_hop_;
  std::vector<OperatorMatrix> jumps_;
};

/// Simplified mapping of one ion (ideal timing, no hopping).
StateVector simplified_map(const StateVector& state, std::size_t ion, const RabiParams& rabi);
/// General K-round mapping of one ion with exact passages.
StateVector general_map(const StateVector& state, std::size_t ion, std::size_t max_n,
                        const RabiParams& rabi = RabiParams::standard());

struct ReadoutStep {
  std::optional<std::string> unshelve;  // swapped with |down> before detecting
  std::size_t phonons_if_bright = 0;
};

struct ReadoutPlan {
  std::vector<ReadoutStep> steps;
  std::optional<std::size_t> all_dark;  // assignment when every detection is dark

  /// Deterministic outcome for an ion whose internal level is `level`.
  std::optional<std::size_t> classify(const Basis& basis, std::size_t level,
                                      const std::vector<std::size_t>& bright) const;
};

/// simplified: bright -> 2; unshelve e0: bright -> 0; else 1.
/// general(K): bright -> K; unshelve e_{K-1}: bright -> K-1; ... ; e0 -> 0; else invalid.
ReadoutPlan readout_plan(const ProtocolConfig& config);

struct DetectResult {
  bool bright;
  StateVector collapsed;
};

/// Projective fluorescence measurement of one ion with cached projectors.
class FluorescenceDetector {
 public:
  FluorescenceDetector(BasisPtr basis, const std::vector<std::string>& bright_levels);

  DetectResult detect(const StateVector& state, std::size_t ion, ShotRng& rng) const;
  const std::vector<std::size_t>& bright_level_indices() const noexcept { return bright_; }

 private:
  BasisPtr basis_;
  std::vector<std::size_t> bright_;
  std::vector<ProjectorSet> per_ion_;  // {bright, dark}
};

DetectResult fluorescence_detect(const StateVector& state, std::size_t ion, const ProtocolConfig& config,
                                 ShotRng& rng);

struct IonReadout {
  std::optional<std::size_t> phonons;  // nullopt: no fluorescence after exhausting levels
  std::vector<bool> fluorescence;      // one entry per detection, true = bright
};

/// Runs the readout decision tree on `ion`, updating `state` in place.
IonReadout readout(StateVector& state, std::size_t ion, const ReadoutPlan& plan,
                   const FluorescenceDetector& detector, ShotRng& rng);
IonReadout readout(StateVector& state, std::size_t ion, const ProtocolConfig& config, ShotRng& rng);

}  // namespace phonoread

#endif  // PHONOREAD_PROTOCOL_HPP
