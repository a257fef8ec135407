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

#ifndef PHONOREAD_SHOTS_HPP
#define PHONOREAD_SHOTS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "phonoread/protocol.hpp"

namespace phonoread {

using JointOutcome = std::vector<std::size_t>;

/// One experiment: inferred phonon number and fluorescence history per ion.
struct ShotRecord {
  std::vector<std::optional<std::size_t>> phonons;
  std::vector<std::vector<bool>> fluorescence;
  std::uint64_t seed = 0;

  bool valid() const noexcept;
  /// Requires valid().
  JointOutcome outcome() const;
  bool operator==(const ShotRecord&) const = default;
};

/// Exact readout statistics of a prepared, mapped state.
struct OutcomeDistribution {
  std::map<JointOutcome, double> probabilities;
  double invalid = 0.0;

  double at(const JointOutcome& o) const;
};

/// Executes shots of one scenario: preparation, free hopping for
/// `hop_time`, mapping, then sequential readout. Everything before readout
/// is deterministic and computed once; each shot only samples.
///
/// With active decoherence the pre-readout state is a density operator and
/// shots draw a basis state from its diagonal before the readout tree runs.
class ShotRunner {
 public:
  ShotRunner(const StateVector& initial, double hop_time, ProtocolConfig config, HoppingParams hop = {},
             DecoherenceParams decoherence = {});
  ShotRunner(const DensityOperator& initial, double hop_time, ProtocolConfig config, HoppingParams hop = {},
             DecoherenceParams decoherence = {});

  ShotRecord shot(std::uint64_t seed) const;
  OutcomeDistribution outcome_probabilities() const;

  const Basis& basis() const noexcept { return *basis_; }
  /// Pre-readout state (pure mode only).
  const std::optional<StateVector>& mapped_state() const noexcept { return mapped_; }
  const std::vector<double>& mapped_populations() const noexcept { return populations_; }

 private:
  BasisPtr basis_;
  ProtocolConfig config_;
  ReadoutPlan plan_;
  FluorescenceDetector detector_;
  std::vector<std::size_t> order_;
  std::optional<StateVector> mapped_;
  std::vector<double> populations_;
};

ShotRecord run_shot(const StateVector& prep, double hop_time, const ProtocolConfig& config,
                    const HoppingParams& hop, std::uint64_t shot_seed,
                    const DecoherenceParams& decoherence = {});

/// Shot i uses derive_seed(master_seed, i). OpenMP-parallel over shots;
/// results are identical to sample_shots_serial.
std::vector<ShotRecord> sample_shots(const ShotRunner& runner, std::size_t shots, std::uint64_t master_seed);
/// Single-threaded reference.
std::vector<ShotRecord> sample_shots_serial(const ShotRunner& runner, std::size_t shots,
                                            std::uint64_t master_seed);

double binomial_sigma(double p, std::size_t n);

/// Joint outcome counts. Invalid shots are counted in total() but kept out
/// of every outcome bin.
class Histogram {
 public:
  void add(const ShotRecord& record);

  std::size_t total() const noexcept { return total_; }
  std::size_t invalid() const noexcept { return invalid_; }
  std::size_t count(const JointOutcome& o) const;
  double probability(const JointOutcome& o) const;
  /// sqrt(p(1-p)/N).
  double sigma(const JointOutcome& o) const;
  double invalid_rate() const;
  double marginal(std::size_t ion, std::size_t n) const;
  double marginal_sigma(std::size_t ion, std::size_t n) const;
  const std::map<JointOutcome, std::size_t>& counts() const noexcept { return counts_; }

 private:
  std::map<JointOutcome, std::size_t> counts_;
  std::size_t total_ = 0;
  std::size_t invalid_ = 0;
};

Histogram estimate_distribution(std::span<const ShotRecord> records);

}  // namespace phonoread

#endif  // PHONOREAD_SHOTS_HPP
