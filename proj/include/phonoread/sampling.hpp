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

#ifndef PHONOREAD_SAMPLING_HPP
#define PHONOREAD_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "phonoread/operators.hpp"

namespace phonoread {

/// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Seed of shot `index` under `master_seed`. Depends only on the pair, so
/// shots can be evaluated in any order or on any thread.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept;

/// Per-shot random stream.
class ShotRng {
 public:
  explicit ShotRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}
  ShotRng(std::uint64_t master_seed, std::uint64_t index)
      : ShotRng(derive_seed(master_seed, index)) {}

  std::uint64_t seed() const noexcept { return seed_; }
  /// Uniform double in [0, 1) built from the top 53 bits, so the sequence is
  /// identical across standard library implementations.
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// Complete set of orthogonal projectors, validated once on construction.
class ProjectorSet {
 public:
  explicit ProjectorSet(std::vector<OperatorMatrix> projectors, double tolerance = 1e-10);

  std::size_t size() const noexcept { return projectors_.size(); }
  const OperatorMatrix& operator[](std::size_t i) const { return projectors_[i]; }

 private:
  std::vector<OperatorMatrix> projectors_;
};

struct SampleResult {
  std::size_t outcome;
  StateVector collapsed;
};

/// Draws outcome i with probability <psi|P_i|psi> and returns the
/// renormalized post-measurement state.
SampleResult born_sample(const StateVector& state, const ProjectorSet& projectors, ShotRng& rng);

/// Index drawn from a discrete distribution (weights need not be normalized).
std::size_t sample_index(std::span<const double> weights, ShotRng& rng);

}  // namespace phonoread

#endif  // PHONOREAD_SAMPLING_HPP
