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

#include "phonoread/sampling.hpp"

#include <cmath>
#include <numeric>

namespace phonoread {

std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t index) noexcept {
  return mix64(mix64(master_seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

ProjectorSet::ProjectorSet(std::vector<OperatorMatrix> projectors, double tolerance)
    : projectors_(std::move(projectors)) {
  if (projectors_.empty()) throw std::invalid_argument("empty projector set");
  const auto& basis = projectors_.front().basis_ptr();
  SparseMatrix sum(static_cast<Eigen::Index>(basis->dimension()),
                   static_cast<Eigen::Index>(basis->dimension()));
  for (std::size_t i = 0; i < projectors_.size(); ++i) {
    const auto& p = projectors_[i].matrix();
    if (!(projectors_[i].basis() == *basis)) throw std::invalid_argument("projectors on different bases");
    SparseMatrix idem = p * p;
    idem -= p;
    if (idem.norm() > tolerance) throw std::invalid_argument("operator is not a projector");
    for (std::size_t j = i + 1; j < projectors_.size(); ++j) {
      SparseMatrix cross = p * projectors_[j].matrix();
      if (cross.norm() > tolerance) throw std::invalid_argument("projectors are not orthogonal");
    }
    sum += p;
  }
  SparseMatrix id(sum.rows(), sum.cols());
  id.setIdentity();
  SparseMatrix diff = sum - id;
  if (diff.norm() > tolerance) throw std::invalid_argument("projector set is incomplete");
}

std::size_t sample_index(std::span<const double> weights, ShotRng& rng) {
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (!(total > 0.0)) throw std::invalid_argument("weights sum to zero");
  const double u = rng.uniform() * total;
  double acc = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    acc += weights[i];
    last_nonzero = i;
    if (u < acc) return i;
  }
  return last_nonzero;
}

SampleResult born_sample(const StateVector& state, const ProjectorSet& projectors, ShotRng& rng) {
  std::vector<Eigen::VectorXcd> branches;
  std::vector<double> probs;
  branches.reserve(projectors.size());
  probs.reserve(projectors.size());
  for (std::size_t i = 0; i < projectors.size(); ++i) {
    branches.push_back(projectors[i].apply(state));
    probs.push_back(branches.back().squaredNorm());
  }
  const std::size_t k = sample_index(probs, rng);
  Eigen::VectorXcd v = std::move(branches[k]);
  v /= std::sqrt(probs[k]);
  return {k, StateVector(state.basis_ptr(), std::move(v), 1e-9)};
}

}  // namespace phonoread
