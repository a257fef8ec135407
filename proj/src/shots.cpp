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

#include "phonoread/shots.hpp"

#include <cmath>

#include "phonoread/evolution.hpp"

namespace phonoread {

bool ShotRecord::valid() const noexcept {
  for (const auto& n : phonons)
    if (!n) return false;
  return true;
}

JointOutcome ShotRecord::outcome() const {
  JointOutcome o;
  o.reserve(phonons.size());
  for (const auto& n : phonons) {
    if (!n) throw std::logic_error("invalid shot has no joint outcome");
    o.push_back(*n);
  }
  return o;
}

double OutcomeDistribution::at(const JointOutcome& o) const {
  auto it = probabilities.find(o);
  return it == probabilities.end() ? 0.0 : it->second;
}

ShotRunner::ShotRunner(const StateVector& initial, double hop_time, ProtocolConfig config, HoppingParams hop,
                       DecoherenceParams decoherence)
    : basis_(initial.basis_ptr()),
      config_(std::move(config)),
      plan_(readout_plan(config_)),
      detector_(basis_, config_.bright_levels),
      order_(config_.ion_readout_order(basis_->n_ions())) {
  if (decoherence.active()) {
    *this = ShotRunner(DensityOperator::from_pure(initial), hop_time, config_, hop, decoherence);
    return;
  }
  if (hop_time < 0.0) throw std::invalid_argument("hop_time must be >= 0");
  hop.n_ions = basis_->n_ions();
  StateVector state = initial;
  if (hop_time > 0.0 && hop.kappa > 0.0)
    state = Propagator(build_hopping_hamiltonian(basis_, hop, Frame::rotating)).apply(state, hop_time);
  MappingExecutor exec(basis_, config_, hop, decoherence);
  mapped_ = exec.map_all(state);
  populations_ = mapped_->populations();
}

ShotRunner::ShotRunner(const DensityOperator& initial, double hop_time, ProtocolConfig config, HoppingParams hop,
                       DecoherenceParams decoherence)
    : basis_(initial.basis_ptr()),
      config_(std::move(config)),
      plan_(readout_plan(config_)),
      detector_(basis_, config_.bright_levels),
      order_(config_.ion_readout_order(basis_->n_ions())) {
  if (hop_time < 0.0) throw std::invalid_argument("hop_time must be >= 0");
  hop.n_ions = basis_->n_ions();
  DensityOperator rho = initial;
  const auto jumps = dephasing_operators(basis_, decoherence);
  if (hop_time > 0.0 && (hop.kappa > 0.0 || !jumps.empty())) {
    const auto d = static_cast<Eigen::Index>(basis_->dimension());
    const OperatorMatrix h = hop.kappa > 0.0 ? build_hopping_hamiltonian(basis_, hop, Frame::rotating)
                                             : OperatorMatrix(basis_, SparseMatrix(d, d), true);
    rho = evolve_lindblad(rho, h, jumps, hop_time, config_.integrator);
  }
  MappingExecutor exec(basis_, config_, hop, decoherence);
  rho = exec.map_all(rho);
  populations_ = rho.populations();
  for (auto& p : populations_) p = std::max(p, 0.0);
}

ShotRecord ShotRunner::shot(std::uint64_t seed) const {
  ShotRng rng(seed);
  ShotRecord rec;
  rec.seed = seed;
  const std::size_t n = basis_->n_ions();
  rec.phonons.assign(n, std::nullopt);
  rec.fluorescence.assign(n, {});

  StateVector state = [&] {
    if (mapped_) return *mapped_;
    // Readout only permutes levels and projects onto them, so sampling a
    // basis state from the diagonal first gives the same statistics.
    const std::size_t k = sample_index(populations_, rng);
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis_->dimension()));
    e[static_cast<Eigen::Index>(k)] = 1.0;
    return StateVector(basis_, std::move(e));
  }();

  for (auto ion : order_) {
    auto r = readout(state, ion, plan_, detector_, rng);
    rec.phonons[ion] = r.phonons;
    rec.fluorescence[ion] = std::move(r.fluorescence);
  }
  return rec;
}

OutcomeDistribution ShotRunner::outcome_probabilities() const {
  OutcomeDistribution dist;
  const std::size_t n = basis_->n_ions();
  const auto& bright = detector_.bright_level_indices();
  for (std::size_t i = 0; i < populations_.size(); ++i) {
    const double p = populations_[i];
    if (p == 0.0) continue;
    JointOutcome o(n);
    bool ok = true;
    for (std::size_t j = 0; j < n && ok; ++j) {
      const auto r = plan_.classify(*basis_, basis_->local_state(i, j).level, bright);
      if (r)
        o[j] = *r;
      else
        ok = false;
    }
    if (ok)
      dist.probabilities[o] += p;
    else
      dist.invalid += p;
  }
  return dist;
}

ShotRecord run_shot(const StateVector& prep, double hop_time, const ProtocolConfig& config,
                    const HoppingParams& hop, std::uint64_t shot_seed, const DecoherenceParams& decoherence) {
  return ShotRunner(prep, hop_time, config, hop, decoherence).shot(shot_seed);
}

std::vector<ShotRecord> sample_shots(const ShotRunner& runner, std::size_t shots, std::uint64_t master_seed) {
  std::vector<ShotRecord> out(shots);
  const auto n = static_cast<std::int64_t>(shots);
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const auto k = static_cast<std::uint64_t>(i);
    out[static_cast<std::size_t>(i)] = runner.shot(derive_seed(master_seed, k));
  }
  return out;
}

std::vector<ShotRecord> sample_shots_serial(const ShotRunner& runner, std::size_t shots,
                                            std::uint64_t master_seed) {
  std::vector<ShotRecord> out;
  out.reserve(shots);
  for (std::size_t i = 0; i < shots; ++i) out.push_back(runner.shot(derive_seed(master_seed, i)));
  return out;
}

double binomial_sigma(double p, std::size_t n) {
  if (n == 0) throw std::invalid_argument("binomial sigma needs n >= 1");
  return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

void Histogram::add(const ShotRecord& record) {
  ++total_;
  if (!record.valid()) {
    ++invalid_;
    return;
  }
  ++counts_[record.outcome()];
}

std::size_t Histogram::count(const JointOutcome& o) const {
  auto it = counts_.find(o);
  return it == counts_.end() ? 0 : it->second;
}

double Histogram::probability(const JointOutcome& o) const {
  if (total_ == 0) throw std::logic_error("empty histogram");
  return static_cast<double>(count(o)) / static_cast<double>(total_);
}

double Histogram::sigma(const JointOutcome& o) const { return binomial_sigma(probability(o), total_); }

double Histogram::invalid_rate() const {
  if (total_ == 0) throw std::logic_error("empty histogram");
  return static_cast<double>(invalid_) / static_cast<double>(total_);
}

double Histogram::marginal(std::size_t ion, std::size_t n) const {
  if (total_ == 0) throw std::logic_error("empty histogram");
  std::size_t c = 0;
  for (const auto& [o, k] : counts_)
    if (ion < o.size() && o[ion] == n) c += k;
  return static_cast<double>(c) / static_cast<double>(total_);
}

double Histogram::marginal_sigma(std::size_t ion, std::size_t n) const {
  return binomial_sigma(marginal(ion, n), total_);
}

Histogram estimate_distribution(std::span<const ShotRecord> records) {
  if (records.empty()) throw std::invalid_argument("no shot records to aggregate");
  Histogram h;
  for (const auto& r : records) h.add(r);
  return h;
}

}  // namespace phonoread
