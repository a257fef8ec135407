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

#include "phonoread/state.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace phonoread {

StateVector::StateVector(BasisPtr basis) : basis_(std::move(basis)) {
  if (!basis_) throw std::invalid_argument("null basis");
  amps_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis_->dimension()));
  amps_[0] = 1.0;
}

StateVector::StateVector(BasisPtr basis, Eigen::VectorXcd amplitudes, double tolerance)
    : basis_(std::move(basis)), amps_(std::move(amplitudes)) {
  if (!basis_) throw std::invalid_argument("null basis");
  if (static_cast<std::size_t>(amps_.size()) != basis_->dimension())
    throw std::invalid_argument("amplitude vector does not match basis dimension");
  if (std::abs(amps_.norm() - 1.0) > tolerance)
    throw std::invalid_argument("state vector is not normalized");
}

StateVector StateVector::basis_state(BasisPtr basis, std::span<const LocalState> per_ion) {
  StateVector s(basis);
  s.amps_.setZero();
  s.amps_[static_cast<Eigen::Index>(basis->index(per_ion))] = 1.0;
  return s;
}

StateVector StateVector::fock(BasisPtr basis, std::span<const std::size_t> phonons) {
  const std::size_t down = basis->level(kDown);
  std::vector<LocalState> locals;
  locals.reserve(phonons.size());
  for (auto n : phonons) locals.push_back({down, n});
  return basis_state(std::move(basis), locals);
}

StateVector StateVector::normalized(BasisPtr basis, Eigen::VectorXcd amplitudes) {
  const double n = amplitudes.norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize a zero vector");
  amplitudes /= n;
  return StateVector(std::move(basis), std::move(amplitudes));
}

std::vector<double> StateVector::populations() const {
  std::vector<double> p(dimension());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = population(i);
  return p;
}

Complex StateVector::overlap(const StateVector& other) const { return amps_.dot(other.amps_); }

void StateVector::renormalize() {
  const double n = amps_.norm();
  if (n == 0.0) throw std::runtime_error("state collapsed to zero norm");
  amps_ /= n;
}

DensityOperator::DensityOperator(BasisPtr basis, Eigen::MatrixXcd matrix, double tolerance)
    : basis_(std::move(basis)), rho_(std::move(matrix)) {
  if (!basis_) throw std::invalid_argument("null basis");
  const auto d = static_cast<Eigen::Index>(basis_->dimension());
  if (rho_.rows() != d || rho_.cols() != d)
    throw std::invalid_argument("density matrix does not match basis dimension");
  if (std::abs(rho_.trace() - Complex(1.0)) > tolerance)
    throw std::invalid_argument("density matrix trace is not 1");
  if (hermiticity_error() > tolerance)
    throw std::invalid_argument("density matrix is not Hermitian");
}

DensityOperator DensityOperator::from_pure(const StateVector& psi) {
  const auto& a = psi.amplitudes();
  return DensityOperator(psi.basis_ptr(), a * a.adjoint());
}

double DensityOperator::hermiticity_error() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityOperator::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

std::vector<double> DensityOperator::populations() const {
  std::vector<double> p(static_cast<std::size_t>(rho_.rows()));
  for (std::size_t i = 0; i < p.size(); ++i) {
    const auto k = static_cast<Eigen::Index>(i);
    p[i] = rho_(k, k).real();
  }
  return p;
}

double DensityOperator::fidelity_with(const StateVector& psi) const {
  const auto& a = psi.amplitudes();
  return a.dot(rho_ * a).real();
}

double PhononDistribution::joint_at(std::span<const std::size_t> phonons) const {
  if (phonons.size() != n_ions) throw std::invalid_argument("expected one phonon number per ion");
  std::size_t idx = 0;
  for (auto n : phonons) {
    if (n >= phonon_dim) return 0.0;
    idx = idx * phonon_dim + n;
  }
  return joint[idx];
}

PhononDistribution phonon_marginal(const Basis& basis, std::span<const double> populations) {
  if (populations.size() != basis.dimension())
    throw std::invalid_argument("population vector does not match basis");
  PhononDistribution d;
  d.n_ions = basis.n_ions();
  d.phonon_dim = basis.phonon_dim();
  d.marginals.assign(d.n_ions, std::vector<double>(d.phonon_dim, 0.0));
  std::size_t joint_size = 1;
  for (std::size_t j = 0; j < d.n_ions; ++j) joint_size *= d.phonon_dim;
  d.joint.assign(joint_size, 0.0);

  for (std::size_t i = 0; i < populations.size(); ++i) {
    const double p = populations[i];
    if (p == 0.0) continue;
    std::size_t jidx = 0;
    for (std::size_t j = 0; j < d.n_ions; ++j) {
      const auto n = basis.local_state(i, j).phonons;
      d.marginals[j][n] += p;
      jidx = jidx * d.phonon_dim + n;
    }
    d.joint[jidx] += p;
  }
  return d;
}

PhononDistribution phonon_marginal(const StateVector& state) {
  const auto p = state.populations();
  return phonon_marginal(state.basis(), p);
}

PhononDistribution phonon_marginal(const DensityOperator& rho) {
  const auto p = rho.populations();
  return phonon_marginal(rho.basis(), p);
}

}  // namespace phonoread
