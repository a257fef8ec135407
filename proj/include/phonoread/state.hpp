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

#ifndef PHONOREAD_STATE_HPP
#define PHONOREAD_STATE_HPP

#include <Eigen/Dense>
#include <span>
#include <vector>

#include "phonoread/basis.hpp"

namespace phonoread {

inline constexpr double kNormTolerance = 1e-12;

/// Dense, normalized pure state over a Basis.
class StateVector {
 public:
  /// All ions in |down, 0>.
  explicit StateVector(BasisPtr basis);
  /// Takes ownership of `amplitudes`; throws unless the L2 norm is 1 within
  /// `tolerance`.
  StateVector(BasisPtr basis, Eigen::VectorXcd amplitudes, double tolerance = kNormTolerance);

  static StateVector basis_state(BasisPtr basis, std::span<const LocalState> per_ion);
  /// |down, n_0> (x) |down, n_1> (x) ...
  static StateVector fock(BasisPtr basis, std::span<const std::size_t> phonons);
  /// Normalizes `amplitudes`; throws if the vector is zero.
  static StateVector normalized(BasisPtr basis, Eigen::VectorXcd amplitudes);

  const Basis& basis() const noexcept { return *basis_; }
  const BasisPtr& basis_ptr() const noexcept { return basis_; }
  std::size_t dimension() const noexcept { return static_cast<std::size_t>(amps_.size()); }

  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  Complex amplitude(std::size_t index) const { return amps_[static_cast<Eigen::Index>(index)]; }
  double population(std::size_t index) const { return std::norm(amplitude(index)); }
  std::vector<double> populations() const;

  double norm() const { return amps_.norm(); }
  /// <this|other>
  Complex overlap(const StateVector& other) const;

  /// In-place access for unitary kernels. Callers must keep the norm.
  Eigen::VectorXcd& mutable_amplitudes() noexcept { return amps_; }
  void renormalize();

 private:
  BasisPtr basis_;
  Eigen::VectorXcd amps_;
};

/// Trace-one Hermitian operator for open-system runs.
class DensityOperator {
 public:
  explicit DensityOperator(BasisPtr basis, Eigen::MatrixXcd matrix, double tolerance = 1e-10);
  static DensityOperator from_pure(const StateVector& psi);

  const Basis& basis() const noexcept { return *basis_; }
  const BasisPtr& basis_ptr() const noexcept { return basis_; }
  const Eigen::MatrixXcd& matrix() const noexcept { return rho_; }
  Eigen::MatrixXcd& mutable_matrix() noexcept { return rho_; }

  Complex trace() const { return rho_.trace(); }
  double hermiticity_error() const;
  double min_eigenvalue() const;
  std::vector<double> populations() const;
  /// <psi| rho |psi>
  double fidelity_with(const StateVector& psi) const;

 private:
  BasisPtr basis_;
  Eigen::MatrixXcd rho_;
};

/// Born-rule phonon statistics: per-ion marginals and the joint table.
struct PhononDistribution {
  std::size_t n_ions = 0;
  std::size_t phonon_dim = 0;
  std::vector<std::vector<double>> marginals;  // [ion][n]
  std::vector<double> joint;                   // mixed radix, ion 0 most significant

  double joint_at(std::span<const std::size_t> phonons) const;
};

PhononDistribution phonon_marginal(const Basis& basis, std::span<const double> populations);
PhononDistribution phonon_marginal(const StateVector& state);
PhononDistribution phonon_marginal(const DensityOperator& rho);

}  // namespace phonoread

#endif  // PHONOREAD_STATE_HPP
