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

#ifndef PHONOREAD_EVOLUTION_HPP
#define PHONOREAD_EVOLUTION_HPP

#include <functional>
#include <span>
#include <vector>

#include "phonoread/operators.hpp"

namespace phonoread {

/// exp(-i H t) for a fixed Hermitian H, via one dense eigendecomposition
/// that is reused for every t.
class Propagator {
 public:
  explicit Propagator(const OperatorMatrix& hamiltonian);

  StateVector apply(const StateVector& state, double t) const;
  Eigen::MatrixXcd unitary(double t) const;
  const Eigen::VectorXd& eigenvalues() const noexcept { return energies_; }

 private:
  BasisPtr basis_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXcd vectors_;
};

StateVector evolve_unitary(const StateVector& state, const OperatorMatrix& hamiltonian, double t);

/// H(t) = sum_k c_k(t) terms[k], each term Hermitian and c_k real.
struct TimeDependentHamiltonian {
  BasisPtr basis;
  std::vector<OperatorMatrix> terms;
  std::function<void(double t, std::span<double> coefficients)> coefficients;
  /// Upper bound on ||H(t)|| over the evolution window (rad/s); sets the step.
  double max_frequency = 0.0;

  static TimeDependentHamiltonian constant(const OperatorMatrix& h);
  /// Appends a time-independent term with unit coefficient.
  void add_constant(const OperatorMatrix& h);
};

/// Fixed-step RK4 with a step-halving self-check: the step starts at
/// 1/(steps_per_radian * max_frequency) and is halved until two successive
/// solutions agree to `tolerance` (max-abs), or NumericalError is thrown.
struct IntegratorOptions {
  double steps_per_radian = 50.0;
  double tolerance = 1e-8;
  int max_refinements = 10;

  void validate() const;
};

/// Infinity-norm bound on the spectral radius.
double operator_norm_bound(const SparseMatrix& m);

StateVector evolve_time_dependent(const StateVector& state, const TimeDependentHamiltonian& h,
                                  double t0, double t1, const IntegratorOptions& options = {});

/// Lindblad master equation
///   drho/dt = -i[H, rho] + sum_k (L_k rho L_k^dag - {L_k^dag L_k, rho}/2).
DensityOperator evolve_lindblad(const DensityOperator& rho, const OperatorMatrix& hamiltonian,
                                std::span<const OperatorMatrix> jumps, double t,
                                const IntegratorOptions& options = {});
DensityOperator evolve_lindblad(const DensityOperator& rho, const TimeDependentHamiltonian& h,
                                std::span<const OperatorMatrix> jumps, double t0, double t1,
                                const IntegratorOptions& options = {});

}  // namespace phonoread

#endif  // PHONOREAD_EVOLUTION_HPP
