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

#include "phonoread/evolution.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <sstream>

namespace phonoread {

namespace {

constexpr Complex kI{0.0, 1.0};

void require_hermitian(const OperatorMatrix& h) {
  if (!h.hermitian() && h.hermiticity_error() > kHermitianTolerance)
    throw std::invalid_argument("Hamiltonian is not Hermitian");
}

// Classic RK4 over [t0, t1] in `steps` equal steps; `deriv(t, y, dy)`.
template <typename Y, typename Deriv>
Y rk4(const Y& y0, double t0, double t1, std::size_t steps, const Deriv& deriv) {
  const double h = (t1 - t0) / static_cast<double>(steps);
  Y y = y0, k1, k2, k3, k4, tmp;
  for (std::size_t s = 0; s < steps; ++s) {
    const double t = t0 + h * static_cast<double>(s);
    deriv(t, y, k1);
    tmp = y + (0.5 * h) * k1;
    deriv(t + 0.5 * h, tmp, k2);
    tmp = y + (0.5 * h) * k2;
    deriv(t + 0.5 * h, tmp, k3);
    tmp = y + h * k3;
    deriv(t + h, tmp, k4);
    y += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

template <typename Y, typename Deriv>
Y integrate_checked(const Y& y0, double t0, double t1, double max_frequency,
                    const IntegratorOptions& opt, const Deriv& deriv) {
  const double span = t1 - t0;
  const double h0 = 1.0 / (opt.steps_per_radian * max_frequency);
  auto steps = static_cast<std::size_t>(std::ceil(span / h0));
  if (steps == 0) steps = 1;
  Y coarse = rk4(y0, t0, t1, steps, deriv);
  double diff = std::numeric_limits<double>::infinity();
  for (int r = 0; r < opt.max_refinements; ++r) {
    steps *= 2;
    Y fine = rk4(y0, t0, t1, steps, deriv);
    diff = (fine - coarse).cwiseAbs().maxCoeff();
    if (diff <= opt.tolerance) return fine;
    coarse = std::move(fine);
  }
  std::ostringstream msg;
  msg << "RK4 did not converge: step-halving difference " << diff << " > " << opt.tolerance
      << " after " << steps << " steps";
  throw NumericalError(msg.str());
}

}  // namespace

void IntegratorOptions::validate() const {
  if (!(steps_per_radian > 0.0)) throw std::invalid_argument("steps_per_radian must be positive");
  if (!(tolerance > 0.0)) throw std::invalid_argument("integrator tolerance must be positive");
  if (max_refinements < 0) throw std::invalid_argument("max_refinements must be >= 0");
}

double operator_norm_bound(const SparseMatrix& m) {
  double best = 0.0;
  for (int r = 0; r < m.outerSize(); ++r) {
    double row = 0.0;
    for (SparseMatrix::InnerIterator it(m, r); it; ++it) row += std::abs(it.value());
    best = std::max(best, row);
  }
  return best;
}

Propagator::Propagator(const OperatorMatrix& hamiltonian) : basis_(hamiltonian.basis_ptr()) {
  require_hermitian(hamiltonian);
  Eigen::MatrixXcd dense = Eigen::MatrixXcd(hamiltonian.matrix());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(dense);
  if (es.info() != Eigen::Success) throw NumericalError("eigendecomposition failed");
  energies_ = es.eigenvalues();
  vectors_ = es.eigenvectors();
}

Eigen::MatrixXcd Propagator::unitary(double t) const {
  Eigen::VectorXcd phases = (-kI * t * energies_.cast<Complex>()).array().exp();
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

StateVector Propagator::apply(const StateVector& state, double t) const {
  if (!(state.basis() == *basis_)) throw std::invalid_argument("state and Hamiltonian bases differ");
  if (t == 0.0) return state;
  Eigen::VectorXcd coeffs = vectors_.adjoint() * state.amplitudes();
  for (Eigen::Index k = 0; k < coeffs.size(); ++k) coeffs[k] *= std::exp(-kI * (energies_[k] * t));
  Eigen::VectorXcd out = vectors_ * coeffs;
  return StateVector(state.basis_ptr(), std::move(out), 1e-10);
}

StateVector evolve_unitary(const StateVector& state, const OperatorMatrix& hamiltonian, double t) {
  if (!(state.basis() == hamiltonian.basis()))
    throw std::invalid_argument("state and Hamiltonian bases differ");
  if (t == 0.0) return state;
  return Propagator(hamiltonian).apply(state, t);
}

TimeDependentHamiltonian TimeDependentHamiltonian::constant(const OperatorMatrix& h) {
  TimeDependentHamiltonian td;
  td.basis = h.basis_ptr();
  td.add_constant(h);
  return td;
}

void TimeDependentHamiltonian::add_constant(const OperatorMatrix& h) {
  require_hermitian(h);
  if (!basis) basis = h.basis_ptr();
  const std::size_t k = terms.size();
  terms.push_back(h);
  auto previous = coefficients;
  coefficients = [previous, k](double t, std::span<double> c) {
    if (previous) previous(t, c.first(k));
    c[k] = 1.0;
  };
  max_frequency += operator_norm_bound(h.matrix());
}

StateVector evolve_time_dependent(const StateVector& state, const TimeDependentHamiltonian& h,
                                  double t0, double t1, const IntegratorOptions& options) {
  if (t1 < t0) throw std::invalid_argument("evolution window runs backwards");
  if (t1 == t0 || h.terms.empty() || h.max_frequency <= 0.0) return state;
  for (const auto& term : h.terms) {
    require_hermitian(term);
    if (!(term.basis() == state.basis())) throw std::invalid_argument("Hamiltonian and state bases differ");
  }
  const std::size_t n = h.terms.size();
  auto deriv = [&h, n](double t, const Eigen::VectorXcd& y, Eigen::VectorXcd& dy) {
    std::vector<double> c(n);
    h.coefficients(t, c);
    dy = Eigen::VectorXcd::Zero(y.size());
    for (std::size_t k = 0; k < n; ++k)
      if (c[k] != 0.0) dy.noalias() += (c[k] * -kI) * (h.terms[k].matrix() * y);
  };
  Eigen::VectorXcd out =
      integrate_checked(state.amplitudes(), t0, t1, h.max_frequency, options, deriv);
  return StateVector(state.basis_ptr(), std::move(out), 1e-7);
}

DensityOperator evolve_lindblad(const DensityOperator& rho, const OperatorMatrix& hamiltonian,
                                std::span<const OperatorMatrix> jumps, double t,
                                const IntegratorOptions& /*options*/) {
  if (t < 0.0) throw std::invalid_argument("evolution time must be >= 0");
  require_hermitian(hamiltonian);
  if (!(hamiltonian.basis() == rho.basis())) throw std::invalid_argument("Hamiltonian and state bases differ");
  const auto d = static_cast<Eigen::Index>(rho.basis().dimension());
  SparseMatrix decay(d, d);
  std::vector<SparseMatrix> ls;
  for (const auto& l : jumps) {
    if (!(l.basis() == rho.basis())) throw std::invalid_argument("jump operator on a different basis");
    ls.push_back(l.matrix());
    decay += SparseMatrix(l.matrix().adjoint() * l.matrix());
  }
  const double bound = 2.0 * (operator_norm_bound(hamiltonian.matrix()) + operator_norm_bound(decay));
  if (t == 0.0 || bound <= 0.0) return rho;

  SparseMatrix h_eff = hamiltonian.matrix();
  h_eff -= Complex(0.0, 0.5) * decay;
  Eigen::MatrixXcd a(d, d), ly(d, d);
  auto generator = [&](const Eigen::MatrixXcd& y, Eigen::MatrixXcd& dy) {
    a.noalias() = h_eff * y;
    dy = -kI * a;
    dy += kI * a.adjoint();
    for (const auto& l : ls) {
      ly.noalias() = l * y;
      dy.noalias() += l * ly.adjoint();
    }
  };

  // exp(tL) rho as a truncated Taylor series over substeps with ||hL|| <= 2.
  const auto substeps = static_cast<std::size_t>(std::ceil(t * bound / 2.0));
  const double h = t / static_cast<double>(substeps);
  Eigen::MatrixXcd y = rho.matrix(), term(d, d), next(d, d);
  for (std::size_t s = 0; s < substeps; ++s) {
    term = y;
    bool converged = false;
    for (int k = 1; k <= 60; ++k) {
      generator(term, next);
      term = next * (h / k);
      y += term;
      if (term.cwiseAbs().maxCoeff() <= 1e-17 * std::max(1.0, y.cwiseAbs().maxCoeff())) {
        converged = true;
        break;
      }
    }
    if (!converged) throw NumericalError("Lindblad exponential series did not converge");
  }
  y = 0.5 * (y + Eigen::MatrixXcd(y.adjoint()));
  return DensityOperator(rho.basis_ptr(), std::move(y), 1e-7);
}

DensityOperator evolve_lindblad(const DensityOperator& rho, const TimeDependentHamiltonian& h,
                                std::span<const OperatorMatrix> jumps, double t0, double t1,
                                const IntegratorOptions& options) {
  if (t1 < t0) throw std::invalid_argument("evolution window runs backwards");
  for (const auto& term : h.terms) {
    require_hermitian(term);
    if (!(term.basis() == rho.basis())) throw std::invalid_argument("Hamiltonian and state bases differ");
  }
  const auto d = static_cast<Eigen::Index>(rho.basis().dimension());
  SparseMatrix decay(d, d);  // sum_k L_k^dag L_k
  std::vector<SparseMatrix> ls;
  for (const auto& l : jumps) {
    if (!(l.basis() == rho.basis())) throw std::invalid_argument("jump operator on a different basis");
    ls.push_back(l.matrix());
    decay += SparseMatrix(l.matrix().adjoint() * l.matrix());
  }
  const double bound = h.max_frequency + operator_norm_bound(decay);
  if (t1 == t0 || bound <= 0.0) return rho;

  const std::size_t n = h.terms.size();
  auto deriv = [&](double t, const Eigen::MatrixXcd& y, Eigen::MatrixXcd& dy) {
    std::vector<double> c(n);
    if (n > 0) h.coefficients(t, c);
    // A = H_eff rho with H_eff = H - (i/2) sum L^dag L; rho H_eff^dag = A^dag.
    Eigen::MatrixXcd a = Complex(0.0, -0.5) * (decay * y);
    for (std::size_t k = 0; k < n; ++k)
      if (c[k] != 0.0) a.noalias() += c[k] * (h.terms[k].matrix() * y);
    dy = -kI * a + kI * a.adjoint();
    for (const auto& l : ls) {
      Eigen::MatrixXcd ly = l * y;
      dy.noalias() += l * Eigen::MatrixXcd(ly.adjoint());
    }
  };
  Eigen::MatrixXcd out = integrate_checked(rho.matrix(), t0, t1, bound, options, deriv);
  out = 0.5 * (out + Eigen::MatrixXcd(out.adjoint()));
  return DensityOperator(rho.basis_ptr(), std::move(out), 1e-7);
}

}  // namespace phonoread
