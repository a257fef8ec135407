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

#include "phonoread/physics.hpp"

#include <cmath>
#include <iostream>

namespace phonoread {

void PhysicalIonParams::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
      throw std::invalid_argument(std::string(name) + " must be positive");
  };
  positive(mass, "mass");
  positive(charge, "charge");
  positive(ion_spacing, "ion_spacing");
  positive(trap_frequency, "trap_frequency");
  positive(permittivity, "permittivity");
}

double hopping_rate(const PhysicalIonParams& p) {
  p.validate();
  const double d3 = p.ion_spacing * p.ion_spacing * p.ion_spacing;
  return p.charge * p.charge /
         (4.0 * std::numbers::pi * p.permittivity * p.mass * d3 * p.trap_frequency);
}

void HoppingParams::validate() const {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw std::invalid_argument("kappa must be >= 0");
  if (!(trap_frequency > 0.0)) throw std::invalid_argument("trap_frequency must be positive");
  if (n_ions == 0) throw std::invalid_argument("hopping needs at least one ion");
}

HoppingParams hopping_from_physical(const PhysicalIonParams& params, std::size_t n_ions) {
  return {hopping_rate(params), params.trap_frequency, n_ions};
}

void DecoherenceParams::validate() const {
  if (!(gamma >= 0.0)) throw std::invalid_argument("gamma must be >= 0");
  if (!(motional_gamma >= 0.0)) throw std::invalid_argument("motional_gamma must be >= 0");
}

std::vector<OperatorMatrix> dephasing_operators(const BasisPtr& basis, const DecoherenceParams& p) {
  p.validate();
  std::vector<OperatorMatrix> jumps;
  if (!p.active()) return jumps;
  for (std::size_t j = 0; j < basis->n_ions(); ++j) {
    if (p.gamma > 0.0) {
      OperatorMatrix sz = level_projector(basis, j, kUp) - level_projector(basis, j, kDown);
      jumps.push_back(sz.scaled(std::sqrt(p.gamma / 2.0)));
    }
    if (p.motional_gamma > 0.0) jumps.push_back(number(basis, j).scaled(std::sqrt(2.0 * p.motional_gamma)));
  }
  return jumps;
}

OperatorMatrix build_hopping_hamiltonian(const BasisPtr& basis, const HoppingParams& hop, Frame frame) {
  hop.validate();
  if (hop.n_ions != basis->n_ions())
    throw std::invalid_argument("hopping parameters are for " + std::to_string(hop.n_ions) +
                                " ions but the basis has " + std::to_string(basis->n_ions()));
  if (!hop.weak_coupling())
    std::clog << "phonoread: warning: kappa exceeds omega_y/100; local-mode picture is marginal\n";

  const auto d = static_cast<Eigen::Index>(basis->dimension());
  OperatorMatrix h(basis, SparseMatrix(d, d), true);
  if (frame == Frame::lab) {
    const double onsite = hop.trap_frequency - hop.kappa / 2.0;
    for (std::size_t j = 0; j < basis->n_ions(); ++j) h = h + number(basis, j).scaled(onsite);
  }
  for (std::size_t j = 0; j + 1 < basis->n_ions(); ++j) {
    const auto a1 = annihilation(basis, j);
    const auto a2 = annihilation(basis, j + 1);
    OperatorMatrix term = a1 * a2.adjoint() + a1.adjoint() * a2;
    h = h + term.as_hermitian().scaled(hop.kappa / 2.0);
  }
  return h.as_hermitian();
}

}  // namespace phonoread
