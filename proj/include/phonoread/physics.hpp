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

#ifndef PHONOREAD_PHYSICS_HPP
#define PHONOREAD_PHYSICS_HPP

#include <numbers>
#include <vector>

#include "phonoread/operators.hpp"

namespace phonoread {

namespace constants {
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kElementaryCharge = 1.602176634e-19;   // C
inline constexpr double kVacuumPermittivity = 8.8541878128e-12;  // F/m
inline constexpr double kAtomicMassUnit = 1.66053906660e-27;    // kg
inline constexpr double kElectronMass = 9.1093837015e-31;       // kg
/// 40Ca+ : neutral atomic mass minus one electron.
inline constexpr double kCalcium40IonMass = 39.962590863 * kAtomicMassUnit - kElectronMass;
}  // namespace constants

/// SI parameters of a two-ion (or longer) chain. Defaults to 40Ca+.
struct PhysicalIonParams {
  double mass = constants::kCalcium40IonMass;
  double charge = constants::kElementaryCharge;
  double ion_spacing = 21e-6;                          // m
  double trap_frequency = constants::kTwoPi * 3.0e6;   // rad/s, radial y
  double permittivity = constants::kVacuumPermittivity;

  void validate() const;
};

/// kappa = e^2 / (4 pi eps0 m d^3 omega_y), in rad/s.
double hopping_rate(const PhysicalIonParams& params);

struct HoppingParams {
  double kappa = 0.0;           // rad/s
  double trap_frequency = 0.0;  // rad/s
  std::size_t n_ions = 2;

  /// kappa >= 0 (zero switches hopping off), omega_y > 0.
  void validate() const;
  /// False when kappa > omega_y / 100, where the local-mode picture degrades.
  bool weak_coupling() const noexcept { return kappa <= trap_frequency / 100.0; }
};

HoppingParams hopping_from_physical(const PhysicalIonParams& params, std::size_t n_ions = 2);

/// Dephasing model. `gamma` dephases the driven down/up transition
/// (L = sqrt(gamma/2) sigma_z per ion, so down/up coherences decay at gamma).
/// `motional_gamma` dephases each local mode (L = sqrt(2 motional_gamma) n_j,
/// adjacent Fock coherences decay at motional_gamma).
struct DecoherenceParams {
  double gamma = 0.0;           // 1/s
  double motional_gamma = 0.0;  // 1/s
  bool enabled = false;

  void validate() const;
  bool active() const noexcept { return enabled && (gamma > 0.0 || motional_gamma > 0.0); }
};

std::vector<OperatorMatrix> dephasing_operators(const BasisPtr& basis, const DecoherenceParams& params);

/// Which part of the local-mode energy is kept.
enum class Frame {
  lab,       ///< (omega_y - kappa/2) a^dag a per ion plus hopping
  rotating,  ///< hopping term only, frame rotating at omega_y - kappa/2
};

/// H = sum_j (omega_y - kappa/2) n_j + (kappa/2) sum_<jk> (a_j a_k^dag + a_j^dag a_k),
/// nearest-neighbour for chains longer than two ions.
OperatorMatrix build_hopping_hamiltonian(const BasisPtr& basis, const HoppingParams& hop,
                                         Frame frame = Frame::rotating);

}  // namespace phonoread

#endif  // PHONOREAD_PHYSICS_HPP
