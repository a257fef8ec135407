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

#ifndef PHONOREAD_PULSES_HPP
#define PHONOREAD_PULSES_HPP

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "phonoread/evolution.hpp"
#include "phonoread/physics.hpp"

namespace phonoread {

enum class Transition { carrier, red_sideband, blue_sideband, shelve };

const char* to_string(Transition t) noexcept;

/// Carrier Rabi frequency and Lamb-Dicke factor. The n=1 sideband Rabi
/// frequency is carrier_rabi * lamb_dicke; manifold n runs sqrt(n) faster.
struct RabiParams {
  double carrier_rabi = 0.0;  // rad/s
  double lamb_dicke = 0.0;

  double sideband_rabi() const noexcept { return carrier_rabi * lamb_dicke; }
  void validate() const;

  /// Chooses carrier_rabi so a carrier pi pulse lasts `carrier_pi_time`, and
  /// lamb_dicke so the three-pulse red-sideband composite lasts
  /// `composite_duration`.
  static RabiParams from_timings(double carrier_pi_time, double composite_duration);
  /// 1 us carrier pi pulse, 40 us composite sequence.
  static RabiParams standard();
};

/// One timed rotation on a named transition of one ion.
///
/// For sideband kinds `theta` is calibrated on the lowest sideband manifold
/// (red: {|down,1>,|up,0>}, blue: {|down,0>,|up,1>}); in the manifold with
/// phonon factor sqrt(m) the rotation angle is theta*sqrt(m). The rotation is
///
///   U = exp[ i theta/2 (e^{i phi} G + e^{-i phi} G^dag) ]
///
/// with G = sigma+ a (red), sigma+ a^dag (blue), sigma+ (carrier), where
/// sigma+ = |up><down|, so the red sideband moves |down,n> to |up,n-1>.
struct PulseSpec {
  std::size_t ion = 0;
  Transition kind = Transition::carrier;
  double theta = 0.0;
  double phi = 0.0;
  double duration = 0.0;  // s
  std::string level_a;    // shelve only
  std::string level_b;

  void validate() const;
  /// Drive strength on the calibration manifold, theta / duration.
  double drive_rabi() const { return theta / duration; }

  static PulseSpec carrier(std::size_t ion, double theta, double phi, const RabiParams& rabi);
  static PulseSpec red_sideband(std::size_t ion, double theta, double phi, const RabiParams& rabi);
  static PulseSpec blue_sideband(std::size_t ion, double theta, double phi, const RabiParams& rabi);
  /// Population swap between two internal levels; realized as a resonant pi
  /// pulse when given a finite duration.
  static PulseSpec shelve(std::size_t ion, std::string level_a, std::string level_b,
                          double duration = 1e-6);
};

enum class Envelope { sin_squared_tanh };

/// Chirped red-sideband passage: amplitude peak_rabi*sin^2(pi t/T) and
/// detuning span*tanh(beta(2t/T-1))/tanh(beta), optionally with the per
/// manifold counterdiabatic term.
struct SweepSpec {
  double peak_rabi = constants::kTwoPi * 40e3;     // rad/s, n=1 sideband
  double detuning_span = constants::kTwoPi * 50e3;  // rad/s
  double duration = 70e-6;                         // s
  Envelope envelope = Envelope::sin_squared_tanh;
  double chirp_steepness = 3.0;                    // beta
  bool counterdiabatic = true;

  void validate() const;
  double amplitude(double t) const;
  double amplitude_rate(double t) const;
  double detuning(double t) const;
  double detuning_rate(double t) const;
};

// Ideal (instantaneous, exact) pulse kernels.

StateVector sideband_rotation(const StateVector& state, const PulseSpec& spec);
StateVector carrier_rotation(const StateVector& state, std::size_t ion, double theta, double phi);
StateVector shelve_swap(const StateVector& state, std::size_t ion, std::string_view level_a,
                        std::string_view level_b);
/// Dispatches on spec.kind; shelve pulses act as the ideal swap.
StateVector apply_pulse(const StateVector& state, const PulseSpec& spec);
/// Exact pi rotation on every red-sideband manifold at once: the transfer an
/// ideal adiabatic passage would achieve.
StateVector ideal_rsb_transfer(const StateVector& state, std::size_t ion);
/// Inverse of apply_pulse (rotation by -theta, swaps are involutions).
StateVector unapply_pulse(const StateVector& state, const PulseSpec& spec);

/// R(pi/2, 0) R(pi/sqrt2, pi/2) R(pi/2, 0) on the red sideband.
std::array<PulseSpec, 3> composite_sequence(std::size_t ion, const RabiParams& rabi);
double composite_duration(const RabiParams& rabi);
StateVector composite_rsb(const StateVector& state, std::size_t ion, const RabiParams& rabi);

/// H whose evolution over spec.duration reproduces the pulse:
/// H = -(Omega/2)(e^{i phi} G + h.c.), Omega = theta/duration.
OperatorMatrix drive_hamiltonian(const BasisPtr& basis, const PulseSpec& spec);

TimeDependentHamiltonian sweep_hamiltonian(const BasisPtr& basis, std::span<const std::size_t> ions,
                                           const SweepSpec& sweep);
StateVector adiabatic_passage(const StateVector& state, std::size_t ion, const SweepSpec& sweep,
                              const IntegratorOptions& options = {});
/// Transfer fidelity per phonon number: n = 0 is the survival of |down,0>,
/// n >= 1 the population reaching |up,n-1> from |down,n>.
std::vector<double> passage_fidelities(const SweepSpec& sweep, std::size_t max_n,
                                       const IntegratorOptions& options = {});

struct SweepDrive {
  std::size_t ion = 0;
  SweepSpec sweep;
};
using Drive = std::variant<PulseSpec, SweepDrive>;

double drive_duration(const Drive& drive);

/// Co-evolves the drive with the hopping Hamiltonian (rotating frame) for the
/// drive's duration. With kappa = 0 this equals the ideal pulse.
StateVector schedule_with_hopping(const StateVector& state, const Drive& drive, const HoppingParams& hop,
                                  const IntegratorOptions& options = {});

}  // namespace phonoread

#endif  // PHONOREAD_PULSES_HPP
