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

#include "phonoread/pulses.hpp"

#include <cmath>
#include <numbers>
#include <optional>

namespace phonoread {

namespace {

constexpr Complex kI{0.0, 1.0};
constexpr double kPi = std::numbers::pi;

// Partner of a |down, n> local state under a transition, and the phonon
// factor sqrt(m) of that manifold.
struct Partner {
  LocalState upper;
  double factor;
};

std::optional<Partner> partner_of(Transition kind, std::size_t n, std::size_t up, std::size_t n_max) {
  switch (kind) {
    case Transition::carrier:
      return Partner{{up, n}, 1.0};
    case Transition::red_sideband:
      if (n == 0) return std::nullopt;
      return Partner{{up, n - 1}, std::sqrt(static_cast<double>(n))};
    case Transition::blue_sideband:
      if (n >= n_max) return std::nullopt;
      return Partner{{up, n + 1}, std::sqrt(static_cast<double>(n + 1))};
    case Transition::shelve:
      break;
  }
  return std::nullopt;
}

// In-place two-level rotation on every (|down,n>, partner) pair of `ion`:
//   up'   = c up   + i s e^{ i phi} down
//   down' = c down + i s e^{-i phi} up,   c = cos(a/2), s = sin(a/2), a = theta*factor.
void rotate_pairs(StateVector& state, std::size_t ion, Transition kind, double theta, double phi) {
  const Basis& b = state.basis();
  b.check_ion(ion);
  const std::size_t down = b.level(kDown);
  const std::size_t up = b.level(kUp);
  const Complex e_plus = std::exp(kI * phi);
  const Complex e_minus = std::conj(e_plus);
  auto& amps = state.mutable_amplitudes();
  const std::size_t dim = b.dimension();
  for (std::size_t i = 0; i < dim; ++i) {
    const LocalState s = b.local_state(i, ion);
    if (s.level != down) continue;
    const auto p = partner_of(kind, s.phonons, up, b.n_max());
    if (!p) continue;
    const std::size_t j = b.with_local(i, ion, p->upper);
    const double a = theta * p->factor;
    const double c = std::cos(a / 2.0);
    const double sn = std::sin(a / 2.0);
    const auto ii = static_cast<Eigen::Index>(i);
    const auto jj = static_cast<Eigen::Index>(j);
    const Complex d0 = amps[ii];
    const Complex u0 = amps[jj];
    amps[jj] = c * u0 + kI * sn * e_plus * d0;
    amps[ii] = c * d0 + kI * sn * e_minus * u0;
  }
}

// sigma+ style raising operator of a transition: |upper><down|.
OperatorMatrix raising_operator(const BasisPtr& basis, std::size_t ion, Transition kind) {
  const std::size_t down = basis->level(kDown);
  const std::size_t up = basis->level(kUp);
  const std::size_t n_max = basis->n_max();
  return embed_local(basis, ion, [=](LocalState c, std::vector<LocalEntry>& out) {
    if (c.level != down) return;
    if (auto p = partner_of(kind, c.phonons, up, n_max)) out.push_back({p->upper, c, p->factor});
  });
}

}  // namespace

const char* to_string(Transition t) noexcept {
  switch (t) {
    case Transition::carrier: return "carrier";
    case Transition::red_sideband: return "red_sideband";
    case Transition::blue_sideband: return "blue_sideband";
    case Transition::shelve: return "shelve";
  }
  return "?";
}

void RabiParams::validate() const {
  if (!(carrier_rabi > 0.0)) throw std::invalid_argument("carrier Rabi frequency must be positive");
  if (!(lamb_dicke > 0.0 && lamb_dicke < 1.0))
    throw std::invalid_argument("Lamb-Dicke parameter must lie in (0, 1)");
}

RabiParams RabiParams::from_timings(double carrier_pi_time, double composite_duration) {
  if (!(carrier_pi_time > 0.0) || !(composite_duration > 0.0))
    throw std::invalid_argument("pulse timings must be positive");
  RabiParams r;
  r.carrier_rabi = kPi / carrier_pi_time;
  const double nominal_angle = kPi / 2.0 + kPi / std::numbers::sqrt2 + kPi / 2.0;
  r.lamb_dicke = nominal_angle / composite_duration / r.carrier_rabi;
  r.validate();
  return r;
}

RabiParams RabiParams::standard() { return from_timings(1e-6, 40e-6); }

void PulseSpec::validate() const {
  if (!(duration > 0.0)) throw std::invalid_argument("pulse duration must be positive");
  if (!(theta >= 0.0)) throw std::invalid_argument("pulse angle must be non-negative");
  if (kind == Transition::shelve && (level_a.empty() || level_b.empty() || level_a == level_b))
    throw std::invalid_argument("shelve pulse needs two distinct levels");
}

PulseSpec PulseSpec::carrier(std::size_t ion, double theta, double phi, const RabiParams& rabi) {
  rabi.validate();
  return {ion, Transition::carrier, theta, phi, theta / rabi.carrier_rabi, {}, {}};
}

PulseSpec PulseSpec::red_sideband(std::size_t ion, double theta, double phi, const RabiParams& rabi) {
  rabi.validate();
  return {ion, Transition::red_sideband, theta, phi, theta / rabi.sideband_rabi(), {}, {}};
}

PulseSpec PulseSpec::blue_sideband(std::size_t ion, double theta, double phi, const RabiParams& rabi) {
  rabi.validate();
  return {ion, Transition::blue_sideband, theta, phi, theta / rabi.sideband_rabi(), {}, {}};
}

PulseSpec PulseSpec::shelve(std::size_t ion, std::string level_a, std::string level_b, double duration) {
  PulseSpec p{ion, Transition::shelve, kPi, 0.0, duration, std::move(level_a), std::move(level_b)};
  p.validate();
  return p;
}

void SweepSpec::validate() const {
  if (!(duration >= 0.0)) throw std::invalid_argument("sweep duration must be non-negative");
  if (!(detuning_span > 0.0)) throw std::invalid_argument("sweep detuning span must be positive");
  if (!(peak_rabi >= 0.0)) throw std::invalid_argument("sweep Rabi frequency must be non-negative");
  if (!(chirp_steepness > 0.0)) throw std::invalid_argument("chirp steepness must be positive");
}

double SweepSpec::amplitude(double t) const {
  const double s = std::sin(kPi * t / duration);
  return peak_rabi * s * s;
}

double SweepSpec::amplitude_rate(double t) const {
  return peak_rabi * (kPi / duration) * std::sin(2.0 * kPi * t / duration);
}

double SweepSpec::detuning(double t) const {
  return detuning_span * std::tanh(chirp_steepness * (2.0 * t / duration - 1.0)) /
         std::tanh(chirp_steepness);
}

double SweepSpec::detuning_rate(double t) const {
  const double th = std::tanh(chirp_steepness * (2.0 * t / duration - 1.0));
  return detuning_span * (1.0 - th * th) * (2.0 * chirp_steepness / duration) /
         std::tanh(chirp_steepness);
}

StateVector sideband_rotation(const StateVector& state, const PulseSpec& spec) {
  if (spec.kind != Transition::red_sideband && spec.kind != Transition::blue_sideband)
    throw std::invalid_argument("sideband_rotation needs a red or blue sideband pulse");
  StateVector out = state;
  rotate_pairs(out, spec.ion, spec.kind, spec.theta, spec.phi);
  return out;
}

StateVector carrier_rotation(const StateVector& state, std::size_t ion, double theta, double phi) {
  StateVector out = state;
  rotate_pairs(out, ion, Transition::carrier, theta, phi);
  return out;
}

StateVector shelve_swap(const StateVector& state, std::size_t ion, std::string_view level_a,
                        std::string_view level_b) {
  const Basis& b = state.basis();
  b.check_ion(ion);
  const std::size_t la = b.level(level_a);
  const std::size_t lb = b.level(level_b);
  if (la == lb) throw std::invalid_argument("shelve swap needs two distinct levels");
  StateVector out = state;
  auto& amps = out.mutable_amplitudes();
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    const LocalState s = b.local_state(i, ion);
    if (s.level != la) continue;
    const std::size_t j = b.with_local(i, ion, {lb, s.phonons});
    std::swap(amps[static_cast<Eigen::Index>(i)], amps[static_cast<Eigen::Index>(j)]);
  }
  return out;
}

StateVector apply_pulse(const StateVector& state, const PulseSpec& spec) {
  switch (spec.kind) {
    case Transition::carrier:
      return carrier_rotation(state, spec.ion, spec.theta, spec.phi);
    case Transition::red_sideband:
    case Transition::blue_sideband:
      return sideband_rotation(state, spec);
    case Transition::shelve:
      return shelve_swap(state, spec.ion, spec.level_a, spec.level_b);
  }
  throw std::invalid_argument("unknown pulse kind");
}

StateVector unapply_pulse(const StateVector& state, const PulseSpec& spec) {
  if (spec.kind == Transition::shelve) return apply_pulse(state, spec);
  StateVector out = state;
  rotate_pairs(out, spec.ion, spec.kind, -spec.theta, spec.phi);
  return out;
}

StateVector ideal_rsb_transfer(const StateVector& state, std::size_t ion) {
  StateVector out = state;
  const Basis& b = out.basis();
  b.check_ion(ion);
  const std::size_t down = b.level(kDown);
  const std::size_t up = b.level(kUp);
  auto& amps = out.mutable_amplitudes();
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    const LocalState s = b.local_state(i, ion);
    if (s.level != down || s.phonons == 0) continue;
    const std::size_t j = b.with_local(i, ion, {up, s.phonons - 1});
    const auto ii = static_cast<Eigen::Index>(i);
    const auto jj = static_cast<Eigen::Index>(j);
    const Complex d0 = amps[ii];
    amps[ii] = kI * amps[jj];
    amps[jj] = kI * d0;
  }
  return out;
}

std::array<PulseSpec, 3> composite_sequence(std::size_t ion, const RabiParams& rabi) {
  return {PulseSpec::red_sideband(ion, kPi / 2.0, 0.0, rabi),
          PulseSpec::red_sideband(ion, kPi / std::numbers::sqrt2, kPi / 2.0, rabi),
          PulseSpec::red_sideband(ion, kPi / 2.0, 0.0, rabi)};
}

double composite_duration(const RabiParams& rabi) {
  double total = 0.0;
  for (const auto& p : composite_sequence(0, rabi)) total += p.duration;
  return total;
}

StateVector composite_rsb(const StateVector& state, std::size_t ion, const RabiParams& rabi) {
  StateVector out = state;
  // Rightmost factor acts first; the sequence is palindromic anyway.
  const auto seq = composite_sequence(ion, rabi);
  for (auto it = seq.rbegin(); it != seq.rend(); ++it) out = sideband_rotation(out, *it);
  return out;
}

OperatorMatrix drive_hamiltonian(const BasisPtr& basis, const PulseSpec& spec) {
  spec.validate();
  OperatorMatrix g = [&] {
    if (spec.kind == Transition::shelve) return internal_coupling(basis, spec.ion, spec.level_a, spec.level_b);
    return raising_operator(basis, spec.ion, spec.kind);
  }();
  const Complex phase = std::exp(kI * spec.phi);
  OperatorMatrix coupling = g * phase + g.adjoint() * std::conj(phase);
  return coupling.as_hermitian().scaled(-spec.drive_rabi() / 2.0);
}

TimeDependentHamiltonian sweep_hamiltonian(const BasisPtr& basis, std::span<const std::size_t> ions,
                                           const SweepSpec& sweep) {
  sweep.validate();
  TimeDependentHamiltonian h;
  h.basis = basis;
  const std::size_t n_max = basis->n_max();
  const std::size_t down = basis->level(kDown);
  const std::size_t up = basis->level(kUp);
  for (auto ion : ions) {
    h.terms.push_back(level_projector(basis, ion, kUp) - level_projector(basis, ion, kDown));
    const auto raise = raising_operator(basis, ion, Transition::red_sideband);
    h.terms.push_back((raise + raise.adjoint()).as_hermitian());
    if (sweep.counterdiabatic) {
      // Y_n = -i|down,n><up,n-1| + i|up,n-1><down,n| on each manifold.
      for (std::size_t n = 1; n <= n_max; ++n) {
        auto y = embed_local(basis, ion, [=](LocalState c, std::vector<LocalEntry>& out) {
          if (c.level == down && c.phonons == n) out.push_back({{up, n - 1}, c, kI});
          if (c.level == up && c.phonons == n - 1) out.push_back({{down, n}, c, -kI});
        });
        h.terms.push_back(y.as_hermitian());
      }
    }
  }
  const std::size_t per_ion = 2 + (sweep.counterdiabatic ? n_max : 0);
  const std::size_t n_ions = ions.size();
  h.coefficients = [sweep, per_ion, n_ions, n_max](double t, std::span<double> c) {
    const double delta = sweep.detuning(t);
    const double omega = sweep.amplitude(t);
    for (std::size_t k = 0; k < n_ions; ++k) {
      auto ck = c.subspan(k * per_ion, per_ion);
      ck[0] = delta / 2.0;
      ck[1] = omega / 2.0;
      if (!sweep.counterdiabatic) continue;
      const double omega_rate = sweep.amplitude_rate(t);
      const double delta_rate = sweep.detuning_rate(t);
      for (std::size_t n = 1; n <= n_max; ++n) {
        const double f = std::sqrt(static_cast<double>(n));
        const double om = omega * f;
        const double den = om * om + delta * delta;
        // d/dt atan2(Omega_n, -Delta)
        const double mix_rate = den > 0.0 ? (-delta * omega_rate * f + om * delta_rate) / den : 0.0;
        ck[1 + n] = mix_rate / 2.0;
      }
    }
  };

  // Step bound: sample the coefficients over the window.
  std::vector<double> norms;
  for (const auto& term : h.terms) norms.push_back(operator_norm_bound(term.matrix()));
  std::vector<double> c(h.terms.size());
  double bound = 0.0;
  const int samples = 2000;
  for (int s = 0; s <= samples && sweep.duration > 0.0; ++s) {
    h.coefficients(sweep.duration * s / samples, c);
    double total = 0.0;
    for (std::size_t k = 0; k < c.size(); ++k) total += std::abs(c[k]) * norms[k];
    bound = std::max(bound, total);
  }
  h.max_frequency = 1.1 * bound;
  return h;
}

StateVector adiabatic_passage(const StateVector& state, std::size_t ion, const SweepSpec& sweep,
                              const IntegratorOptions& options) {
  sweep.validate();
  state.basis().check_ion(ion);
  if (sweep.duration == 0.0) return state;
  const std::array<std::size_t, 1> ions{ion};
  const auto h = sweep_hamiltonian(state.basis_ptr(), ions, sweep);
  return evolve_time_dependent(state, h, 0.0, sweep.duration, options);
}

std::vector<double> passage_fidelities(const SweepSpec& sweep, std::size_t max_n,
                                       const IntegratorOptions& options) {
  const auto basis = build_space(1, std::max<std::size_t>(max_n, 1), standard_levels(0));
  const std::size_t down = basis->level(kDown);
  const std::size_t up = basis->level(kUp);
  std::vector<double> fid;
  for (std::size_t n = 0; n <= max_n; ++n) {
    const std::array<LocalState, 1> start{LocalState{down, n}};
    const auto out = adiabatic_passage(StateVector::basis_state(basis, start), 0, sweep, options);
    const std::array<LocalState, 1> target{n == 0 ? LocalState{down, 0} : LocalState{up, n - 1}};
    fid.push_back(out.population(basis->index(target)));
  }
  return fid;
}

double drive_duration(const Drive& drive) {
  return std::visit(
      [](const auto& d) -> double {
        if constexpr (std::is_same_v<std::decay_t<decltype(d)>, PulseSpec>)
          return d.duration;
        else
          return d.sweep.duration;
      },
      drive);
}

StateVector schedule_with_hopping(const StateVector& state, const Drive& drive, const HoppingParams& hop,
                                  const IntegratorOptions& options) {
  const auto& basis = state.basis_ptr();
  const OperatorMatrix h_hop = build_hopping_hamiltonian(basis, hop, Frame::rotating);
  if (const auto* pulse = std::get_if<PulseSpec>(&drive)) {
    return evolve_unitary(state, drive_hamiltonian(basis, *pulse) + h_hop, pulse->duration);
  }
  const auto& sd = std::get<SweepDrive>(drive);
  sd.sweep.validate();
  if (sd.sweep.duration == 0.0) return state;
  const std::array<std::size_t, 1> ions{sd.ion};
  auto h = sweep_hamiltonian(basis, ions, sd.sweep);
  h.add_constant(h_hop);
  return evolve_time_dependent(state, h, 0.0, sd.sweep.duration, options);
}

}  // namespace phonoread
