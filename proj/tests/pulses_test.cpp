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

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "gtest/gtest.h"

#include "phonoread/evolution.hpp"
#include "phonoread/pulses.hpp"
#include "test_util.hpp"

using namespace phonoread;
using phonoread::testing::idx;
using phonoread::testing::ket;

namespace {

const RabiParams kRabi = RabiParams::standard();

BasisPtr one_ion(std::size_t n_max = 3) { return build_space(1, n_max, {"down", "up", "e0"}); }

// exp[i a/2 (e^{i phi} s+ + e^{-i phi} s-)] on (down, up), written out by hand.
Eigen::Matrix2cd two_level(double a, double phi) {
  const Complex i(0.0, 1.0);
  Eigen::Matrix2cd u;
  u << std::cos(a / 2), i * std::sin(a / 2) * std::exp(-i * phi),  //
      i * std::sin(a / 2) * std::exp(i * phi), std::cos(a / 2);
  return u;
}

// Composite sequence on the manifold {|down,n>, |up,n-1>}.
Eigen::Matrix2cd composite_oracle(std::size_t n) {
  const double r = std::sqrt(static_cast<double>(n));
  return two_level(M_PI / 2 * r, 0.0) * two_level(M_PI / std::sqrt(2.0) * r, M_PI / 2) * two_level(M_PI / 2 * r, 0.0);
}

}  // namespace

TEST(RabiParams, standard_timings) {
  EXPECT_NEAR(M_PI / kRabi.carrier_rabi, 1e-6, 1e-18);
  EXPECT_NEAR(composite_duration(kRabi), 40e-6, 1e-15);
  EXPECT_GT(kRabi.lamb_dicke, 0.0);
  EXPECT_LT(kRabi.lamb_dicke, 1.0);
  double sum = 0.0;
  for (const auto& p : composite_sequence(0, kRabi)) {
    EXPECT_NEAR(p.theta / p.duration, kRabi.sideband_rabi(), 1e-6);
    sum += p.duration;
  }
  EXPECT_NEAR(sum, 40e-6, 1e-15);
  EXPECT_THROW((RabiParams{-1.0, 0.1}.validate()), std::invalid_argument);
  EXPECT_THROW((RabiParams{1.0, 1.5}.validate()), std::invalid_argument);
}

TEST(PulseSpec, validation) {
  auto p = PulseSpec::red_sideband(0, M_PI, 0.0, kRabi);
  EXPECT_NO_THROW(p.validate());
  p.duration = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = PulseSpec::red_sideband(0, -1.0, 0.0, kRabi);
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(SidebandRotation, pi_pulse_on_one_phonon) {
  auto b = one_ion();
  const auto out = sideband_rotation(ket(b, {{"down", 1}}), PulseSpec::red_sideband(0, M_PI, 0.0, kRabi));
  EXPECT_NEAR(out.population(idx(b, {{"up", 0}})), 1.0, 1e-15);
}

TEST(SidebandRotation, ground_state_is_dark_to_red_sideband) {
  auto b = one_ion();
  for (double theta : {0.3, M_PI, 2.2}) {
    const auto out = sideband_rotation(ket(b, {{"down", 0}}), PulseSpec::red_sideband(0, theta, 0.7, kRabi));
    EXPECT_NEAR(std::abs(out.amplitude(idx(b, {{"down", 0}})) - 1.0), 0.0, 1e-15);
  }
}

TEST(SidebandRotation, two_phonon_manifold_rotates_faster) {
  auto b = one_ion();
  const auto out = sideband_rotation(ket(b, {{"down", 2}}), PulseSpec::red_sideband(0, M_PI, 0.0, kRabi));
  const double expect = std::pow(std::sin(M_PI * std::sqrt(2.0) / 2.0), 2);
  EXPECT_NEAR(out.population(idx(b, {{"up", 1}})), expect, 1e-12);
  EXPECT_NEAR(expect, 0.633, 1e-3);
}

TEST(SidebandRotation, amplitudes_match_two_level_formula) {
  auto b = one_ion();
  const double theta = 1.1, phi = 0.4;
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto out = sideband_rotation(ket(b, {{"down", n}}), PulseSpec::red_sideband(0, theta, phi, kRabi));
    const auto u = two_level(theta * std::sqrt(static_cast<double>(n)), phi);
    EXPECT_NEAR(std::abs(out.amplitude(idx(b, {{"down", n}})) - u(0, 0)), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(out.amplitude(idx(b, {{"up", n - 1}})) - u(1, 0)), 0.0, 1e-14);
  }
  // Blue sideband couples |down,n> to |up,n+1> with angle theta*sqrt(n+1).
  const auto out = sideband_rotation(ket(b, {{"down", 1}}), PulseSpec::blue_sideband(0, theta, phi, kRabi));
  const auto u = two_level(theta * std::sqrt(2.0), phi);
  EXPECT_NEAR(std::abs(out.amplitude(idx(b, {{"up", 2}})) - u(1, 0)), 0.0, 1e-14);
}

TEST(SidebandRotation, never_mixes_manifolds) {
  auto b = build_space(2, 3, {"down", "up", "e0"});
  auto rng = phonoread::testing::test_rng(11);
  const auto psi = phonoread::testing::random_state(b, rng);
  const auto out = sideband_rotation(psi, PulseSpec::red_sideband(0, 1.3, 0.2, kRabi));
  // Weight of each block {|down,n>,|up,n-1>} on ion 0 (other ion fixed) and of
  // uncoupled states (e0, |up,n_max>) is unchanged.
  std::map<std::tuple<int, std::size_t>, std::pair<double, double>> blocks;
  for (std::size_t i = 0; i < b->dimension(); ++i) {
    const auto s = b->local_state(i, 0);
    const std::size_t other = b->local_dim() == 0 ? 0 : i % b->stride(0);
    int key;
    if (s.level == b->level("down"))
      key = static_cast<int>(s.phonons);
    else if (s.level == b->level("up"))
      key = static_cast<int>(s.phonons) + 1;
    else
      key = -1 - static_cast<int>(s.phonons);
    blocks[{key, other}].first += psi.population(i);
    blocks[{key, other}].second += out.population(i);
  }
  for (const auto& [k, v] : blocks) EXPECT_NEAR(v.first, v.second, 1e-12);
  EXPECT_NEAR(out.norm(), 1.0, 1e-12);
}

TEST(CarrierRotation, examples) {
  auto b = one_ion();
  const auto flipped = carrier_rotation(ket(b, {{"down", 2}}), 0, M_PI, 0.0);
  EXPECT_NEAR(flipped.population(idx(b, {{"up", 2}})), 1.0, 1e-15);
  auto rng = phonoread::testing::test_rng(12);
  const auto psi = phonoread::testing::random_state(b, rng);
  const auto full = carrier_rotation(psi, 0, 2 * M_PI, 0.3);
  const std::size_t e0 = b->level("e0");
  for (std::size_t i = 0; i < b->dimension(); ++i) {
    const Complex expect = b->local_state(i, 0).level == e0 ? psi.amplitude(i) : -psi.amplitude(i);
    EXPECT_NEAR(std::abs(full.amplitude(i) - expect), 0.0, 1e-14);
  }
  const auto shelved = carrier_rotation(ket(b, {{"e0", 1}}), 0, 1.0, 0.0);
  EXPECT_NEAR(shelved.population(idx(b, {{"e0", 1}})), 1.0, 1e-15);
}

TEST(ShelveSwap, examples) {
  auto b = one_ion();
  EXPECT_NEAR(shelve_swap(ket(b, {{"down", 0}}), 0, "down", "e0").population(idx(b, {{"e0", 0}})), 1.0, 0.0);
  EXPECT_NEAR(shelve_swap(ket(b, {{"up", 1}}), 0, "down", "e0").population(idx(b, {{"up", 1}})), 1.0, 0.0);
  auto rng = phonoread::testing::test_rng(13);
  const auto psi = phonoread::testing::random_state(b, rng);
  const auto twice = shelve_swap(shelve_swap(psi, 0, "down", "e0"), 0, "down", "e0");
  EXPECT_LT((twice.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_THROW(shelve_swap(psi, 0, "down", "e5"), std::invalid_argument);
}

TEST(Pulses, unitary_on_random_states) {
  auto b = build_space(2, 3, {"down", "up", "e0"});
  auto rng = phonoread::testing::test_rng(14);
  const std::vector<PulseSpec> pulses{
      PulseSpec::red_sideband(0, 0.9, 0.1, kRabi), PulseSpec::blue_sideband(1, 2.1, 1.0, kRabi),
      PulseSpec::carrier(1, 0.4, 2.0, kRabi), PulseSpec::shelve(0, "down", "e0")};
  for (int trial = 0; trial < 3; ++trial) {
    const auto psi = phonoread::testing::random_state(b, rng);
    const auto phi = phonoread::testing::random_state(b, rng);
    for (const auto& p : pulses) {
      const auto a = apply_pulse(psi, p);
      EXPECT_NEAR(a.norm(), 1.0, 1e-10);
      // Inner products survive (U^dag U = I).
      EXPECT_NEAR(std::abs(a.overlap(apply_pulse(phi, p)) - psi.overlap(phi)), 0.0, 1e-12);
      EXPECT_LT((unapply_pulse(a, p).amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(CompositeRsb, exact_transfer_for_one_and_two_phonons) {
  auto b = one_ion();
  const auto o1 = composite_rsb(ket(b, {{"down", 1}}), 0, kRabi);
  const auto o2 = composite_rsb(ket(b, {{"down", 2}}), 0, kRabi);
  EXPECT_NEAR(o1.population(idx(b, {{"up", 0}})), 1.0, 1e-9);
  EXPECT_NEAR(o2.population(idx(b, {{"up", 1}})), 1.0, 1e-9);
  const auto o0 = composite_rsb(ket(b, {{"down", 0}}), 0, kRabi);
  EXPECT_NEAR(std::abs(o0.amplitude(idx(b, {{"down", 0}})) - 1.0), 0.0, 1e-15);
}

TEST(CompositeRsb, amplitudes_match_independent_su2_product) {
  auto b = one_ion();
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto out = composite_rsb(ket(b, {{"down", n}}), 0, kRabi);
    const auto u = composite_oracle(n);
    EXPECT_NEAR(std::abs(out.amplitude(idx(b, {{"down", n}})) - u(0, 0)), 0.0, 1e-12) << n;
    EXPECT_NEAR(std::abs(out.amplitude(idx(b, {{"up", n - 1}})) - u(1, 0)), 0.0, 1e-12) << n;
  }
  // n = 3 is not compensated.
  EXPECT_LT(std::norm(composite_oracle(3)(1, 0)), 0.99);
}

TEST(CompositeRsb, timed_evolution_reproduces_kernel) {
  auto b = one_ion();
  auto rng = phonoread::testing::test_rng(15);
  const auto psi = phonoread::testing::random_state(b, rng);
  StateVector timed = psi;
  for (const auto& p : composite_sequence(0, kRabi)) timed = evolve_unitary(timed, drive_hamiltonian(b, p), p.duration);
  const auto kernel = composite_rsb(psi, 0, kRabi);
  EXPECT_LT((timed.amplitudes() - kernel.amplitudes()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(AdiabaticPassage, default_sweep_exceeds_99_percent) {
  SweepSpec s;
  EXPECT_NEAR(s.duration, 70e-6, 0.0);
  EXPECT_NEAR(s.peak_rabi, constants::kTwoPi * 40e3, 1e-6);
  const auto f = passage_fidelities(s, 7);
  ASSERT_EQ(f.size(), 8u);
  for (double x : f) EXPECT_GT(x, 0.99);
}

TEST(AdiabaticPassage, counterdiabatic_term_vanishes_in_adiabatic_limit) {
  SweepSpec slow;
  slow.duration *= 10.0;
  SweepSpec slow_plain = slow;
  slow_plain.counterdiabatic = false;
  const auto with = passage_fidelities(slow, 7);
  const auto without = passage_fidelities(slow_plain, 7);
  for (std::size_t n = 0; n < with.size(); ++n) EXPECT_LT(std::abs(with[n] - without[n]), 1e-3) << n;
}

TEST(AdiabaticPassage, plain_sweep_improves_with_duration) {
  SweepSpec s;
  s.counterdiabatic = false;
  double prev_min = 0.0;
  for (double scale : {0.5, 1.0, 3.0, 10.0}) {
    SweepSpec t = s;
    t.duration *= scale;
    const auto f = passage_fidelities(t, 7);
    const double mn = *std::min_element(f.begin() + 1, f.end());
    EXPECT_GT(mn, prev_min) << scale;
    prev_min = mn;
  }
  EXPECT_GT(prev_min, 0.9999);
}

TEST(AdiabaticPassage, no_drive_means_no_transfer) {
  SweepSpec s;
  s.peak_rabi = 0.0;
  // RK4 norm drift only; the integrator targets 1e-8.
  auto f = passage_fidelities(s, 3);
  EXPECT_NEAR(f[0], 1.0, 1e-9);
  for (std::size_t n = 1; n < f.size(); ++n) EXPECT_NEAR(f[n], 0.0, 1e-12);
  s.peak_rabi = constants::kTwoPi * 10.0;
  s.counterdiabatic = false;
  f = passage_fidelities(s, 3);
  for (std::size_t n = 1; n < f.size(); ++n) EXPECT_LT(f[n], 1e-3);
}

TEST(AdiabaticPassage, zero_duration_is_identity) {
  auto b = one_ion();
  auto rng = phonoread::testing::test_rng(16);
  const auto psi = phonoread::testing::random_state(b, rng);
  SweepSpec s;
  s.duration = 0.0;
  EXPECT_EQ((adiabatic_passage(psi, 0, s).amplitudes() - psi.amplitudes()).norm(), 0.0);
}

TEST(ScheduleWithHopping, zero_kappa_equals_ideal_pulse) {
  auto b = build_space(2, 3, {"down", "up", "e0"});
  auto rng = phonoread::testing::test_rng(17);
  const auto psi = phonoread::testing::random_state(b, rng);
  const HoppingParams off{0.0, constants::kTwoPi * 3e6, 2};
  for (const auto& p : {PulseSpec::red_sideband(0, M_PI, 0.3, kRabi), PulseSpec::blue_sideband(1, 0.7, 0.0, kRabi),
                        PulseSpec::carrier(1, M_PI, 1.0, kRabi)}) {
    const auto timed = schedule_with_hopping(psi, p, off);
    EXPECT_LT((timed.amplitudes() - apply_pulse(psi, p).amplitudes()).cwiseAbs().maxCoeff(), 1e-10);
  }
  // A timed shelving pi pulse moves the same populations as the ideal swap.
  const auto shelve = PulseSpec::shelve(0, "down", "e0");
  const auto timed = schedule_with_hopping(psi, shelve, off).populations();
  const auto ideal = apply_pulse(psi, shelve).populations();
  for (std::size_t i = 0; i < timed.size(); ++i) EXPECT_NEAR(timed[i], ideal[i], 1e-10);
  // Sweeps too.
  SweepSpec s;
  const auto swept = schedule_with_hopping(psi, SweepDrive{0, s}, off);
  EXPECT_LT((swept.amplitudes() - adiabatic_passage(psi, 0, s).amplitudes()).cwiseAbs().maxCoeff(), 1e-8);
}

TEST(ScheduleWithHopping, hopping_during_composite_costs_fidelity) {
  auto b = build_space(2, 3, {"down", "up", "e0"});
  const auto start = ket(b, {{"down", 1}, {"down", 1}});
  const auto target = idx(b, {{"up", 0}, {"down", 1}});
  auto infidelity = [&](double kappa) {
    StateVector s = start;
    for (const auto& p : composite_sequence(0, kRabi))
      s = schedule_with_hopping(s, p, {kappa, constants::kTwoPi * 3e6, 2});
    return 1.0 - s.population(target);
  };
  EXPECT_LT(infidelity(0.0), 1e-9);
  double prev = infidelity(0.0);
  for (double k : {1e3, 2e3, 4e3}) {
    const double x = infidelity(constants::kTwoPi * k);
    EXPECT_GT(x, prev) << k;
    prev = x;
  }
}
