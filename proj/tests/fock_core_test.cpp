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

#include <cmath>

#include "gtest/gtest.h"

#include "phonoread/evolution.hpp"
#include "phonoread/operators.hpp"
#include "phonoread/physics.hpp"
#include "phonoread/sampling.hpp"
#include "test_util.hpp"

using namespace phonoread;
using phonoread::testing::idx;
using phonoread::testing::ket;

TEST(Basis, dimensions) {
  EXPECT_EQ(build_space(1, 1, {"down", "up"})->dimension(), 4u);
  EXPECT_EQ(build_space(2, 3, {"down", "up", "e0", "e1"})->dimension(), 256u);
  EXPECT_EQ(build_space(1, 2, {"down", "up", "e0"})->dimension(), 9u);
}

TEST(Basis, rejects_bad_inputs) {
  EXPECT_THROW(build_space(1, 2, {"down", "up", "down"}), std::invalid_argument);
  EXPECT_THROW(build_space(0, 2, {"down", "up"}), std::invalid_argument);
  EXPECT_THROW(build_space(1, 0, {"down", "up"}), std::invalid_argument);
  EXPECT_THROW(build_space(1, 2, {"down", "e0"}), std::invalid_argument);
  EXPECT_THROW(build_space(1, 2, {"down", "up"})->level("e3"), std::invalid_argument);
}

TEST(Basis, ordering_is_ion_major_level_then_phonon) {
  auto b = build_space(2, 2, {"down", "up"});
  // local = level*3 + n; ion 0 most significant with stride 6.
  EXPECT_EQ(idx(b, {{"down", 0}, {"down", 0}}), 0u);
  EXPECT_EQ(idx(b, {{"down", 0}, {"down", 1}}), 1u);
  EXPECT_EQ(idx(b, {{"down", 0}, {"up", 0}}), 3u);
  EXPECT_EQ(idx(b, {{"down", 1}, {"down", 0}}), 6u);
  EXPECT_EQ(idx(b, {{"up", 2}, {"up", 2}}), 35u);
  for (std::size_t i = 0; i < b->dimension(); ++i) {
    const std::array<LocalState, 2> s{b->local_state(i, 0), b->local_state(i, 1)};
    EXPECT_EQ(b->index(s), i);
  }
}

TEST(Operators, annihilation_examples) {
  auto b = build_space(1, 3, {"down", "up"});
  const auto a = annihilation(b, 0);
  EXPECT_NEAR(a.apply(ket(b, {{"down", 0}})).norm(), 0.0, 1e-15);
  const auto a1 = a.apply(ket(b, {{"down", 1}}));
  EXPECT_NEAR(std::abs(a1[idx(b, {{"down", 0}})] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(a1.norm(), 1.0, 1e-15);
  const auto a2 = a.apply(ket(b, {{"down", 2}}));
  EXPECT_NEAR(std::abs(a2[idx(b, {{"down", 1}})] - std::sqrt(2.0)), 0.0, 1e-15);
  EXPECT_NEAR(a2.norm(), std::sqrt(2.0), 1e-15);
  EXPECT_THROW(annihilation(b, 1), std::invalid_argument);
}

TEST(Operators, creation_truncates_at_n_max) {
  auto b = build_space(1, 3, {"down", "up"});
  EXPECT_NEAR(creation(b, 0).apply(ket(b, {{"up", 3}})).norm(), 0.0, 1e-15);
}

TEST(Operators, commutator_is_identity_below_cutoff) {
  auto b = build_space(2, 4, {"down", "up", "e0"});
  for (std::size_t ion = 0; ion < 2; ++ion) {
    const Eigen::MatrixXcd c = commutator(annihilation(b, ion), creation(b, ion)).matrix();
    for (std::size_t i = 0; i < b->dimension(); ++i) {
      if (b->local_state(i, ion).phonons == b->n_max()) continue;
      for (std::size_t j = 0; j < b->dimension(); ++j) {
        if (b->local_state(j, ion).phonons == b->n_max()) continue;
        const Complex expect = i == j ? 1.0 : 0.0;
        ASSERT_NEAR(std::abs(c(i, j) - expect), 0.0, 1e-12) << i << "," << j;
      }
    }
  }
}

TEST(Operators, internal_coupling_examples) {
  auto b = build_space(1, 2, {"down", "up", "e0"});
  const auto sp = internal_coupling(b, 0, "down", "up");
  const auto out = sp.apply(ket(b, {{"down", 1}}));
  EXPECT_NEAR(std::abs(out[idx(b, {{"up", 1}})] - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(out.norm(), 1.0, 1e-15);
  EXPECT_NEAR(internal_coupling(b, 0, "down", "e0").apply(ket(b, {{"up", 0}})).norm(), 0.0, 1e-15);
  const SparseMatrix diff = internal_coupling(b, 0, "up", "down").matrix() - sp.adjoint().matrix();
  EXPECT_EQ(diff.norm(), 0.0);
  EXPECT_THROW(internal_coupling(b, 0, "down", "e7"), std::invalid_argument);
  EXPECT_THROW(internal_coupling(b, 0, "up", "up"), std::invalid_argument);
}

TEST(Operators, hermitian_flag_is_checked) {
  auto b = build_space(1, 2, {"down", "up"});
  EXPECT_THROW(OperatorMatrix(b, annihilation(b, 0).matrix(), true), std::invalid_argument);
  EXPECT_NO_THROW(OperatorMatrix(b, number(b, 0).matrix(), true));
  EXPECT_THROW(annihilation(build_space(1, 3, {"down", "up"}), 0) + annihilation(b, 0), std::invalid_argument);
}

TEST(Operators, tensor_locality_on_random_states) {
  auto b = build_space(3, 2, {"down", "up", "e0"});
  auto rng = phonoread::testing::test_rng(1);
  const std::vector<std::pair<OperatorMatrix, OperatorMatrix>> pairs{
      {annihilation(b, 0), creation(b, 2)},
      {internal_coupling(b, 1, "down", "up"), number(b, 0)},
      {internal_coupling(b, 0, "up", "e0"), annihilation(b, 1)},
      {level_projector(b, 2, "down"), internal_coupling(b, 0, "down", "e0")},
  };
  for (int trial = 0; trial < 5; ++trial) {
    const auto psi = phonoread::testing::random_state(b, rng);
    for (const auto& [x, y] : pairs) {
      const Eigen::VectorXcd xy = x.apply(y.apply(psi));
      const Eigen::VectorXcd yx = y.apply(x.apply(psi));
      ASSERT_LT((xy - yx).cwiseAbs().maxCoeff(), 1e-12);
    }
  }
}

TEST(Operators, norm_preserved_by_unitary_evolution) {
  auto b = build_space(2, 3, {"down", "up", "e0"});
  auto rng = phonoread::testing::test_rng(2);
  const auto h = build_hopping_hamiltonian(b, HoppingParams{constants::kTwoPi * 3e3, constants::kTwoPi * 3e6, 2});
  for (int trial = 0; trial < 5; ++trial) {
    const auto psi = phonoread::testing::random_state(b, rng);
    EXPECT_NEAR(evolve_unitary(psi, h, 1e-4 * (trial + 1)).norm(), 1.0, 1e-10);
  }
}

TEST(State, constructor_checks_norm) {
  auto b = build_space(1, 1, {"down", "up"});
  EXPECT_THROW(StateVector(b, Eigen::VectorXcd::Constant(4, 1.0)), std::invalid_argument);
  EXPECT_THROW(StateVector(b, Eigen::VectorXcd::Zero(3)), std::invalid_argument);
  EXPECT_THROW(StateVector::normalized(b, Eigen::VectorXcd::Zero(4)), std::invalid_argument);
  EXPECT_NEAR(StateVector::normalized(b, Eigen::VectorXcd::Constant(4, 1.0)).norm(), 1.0, 1e-12);
}

TEST(State, density_operator_invariants) {
  auto b = build_space(1, 1, {"down", "up"});
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(4, 4) * 0.5;
  EXPECT_THROW(DensityOperator(b, m), std::invalid_argument);  // trace 2
  m = Eigen::MatrixXcd::Identity(4, 4) * 0.25;
  m(0, 1) = 0.1;
  EXPECT_THROW(DensityOperator(b, m), std::invalid_argument);  // not Hermitian
  auto rng = phonoread::testing::test_rng(3);
  const auto rho = DensityOperator::from_pure(phonoread::testing::random_state(b, rng));
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  EXPECT_LT(rho.hermiticity_error(), 1e-12);
  EXPECT_GT(rho.min_eigenvalue(), -1e-10);
}

TEST(State, phonon_marginal_examples) {
  auto b = build_space(2, 3, {"down", "up"});
  const std::array<std::size_t, 2> n11{1, 1};
  const auto d11 = phonon_marginal(StateVector::fock(b, n11));
  EXPECT_DOUBLE_EQ(d11.marginals[0][1], 1.0);
  EXPECT_DOUBLE_EQ(d11.marginals[1][1], 1.0);

  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(b->dimension()));
  v[idx(b, {{"down", 2}, {"down", 0}})] = 1.0 / std::sqrt(2.0);
  v[idx(b, {{"down", 0}, {"down", 2}})] = 1.0 / std::sqrt(2.0);
  const auto noon = phonon_marginal(StateVector(b, v));
  EXPECT_NEAR(noon.marginals[0][2], 0.5, 1e-15);
  EXPECT_NEAR(noon.marginals[0][0], 0.5, 1e-15);
  for (const auto& m : noon.marginals) {
    double s = 0.0;
    for (double p : m) s += p;
    EXPECT_NEAR(s, 1.0, 1e-10);
  }
  const std::array<std::size_t, 2> n20{2, 0};
  EXPECT_NEAR(noon.joint_at(n20), 0.5, 1e-15);
}

TEST(State, hong_ou_mandel_dip_has_no_coincidence) {
  auto b = build_space(2, 3, {"down", "up"});
  const HoppingParams hop{constants::kTwoPi * 3e3, constants::kTwoPi * 3e6, 2};
  const std::array<std::size_t, 2> n11{1, 1};
  const auto psi = evolve_unitary(StateVector::fock(b, n11), build_hopping_hamiltonian(b, hop),
                                  M_PI / (2.0 * hop.kappa));
  EXPECT_NEAR(phonon_marginal(psi).joint_at(n11), 0.0, 1e-12);
}

TEST(Sampling, seed_derivation_is_stable) {
  // Reference SplitMix64 output for state 0, and the pair values computed by
  // an independent implementation. Frozen so CSV goldens stay valid.
  EXPECT_EQ(mix64(0), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(derive_seed(0, 0), 0xf2253e3606a0bf0fULL);
  EXPECT_EQ(derive_seed(20260101, 7), 0x71778a2bba9d815cULL);
  EXPECT_NE(derive_seed(1, 0), derive_seed(0, 1));
  std::mt19937_64 ref;  // default seed; the standard pins the 10000th draw
  ref.discard(9999);
  EXPECT_EQ(ref(), 9981545732273789042ULL);
  ShotRng a(42), b(42);
  for (int i = 0; i < 100; ++i) {
    const double u = a.uniform();
    ASSERT_EQ(u, b.uniform());
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Sampling, born_sample_deterministic_bright) {
  auto b = build_space(1, 1, {"down", "up"});
  ProjectorSet ps({level_projector(b, 0, "down"), level_projector(b, 0, "up")});
  ShotRng rng(7);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(born_sample(ket(b, {{"down", 0}}), ps, rng).outcome, 0u);
}

TEST(Sampling, born_sample_superposition_frequency) {
  auto b = build_space(1, 1, {"down", "up"});
  ProjectorSet ps({level_projector(b, 0, "down"), level_projector(b, 0, "up")});
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
  v[idx(b, {{"down", 0}})] = 1.0 / std::sqrt(2.0);
  v[idx(b, {{"up", 0}})] = 1.0 / std::sqrt(2.0);
  const StateVector psi(b, v);
  const int n = 10000;
  int bright = 0;
  std::vector<std::size_t> first, again;
  for (int i = 0; i < n; ++i) {
    ShotRng rng(123, static_cast<std::uint64_t>(i));
    const auto r = born_sample(psi, ps, rng);
    bright += r.outcome == 0;
    EXPECT_NEAR(r.collapsed.norm(), 1.0, 1e-12);
    first.push_back(r.outcome);
  }
  const double sigma = std::sqrt(0.25 / n);
  EXPECT_NEAR(bright / static_cast<double>(n), 0.5, 3 * sigma);
  for (int i = 0; i < n; ++i) {
    ShotRng rng(123, static_cast<std::uint64_t>(i));
    again.push_back(born_sample(psi, ps, rng).outcome);
  }
  EXPECT_EQ(first, again);
}

TEST(Sampling, incomplete_projector_set_rejected) {
  auto b = build_space(1, 1, {"down", "up"});
  EXPECT_THROW(ProjectorSet({level_projector(b, 0, "down")}), std::invalid_argument);
  EXPECT_THROW(ProjectorSet({level_projector(b, 0, "down"), level_projector(b, 0, "down")}),
               std::invalid_argument);
}
