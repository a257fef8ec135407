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

#ifndef PHONOREAD_TESTS_TEST_UTIL_HPP
#define PHONOREAD_TESTS_TEST_UTIL_HPP

#include <initializer_list>
#include <random>
#include <vector>

#include "phonoread/basis.hpp"
#include "phonoread/state.hpp"

namespace phonoread::testing {

inline std::mt19937_64 test_rng(std::uint64_t salt = 0) { return std::mt19937_64(0x5eed1234ULL ^ salt); }

inline StateVector random_state(const BasisPtr& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(static_cast<Eigen::Index>(basis->dimension()));
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = Complex(g(rng), g(rng));
  return StateVector::normalized(basis, v);
}

/// Basis state from (level label, phonons) per ion.
inline StateVector ket(const BasisPtr& basis, std::initializer_list<std::pair<std::string_view, std::size_t>> ions) {
  std::vector<LocalState> s;
  for (const auto& [label, n] : ions) s.push_back({basis->level(label), n});
  return StateVector::basis_state(basis, s);
}

inline std::size_t idx(const BasisPtr& basis, std::initializer_list<std::pair<std::string_view, std::size_t>> ions) {
  std::vector<LocalState> s;
  for (const auto& [label, n] : ions) s.push_back({basis->level(label), n});
  return basis->index(s);
}

}  // namespace phonoread::testing

#endif  // PHONOREAD_TESTS_TEST_UTIL_HPP
