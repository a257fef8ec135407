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

#ifndef PHONOREAD_BASIS_HPP
#define PHONOREAD_BASIS_HPP

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace phonoread {

using Complex = std::complex<double>;

/// Raised when an integrator fails its step-halving self-check.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::string_view kDown = "down";
inline constexpr std::string_view kUp = "up";

/// Label of the i-th auxiliary (shelving) level: "e0", "e1", ...
std::string aux_level(std::size_t i);

/// Internal level and phonon number of a single ion.
struct LocalState {
  std::size_t level = 0;
  std::size_t phonons = 0;

  bool operator==(const LocalState&) const = default;
};

/// Truncated product space of N ions, each carrying an internal level
/// (from a shared label list) and one local phonon mode with 0..n_max quanta.
///
/// Basis ordering is ion-major, then internal level, then phonon number:
///
///   index = sum_j local_j * stride(j),  local_j = level_j * (n_max+1) + n_j,
///   stride(j) = local_dim^(N-1-j)
///
/// so ion 0 is the most significant digit. Golden files rely on this.
class Basis {
 public:
  Basis(std::size_t n_ions, std::size_t n_max, std::vector<std::string> levels);

  std::size_t n_ions() const noexcept { return n_ions_; }
  std::size_t n_max() const noexcept { return n_max_; }
  std::size_t phonon_dim() const noexcept { return n_max_ + 1; }
  std::size_t n_levels() const noexcept { return levels_.size(); }
  std::size_t local_dim() const noexcept { return levels_.size() * (n_max_ + 1); }
  std::size_t dimension() const noexcept { return dimension_; }
  const std::vector<std::string>& levels() const noexcept { return levels_; }

  bool has_level(std::string_view label) const noexcept;
  /// Throws std::invalid_argument for unknown labels.
  std::size_t level(std::string_view label) const;

  std::size_t stride(std::size_t ion) const;
  std::size_t local_index(LocalState s) const noexcept {
    return s.level * (n_max_ + 1) + s.phonons;
  }
  std::size_t index(std::span<const LocalState> per_ion) const;
  LocalState local_state(std::size_t index, std::size_t ion) const;
  /// Index of the basis state that differs from `index` only on `ion`.
  std::size_t with_local(std::size_t index, std::size_t ion, LocalState s) const;
  /// Total phonon number of the basis state.
  std::size_t total_phonons(std::size_t index) const;

  void check_ion(std::size_t ion) const;

  bool operator==(const Basis& other) const {
    return n_ions_ == other.n_ions_ && n_max_ == other.n_max_ && levels_ == other.levels_;
  }

 private:
  std::size_t n_ions_;
  std::size_t n_max_;
  std::vector<std::string> levels_;
  std::vector<std::size_t> strides_;
  std::size_t dimension_;
};

using BasisPtr = std::shared_ptr<const Basis>;

/// Validated construction. Requires n_ions >= 1, n_max >= 1 and at least the
/// "down" and "up" labels; labels must be unique.
BasisPtr build_space(std::size_t n_ions, std::size_t n_max, std::vector<std::string> levels);

/// Level list {down, up, e0, ..., e_{n_aux-1}}.
std::vector<std::string> standard_levels(std::size_t n_aux);

}  // namespace phonoread

#endif  // PHONOREAD_BASIS_HPP
