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

#include "phonoread/basis.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace phonoread {

std::string aux_level(std::size_t i) { return "e" + std::to_string(i); }

std::vector<std::string> standard_levels(std::size_t n_aux) {
  std::vector<std::string> levels{std::string(kDown), std::string(kUp)};
  for (std::size_t i = 0; i < n_aux; ++i) levels.push_back(aux_level(i));
  return levels;
}

Basis::Basis(std::size_t n_ions, std::size_t n_max, std::vector<std::string> levels)
    : n_ions_(n_ions), n_max_(n_max), levels_(std::move(levels)) {
  if (n_ions_ == 0) throw std::invalid_argument("basis needs at least one ion");
  if (n_max_ == 0) throw std::invalid_argument("basis needs n_max >= 1");
  if (levels_.size() < 2) throw std::invalid_argument("basis needs at least two internal levels");
  std::set<std::string> seen;
  for (const auto& l : levels_) {
    if (l.empty()) throw std::invalid_argument("empty level label");
    if (!seen.insert(l).second) throw std::invalid_argument("duplicate level label '" + l + "'");
  }
  if (!has_level(kDown) || !has_level(kUp))
    throw std::invalid_argument("basis levels must include 'down' and 'up'");

  const std::size_t local = local_dim();
  strides_.assign(n_ions_, 1);
  dimension_ = 1;
  for (std::size_t j = n_ions_; j-- > 0;) {
    strides_[j] = dimension_;
    if (dimension_ > std::numeric_limits<std::size_t>::max() / local)
      throw std::invalid_argument("basis dimension overflows");
    dimension_ *= local;
  }
}

bool Basis::has_level(std::string_view label) const noexcept {
  return std::find(levels_.begin(), levels_.end(), label) != levels_.end();
}

std::size_t Basis::level(std::string_view label) const {
  auto it = std::find(levels_.begin(), levels_.end(), label);
  if (it == levels_.end())
    throw std::invalid_argument("unknown level label '" + std::string(label) + "'");
  return static_cast<std::size_t>(it - levels_.begin());
}

void Basis::check_ion(std::size_t ion) const {
  if (ion >= n_ions_)
    throw std::invalid_argument("ion index " + std::to_string(ion) + " out of range (n_ions=" +
                                std::to_string(n_ions_) + ")");
}

std::size_t Basis::stride(std::size_t ion) const {
  check_ion(ion);
  return strides_[ion];
}

std::size_t Basis::index(std::span<const LocalState> per_ion) const {
  if (per_ion.size() != n_ions_) throw std::invalid_argument("expected one local state per ion");
  std::size_t idx = 0;
  for (std::size_t j = 0; j < n_ions_; ++j) {
    const auto& s = per_ion[j];
    if (s.level >= levels_.size() || s.phonons > n_max_)
      throw std::invalid_argument("local state outside the truncated basis");
    idx += local_index(s) * strides_[j];
  }
  return idx;
}

LocalState Basis::local_state(std::size_t index, std::size_t ion) const {
  const std::size_t local = (index / strides_[ion]) % local_dim();
  return {local / (n_max_ + 1), local % (n_max_ + 1)};
}

std::size_t Basis::with_local(std::size_t index, std::size_t ion, LocalState s) const {
  const std::size_t old_local = (index / strides_[ion]) % local_dim();
  return index - old_local * strides_[ion] + local_index(s) * strides_[ion];
}

std::size_t Basis::total_phonons(std::size_t index) const {
  std::size_t n = 0;
  for (std::size_t j = 0; j < n_ions_; ++j) n += local_state(index, j).phonons;
  return n;
}

BasisPtr build_space(std::size_t n_ions, std::size_t n_max, std::vector<std::string> levels) {
  return std::make_shared<const Basis>(n_ions, n_max, std::move(levels));
}

}  // namespace phonoread
