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

#include "phonoread/operators.hpp"

#include <cmath>

namespace phonoread {

namespace {

using Triplet = Eigen::Triplet<Complex>;

double max_abs(const SparseMatrix& m) {
  double best = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) best = std::max(best, std::abs(it.value()));
  return best;
}

}  // namespace

OperatorMatrix::OperatorMatrix(BasisPtr basis, SparseMatrix matrix, bool hermitian)
    : basis_(std::move(basis)), m_(std::move(matrix)), hermitian_(hermitian) {
  if (!basis_) throw std::invalid_argument("null basis");
  const auto d = static_cast<Eigen::Index>(basis_->dimension());
  if (m_.rows() != d || m_.cols() != d)
    throw std::invalid_argument("operator dimensions do not match basis");
  m_.makeCompressed();
  if (hermitian_ && hermiticity_error() > kHermitianTolerance)
    throw std::invalid_argument("operator tagged Hermitian is not Hermitian");
}

OperatorMatrix OperatorMatrix::adjoint() const {
  SparseMatrix a = m_.adjoint();
  return OperatorMatrix(basis_, std::move(a), hermitian_);
}

double OperatorMatrix::hermiticity_error() const {
  SparseMatrix diff = m_ - SparseMatrix(m_.adjoint());
  return max_abs(diff);
}

OperatorMatrix OperatorMatrix::as_hermitian(double tolerance) const {
  if (hermiticity_error() > tolerance) throw std::invalid_argument("operator is not Hermitian");
  OperatorMatrix out = *this;
  out.hermitian_ = true;
  return out;
}

void OperatorMatrix::check_compatible(const OperatorMatrix& o) const {
  if (basis_ != o.basis_ && !(*basis_ == *o.basis_))
    throw std::invalid_argument("operators act on different bases");
}

OperatorMatrix OperatorMatrix::operator+(const OperatorMatrix& o) const {
  check_compatible(o);
  SparseMatrix s = m_ + o.m_;
  return OperatorMatrix(basis_, std::move(s), hermitian_ && o.hermitian_);
}

OperatorMatrix OperatorMatrix::operator-(const OperatorMatrix& o) const {
  check_compatible(o);
  SparseMatrix s = m_ - o.m_;
  return OperatorMatrix(basis_, std::move(s), hermitian_ && o.hermitian_);
}

OperatorMatrix OperatorMatrix::operator*(const OperatorMatrix& o) const {
  check_compatible(o);
  SparseMatrix p = m_ * o.m_;
  return OperatorMatrix(basis_, std::move(p), false);
}

OperatorMatrix OperatorMatrix::operator*(Complex s) const {
  SparseMatrix p = m_ * s;
  return OperatorMatrix(basis_, std::move(p), false);
}

OperatorMatrix OperatorMatrix::scaled(double s) const {
  SparseMatrix p = m_ * Complex(s);
  return OperatorMatrix(basis_, std::move(p), hermitian_);
}

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
  return a * b - b * a;
}

OperatorMatrix embed_local(const BasisPtr& basis, std::size_t ion,
                           const std::function<void(LocalState, std::vector<LocalEntry>&)>& local,
                           bool hermitian) {
  basis->check_ion(ion);
  // Gather the local matrix once, then replicate it over the other ions.
  std::vector<std::vector<LocalEntry>> columns(basis->local_dim());
  for (std::size_t l = 0; l < basis->n_levels(); ++l)
    for (std::size_t n = 0; n <= basis->n_max(); ++n) {
      LocalState col{l, n};
      local(col, columns[basis->local_index(col)]);
    }

  std::vector<Triplet> triplets;
  const std::size_t dim = basis->dimension();
  const std::size_t stride = basis->stride(ion);
  for (std::size_t i = 0; i < dim; ++i) {
    const LocalState col = basis->local_state(i, ion);
    for (const auto& e : columns[basis->local_index(col)]) {
      if (e.col != col) throw std::logic_error("local operator emitted an entry for the wrong column");
      if (e.row.level >= basis->n_levels() || e.row.phonons > basis->n_max()) continue;
      const std::size_t row = i - basis->local_index(col) * stride + basis->local_index(e.row) * stride;
      triplets.emplace_back(static_cast<int>(row), static_cast<int>(i), e.value);
    }
  }
  const auto d = static_cast<Eigen::Index>(dim);
  SparseMatrix m(d, d);
  m.setFromTriplets(triplets.begin(), triplets.end());
  return OperatorMatrix(basis, std::move(m), hermitian);
}

OperatorMatrix identity(const BasisPtr& basis) {
  const auto d = static_cast<Eigen::Index>(basis->dimension());
  SparseMatrix m(d, d);
  m.setIdentity();
  return OperatorMatrix(basis, std::move(m), true);
}

OperatorMatrix annihilation(const BasisPtr& basis, std::size_t ion) {
  return embed_local(basis, ion, [](LocalState c, std::vector<LocalEntry>& out) {
    if (c.phonons > 0)
      out.push_back({{c.level, c.phonons - 1}, c, std::sqrt(static_cast<double>(c.phonons))});
  });
}

OperatorMatrix creation(const BasisPtr& basis, std::size_t ion) {
  const std::size_t n_max = basis->n_max();
  return embed_local(basis, ion, [n_max](LocalState c, std::vector<LocalEntry>& out) {
    if (c.phonons < n_max)
      out.push_back({{c.level, c.phonons + 1}, c, std::sqrt(static_cast<double>(c.phonons + 1))});
  });
}

OperatorMatrix number(const BasisPtr& basis, std::size_t ion) {
  return embed_local(
      basis, ion,
      [](LocalState c, std::vector<LocalEntry>& out) {
        if (c.phonons > 0) out.push_back({c, c, static_cast<double>(c.phonons)});
      },
      true);
}

OperatorMatrix total_phonon_number(const BasisPtr& basis) {
  OperatorMatrix n = number(basis, 0);
  for (std::size_t j = 1; j < basis->n_ions(); ++j) n = n + number(basis, j);
  return n;
}

OperatorMatrix internal_coupling(const BasisPtr& basis, std::size_t ion, std::string_view from,
                                 std::string_view to) {
  const std::size_t f = basis->level(from);
  const std::size_t t = basis->level(to);
  if (f == t) throw std::invalid_argument("internal coupling needs two distinct levels");
  return embed_local(basis, ion, [f, t](LocalState c, std::vector<LocalEntry>& out) {
    if (c.level == f) out.push_back({{t, c.phonons}, c, 1.0});
  });
}

OperatorMatrix level_projector(const BasisPtr& basis, std::size_t ion, std::string_view level) {
  const std::size_t l = basis->level(level);
  return embed_local(
      basis, ion,
      [l](LocalState c, std::vector<LocalEntry>& out) {
        if (c.level == l) out.push_back({c, c, 1.0});
      },
      true);
}

}  // namespace phonoread
