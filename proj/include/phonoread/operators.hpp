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

#ifndef PHONOREAD_OPERATORS_HPP
#define PHONOREAD_OPERATORS_HPP

#include <Eigen/Sparse>
#include <functional>
#include <optional>
#include <string_view>

#include "phonoread/state.hpp"

namespace phonoread {

using SparseMatrix = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

inline constexpr double kHermitianTolerance = 1e-12;

/// Sparse operator on a Basis. When constructed with hermitian=true the
/// matrix is checked against its adjoint.
class OperatorMatrix {
 public:
  OperatorMatrix(BasisPtr basis, SparseMatrix matrix, bool hermitian = false);

  const Basis& basis() const noexcept { return *basis_; }
  const BasisPtr& basis_ptr() const noexcept { return basis_; }
  const SparseMatrix& matrix() const noexcept { return m_; }
  bool hermitian() const noexcept { return hermitian_; }

  OperatorMatrix adjoint() const;
  double hermiticity_error() const;
  /// Re-tag as Hermitian; throws if it is not within tolerance.
  OperatorMatrix as_hermitian(double tolerance = kHermitianTolerance) const;

  Eigen::VectorXcd apply(const Eigen::VectorXcd& v) const { return m_ * v; }
  Eigen::VectorXcd apply(const StateVector& s) const { return m_ * s.amplitudes(); }

  OperatorMatrix operator+(const OperatorMatrix& o) const;
  OperatorMatrix operator-(const OperatorMatrix& o) const;
  OperatorMatrix operator*(const OperatorMatrix& o) const;
  OperatorMatrix operator*(Complex s) const;
  /// Real scaling keeps the Hermitian tag.
  OperatorMatrix scaled(double s) const;

 private:
  void check_compatible(const OperatorMatrix& o) const;

  BasisPtr basis_;
  SparseMatrix m_;
  bool hermitian_;
};

OperatorMatrix commutator(const OperatorMatrix& a, const OperatorMatrix& b);

/// Entry of a single-ion operator: <row| op |col> = value over the local
/// (level, phonon) factor.
struct LocalEntry {
  LocalState row;
  LocalState col;
  Complex value;
};

/// Lifts a local operator to the full space (identity on the other ions).
/// `local` is called once per local basis state `col` and yields the
/// non-zero column entries.
OperatorMatrix embed_local(const BasisPtr& basis, std::size_t ion,
                           const std::function<void(LocalState col, std::vector<LocalEntry>& out)>& local,
                           bool hermitian = false);

OperatorMatrix identity(const BasisPtr& basis);
/// a|n> = sqrt(n)|n-1> on `ion`'s mode.
OperatorMatrix annihilation(const BasisPtr& basis, std::size_t ion);
/// a^dag|n> = sqrt(n+1)|n+1>, and a^dag|n_max> = 0 (hard cutoff).
OperatorMatrix creation(const BasisPtr& basis, std::size_t ion);
OperatorMatrix number(const BasisPtr& basis, std::size_t ion);
OperatorMatrix total_phonon_number(const BasisPtr& basis);
/// |to><from| on the internal factor of `ion`.
OperatorMatrix internal_coupling(const BasisPtr& basis, std::size_t ion, std::string_view from,
                                 std::string_view to);
/// Projector onto internal `level` of `ion` (any phonon number).
OperatorMatrix level_projector(const BasisPtr& basis, std::size_t ion, std::string_view level);

}  // namespace phonoread

#endif  // PHONOREAD_OPERATORS_HPP
