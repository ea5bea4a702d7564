// Copyright 2026 The qmm Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>

#include "qmm/statevector.h"
#include "qmm/types.h"

namespace qmm {

/// Rectangular matrix; real data is stored with zero imaginary parts.
using DenseMatrix = Matrix;

/// Throws kInvalidArgument on an empty or non-finite matrix.
void validate_matrix(const DenseMatrix& a);

struct MatrixProfile {
  double frobenius = 0.0;
  RealVector row_norms;
  RealVector col_norms;
  double sigma_max = 0.0;
  /// Absent for rank 0 and for singular rank-1 inputs.
  std::optional<double> sigma_min_nonzero;
  std::optional<double> kappa;
  int rank = 0;
  /// Some singular value is zero (rank < min(rows, cols)).
  bool singular = false;
  /// sum_i ||A_i.||, the 1-norm of the row-norm vector.
  double row_norm_sum = 0.0;
  /// sum_j ||A_.j||.
  double col_norm_sum = 0.0;
  /// (sum_j ||A_.j||^3)^{1/3}.
  double col_norm_3norm = 0.0;
};

struct SvdBundle {
  /// Nonincreasing, length min(rows, cols).
  RealVector sigmas;
  /// Columns u_i.
  Matrix left;
  /// Columns v_i.
  Matrix right;
  std::string gauge;
};

/// Singular triples with the first nonzero coordinate of each v_i made real
/// and positive (u_i rotated to match). Throws kNoConvergence if the
/// factorization is not finite or fails to reconstruct the input.
SvdBundle compute_svd(const DenseMatrix& a);

MatrixProfile matrix_profile(const DenseMatrix& a);

/// [[0, A], [A^dag, 0]].
DenseMatrix hermitian_dilation(const DenseMatrix& a);

/// Schoolbook triple loop.
DenseMatrix exact_product(const DenseMatrix& a, const DenseMatrix& b);

struct VectorizedMatrix {
  /// sum_ij a_ij |i, j> / ||A||_F on registers (row, col).
  Statevector joint;
  /// sum_i ||A_i.|| |i> / ||A||_F.
  Statevector rows;
  /// sum_j ||A_.j|| |j> / ||A||_F.
  Statevector cols;
};

/// Register dimensions are padded to powers of two. Throws kZeroVector for a
/// zero matrix.
VectorizedMatrix vectorize(const DenseMatrix& a,
                           const std::string& row_reg = "i",
                           const std::string& col_reg = "j");

/// Zero-pads to rows x cols.
DenseMatrix pad(const DenseMatrix& a, Index rows, Index cols);

/// A unitary whose first column is the unit vector v (Householder form).
Matrix complete_unitary(const Vector& v);

/// Distance between the column spans of two orthonormal bases, via
/// projectors; used when singular values are degenerate.
double subspace_distance(const Matrix& a, const Matrix& b);

}  // namespace qmm
