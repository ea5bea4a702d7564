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

#include "qmm/linalg.h"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "qmm/error.h"

namespace qmm {

void validate_matrix(const DenseMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw Error(ErrorKind::kInvalidArgument, "matrix is empty");
  }
  if (!a.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument, "matrix has non-finite entries");
  }
}

SvdBundle compute_svd(const DenseMatrix& a) {
  validate_matrix(a);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  SvdBundle out;
  out.sigmas = svd.singularValues();
  out.left = svd.matrixU();
  out.right = svd.matrixV();
  out.gauge = "v-first-nonzero-real-positive";
  if (!out.sigmas.allFinite() || !out.left.allFinite() ||
      !out.right.allFinite()) {
    throw Error(ErrorKind::kNoConvergence, "SVD produced non-finite values");
  }
  for (Index i = 0; i < out.right.cols(); ++i) {
    auto v = out.right.col(i);
    const double scale = v.cwiseAbs().maxCoeff();
    for (Index k = 0; k < v.size(); ++k) {
      if (std::abs(v[k]) > 1e-12 * scale) {
        const Complex phase = std::conj(v[k]) / std::abs(v[k]);
        v *= phase;
        out.left.col(i) *= phase;
        break;
      }
    }
  }
  const Matrix rebuilt =
      out.left * out.sigmas.cast<Complex>().asDiagonal() * out.right.adjoint();
  const double tol = 1e-10 * std::max(1.0, a.norm());
  if (!((rebuilt - a).norm() <= tol)) {
    throw Error(ErrorKind::kNoConvergence, "SVD does not reconstruct input");
  }
  return out;
}

MatrixProfile matrix_profile(const DenseMatrix& a) {
  validate_matrix(a);
  MatrixProfile p;
  p.row_norms = a.rowwise().norm();
  p.col_norms = a.colwise().norm().transpose();
  p.frobenius = a.norm();
  p.row_norm_sum = p.row_norms.sum();
  p.col_norm_sum = p.col_norms.sum();
  p.col_norm_3norm = std::cbrt(p.col_norms.array().cube().sum());
  const RealVector s = Eigen::JacobiSVD<Matrix>(a).singularValues();
  p.sigma_max = s.size() > 0 ? s[0] : 0.0;
  const double cut = 1e-12 * std::max(1.0, p.sigma_max) *
                     static_cast<double>(std::max(a.rows(), a.cols()));
  for (Index k = 0; k < s.size(); ++k) {
    if (s[k] > cut) p.rank = static_cast<int>(k) + 1;
  }
  p.singular = p.rank < s.size();
  if (p.rank > 1 || (p.rank == 1 && !p.singular)) {
    p.sigma_min_nonzero = s[p.rank - 1];
    p.kappa = p.sigma_max / *p.sigma_min_nonzero;
  }
  return p;
}

DenseMatrix hermitian_dilation(const DenseMatrix& a) {
  validate_matrix(a);
  const Index m = a.rows(), n = a.cols();
  DenseMatrix d = DenseMatrix::Zero(m + n, m + n);
  d.topRightCorner(m, n) = a;
  d.bottomLeftCorner(n, m) = a.adjoint();
  return d;
}

DenseMatrix exact_product(const DenseMatrix& a, const DenseMatrix& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "cannot multiply " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " by " +
                    std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  DenseMatrix c = DenseMatrix::Zero(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < b.cols(); ++j) {
      Complex acc = 0.0;
      for (Index k = 0; k < a.cols(); ++k) acc += a(i, k) * b(k, j);
      c(i, j) = acc;
    }
  }
  return c;
}

DenseMatrix pad(const DenseMatrix& a, Index rows, Index cols) {
  if (rows < a.rows() || cols < a.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "padding cannot shrink");
  }
  DenseMatrix p = DenseMatrix::Zero(rows, cols);
  p.topLeftCorner(a.rows(), a.cols()) = a;
  return p;
}

VectorizedMatrix vectorize(const DenseMatrix& a, const std::string& row_reg,
                           const std::string& col_reg) {
  validate_matrix(a);
  const double f = a.norm();
  if (!(f > 0.0)) {
    throw Error(ErrorKind::kZeroVector, "cannot vectorize a zero matrix");
  }
  const int qr = qubits_for(a.rows()), qc = qubits_for(a.cols());
  Vector joint = Vector::Zero(pow2(qr + qc));
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      joint[(i << qc) | j] = a(i, j) / f;
    }
  }
  const MatrixProfile p = matrix_profile(a);
  return {Statevector({{row_reg, qr}, {col_reg, qc}}, std::move(joint)),
          Statevector::from_vector(row_reg, p.row_norms.cast<Complex>()),
          Statevector::from_vector(col_reg, p.col_norms.cast<Complex>())};
}

Matrix complete_unitary(const Vector& v) {
  const Index n = v.size();
  if (n == 0 || std::abs(v.norm() - 1.0) > 1e-10) {
    throw Error(ErrorKind::kNotNormalized, "column must be a unit vector");
  }
  const Complex alpha =
      std::abs(v[0]) > 0 ? v[0] / std::abs(v[0]) : Complex(1.0);
  Vector w = -std::conj(alpha) * v;
  w[0] += 1.0;
  const double w2 = w.squaredNorm();
  Matrix u = Matrix::Identity(n, n);
  if (w2 > 1e-30) u -= (2.0 / w2) * (w * w.adjoint());
  return alpha * u;
}

double subspace_distance(const Matrix& a, const Matrix& b) {
  return (a * a.adjoint() - b * b.adjoint()).norm();
}

}  // namespace qmm
