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


#include "qmm/matmul.h"

#include <cmath>
#include <functional>
#include <numeric>
#include <tuple>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qmm/error.h"

namespace qmm {
namespace {

Matrix cx(const testing::RMat& m) { return m.cast<Complex>(); }

// |AB> from the naive product oracle, flattened row-major over padded
// registers.
Vector product_state(const testing::RMat& a, const testing::RMat& b) {
  const testing::RMat c = testing::naive_product(a, b);
  const int qi = qubits_for(c.rows()), qj = qubits_for(c.cols());
  Vector v = Vector::Zero(pow2(qi + qj));
  for (Index i = 0; i < c.rows(); ++i) {
    for (Index j = 0; j < c.cols(); ++j) v[(i << qj) | j] = c(i, j);
  }
  return v / v.norm();
}

double distance(const Statevector& s, const Vector& target) {
  const Complex inner = target.dot(s.amplitudes());
  const Complex phase = std::abs(inner) > 0 ? inner / std::abs(inner) : 1.0;
  return (s.amplitudes() - phase * target).norm();
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::kInvalidArgument;
}

// --- SVE operators ---------------------------------------------------------

TEST(SveOperators, IsometriesAndBlockEncoding) {
  for (auto [rows, cols, seed] : std::vector<std::tuple<int, int, int>>{
           {2, 2, 1}, {3, 3, 2}, {4, 4, 3}, {3, 5, 4}, {8, 8, 5}}) {
    const testing::RMat a = testing::random_matrix(rows, cols, seed);
    const SVEOperators ops = sve_operators(cx(a));
    const Index p = pow2(ops.qubits);
    const Matrix id = Matrix::Identity(p, p);
    EXPECT_LT((ops.iso_m.adjoint() * ops.iso_m - id).norm(), 1e-10);
    EXPECT_LT((ops.iso_n.adjoint() * ops.iso_n - id).norm(), 1e-10);
    Matrix expected = Matrix::Zero(p, p);
    expected.topLeftCorner(rows, cols) = cx(a) / a.norm();
    EXPECT_LT((ops.iso_m.adjoint() * ops.iso_n - expected).norm(), 1e-10);
  }
}

TEST(SveOperators, WalkRotatesEachSingularPlane) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 2 + static_cast<int>(seed % 5);
    const testing::RMat a = testing::random_matrix(n, n, 500 + seed);
    const testing::JacobiSvd svd = testing::jacobi_svd(a);
    const SVEOperators ops = sve_operators(cx(a));
    const Index p = pow2(ops.qubits);
    for (Index i = 0; i < n; ++i) {
      Vector u = Vector::Zero(p), v = Vector::Zero(p);
      u.head(n) = svd.u.col(i).cast<Complex>();
      v.head(n) = svd.v.col(i).cast<Complex>();
      Matrix plane(p * p, 2);
      plane.col(0) = ops.iso_m * u;
      plane.col(1) = ops.iso_n * v;
      const Eigen::HouseholderQR<Matrix> qr(plane);
      const Matrix q = qr.householderQ() * Matrix::Identity(p * p, 2);
      // Invariance: W maps the plane into itself.
      const Matrix wq = ops.walk * q;
      EXPECT_LT((wq - q * (q.adjoint() * wq)).norm(), 1e-10);
      const Eigen::ComplexEigenSolver<Matrix> es(q.adjoint() * wq);
      for (Index k = 0; k < 2; ++k) {
        const double theta = std::abs(std::arg(es.eigenvalues()[k]));
        EXPECT_NEAR(std::cos(theta / 2), svd.s[i] / a.norm(), 1e-8);
      }
    }
  }
}

TEST(SveOperators, ZeroMatrix) {
  EXPECT_EQ(kind_of([] { sve_operators(Matrix::Zero(2, 2)); }),
            ErrorKind::kZeroVector);
}

// --- sve_transform ---------------------------------------------------------

// Probability, within component u, of sigma codes decoding within tol of s.
double component_mass(const SveResult& r, const Vector& u, double s,
                      double tol) {
  const Index codes = r.state.reg("sigma").dimension();
  const Index rows = r.state.reg("r").dimension();
  double total = 0.0, near = 0.0;
  for (Index code = 0; code < codes; ++code) {
    Complex amp = 0.0;
    for (Index i = 0; i < rows; ++i) {
      amp += std::conj(u[i]) * r.state.amplitudes()[i * codes + code];
    }
    const double w = std::norm(amp);
    total += w;
    if (std::abs(r.encoding.decode(code) * r.scale - s) <= tol) near += w;
  }
  return near / total;
}

TEST(SveTransform, DiagonalMatrix) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  const SveResult r =
      sve_transform(a, Statevector::basis({{"c", 1}}, 0), 0.05);
  const RealVector rows = r.state.marginal("r");
  EXPECT_NEAR(rows[0], 1.0, 1e-10);
  EXPECT_GE(component_mass(r, Vector::Unit(2, 0), 1.0, 0.05), 0.95);
}

TEST(SveTransform, ScaledRotationPhasesMatchWalkEigenvalues) {
  const double phi = 0.4;
  testing::RMat rot(2, 2);
  rot << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
  const testing::RMat a = rot / std::sqrt(2.0);
  const SVEOperators ops = sve_operators(cx(a));
  // Oracle: eigenphases of W restricted to the plane of M|u>, N|v>, where
  // the restriction has distinct eigenvalues e^{+-i theta}.
  const Vector v = Vector::Unit(2, 0);
  const Vector u = cx(a) * v / (cx(a) * v).norm();
  const Vector nv = ops.iso_n * v;
  Matrix plane(4, 2);
  plane.col(0) = ops.iso_m * u;
  plane.col(1) = nv;
  const Eigen::HouseholderQR<Matrix> qr(plane);
  const Matrix q = qr.householderQ() * Matrix::Identity(4, 2);
  const Eigen::ComplexEigenSolver<Matrix> es(q.adjoint() * ops.walk * q);
  const int t = 6;
  Statevector s({{"r", 1}, {"c", 1}}, nv);
  s = phase_estimate(ops.w, s, PhaseConfig::from_bits(t));
  const RealVector marginal = s.marginal("phase");
  // cos(theta/2) = sigma / ||A||_F = 1/sqrt(2) puts every phase on the grid;
  // the eigenspaces are degenerate, so weights are binned per grid point.
  RealVector expected = RealVector::Zero(64);
  for (Index k = 0; k < 2; ++k) {
    const double weight = std::norm((q * es.eigenvectors().col(k)).dot(nv));
    if (weight < 1e-9) continue;
    double lambda = std::arg(es.eigenvalues()[k]);
    if (lambda < 0) lambda += 2 * kPi;
    EXPECT_NEAR(std::abs(std::cos(lambda / 2)), 1 / std::sqrt(2.0), 1e-10);
    expected[std::llround(lambda / (2 * kPi) * 64) % 64] += weight;
  }
  EXPECT_LT((marginal - expected).norm(), 1e-10);
  const SveResult r = sve_transform(cx(a), Statevector::basis({{"c", 1}}, 1), 0.05);
  const testing::JacobiSvd svd = testing::jacobi_svd(a);
  EXPECT_GE(component_mass(r, svd.u.col(1).cast<Complex>(), svd.s[1], 0.05), 0.95);
}

TEST(SveTransform, RandomMatrixPerComponentAccuracy) {
  const double eps = 0.05;
  const testing::RMat a = testing::random_matrix(4, 4, 19);
  const testing::JacobiSvd svd = testing::jacobi_svd(a);
  const testing::RVec alpha = testing::random_unit(4, 190);
  const Vector input = (svd.v * alpha).cast<Complex>();
  const SveResult r = sve_transform(cx(a), Statevector({{"c", 2}}, input), eps);
  EXPECT_LE(r.epsilon, eps);
  for (Index i = 0; i < 4; ++i) {
    const double mass =
        component_mass(r, svd.u.col(i).cast<Complex>(), svd.s[i], eps * a.norm());
    EXPECT_GE(mass, 8 / (kPi * kPi)) << "component " << i;
  }
}

// --- swap-test pipeline ----------------------------------------------------

TEST(MatmulSwaptest, IdentitySquared) {
  const Matrix id = Matrix::Identity(2, 2);
  const PipelineResult r = matmul_swaptest(id, id, 0.05);
  Vector target = Vector::Zero(4);
  target[0] = target[3] = 1 / std::sqrt(2.0);
  EXPECT_LE(distance(r.state.state, target), r.predicted_bound);
  EXPECT_LE(r.realized_error, r.predicted_bound);
  EXPECT_DOUBLE_EQ(r.formula_probability, 0.5);
  EXPECT_NEAR(r.state.success_probability / 0.5, 1.0, 0.05);
}

TEST(MatmulSwaptest, RandomTimesIdentityIsVectorization) {
  const testing::RMat a = testing::random_matrix(4, 4, 2);
  const testing::RMat id = testing::RMat::Identity(4, 4);
  const PipelineResult r = matmul_swaptest(cx(a), cx(id), 0.05);
  EXPECT_LE(distance(r.state.state, product_state(a, id)), r.predicted_bound);
  EXPECT_LE(r.predicted_bound, 0.05);
}

TEST(MatmulSwaptest, Errors) {
  Matrix n = Matrix::Zero(2, 2);
  n(0, 1) = 1.0;
  EXPECT_EQ(kind_of([&] { matmul_swaptest(n, n, 0.05); }), ErrorKind::kZeroProduct);
  EXPECT_EQ(kind_of([] {
              matmul_swaptest(Matrix::Identity(2, 3), Matrix::Identity(2, 2), 0.05);
            }),
            ErrorKind::kDimensionMismatch);
  Matrix z = Matrix::Identity(2, 2);
  z(0, 0) = Complex(0.0, 1.0);
  EXPECT_EQ(kind_of([&] { matmul_swaptest(z, z, 0.05); }),
            ErrorKind::kInvalidArgument);
}

TEST(MatmulSwaptest, ErrorBoundAndProbability) {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const testing::RMat a = testing::random_matrix(4, 4, 40 + seed);
    const testing::RMat b = testing::random_matrix(4, 4, 80 + seed);
    const double ratio = std::pow(a.norm() * b.norm() /
                                      testing::naive_product(a, b).norm(), 2);
    for (int t : {8, 10}) {
      PipelineOptions opts;
      opts.phase_bits = t;
      const PipelineResult r = matmul_swaptest(cx(a), cx(b), 0.05, opts);
      const double e = kPi / std::ldexp(1.0, t);
      const double bound2 = 2 * ratio * e * e + 2 * ratio * ratio * e * e;
      const double err = distance(r.state.state, product_state(a, b));
      EXPECT_LE(err * err, bound2);
      EXPECT_NEAR(r.state.success_probability * ratio, 1.0, 0.05);
      EXPECT_EQ(r.ledger.amplification_rounds,
                amplification_rounds_for(r.state.success_probability));
    }
  }
}

TEST(MatmulSwaptest, RectangularFactors) {
  const testing::RMat a = testing::random_matrix(3, 2, 61);
  const testing::RMat b = testing::random_matrix(2, 5, 62);
  const PipelineResult r = matmul_swaptest(cx(a), cx(b), 0.05);
  EXPECT_LE(distance(r.state.state, product_state(a, b)), r.predicted_bound);
}

TEST(MatmulSwaptest, LedgerSlopeAgainstInverseEpsilon) {
  const testing::RMat a = testing::random_matrix(4, 4, 3);
  const testing::RMat b = testing::random_matrix(4, 4, 4);
  PipelineOptions opts;
  opts.exact_phase = true;
  std::vector<double> x, y;
  for (int k = 4; k <= 8; ++k) {
    const double eps = std::ldexp(1.0, -k);
    const PipelineResult r = matmul_swaptest(cx(a), cx(b), eps, opts);
    x.push_back(std::log(1 / eps));
    y.push_back(std::log(static_cast<double>(r.ledger.total_queries())));
  }
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / x.size();
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / y.size();
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  EXPECT_NEAR(sxy / sxx, 1.0, 0.15);
}

// --- rank one and LCU ------------------------------------------------------

TEST(RankOneProduct, BasisStates) {
  const PipelineResult r =
      rank_one_product(Vector::Unit(2, 0), Vector::Unit(2, 0), 0.05);
  EXPECT_NEAR(std::abs(r.state.state.amplitudes()[0]), 1.0, 1e-12);
}

TEST(RankOneProduct, OuterProductAmplitudes) {
  Vector a(2), b(2);
  a << 0.6, 0.8;
  b << 1.0, 0.0;
  const PipelineResult r = rank_one_product(a, b, 0.05);
  const Vector& s = r.state.state.amplitudes();
  const Complex phase = s[0] / std::abs(s[0]);
  EXPECT_LT((s / phase - Vector{{0.6, 0.0, 0.8, 0.0}}).norm(), 1e-12);
}

TEST(RankOneProduct, RandomPairAndRatioFreeLedger) {
  const double eps = 0.05;
  const testing::RVec a = testing::random_vector(4, 6), b = testing::random_vector(4, 66);
  const PipelineResult r = rank_one_product(a.cast<Complex>(), b.cast<Complex>(), eps);
  testing::RMat outer = a * b.transpose();
  const Vector target = product_state(outer, testing::RMat::Identity(4, 4));
  EXPECT_GE(std::abs(target.dot(r.state.state.amplitudes())), 1 - eps);
  const PipelineResult other = rank_one_product(
      (10 * testing::random_vector(4, 7)).cast<Complex>(),
      testing::random_vector(4, 77).cast<Complex>(), eps);
  EXPECT_EQ(r.ledger.total_queries(), other.ledger.total_queries());
  EXPECT_THROW(rank_one_product(Vector::Zero(2), Vector::Ones(2), eps), Error);
}

TEST(MatmulLcu, IdentitySquared) {
  const Matrix id = Matrix::Identity(2, 2);
  const PipelineResult r = matmul_lcu(id, id, 0.05);
  EXPECT_LE(r.realized_error, 0.05);
}

TEST(MatmulLcu, SingleTermReducesToRankOne) {
  const testing::RVec av = testing::random_vector(3, 8), bv = testing::random_vector(3, 9);
  testing::RMat a = testing::RMat::Zero(3, 3), b = testing::RMat::Zero(3, 3);
  a.col(0) = av;
  b.row(0) = bv.transpose();
  const PipelineResult lcu = matmul_lcu(cx(a), cx(b), 0.05);
  const PipelineResult one = rank_one_product(av.cast<Complex>(), bv.cast<Complex>(), 0.05);
  EXPECT_LT(distance(lcu.state.state, one.state.state.amplitudes()), 1e-12);
  EXPECT_EQ(lcu.ledger.total_queries(), one.ledger.total_queries());
}

TEST(MatmulLcu, RandomPairCheaperThanSwapTest) {
  const double eps = 0.05;
  const testing::RMat a = testing::random_matrix(4, 4, 12);
  const testing::RMat b = testing::random_matrix(4, 4, 112);
  const PipelineResult lcu = matmul_lcu(cx(a), cx(b), eps);
  const PipelineResult swap = matmul_swaptest(cx(a), cx(b), eps);
  EXPECT_GE(std::abs(product_state(a, b).dot(lcu.state.state.amplitudes())), 1 - eps);
  EXPECT_LE(lcu.ledger.total_queries(), swap.ledger.total_queries());
  EXPECT_THROW(matmul_lcu(Matrix::Ones(1, 2), Matrix::Ones(2, 1), eps), Error);
}

// --- SVE and HHL pipelines -------------------------------------------------

TEST(MatmulSve, IdentitySquared) {
  const Matrix id = Matrix::Identity(2, 2);
  const PipelineResult r = matmul_sve(id, id, 0.05);
  EXPECT_LE(r.realized_error, r.predicted_bound);
  EXPECT_NEAR(r.state.success_probability, 1.0, 0.05);
}

TEST(MatmulSve, DiagonalProbabilityFormula) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 0.5;
  const PipelineResult r = matmul_sve(a, Matrix::Identity(2, 2), 0.05);
  EXPECT_DOUBLE_EQ(r.formula_probability, 1.25 / 2.0);
  EXPECT_NEAR(r.state.success_probability / r.formula_probability, 1.0, 0.05);
  EXPECT_LE(r.realized_error, r.predicted_bound);
}

TEST(MatmulSve, RandomWellConditionedWithinBound) {
  const testing::RMat a = testing::conditioned_matrix(4, 3.0, 23);
  const testing::RMat b = testing::random_matrix(4, 4, 123);
  const PipelineResult r = matmul_sve(cx(a), cx(b), 0.05);
  EXPECT_LE(distance(r.state.state, product_state(a, b)), r.predicted_bound);
  EXPECT_LE(r.realized_error, 0.05);
  EXPECT_NEAR(r.state.success_probability / r.formula_probability, 1.0, 0.05);
}

TEST(MatmulSve, SupportCheck) {
  Matrix a = Matrix::Zero(2, 2);
  a(0, 0) = 1.0;
  const Matrix id = Matrix::Identity(2, 2);
  const PipelineResult lenient = matmul_sve(a, id, 0.05);
  EXPECT_FALSE(lenient.support_ok);
  EXPECT_EQ(lenient.warnings.size(), 1u);
  EXPECT_NEAR(support_residual(a, id), 1 / std::sqrt(2.0), 1e-12);
  PipelineOptions strict;
  strict.strict_support = true;
  EXPECT_EQ(kind_of([&] { matmul_sve(a, id, 0.05, strict); }),
            ErrorKind::kSupportViolation);
  EXPECT_EQ(kind_of([&] { matmul_hhl(a, id, 0.05, strict); }),
            ErrorKind::kSupportViolation);
  EXPECT_TRUE(matmul_sve(id, id, 0.05).support_ok);
}

TEST(MatmulHhl, IdentityLeavesInputUnchanged) {
  const testing::RVec col = testing::random_unit(2, 5);
  const Matrix b = col.cast<Complex>();
  const PipelineResult r = matmul_hhl(Matrix::Identity(2, 2), b, 0.05);
  EXPECT_LE(r.realized_error, r.predicted_bound);
  EXPECT_LE(r.realized_error, 0.05);
}

TEST(MatmulHhl, DiagonalReweightsComponents) {
  testing::RMat a = testing::RMat::Zero(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 0.5;
  testing::RMat b(2, 1);
  b << 1.0, 1.0;
  const PipelineResult r = matmul_hhl(cx(a), cx(b), 0.05);
  // Direct formula: (1 * 1, 0.5 * 1) normalized.
  Vector direct = Vector::Zero(2);
  direct << 1.0, 0.5;
  direct /= direct.norm();
  EXPECT_LE(distance(r.state.state, direct), r.predicted_bound);
  EXPECT_NEAR(r.state.success_probability, 1.25 / 2.0, 0.05);
}

TEST(MatmulHhl, RandomWithinSpectralBound) {
  const testing::RMat a = testing::conditioned_matrix(4, 3.0, 27);
  const testing::RMat b = testing::random_matrix(4, 4, 127);
  const PipelineResult r = matmul_hhl(cx(a), cx(b), 0.05);
  EXPECT_LE(distance(r.state.state, product_state(a, b)), r.predicted_bound);
  const MatrixProfile p = matrix_profile(cx(a));
  EXPECT_DOUBLE_EQ(r.predicted_bound, sve_bound(cx(a), cx(b), r.epsilon, p.sigma_max));
}

TEST(Pipelines, ExactPhaseModeReproducesProduct) {
  PipelineOptions opts;
  opts.exact_phase = true;
  std::vector<std::pair<testing::RMat, testing::RMat>> fixtures{
      {testing::RMat::Identity(2, 2), testing::RMat::Identity(2, 2)},
      {testing::random_matrix(4, 4, 1), testing::random_matrix(4, 4, 2)},
      {testing::random_matrix(3, 2, 3), testing::random_matrix(2, 5, 4)},
      {testing::conditioned_matrix(4, 10.0, 5), testing::random_matrix(4, 3, 6)},
  };
  for (const auto& [a, b] : fixtures) {
    const Vector target = product_state(a, b);
    for (const PipelineResult& r :
         {matmul_swaptest(cx(a), cx(b), 0.05, opts), matmul_lcu(cx(a), cx(b), 0.05, opts),
          matmul_sve(cx(a), cx(b), 0.05, opts), matmul_hhl(cx(a), cx(b), 0.05, opts)}) {
      EXPECT_LT(distance(r.state.state, target), 1e-10);
    }
  }
}

}  // namespace
}  // namespace qmm
