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

#include "qmm/swap_test.h"

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qmm/error.h"

namespace qmm {
namespace {

StatePreparer prep(const testing::RVec& v) {
  return StatePreparer::from_vector(v.cast<Complex>());
}

TEST(StatePreparer, UnitaryPreparesState) {
  const StatePreparer p = prep(testing::random_vector(5, 3));
  const Matrix u = p.unitary();
  EXPECT_EQ(p.dimension(), 8);
  EXPECT_LT((u.col(0) - p.state()).norm(), 1e-10);
  EXPECT_LT((u.adjoint() * u - Matrix::Identity(8, 8)).norm(), 1e-10);
  EXPECT_THROW(StatePreparer::from_vector(Vector::Zero(4)), Error);
}

TEST(InnerProduct, EqualStates) {
  const StatePreparer p = prep(testing::random_vector(4, 1));
  const SwapEstimate e = inner_product_estimate(p, p, 0.05);
  EXPECT_NEAR(e.value, 1.0, 0.05);
}

TEST(InnerProduct, OrthogonalStates) {
  testing::RVec x(4), y(4);
  x << 1, 1, 0, 0;
  y << 1, -1, 0, 0;
  const SwapEstimate e = inner_product_estimate(prep(x), prep(y), 0.05);
  EXPECT_NEAR(e.value, 0.0, 0.05);
}

TEST(InnerProduct, RandomPairAgainstDirectDot) {
  const testing::RVec x = testing::random_unit(8, 21);
  const testing::RVec y = testing::random_unit(8, 22);
  const double eps = std::ldexp(1.0, -8);
  const SwapEstimate e = inner_product_estimate(prep(x), prep(y), eps);
  double dot = 0.0;
  for (int k = 0; k < 8; ++k) dot += x[k] * y[k];
  EXPECT_LE(std::abs(e.value - dot), eps);
  EXPECT_EQ(e.phase_bits, 12);
  // Ledger: one preparation plus 2^t - 1 controlled G (two calls each).
  EXPECT_EQ(e.ledger.oracle_calls, 1u);
  EXPECT_EQ(e.ledger.controlled_oracle_calls, 2u * ((1u << 12) - 1));
}

TEST(InnerProduct, AntipodalStates) {
  const testing::RVec x = testing::random_unit(4, 5);
  const SwapEstimate e = inner_product_estimate(prep(x), prep(-x), 0.05);
  EXPECT_NEAR(e.value, -1.0, 0.05);
}

TEST(InnerProduct, BiasWithinGridResolution) {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const testing::RVec x = testing::random_unit(4, seed);
    const testing::RVec y = testing::random_unit(4, seed + 1000);
    for (int t : {4, 6, 8, 10}) {
      SwapOptions opts;
      opts.phase_bits = t;
      const SwapEstimate e = inner_product_estimate(prep(x), prep(y), 0.1, opts);
      EXPECT_LE(std::abs(e.value - x.dot(y)), kPi / std::ldexp(1.0, t) + 1e-12)
          << seed << " " << t;
    }
  }
}

TEST(InnerProduct, HalvingEpsNeverIncreasesError) {
  for (std::uint64_t seed = 50; seed < 60; ++seed) {
    const testing::RVec x = testing::random_unit(4, seed);
    const testing::RVec y = testing::random_unit(4, seed + 1000);
    double last = 1e9;
    for (double eps = 0.25; eps >= std::ldexp(1.0, -8); eps /= 2) {
      const double err =
          std::abs(inner_product_estimate(prep(x), prep(y), eps).value - x.dot(y));
      EXPECT_LE(err, last + 1e-15) << seed << " eps " << eps;
      last = err;
    }
  }
}

TEST(InnerProduct, DimensionMismatch) {
  EXPECT_THROW(inner_product_estimate(prep(testing::RVec::Ones(2)),
                                      prep(testing::RVec::Ones(4)), 0.1),
               Error);
}

TEST(ComplexInnerProduct, ImaginaryMultiple) {
  const Vector x = testing::random_unit(4, 8).cast<Complex>();
  const StatePreparer px = StatePreparer::from_vector(x);
  const StatePreparer py = StatePreparer::from_vector(Complex(0, 1) * x);
  const double eps = 0.02;
  const ComplexEstimate e = complex_inner_product(px, py, eps);
  const Complex direct = x.dot(Complex(0, 1) * x);  // sum conj(x) (i x) = i
  EXPECT_NEAR(e.value.real(), direct.real(), eps);
  EXPECT_NEAR(e.value.imag(), direct.imag(), eps);
  EXPECT_NEAR(direct.imag(), 1.0, 1e-15);
}

TEST(ComplexInnerProduct, RealEqualStates) {
  const StatePreparer p = prep(testing::random_vector(4, 9));
  const ComplexEstimate e = complex_inner_product(p, p, 0.02);
  EXPECT_NEAR(e.value.imag(), 0.0, 0.02);
  EXPECT_NEAR(e.value.real(), 1.0, 0.02);
}

TEST(ComplexInnerProduct, OrthogonalComplexPair) {
  Vector x = testing::random_vector(4, 4).cast<Complex>() +
             Complex(0, 1) * testing::random_vector(4, 40).cast<Complex>();
  Vector y = testing::random_vector(4, 41).cast<Complex>() +
             Complex(0, 1) * testing::random_vector(4, 42).cast<Complex>();
  x /= x.norm();
  y -= x.dot(y) * x;
  y /= y.norm();
  const double eps = 0.02;
  const ComplexEstimate e = complex_inner_product(StatePreparer::from_vector(x),
                                                  StatePreparer::from_vector(y), eps);
  EXPECT_LE(std::abs(x.dot(y)), 1e-14);
  EXPECT_NEAR(e.value.real(), 0.0, eps);
  EXPECT_NEAR(e.value.imag(), 0.0, eps);
}

TEST(GeneralizedSwapTest, EqualStatesTagOne) {
  const StatePreparer p = prep(testing::random_vector(2, 2));
  const SwapTagResult r =
      generalized_swap_test(p, p, [](double s) { return s; }, 0.2);
  EXPECT_NEAR(r.modal_tag, 1.0, 0.2);
  // x = y keeps the control state exactly: phi is a G eigenvector.
  EXPECT_NEAR(r.control_fidelity, 1.0, 1e-10);
  EXPECT_NEAR(r.fidelity_to_ideal, 1.0, 1e-10);
}

TEST(GeneralizedSwapTest, OrthogonalSquare) {
  testing::RVec x(2), y(2);
  x << 1, 0;
  y << 0, 1;
  const SwapTagResult r =
      generalized_swap_test(prep(x), prep(y), [](double s) { return s * s; }, 0.2);
  EXPECT_NEAR(r.modal_tag, 0.0, 0.2);
}

TEST(GeneralizedSwapTest, RandomPairTagWithinEps) {
  const testing::RVec x = testing::random_unit(4, 8);
  const testing::RVec y = testing::random_unit(4, 80);
  const double eps = std::ldexp(1.0, -6);
  const SwapTagResult r =
      generalized_swap_test(prep(x), prep(y), [](double s) { return s; }, eps);
  EXPECT_LE(std::abs(r.modal_tag - x.dot(y)), eps);
  EXPECT_NEAR(r.state.amplitudes().norm(), 1.0, 1e-10);
  std::printf("control fidelity %.6f  ideal fidelity %.6f  phase return %.6f\n",
              r.control_fidelity, r.fidelity_to_ideal, r.phase_return_probability);
  RecordProperty("control_fidelity", std::to_string(r.control_fidelity));
}

TEST(CoefficientTag, BasisState) {
  const StatePreparer psi = StatePreparer::from_vector(Vector::Unit(8, 5));
  const CoefficientTagResult r =
      coefficient_tag(psi, [](double s) { return s; }, 0.2);
  EXPECT_NEAR(r.tags[5], 1.0, 0.2);
  EXPECT_NEAR(r.state.marginal("j")[5], 1.0, 1e-12);
  const Index code = FixedPoint::for_phase_bits(r.phase_bits).encode(r.tags[5]);
  EXPECT_NEAR(std::norm(r.state.amplitudes()[(5 << r.phase_bits) | code]), 1.0,
              1e-10);
}

TEST(CoefficientTag, UniformAmplitudes) {
  const StatePreparer psi = StatePreparer::from_vector(Vector::Ones(4));
  const double eps = std::ldexp(1.0, -6);
  const CoefficientTagResult r =
      coefficient_tag(psi, [](double s) { return s; }, eps);
  for (Index j = 0; j < 4; ++j) EXPECT_NEAR(r.tags[j], 0.5, eps);
}

TEST(CoefficientTag, RandomAmplitudes) {
  const testing::RVec a = testing::random_unit(4, 30);
  const double eps = std::ldexp(1.0, -7);
  SwapOptions opts;
  opts.guard_bits = 1;
  const CoefficientTagResult r =
      coefficient_tag(prep(a), [](double s) { return s; }, eps, opts);
  for (Index j = 0; j < 4; ++j) EXPECT_LE(std::abs(r.tags[j] - a[j]), eps) << j;
}

}  // namespace
}  // namespace qmm
