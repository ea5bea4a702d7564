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

#include "qmm/statevector.h"

#include <cmath>
#include <complex>

#include <gtest/gtest.h>

#include "oracles.h"
#include "qmm/error.h"
#include "qmm/linalg.h"

namespace qmm {
namespace {

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix hadamard() {
  Matrix m(2, 2);
  m << 1, 1, 1, -1;
  return m / std::sqrt(2.0);
}

Matrix random_unitary(Index n, std::uint64_t seed) {
  const Matrix g = testing::random_matrix(n, n, seed).cast<Complex>() +
                   Complex(0, 1) * testing::random_matrix(n, n, seed + 1).cast<Complex>();
  return Eigen::HouseholderQR<Matrix>(g).householderQ() * Matrix::Identity(n, n);
}

Statevector random_state(Layout layout, std::uint64_t seed) {
  int q = 0;
  for (const auto& r : layout) q += r.qubits;
  Vector v = testing::random_vector(pow2(q), seed).cast<Complex>() +
             Complex(0, 1) * testing::random_vector(pow2(q), seed + 7).cast<Complex>();
  return Statevector(std::move(layout), v / v.norm());
}

TEST(Statevector, RejectsBadNormAndBudget) {
  EXPECT_THROW(Statevector({{"a", 1}}, Vector::Ones(2)), Error);
  try {
    Statevector::zero({{"a", 20}, {"b", 10}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kQubitBudget);
  }
  EXPECT_THROW(Statevector::zero({{"a", 1}, {"a", 1}}), Error);
}

TEST(ApplyUnitary, BitFlip) {
  const Statevector s = Statevector::zero({{"q", 1}});
  const Statevector out = apply_unitary(s, Operator::dense({"q"}, pauli_x()));
  EXPECT_EQ(out.amplitudes()[1], Complex(1.0));
  EXPECT_EQ(out.amplitudes()[0], Complex(0.0));
}

TEST(ApplyUnitary, IdentityIsBitExact) {
  const Statevector s = random_state({{"a", 2}, {"b", 1}}, 3);
  const Statevector out =
      apply_unitary(s, Operator::dense({"a"}, Matrix::Identity(4, 4)));
  EXPECT_TRUE(out.amplitudes() == s.amplitudes());
}

TEST(ApplyUnitary, MatchesDirectMultiplication) {
  const Matrix u = random_unitary(4, 9);
  const Statevector s = Statevector::zero({{"a", 1}, {"b", 1}});
  const Statevector out = apply_unitary(s, Operator::dense({"a", "b"}, u));
  EXPECT_LT((out.amplitudes() - u * s.amplitudes()).norm(), 1e-14);
}

TEST(ApplyUnitary, TargetOrderAndSpectators) {
  // U on (b, a) of layout (a, b, c) equals the kron-built matrix.
  const Matrix u = random_unitary(4, 21);
  const Statevector s = random_state({{"a", 1}, {"b", 1}, {"c", 1}}, 4);
  const Statevector out = apply_unitary(s, Operator::dense({"b", "a"}, u));
  Vector expected = Vector::Zero(8);
  for (Index k = 0; k < 8; ++k) {
    const Index a = (k >> 2) & 1, b = (k >> 1) & 1, c = k & 1;
    for (Index a2 = 0; a2 < 2; ++a2) {
      for (Index b2 = 0; b2 < 2; ++b2) {
        expected[(a2 << 2) | (b2 << 1) | c] +=
            u((b2 << 1) | a2, (b << 1) | a) * s.amplitudes()[k];
      }
    }
  }
  EXPECT_LT((out.amplitudes() - expected).norm(), 1e-14);
}

TEST(ApplyUnitary, ControlledAndMultiplexed) {
  Statevector s = apply_unitary(Statevector::zero({{"c", 1}, {"t", 1}}),
                                Operator::dense({"c"}, hadamard()));
  s = apply_unitary(s, Operator::dense({"t"}, pauli_x()), QubitControl{"c", 0});
  const double h = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(s.amplitudes()[0].real(), h, 1e-15);
  EXPECT_NEAR(s.amplitudes()[3].real(), h, 1e-15);
  const Statevector m = apply_unitary(
      Statevector::basis({{"sel", 1}, {"t", 1}}, 2),
      Operator::multiplexed({"sel"}, {"t"}, {Matrix::Identity(2, 2), pauli_x()}));
  EXPECT_EQ(m.amplitudes()[3], Complex(1.0));
}

TEST(ApplyUnitary, Errors) {
  const Statevector s = Statevector::zero({{"a", 1}});
  Matrix bad = Matrix::Identity(2, 2);
  bad(0, 0) = 2.0;
  EXPECT_THROW(Operator::dense({"a"}, bad), Error);
  EXPECT_THROW(apply_unitary(s, Operator::dense({"a"}, Matrix::Identity(4, 4))),
               Error);
  EXPECT_THROW(apply_unitary(s, Operator::dense({"zz"}, pauli_x())), Error);
}

TEST(ApplyUnitary, PreservesNorm) {
  Statevector s = random_state({{"a", 3}, {"b", 2}}, 5);
  for (std::uint64_t k = 0; k < 10; ++k) {
    s = apply_unitary(s, Operator::dense({k % 2 ? "a" : "b"},
                                         random_unitary(k % 2 ? 8 : 4, 40 + k)));
    EXPECT_NEAR(s.amplitudes().norm(), 1.0, 1e-12);
  }
}

TEST(OperatorAlgebra, PowerAndAdjoint) {
  const Matrix u = random_unitary(4, 33);
  const Operator op = Operator::dense({"a"}, u, 2.0);
  Matrix direct = Matrix::Identity(4, 4);
  for (int k = 0; k < 13; ++k) direct = direct * u;
  EXPECT_LT((op.power(13).blocks()[0] - direct).norm(), 1e-12);
  EXPECT_DOUBLE_EQ(op.power(13).oracle_cost(), 26.0);
  EXPECT_LT((op.adjoint().blocks()[0] * u - Matrix::Identity(4, 4)).norm(), 1e-13);
}

TEST(Transforms, QftMatchesDft) {
  const Statevector s = random_state({{"x", 3}}, 8);
  const Statevector f = apply_transform(s, "x", Transform::kQft);
  for (Index y = 0; y < 8; ++y) {
    Complex acc = 0;
    for (Index x = 0; x < 8; ++x) {
      acc += std::polar(1.0, 2 * M_PI * x * y / 8.0) * s.amplitudes()[x];
    }
    EXPECT_LT(std::abs(acc / std::sqrt(8.0) - f.amplitudes()[y]), 1e-14);
  }
  const Statevector back = apply_transform(f, "x", Transform::kInverseQft);
  EXPECT_LT((back.amplitudes() - s.amplitudes()).norm(), 1e-14);
  const Statevector w = apply_transform(Statevector::zero({{"x", 3}}), "x",
                                        Transform::kWalshHadamard);
  EXPECT_LT((w.amplitudes() - Vector::Constant(8, 1 / std::sqrt(8.0))).norm(),
            1e-15);
}

TEST(XorMap, WritesFunctionValues) {
  Statevector s = apply_transform(Statevector::zero({{"y", 2}, {"v", 3}}), "y",
                                  Transform::kWalshHadamard);
  s = apply_xor_map(s, "y", "v", [](Index y) { return 2 * y + 1; });
  for (Index y = 0; y < 4; ++y) {
    EXPECT_NEAR(std::abs(s.amplitudes()[(y << 3) | (2 * y + 1)]), 0.5, 1e-15);
  }
  const Statevector back =
      apply_xor_map(s, "y", "v", [](Index y) { return 2 * y + 1; });
  EXPECT_NEAR(std::abs(back.amplitudes()[0]), 0.5, 1e-15);
}

TEST(Tensor, BasisStates) {
  const Statevector t = tensor(Statevector::basis({{"a", 1}}, 0),
                               Statevector::basis({{"b", 1}}, 1));
  EXPECT_EQ(t.amplitudes()[1], Complex(1.0));
  const Statevector plus = Statevector::from_vector("a", Vector::Ones(2));
  const Statevector pp = tensor(plus, rename_register(plus, "a", "b"));
  EXPECT_LT((pp.amplitudes() - Vector::Constant(4, 0.5)).norm(), 1e-15);
  EXPECT_THROW(tensor(plus, plus), Error);
}

TEST(Tensor, RowAndColumnMarginals) {
  const testing::RMat a = testing::random_matrix(2, 2, 15);
  const testing::RMat b = testing::random_matrix(2, 2, 16);
  const VectorizedMatrix va = vectorize(a.cast<Complex>());
  const VectorizedMatrix vb = vectorize(b.cast<Complex>());
  const Statevector t = tensor(va.rows, rename_register(vb.cols, "j", "jj"));
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) {
      const double expected =
          a.row(i).norm() * b.col(j).norm() / (a.norm() * b.norm());
      EXPECT_NEAR(std::abs(t.amplitudes()[2 * i + j]), expected, 1e-15);
    }
  }
}

TEST(Postselect, PlusState) {
  const Statevector plus = Statevector::from_vector("a", Vector::Ones(2));
  const PreparedState p = postselect(plus, "a", 0);
  EXPECT_NEAR(p.success_probability, 0.5, 1e-15);
  EXPECT_TRUE(p.state.layout().empty());
  EXPECT_NEAR(std::abs(p.state.amplitudes()[0]), 1.0, 1e-15);
  EXPECT_NEAR(postselect(Statevector::basis({{"a", 1}}, 1), "a", 1)
                  .success_probability,
              1.0, 0.0);
  try {
    postselect(Statevector::basis({{"a", 1}}, 1), "a", 0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kZeroProbability);
  }
}

TEST(Postselect, HamiltonianBranchProbability) {
  // (|0> e^{-iHt} + |1> e^{iHt})/sqrt(2) on H = diag(f), then H on the flag.
  const double t = 0.1;
  const double f[2] = {1.0, 2.0};
  Statevector s = tensor(Statevector::zero({{"anc", 1}}),
                         Statevector::from_vector("k", Vector::Ones(2)));
  s = apply_unitary(s, Operator::dense({"anc"}, hadamard()));
  Matrix minus = Matrix::Zero(2, 2), plus = Matrix::Zero(2, 2);
  for (int k = 0; k < 2; ++k) {
    minus(k, k) = std::polar(1.0, -f[k] * t);
    plus(k, k) = std::polar(1.0, f[k] * t);
  }
  s = apply_unitary(s, Operator::multiplexed({"anc"}, {"k"}, {minus, plus}));
  s = apply_unitary(s, Operator::dense({"anc"}, hadamard()));
  const double direct =
      0.5 * std::pow(std::sin(f[0] * t), 2) + 0.5 * std::pow(std::sin(f[1] * t), 2);
  EXPECT_NEAR(postselect(s, "anc", 1).success_probability, direct, 1e-15);
}

TEST(Postselect, CompletenessAndReinflation) {
  const Statevector s = random_state({{"a", 2}, {"b", 2}}, 77);
  double total = 0.0;
  Vector rebuilt = Vector::Zero(16);
  for (Index v = 0; v < 4; ++v) {
    const PreparedState p = postselect(s, "b", v);
    total += p.success_probability;
    const Vector branch_amps = std::sqrt(p.success_probability) * p.state.amplitudes();
    for (Index a = 0; a < 4; ++a) rebuilt[(a << 2) | v] = branch_amps[a];
  }
  EXPECT_NEAR(total, 1.0, 1e-10);
  EXPECT_LT((rebuilt - s.amplitudes()).norm(), 1e-14);
}

TEST(Fidelity, Basics) {
  const Statevector s = random_state({{"a", 2}}, 2);
  EXPECT_NEAR(fidelity(s, s).overlap, 1.0, 1e-14);
  EXPECT_NEAR(fidelity(s, s).distance, 0.0, 1e-7);
  EXPECT_NEAR(fidelity(Statevector::basis({{"a", 1}}, 0),
                       Statevector::basis({{"a", 1}}, 1))
                  .overlap,
              0.0, 0.0);
  EXPECT_NEAR(fidelity(Statevector::from_vector("a", Vector::Ones(2)),
                       Statevector::zero({{"a", 1}}))
                  .overlap,
              1 / std::sqrt(2.0), 1e-15);
  EXPECT_THROW(fidelity(s, Statevector::zero({{"b", 2}})), Error);
}

TEST(Amplification, ChargedRounds) {
  CostLedger l;
  EXPECT_EQ(charge_amplification(l, 1.0), 1u);
  EXPECT_EQ(charge_amplification(l, 0.25), 2u);
  EXPECT_EQ(charge_amplification(l, 1.0 / (10.0 * 10.0)), 10u);
  EXPECT_EQ(l.amplification_rounds, 13u);
  EXPECT_THROW(charge_amplification(l, 0.0), Error);
  EXPECT_THROW(charge_amplification(l, -0.5), Error);
}

TEST(Amplification, ScalesPerRoundCounters) {
  CostLedger l;
  l.oracle_calls = 3;
  l.controlled_oracle_calls = 10;
  charge_amplification(l, 1.0 / 9.0);
  EXPECT_EQ(l.oracle_calls, 9u);
  EXPECT_EQ(l.controlled_oracle_calls, 30u);
  EXPECT_EQ(l.total_queries(), 39u);
}

TEST(Amplification, GroverRunsWithinCharge) {
  for (int marked = 1; marked <= 8; ++marked) {
    const Statevector s = apply_transform(Statevector::zero({{"x", 6}}), "x",
                                          Transform::kWalshHadamard);
    const GroverCheck g =
        verify_amplification(s, [&](Index k) { return k < marked; });
    EXPECT_TRUE(g.within_charge) << marked;
    EXPECT_GT(g.probability, 0.5);
  }
}

TEST(Sampling, DeterministicPerSeed) {
  const Statevector s = random_state({{"a", 3}}, 12);
  EXPECT_EQ(sample_counts(s, "a", 1000, 5), sample_counts(s, "a", 1000, 5));
  std::uint64_t total = 0;
  for (auto c : sample_counts(s, "a", 1000, 5)) total += c;
  EXPECT_EQ(total, 1000u);
}

TEST(Layout, InsertPermuteBranch) {
  const Statevector s = random_state({{"a", 1}, {"b", 2}}, 19);
  const Statevector w = insert_register(s, {"m", 1}, 1);
  EXPECT_EQ(w.layout()[1].name, "m");
  EXPECT_LT((branch(w, "m", 0) - s.amplitudes()).norm(), 1e-15);
  const Statevector p = permute_registers(s, {"b", "a"});
  for (Index a = 0; a < 2; ++a) {
    for (Index b = 0; b < 4; ++b) {
      EXPECT_EQ(p.amplitudes()[(b << 1) | a], s.amplitudes()[(a << 2) | b]);
    }
  }
  const Vector pi = partial_inner(s, Statevector::basis({{"a", 1}}, 1));
  EXPECT_LT((pi - s.amplitudes().tail(4)).norm(), 1e-15);
}

}  // namespace
}  // namespace qmm
