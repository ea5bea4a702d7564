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

// Quantum-state matrix multiplication: |AB> on registers (i, j) by swap
// tests, by a linear combination of rank-one products, by singular value
// estimation and by Hamiltonian simulation of the Hermitian dilation.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmm/ledger.h"
#include "qmm/linalg.h"
#include "qmm/qpe.h"
#include "qmm/statevector.h"

namespace qmm {

struct PipelineOptions {
  /// Overrides the phase width derived from eps.
  std::optional<int> phase_bits;
  int guard_bits = kDefaultGuardBits;
  /// Replace phase estimation by exact eigenphases. The ledger is charged as
  /// for the phase width that would be used.
  bool exact_phase = false;
  /// Raise kSupportViolation instead of warning when B has components
  /// outside the row space of A.
  bool strict_support = false;
};

struct PipelineResult {
  /// Approximation of |AB> on registers (i, j).
  PreparedState state{Statevector::scalar()};
  /// 2-norm distance to vectorize(exact_product(a, b)), up to global phase.
  double realized_error = 0.0;
  /// The error bound of the method evaluated on this instance.
  double predicted_bound = 0.0;
  CostLedger ledger;
  int phase_bits = 0;
  /// Accuracy parameter of the bound: of inner products (swap test) or of
  /// singular values relative to the norm scale (SVE, HHL).
  double epsilon = 0.0;
  /// Closed-form success probability of the method on exact inputs.
  double formula_probability = 0.0;
  bool support_ok = true;
  std::vector<std::string> warnings;
};

/// The coherent circuit behind matmul_sve and matmul_hhl, before any
/// postselection: the branch selected by `keep` holds
/// sum_k alpha_jk (sigma~_k / sigma_hat) |u_k> per column j of B.
struct ProductCircuit {
  Statevector state;
  std::vector<std::pair<std::string, Index>> keep;
  /// Register carrying the row index of A.
  std::string rows;
  /// Grid estimate of sigma_max used to normalize the rotation.
  double sigma_hat = 0.0;
  int phase_bits = 0;
  /// Cost of one run of the circuit.
  CostLedger ledger;
};

/// Walk-based circuit on registers (r, c, j, anc) plus the phase register.
ProductCircuit sve_circuit(const DenseMatrix& a, const DenseMatrix& b,
                           int phase_bits, bool exact_phase = false);

/// Evolution time pi / (2 sigma_max) keeps the dilation's eigenphases in
/// [-pi/2, pi/2].
inline double hhl_time(double sigma_max) { return kPi / (2.0 * sigma_max); }

/// Dilation circuit on registers (flag, idx, j, anc) plus the phase register.
ProductCircuit hhl_circuit(const DenseMatrix& a, const DenseMatrix& b,
                           int phase_bits, bool exact_phase = false);

/// Error bound for the swap-test pipeline:
/// sqrt(2 r eps^2 + 2 r^2 eps^2) with r = ||A||^2 ||B||^2 / ||AB||^2.
double swaptest_bound(const DenseMatrix& a, const DenseMatrix& b, double eps);

/// Swap-test pipeline. Each (i, j) branch estimates s_ij = <A_i|B_j> by
/// phase estimation on a Grover rotation, writes s~_ij into an ancilla
/// amplitude, uncomputes and postselects. Inner products are estimated to
/// eps / sqrt(2r + 2r^2) unless opts.phase_bits is set. Inputs must be real.
/// Throws kZeroProduct when AB = 0 and kDimensionMismatch on bad shapes.
PipelineResult matmul_swaptest(const DenseMatrix& a, const DenseMatrix& b,
                               double eps, const PipelineOptions& opts = {});

/// |a> (x) |b> through the swap-test pipeline on the l x 1 by 1 x n product.
/// Throws kZeroVector for a zero input.
PipelineResult rank_one_product(const Vector& a, const Vector& b, double eps,
                                const PipelineOptions& opts = {});

/// AB = sum_k A_{.k} B_{k.}: rank-one products with accuracy eps combined by
/// lcu_combine with weights ||A_{.k}|| ||B_{k.}||.
PipelineResult matmul_lcu(const DenseMatrix& a, const DenseMatrix& b,
                          double eps, const PipelineOptions& opts = {});

/// Isometries and walk for singular value estimation of A padded to P x P.
/// Registers: r (row index) and c (column index), q = log2 P qubits each.
struct SVEOperators {
  /// P^2 x P, M|i> = |i>|conj(A_i.)/||A_i.||>.
  Matrix iso_m;
  /// P^2 x P, N|j> = |A_F.>|j> with A_F. the vector of row norms / ||A||_F.
  Matrix iso_n;
  /// W = (2MM^dag - I)(2NN^dag - I) on (r, c).
  Matrix walk;
  /// Unitaries with U_M|i>|0> = M|i> and U_N|0>|j> = N|j>.
  Operator u_m;
  Operator u_n;
  /// The walk as an operator on (r, c), costing four oracle calls.
  Operator w;
  double frobenius = 0.0;
  int qubits = 0;
};

/// Throws kZeroVector for a zero matrix.
SVEOperators sve_operators(const DenseMatrix& a);

struct SveResult {
  /// sum_i alpha_i |u_i>|sigma~_i> on registers (r, sigma).
  Statevector state;
  /// sigma~ = decode(code) * scale.
  FixedPoint encoding;
  double scale = 0.0;
  int phase_bits = 0;
  /// Accuracy guaranteed per component: |sigma~ - sigma| <= eps ||A||_F.
  double epsilon = 0.0;
  /// Weight left on the phase register after uncomputation.
  double phase_return_probability = 0.0;
  CostLedger ledger;
};

/// Singular value estimation: maps sum alpha_i |v_i> on a single register
/// of dimension at most P to sum alpha_i |u_i>|sigma~_i>.
SveResult sve_transform(const DenseMatrix& a, const Statevector& input,
                        double eps, const PipelineOptions& opts = {});

/// Bound on || |phi> - |psi> || for an SVE-type pipeline with
/// |sigma~_k - sigma_k| <= eps * norm_scale, evaluated at the smallest
/// admissible sigma~ (which maximizes the bound).
double sve_bound(const DenseMatrix& a, const DenseMatrix& b, double eps,
                 double norm_scale);

/// SVE pipeline: |B> on (c, j), N on r, phase estimation of W, amplitude
/// e^{i theta/2} min(sigma~, sigma^)/sigma^ on an ancilla, uncomputation,
/// M^dag and postselection. sigma^ is the phase-grid estimate of sigma_max.
/// eps is the target state error; singular values are estimated to
/// e ||A||_F with e = eps ||AB||^2 / (sqrt(3) ||A||_F sigma_max ||B||^2).
/// Throws kSupportViolation in strict mode, kZeroProduct when AB = 0.
PipelineResult matmul_sve(const DenseMatrix& a, const DenseMatrix& b,
                          double eps, const PipelineOptions& opts = {});

/// HHL-style pipeline: phase estimation of e^{i A~ tau} for the Hermitian
/// dilation A~ with tau = pi / (2 sigma_max), amplitude sigma~ / sigma^ with
/// signed sigma~ = lambda / tau. Singular values are estimated to
/// e sigma_max with e = eps ||AB||^2 / (sqrt(3) sigma_max^2 ||B||^2).
PipelineResult matmul_hhl(const DenseMatrix& a, const DenseMatrix& b,
                          double eps, const PipelineOptions& opts = {});

/// Residual ||(I - V_r V_r^dag) B||_F / ||B||_F of the columns of B outside
/// the row space of A.
double support_residual(const DenseMatrix& a, const DenseMatrix& b);

}  // namespace qmm
