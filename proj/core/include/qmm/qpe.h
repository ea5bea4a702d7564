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

#include <functional>
#include <string>

#include "qmm/ledger.h"
#include "qmm/statevector.h"
#include "qmm/types.h"

namespace qmm {

inline constexpr int kMaxPhaseBits = 20;
inline constexpr int kDefaultGuardBits = 2;

struct PhaseConfig {
  int phase_bits = 8;
  /// Grid accuracy pi / 2^phase_bits.
  double epsilon = kPi / 256.0;
  /// Success confidence; vacuous for exact simulation.
  double confidence = 0.95;

  static PhaseConfig from_bits(int t);
  /// t = ceil(log2(pi / eps)) + guard_bits.
  static PhaseConfig from_epsilon(double eps, int guard_bits = kDefaultGuardBits);
  Index grid() const { return pow2(phase_bits); }
};

/// Bits t with pi / 2^t <= eps.
int bits_for_accuracy(double eps);

/// Eigenphase in [0, 2 pi) read off phase label y.
double label_phase(Index y, int t);

/// G = (2|phi><phi| - I)(Z (x) I) over every register of `phi`, where Z maps
/// |0> to -|0> and |1> to |1> on the leading one-qubit register. For
/// phi = sin(t)|0>|u> + cos(t)|1>|v>, G has eigenvalues e^{+-2it} on the
/// invariant plane. One application costs two preparations.
Operator grover_rotation(const Statevector& phi);

/// Prepends a t-qubit register `phase_reg`, applies controlled U^{2^k} from
/// phase qubit k and an inverse QFT. An eigenphase lambda peaks at
/// y = lambda 2^t / 2 pi. Charges (2^t - 1) * cost(U) controlled calls.
Statevector phase_estimate(const Operator& u, const Statevector& s,
                           const PhaseConfig& cfg, CostLedger* ledger = nullptr,
                           const std::string& phase_reg = "phase");

/// Inverse of phase_estimate; the phase register stays in the layout.
Statevector undo_phase_estimate(const Operator& u, const Statevector& s,
                                CostLedger* ledger = nullptr,
                                const std::string& phase_reg = "phase");

/// Exact QPE output distribution for a single eigenphase (Fejer kernel):
/// p(y) = |sum_x e^{i x (lambda - 2 pi y / N)}|^2 / N^2.
double qpe_kernel(double lambda, Index y, int t);

/// A unitary on register `reg` chosen per eigenphase in [0, 2 pi).
struct PhaseFunction {
  std::string reg;
  std::function<Matrix(double)> fn;
};

/// Applies sum_m P_m (x) fn(lambda_m) for the eigenprojectors P_m of `u`.
/// With exact = false this is phase estimation, a phase-multiplexed fn and
/// uncomputation, leaving the t-qubit phase register in the layout (ideally
/// in |0>). With exact = true, exact eigenphases from a Schur decomposition
/// are used and a zero-qubit phase register is added so postselection on it
/// still applies. The ledger is charged the same in both modes.
Statevector apply_phase_function(const Operator& u, const Statevector& s,
                                 const PhaseFunction& f, const PhaseConfig& cfg,
                                 bool exact, CostLedger* ledger = nullptr,
                                 const std::string& phase_reg = "phase");

/// Two's-complement (or unsigned) fixed point. Signed values cover
/// [-2^(integer_bits-1), 2^(integer_bits-1)); rounding is half-to-even.
struct FixedPoint {
  int integer_bits = 2;
  int fraction_bits = 6;
  bool is_signed = true;

  int width() const { return integer_bits + fraction_bits; }
  double resolution() const;
  bool representable(double v) const;
  /// Throws kInvalidArgument when out of range.
  Index encode(double v) const;
  double decode(Index code) const;

  /// Width equal to t: two integer bits, t - 2 fraction bits.
  static FixedPoint for_phase_bits(int t);
};

struct TagResult {
  /// Tag register first, then the phase register, then the input registers.
  Statevector state;
  /// Probability that the phase register returned to |0>.
  double phase_return_probability = 0.0;
};

/// After phase_estimate on `u`, writes enc(f(y)) into a new leading register
/// `tag_reg` and undoes the estimation. f must be even over the wrap-around
/// labels, f(y) = f(2^t - y); throws kNotEven otherwise.
TagResult tag_even_function(const Statevector& s, const Operator& u,
                            const std::function<double(Index)>& f,
                            const FixedPoint& enc, CostLedger* ledger = nullptr,
                            const std::string& tag_reg = "tag",
                            const std::string& phase_reg = "phase");

/// Ancilla rotation multiplexed by an encoded value register:
/// |v>|0> -> |v>(c v |0> + sqrt(1 - c^2 v^2) |1>).
Operator value_rotation(const std::string& value_reg, int value_qubits,
                        const std::string& anc_reg, const FixedPoint& enc,
                        double c);

/// Appends a one-qubit register `anc_reg` and applies value_rotation. Throws
/// kRotationRange if |c v| > 1 for any populated value.
Statevector controlled_value_rotation(const Statevector& s,
                                      const std::string& value_reg, double c,
                                      const FixedPoint& enc,
                                      const std::string& anc_reg = "anc");

/// Rotation block with <0|R|0> = a for a complex |a| <= 1.
Matrix amplitude_rotation(Complex a);

}  // namespace qmm
