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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmm/ledger.h"
#include "qmm/types.h"

namespace qmm {

struct Register {
  std::string name;
  int qubits = 0;

  Index dimension() const { return pow2(qubits); }
  bool operator==(const Register&) const = default;
};

/// Registers in order; the first register is the most significant digit of
/// the flat amplitude index. Bits within a register are little-endian.
using Layout = std::vector<Register>;

/// Total-qubit cap for any layout. Reads QMM_MAX_QUBITS once (default 24).
int max_qubits();

/// Unit-norm amplitude vector over a named register layout. Immutable.
class Statevector {
 public:
  /// Validates norm (1e-10), layout size and the qubit budget.
  Statevector(Layout layout, Vector amplitudes);

  /// |0...0> on `layout`.
  static Statevector zero(Layout layout);
  static Statevector basis(Layout layout, Index index);
  /// Normalized copy of `values` on one register, zero-padded to a power of
  /// two. Throws kZeroVector on a zero input.
  static Statevector from_vector(const std::string& name, const Vector& values);
  /// The empty-layout scalar state with amplitude 1.
  static Statevector scalar();

  const Layout& layout() const { return layout_; }
  const Vector& amplitudes() const { return amplitudes_; }
  Index size() const { return amplitudes_.size(); }
  int total_qubits() const;

  bool has_register(const std::string& name) const;
  std::size_t position(const std::string& name) const;
  const Register& reg(const std::string& name) const;
  /// Bit offset of the register's least significant qubit in the flat index.
  int bit_offset(const std::string& name) const;
  /// Value of register `name` in flat basis index `flat`.
  Index digit(Index flat, const std::string& name) const;

  /// Probability of each value of one register.
  RealVector marginal(const std::string& name) const;

 private:
  Layout layout_;
  Vector amplitudes_;
};

/// Unitary acting on `targets`, optionally multiplexed: when selectors are
/// given, block k acts on the targets in the branch where the selector
/// registers (most significant first) hold value k.
class Operator {
 public:
  /// Validates unitarity to `tol`.
  static Operator dense(std::vector<std::string> targets, Matrix u,
                        double oracle_cost = 0.0, double tol = 1e-10);
  static Operator multiplexed(std::vector<std::string> selectors,
                              std::vector<std::string> targets,
                              std::vector<Matrix> blocks,
                              double oracle_cost = 0.0, double tol = 1e-10);

  const std::vector<std::string>& targets() const { return targets_; }
  const std::vector<std::string>& selectors() const { return selectors_; }
  const std::vector<Matrix>& blocks() const { return blocks_; }
  Index block_dimension() const { return blocks_.front().rows(); }
  /// Input-preparation calls made by one application, in T_in units.
  double oracle_cost() const { return oracle_cost_; }

  Operator adjoint() const;
  /// U^k by repeated squaring; the oracle cost scales by k.
  Operator power(std::uint64_t k) const;
  /// Same operator with a different cost annotation.
  Operator with_cost(double oracle_cost) const;

 private:
  Operator() = default;

  std::vector<std::string> selectors_;
  std::vector<std::string> targets_;
  std::vector<Matrix> blocks_;
  double oracle_cost_ = 0.0;
};

/// Conditions an application on one qubit of a register being 1.
struct QubitControl {
  std::string reg;
  int bit = 0;
};

Statevector apply_unitary(const Statevector& s, const Operator& u,
                          const std::optional<QubitControl>& control = {});

/// |y>|v> -> |y>|v XOR g(y)> for source register y and target register v.
/// g is evaluated once per source value and must fit the target register.
Statevector apply_xor_map(const Statevector& s, const std::string& source,
                          const std::string& target,
                          const std::function<Index(Index)>& g);

enum class Transform { kWalshHadamard, kQft, kInverseQft };

/// Applies a whole-register transform. The QFT maps |x> to
/// N^{-1/2} sum_y e^{2 pi i x y / N} |y>.
Statevector apply_transform(const Statevector& s, const std::string& reg,
                            Transform t);

/// Multiplies each basis amplitude by phase(flat index).
Statevector apply_diagonal(const Statevector& s,
                           const std::function<Complex(Index)>& phase);

Statevector tensor(const Statevector& a, const Statevector& b);

/// Inserts a register in |0> before position `position` of the layout.
Statevector insert_register(const Statevector& s, const Register& r,
                            std::size_t position);

/// Reorders registers to `order` (a permutation of the current names).
Statevector permute_registers(const Statevector& s,
                              const std::vector<std::string>& order);

Statevector rename_register(const Statevector& s, const std::string& from,
                            const std::string& to);

/// A state plus the probability of the branch it came from and the cost of
/// producing it.
struct PreparedState {
  Statevector state;
  double success_probability = 1.0;
  CostLedger ledger;
};

/// Exact postselection: keeps the branch where `reg` = outcome, removes the
/// register and renormalizes. Throws kZeroProbability on an empty branch.
PreparedState postselect(const Statevector& s, const std::string& reg,
                         Index outcome);

/// Successive postselections; the probability is the product.
PreparedState postselect_all(
    const Statevector& s,
    const std::vector<std::pair<std::string, Index>>& outcomes);

/// Unnormalized branch amplitudes of `reg` = outcome over the other registers.
Vector branch(const Statevector& s, const std::string& reg, Index outcome);

/// Unnormalized <ref| on the leading registers of `s` named by ref's layout:
/// returns sum_x conj(ref[x]) s[x, rest] over the remaining registers.
Vector partial_inner(const Statevector& s, const Statevector& ref);

struct Fidelity {
  /// |<a|b>| in [0, 1].
  double overlap = 0.0;
  /// min over phases phi of || a - e^{i phi} b ||.
  double distance = 0.0;
  Complex inner{0.0, 0.0};
};

/// Requires identical layouts.
Fidelity fidelity(const Statevector& a, const Statevector& b);

/// Seeded measurement of one register; returns counts per value.
std::vector<std::uint64_t> sample_counts(const Statevector& s,
                                         const std::string& reg,
                                         std::uint64_t shots,
                                         std::uint64_t seed);

/// Runs true Grover iterations on a small instance to check the amplification
/// charge. `good` selects basis indices of `s`. Returns the iteration count k
/// maximizing the good-branch probability and that probability.
struct GroverCheck {
  std::uint64_t iterations = 0;
  double probability = 0.0;
  std::uint64_t charged_rounds = 0;
  /// (2k + 1) <= (pi / 2) * charged_rounds.
  bool within_charge = false;
};
GroverCheck verify_amplification(const Statevector& s,
                                 const std::function<bool(Index)>& good);

}  // namespace qmm
