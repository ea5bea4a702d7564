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
#include <map>
#include <string>

namespace qmm {

/// Query counters for one pipeline run. Counters hold the cost of a single
/// round of the underlying circuit until charge_amplification() scales them by
/// the number of repetitions amplitude amplification needs.
struct CostLedger {
  /// Applications of input-state preparation unitaries, in T_in units.
  std::uint64_t oracle_calls = 0;
  /// Controlled applications made inside phase estimation, in T_in units.
  std::uint64_t controlled_oracle_calls = 0;
  /// Largest phase register width used.
  int phase_bits_used = 0;
  std::uint64_t amplification_rounds = 0;
  /// Probability of the last postselection charged to this ledger.
  double postselect_probability = 1.0;
  /// Exact Hamiltonian-simulation invocations (diagonal or dilation evolutions).
  std::uint64_t hamiltonian_simulations = 0;
  /// Classical entries touched while computing norms (the additive n^2 term).
  std::uint64_t classical_entries = 0;
  /// Gate-count model for generic unitary synthesis.
  double synthesis_gates = 0.0;
  /// Alternative cost models evaluated alongside the counters, keyed by name.
  std::map<std::string, double> model_costs;

  std::uint64_t total_queries() const {
    return oracle_calls + controlled_oracle_calls;
  }

  /// Adds every counter of `other` into this ledger. Associative and
  /// commutative, so per-entry ledgers can be merged in any order.
  void merge(const CostLedger& other);

  /// Multiplies the per-round counters by `rounds`.
  void repeat(std::uint64_t rounds);
};

/// Charges amplitude amplification for a branch of probability p:
/// ceil(1/sqrt(p)) repetitions of the circuit recorded so far. Returns the
/// number of rounds charged. Throws if p is not in (0, 1].
std::uint64_t charge_amplification(CostLedger& ledger, double p);

/// Rounds that charge_amplification would charge for p, without a ledger.
std::uint64_t amplification_rounds_for(double p);

/// Componentwise maximum of two ledgers: the cost of a controlled choice
/// between the two circuits. The probability is the smaller one.
CostLedger ledger_max(const CostLedger& a, const CostLedger& b);

}  // namespace qmm
