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

#include "qmm/ledger.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "qmm/error.h"
#include "qmm/types.h"

namespace qmm {

void CostLedger::merge(const CostLedger& other) {
  oracle_calls += other.oracle_calls;
  controlled_oracle_calls += other.controlled_oracle_calls;
  phase_bits_used = std::max(phase_bits_used, other.phase_bits_used);
  amplification_rounds += other.amplification_rounds;
  postselect_probability =
      std::min(postselect_probability, other.postselect_probability);
  hamiltonian_simulations += other.hamiltonian_simulations;
  classical_entries += other.classical_entries;
  synthesis_gates += other.synthesis_gates;
  for (const auto& [name, value] : other.model_costs) {
    model_costs[name] += value;
  }
}

void CostLedger::repeat(std::uint64_t rounds) {
  oracle_calls *= rounds;
  controlled_oracle_calls *= rounds;
  hamiltonian_simulations *= rounds;
  synthesis_gates *= static_cast<double>(rounds);
}

std::uint64_t amplification_rounds_for(double p) {
  if (!(p > 0.0) || p > 1.0 + 1e-12) {
    throw Error(ErrorKind::kInvalidArgument,
                "amplification needs a probability in (0, 1], got " +
                    std::to_string(p));
  }
  return static_cast<std::uint64_t>(
      std::max<long long>(1, ceil_tolerant(1.0 / std::sqrt(std::min(p, 1.0)))));
}

std::uint64_t charge_amplification(CostLedger& ledger, double p) {
  const std::uint64_t rounds = amplification_rounds_for(p);
  ledger.repeat(rounds);
  ledger.amplification_rounds += rounds;
  ledger.postselect_probability = p;
  return rounds;
}

CostLedger ledger_max(const CostLedger& a, const CostLedger& b) {
  CostLedger m;
  m.oracle_calls = std::max(a.oracle_calls, b.oracle_calls);
  m.controlled_oracle_calls =
      std::max(a.controlled_oracle_calls, b.controlled_oracle_calls);
  m.phase_bits_used = std::max(a.phase_bits_used, b.phase_bits_used);
  m.amplification_rounds =
      std::max(a.amplification_rounds, b.amplification_rounds);
  m.postselect_probability =
      std::min(a.postselect_probability, b.postselect_probability);
  m.hamiltonian_simulations =
      std::max(a.hamiltonian_simulations, b.hamiltonian_simulations);
  m.classical_entries = std::max(a.classical_entries, b.classical_entries);
  m.synthesis_gates = std::max(a.synthesis_gates, b.synthesis_gates);
  m.model_costs = a.model_costs;
  for (const auto& [name, value] : b.model_costs) {
    m.model_costs[name] = std::max(m.model_costs[name], value);
  }
  return m;
}

}  // namespace qmm
