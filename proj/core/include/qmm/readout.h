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


// Entrywise classical output C = AB: swap-test inner products, and swap tests
// against the coherent SVE or Hamiltonian-simulation product state.

#pragma once

#include <string>
#include <vector>

#include "qmm/ledger.h"
#include "qmm/linalg.h"
#include "qmm/qpe.h"

namespace qmm {

struct ReadoutOptions {
  int guard_bits = kDefaultGuardBits;
  /// Replace phase estimation inside the SVE and HHL circuits by exact
  /// eigenphases; the ledger is charged as for the derived width.
  bool exact_phase = false;
  bool strict_support = false;
  /// Entries (swap test) or columns (SVE, HHL) estimated concurrently.
  int workers = 1;
};

struct ReadoutReport {
  std::string method;
  DenseMatrix c_tilde;
  /// Absolute error guaranteed for every entry: eps_abs.
  double entrywise_error_bound = 0.0;
  /// max_ij |c~_ij - c_ij| against exact_product.
  double max_observed_error = 0.0;
  /// Quantum costs summed over entries; classical_entries holds the norm
  /// precomputation.
  CostLedger ledger;
  /// Widest phase register used by any entry.
  int phase_bits = 0;
  bool support_ok = true;
  std::vector<std::string> warnings;
};

/// x . y = ||x|| ||y|| <x|y>, with <x|y> estimated by a swap test to
/// eps_abs / (||x|| ||y||). A zero vector returns 0 at no cost. Inputs must be
/// real. Throws kDimensionMismatch on different lengths.
double inner_product_classical(const Vector& x, const Vector& y,
                               double eps_abs, CostLedger* ledger = nullptr,
                               const ReadoutOptions& opts = {});

/// One inner_product_classical per entry from rows of A and columns of B.
ReadoutReport readout_swaptest(const DenseMatrix& a, const DenseMatrix& b,
                               double eps_abs, const ReadoutOptions& opts = {});

/// c~_ij = L ||B_j|| sigma_hat, where L estimates <i, 0| on the SVE circuit
/// for column j. With eps3 = eps_abs / 2 the singular values are estimated to
/// eps3 / ||B_j|| and L to eps3 / (||B_j|| sigma_hat).
ReadoutReport readout_sve(const DenseMatrix& a, const DenseMatrix& b,
                          double eps_abs, const ReadoutOptions& opts = {});

/// As readout_sve on the Hamiltonian-simulation circuit.
ReadoutReport readout_hhl(const DenseMatrix& a, const DenseMatrix& b,
                          double eps_abs, const ReadoutOptions& opts = {});

}  // namespace qmm
