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

// Amplitude encoding of classical vectors and linear combination of prepared
// states.

#pragma once

#include <string>
#include <vector>

#include "qmm/ledger.h"
#include "qmm/statevector.h"
#include "qmm/types.h"

namespace qmm {

/// A real vector with its support and dynamic range.
struct VectorSpec {
  RealVector values;
  std::vector<Index> support;
  double max_abs = 0.0;
  double min_abs_nonzero = 0.0;
  /// max |x_k| / min_{x_k != 0} |x_k|.
  double kappa_x = 1.0;

  /// Entries with |x_k| <= zero_tol are treated as outside the support.
  /// Throws kZeroVector when the support is empty.
  static VectorSpec from_values(const RealVector& values,
                                double zero_tol = 0.0);
  /// Sub-vector restricted to `indices`; other entries become zero.
  VectorSpec restricted(const std::vector<Index>& indices) const;
  /// |x> on a register called `reg`.
  Statevector normalized(const std::string& reg = "k") const;
};

enum class PrepMethod { kDirect, kHamiltonian, kSparse, kDyadic, kSignShift };

std::string to_string(PrepMethod m);

struct PrepReport {
  PreparedState result{Statevector::scalar()};
  /// Guaranteed upper bound on the distance to the target state.
  double target_fidelity_bound = 0.0;
  double realized_distance = 0.0;
  PrepMethod method = PrepMethod::kDirect;
  /// Smallest and largest rotation angle |f(k) t| (Hamiltonian method).
  double epsilon0 = 0.0;
  double epsilon1 = 0.0;
  double evolution_time = 0.0;
  /// Cost model the ledger counters follow; alternatives are in
  /// ledger.model_costs.
  std::string cost_model;
};

struct PrepOptions {
  /// Support positions are known to the preparer. When false, the base
  /// state is uniform over all indices and amplification pays sqrt(n/z).
  bool known_support = true;
  /// Exponent c in the generic synthesis gate-count model.
  double synthesis_exponent = 2.0;
  /// Register name for the prepared state.
  std::string reg = "k";
};

/// Exact |x> through a completed unitary with U|0> = |x>. The ledger records
/// n^2 log^2 n * log^c(n^2 log^2 n / eps) synthesis gates.
PreparedState synthesize_direct(const VectorSpec& x, double eps = 1e-10,
                                const PrepOptions& opts = {});

/// Prepares (1/sqrt(Z)) sum_k f(k) b_k |k> from base = sum_k b_k |k> by a
/// controlled diagonal evolution e^{+-iHt}, a Hadamard and postselection.
/// With eps1 = eps / sqrt(kappa(f)), the time is t = asin(eps1) / max|f|, so
/// eps0 = eps1 / kappa(f) <= |sin(f(k) t)| <= eps1 on the support of b.
/// `base` must hold a single register. Throws kInvalidArgument when f
/// vanishes on the support of b or eps is outside (0, 1).
PrepReport prep_hamiltonian(const RealVector& f, const Statevector& base,
                            double eps);

/// Relatively uniform method: prep_hamiltonian with f = x from a uniform base
/// over the support (known) or over all indices (unknown).
PrepReport prep_sparse(const VectorSpec& x, double eps,
                       const PrepOptions& opts = {});

/// Number of dyadic bands, floor(log2 kappa) + 1.
int dyadic_band_count(double kappa);

/// Splits x into bands |x_k| in [2^{j-1} x0, 2^j x0), j = 1..q, with x0 the
/// smallest nonzero magnitude. Bands may be empty; their sum is x exactly.
std::vector<VectorSpec> dyadic_bands(const VectorSpec& x);

/// Dyadic decomposition: each band is prepared by prep_sparse and the bands
/// are combined by lcu_combine with weights ||y_j|| / ||x||.
PrepReport prep_dyadic(const VectorSpec& x, double eps,
                       const PrepOptions& opts = {});

/// Sign-shift decomposition: y = M sign(x), z = x + y with M = max|x| on the
/// support, and |x> = (||z|| |z> - ||y|| |y>) / ||x|| by a Hadamard test.
PrepReport prep_signshift(const VectorSpec& x, double eps,
                          const PrepOptions& opts = {});

enum class CombineScheme {
  /// PREP amplitudes sqrt(|w_k| / sum|w|), success ||sum w s||^2 / (sum|w|)^2.
  kLcu,
  /// PREP amplitudes w_k / ||w||_2 and a Hadamard transform to unprepare,
  /// success ||sum w s||^2 / (2^q ||w||_2^2) for 2^q selector states.
  kHadamardTest,
};

/// Prepares a state proportional to sum_k w_k |s_k>. Each component is
/// charged as one round of its own ledger; SELECT costs the componentwise
/// maximum, and amplification repeats it. Throws kRegisterMismatch for
/// unequal layouts, kInvalidArgument for all-zero weights and
/// kZeroProbability for exact cancellation.
PreparedState lcu_combine(const std::vector<PreparedState>& states,
                          const std::vector<double>& weights,
                          CombineScheme scheme = CombineScheme::kLcu);

}  // namespace qmm
