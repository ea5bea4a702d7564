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


// Experiment driver: seeded fixtures, pipeline runs with bound checks,
// ledger scaling studies and re-verification of stored reports.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmm/ledger.h"
#include "qmm/linalg.h"
#include "qmm/types.h"

namespace qmm {

enum class Method {
  kSwap,
  kSve,
  kHhl,
  kLcu,
  kReadoutSwap,
  kReadoutSve,
  kReadoutHhl,
  kPrepDirect,
  kPrepHamiltonian,
  kPrepSparse,
  kPrepDyadic,
  kPrepSignShift,
};

/// "swap", "sve", "hhl", "lcu", "readout-swap", ..., "prep-signshift".
std::string to_string(Method m);
/// Throws kInvalidArgument listing the accepted names.
Method parse_method(const std::string& name);
std::vector<Method> all_methods();
bool is_readout(Method m);
bool is_prep(Method m);

/// U diag(sigma) V^T with Haar-random orthogonal U, V and sigma log-spaced
/// from 1 down to 1 / kappa_target, so sigma_max = 1. Deterministic per seed.
DenseMatrix generate_matrix(Index n, double kappa_target, std::uint64_t seed);

/// Magnitudes log-uniform in [1, kappa] with both ends attained, random signs.
RealVector generate_vector(Index n, double kappa, std::uint64_t seed);

struct ExperimentConfig {
  Method method = Method::kSwap;
  double eps = 0.05;
  /// Overrides the derived phase width (matrix pipelines).
  std::optional<int> phase_bits;
  std::uint64_t seed = 0;
  bool strict_support = false;
  bool exact_phase = false;
  /// Input files; generated fixtures are used when empty.
  std::string a_path;
  std::string b_path;
  std::string x_path;
  /// Size and condition number of generated fixtures.
  Index n = 4;
  double kappa = 2.0;
  /// Runs seeds seed, seed + 1, ..., seed + repeats - 1.
  int repeats = 1;
  int workers = 1;

  /// Throws kInvalidArgument unless eps in (0, 1), phase_bits in [1, 20],
  /// n >= 1, kappa >= 1 and repeats >= 1.
  void validate() const;
};

struct ReportRow {
  std::string descriptor;
  Method method = Method::kSwap;
  std::uint64_t seed = 0;
  double eps = 0.0;
  int phase_bits = 0;
  /// Accuracy parameter of the stored bound (see PipelineResult::epsilon).
  double epsilon = 0.0;
  double realized_error = 0.0;
  double bound = 0.0;
  double success_probability = 1.0;
  double formula_probability = 0.0;
  CostLedger ledger;
  double wall_seconds = 0.0;
  bool exact_phase = false;
  std::vector<std::string> warnings;
  /// Instance data for re-verification.
  DenseMatrix a;
  DenseMatrix b;
  RealVector x;
  /// Estimated entries (readout methods).
  DenseMatrix entries;
  /// Where the entries were written as CSV, if anywhere.
  std::string entries_path;

  bool ok() const { return realized_error <= bound; }
};

struct ReportTable {
  /// Sorted by descriptor.
  std::vector<ReportRow> rows;
  bool all_ok() const;
};

/// Runs the configured pipeline once per seed. Pipeline errors are rethrown
/// with the row descriptor prepended; file errors keep their kind.
ReportTable run_experiment(const ExperimentConfig& cfg);

/// Least-squares fit of log y = slope * log x + c.
struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double std_error = 0.0;
  /// 95% confidence interval from Student's t.
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::size_t points = 0;
};

/// Needs at least two distinct x values; all values must be positive.
SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

struct ScalingCell {
  Index n = 0;
  double eps = 0.0;
  double kappa = 1.0;
  std::uint64_t seed = 0;
  /// Query total (matrix methods) or amplification rounds (preparation).
  double cost = 0.0;
  std::uint64_t total_queries = 0;
  std::uint64_t amplification_rounds = 0;
  double realized_error = 0.0;
  double bound = 0.0;
};

struct ScalingStudy {
  Method method = Method::kReadoutSwap;
  std::vector<ScalingCell> cells;
  /// Fits over seed-averaged costs, present when the grid varies.
  std::optional<SlopeFit> vs_inverse_eps;
  std::optional<SlopeFit> vs_n;
  /// Against kappa^{3/2} (preparation methods) or kappa (matrix methods).
  std::optional<SlopeFit> vs_kappa;

  std::string to_csv() const;
};

/// Runs every (n, eps, kappa, seed) cell; cells run concurrently on
/// `workers` threads and are reported in grid order.
ScalingStudy scaling_study(Method method, const std::vector<Index>& n_grid,
                           const std::vector<double>& eps_grid,
                           const std::vector<std::uint64_t>& seeds,
                           const std::vector<double>& kappa_grid = {1.0},
                           int workers = 1);

struct VerifySummary {
  std::size_t rows = 0;
  /// One line per failing row, naming its descriptor.
  std::vector<std::string> violations;
  bool pass() const { return violations.empty(); }
};

/// Recomputes each row's bound from its stored instance and checks the
/// stored realized error against it; readout rows also recompute the
/// realized error from the stored entries. Throws kParse when a row lacks
/// the instance data its method needs.
VerifySummary verify_bounds(const ReportTable& table);
VerifySummary verify_bounds(const std::string& report_path);

}  // namespace qmm
