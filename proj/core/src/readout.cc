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


#include "qmm/readout.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "parallel.h"
#include "qmm/error.h"
#include "qmm/matmul.h"
#include "qmm/swap_test.h"

namespace qmm {
namespace {

void require_positive(double eps) {
  if (!(eps > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "eps_abs must be positive");
  }
}

void require_real(const Matrix& a, const char* what) {
  if (a.size() > 0 && a.imag().cwiseAbs().maxCoeff() > 0.0) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(what) + " must be real for swap-test readout");
  }
}

void require_conformable(const DenseMatrix& a, const DenseMatrix& b) {
  validate_matrix(a);
  validate_matrix(b);
  if (a.cols() != b.rows()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "A is " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " but B has " +
                    std::to_string(b.rows()) + " rows");
  }
}

SwapOptions swap_options(const ReadoutOptions& opts) {
  SwapOptions s;
  s.guard_bits = opts.guard_bits;
  return s;
}

// Swap-test estimate of x . y given the norms; no classical charge.
double scaled_inner(const Vector& x, double nx, const Vector& y, double ny,
                    double eps_abs, const ReadoutOptions& opts,
                    CostLedger& ledger) {
  if (!(nx > 0.0) || !(ny > 0.0)) return 0.0;
  const SwapEstimate est = inner_product_estimate(
      StatePreparer::from_vector(x), StatePreparer::from_vector(y),
      eps_abs / (nx * ny), swap_options(opts));
  ledger.merge(est.ledger);
  return nx * ny * est.value;
}

void finish(ReadoutReport& r, const DenseMatrix& a, const DenseMatrix& b,
            double eps_abs) {
  r.entrywise_error_bound = eps_abs;
  r.max_observed_error = (r.c_tilde - exact_product(a, b)).cwiseAbs().maxCoeff();
  r.phase_bits = r.ledger.phase_bits_used;
}

// sum_ijk ||B_j|| |(V^dag B)_kj| |U_ik|, the entry-sum cost weight.
double entry_sum(const DenseMatrix& a, const DenseMatrix& b) {
  const SvdBundle svd = compute_svd(a);
  const Matrix coeff = (svd.right.adjoint() * b).cwiseAbs();
  const Matrix u = svd.left.cwiseAbs();
  double total = 0.0;
  for (Index j = 0; j < b.cols(); ++j) {
    total += b.col(j).norm() * (u * coeff.col(j)).real().sum();
  }
  return total;
}

using CircuitFn = ProductCircuit (*)(const DenseMatrix&, const DenseMatrix&,
                                     int, bool);

// Shared SVE / HHL readout. `phase_accuracy` maps the absolute singular value
// accuracy eps1 to the phase accuracy of the circuit.
ReadoutReport circuit_readout(const DenseMatrix& a, const DenseMatrix& b,
                              double eps_abs, const ReadoutOptions& opts,
                              const std::string& method, CircuitFn circuit_fn,
                              const std::function<double(double)>& phase_accuracy) {
  require_conformable(a, b);
  require_positive(eps_abs);
  ReadoutReport r;
  r.method = method;
  r.c_tilde = DenseMatrix::Zero(a.rows(), b.cols());
  // ||A||_F and the column norms of B.
  r.ledger.classical_entries = static_cast<std::uint64_t>(a.size() + b.size());
  const double residual = support_residual(a, b);
  if (residual > 1e-8) {
    const std::string msg = "columns of B leave the row space of A (residual " +
                            std::to_string(residual) + ")";
    if (opts.strict_support) throw Error(ErrorKind::kSupportViolation, msg);
    r.support_ok = false;
    r.warnings.push_back(msg);
  }
  if (!(a.norm() > 0.0)) {
    finish(r, a, b, eps_abs);
    return r;
  }
  const double eps3 = eps_abs / 2.0;
  std::vector<CostLedger> ledgers(b.cols());
  internal::parallel_for(b.cols(), opts.workers, [&](Index j) {
    const DenseMatrix col = b.col(j);
    const double nb = col.norm();
    if (!(nb > 0.0)) return;
    // sum_k |alpha_jk <i|u_k>| <= 1, so eps1 ||B_j|| <= eps3 needs
    // eps1 = eps3 / ||B_j||.
    const int t =
        PhaseConfig::from_epsilon(phase_accuracy(eps3 / nb), opts.guard_bits)
            .phase_bits;
    const ProductCircuit circuit = circuit_fn(a, col, t, opts.exact_phase);
    const StatePreparer psi = StatePreparer::from_vector(
        circuit.state.amplitudes(),
        static_cast<double>(circuit.ledger.total_queries()));
    const double eps2 = eps3 / (nb * circuit.sigma_hat);
    Index base = 0;
    for (const auto& [reg, value] : circuit.keep) {
      base |= value << circuit.state.bit_offset(reg);
    }
    const int row_shift = circuit.state.bit_offset(circuit.rows);
    CostLedger& ledger = ledgers[j];
    ledger.phase_bits_used = t;
    for (Index i = 0; i < a.rows(); ++i) {
      const Index flat = base | (i << row_shift);
      const SwapEstimate est = inner_product_estimate(
          StatePreparer::from_vector(Vector::Unit(circuit.state.size(), flat)),
          psi, eps2, swap_options(opts));
      ledger.merge(est.ledger);
      r.c_tilde(i, j) = est.value * nb * circuit.sigma_hat;
    }
  });
  for (const CostLedger& l : ledgers) r.ledger.merge(l);
  finish(r, a, b, eps_abs);
  return r;
}

}  // namespace

double inner_product_classical(const Vector& x, const Vector& y,
                               double eps_abs, CostLedger* ledger,
                               const ReadoutOptions& opts) {
  if (x.size() != y.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "vectors of length " + std::to_string(x.size()) + " and " +
                    std::to_string(y.size()));
  }
  require_positive(eps_abs);
  require_real(x, "x");
  require_real(y, "y");
  CostLedger local;
  local.classical_entries = static_cast<std::uint64_t>(x.size() + y.size());
  const double v = scaled_inner(x, x.norm(), y, y.norm(), eps_abs, opts, local);
  if (ledger != nullptr) ledger->merge(local);
  return v;
}

ReadoutReport readout_swaptest(const DenseMatrix& a, const DenseMatrix& b,
                               double eps_abs, const ReadoutOptions& opts) {
  require_conformable(a, b);
  require_positive(eps_abs);
  require_real(a, "A");
  require_real(b, "B");
  const MatrixProfile pa = matrix_profile(a), pb = matrix_profile(b);
  ReadoutReport r;
  r.method = "readout-swap";
  r.c_tilde = DenseMatrix::Zero(a.rows(), b.cols());
  r.ledger.classical_entries = static_cast<std::uint64_t>(a.size() + b.size());
  const Index rows = a.rows(), cols = b.cols();
  std::vector<CostLedger> ledgers(rows * cols);
  internal::parallel_for(rows * cols, opts.workers, [&](Index k) {
    const Index i = k / cols, j = k % cols;
    r.c_tilde(i, j) = scaled_inner(a.row(i).transpose(), pa.row_norms[i],
                                   b.col(j), pb.col_norms[j], eps_abs, opts,
                                   ledgers[k]);
  });
  for (const CostLedger& l : ledgers) r.ledger.merge(l);
  r.ledger.model_costs["swaptest_readout_model"] =
      pa.row_norm_sum * pb.col_norm_sum / eps_abs;
  finish(r, a, b, eps_abs);
  return r;
}

ReadoutReport readout_sve(const DenseMatrix& a, const DenseMatrix& b,
                          double eps_abs, const ReadoutOptions& opts) {
  const double fa = a.norm();
  // |d sigma| <= ||A||_F |d theta| / 2.
  ReadoutReport r = circuit_readout(
      a, b, eps_abs, opts, "readout-sve",
      &sve_circuit,
      [fa](double eps1) { return 2.0 * eps1 / fa; });
  if (fa > 0.0) {
    const MatrixProfile pa = matrix_profile(a), pb = matrix_profile(b);
    const double kappa = pa.kappa.value_or(std::numeric_limits<double>::infinity());
    const double n = static_cast<double>(std::max(a.rows(), b.cols()));
    const double b3 = std::pow(pb.col_norm_3norm, 3);
    const double e2 = eps_abs * eps_abs;
    r.ledger.model_costs["sve_readout_model"] =
        std::sqrt(n) * kappa * fa * fa * b3 / e2;
    r.ledger.model_costs["sve_readout_entry_sum"] =
        fa * pa.sigma_max * entry_sum(a, b) / e2;
  }
  return r;
}

ReadoutReport readout_hhl(const DenseMatrix& a, const DenseMatrix& b,
                          double eps_abs, const ReadoutOptions& opts) {
  const double smax = a.norm() > 0.0 ? matrix_profile(a).sigma_max : 1.0;
  const double tau = hhl_time(smax);
  ReadoutReport r = circuit_readout(
      a, b, eps_abs, opts, "readout-hhl",
      &hhl_circuit,
      [tau](double eps1) { return eps1 * tau; });
  if (a.norm() > 0.0) {
    const MatrixProfile pa = matrix_profile(a), pb = matrix_profile(b);
    const double kappa = pa.kappa.value_or(std::numeric_limits<double>::infinity());
    const double b3 = std::pow(pb.col_norm_3norm, 3);
    const double e2 = eps_abs * eps_abs;
    r.ledger.model_costs["hhl_readout_model"] =
        kappa * kappa * pa.frobenius * pa.frobenius * b3 / e2;
    r.ledger.model_costs["hhl_readout_entry_sum"] =
        smax * smax * entry_sum(a, b) / e2;
  }
  return r;
}

}  // namespace qmm
