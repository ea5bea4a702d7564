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


#include "qmm/matmul.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "qmm/error.h"
#include "qmm/state_prep.h"
#include "qmm/swap_test.h"

namespace qmm {
namespace {

DenseMatrix checked_product(const DenseMatrix& a, const DenseMatrix& b) {
  validate_matrix(a);
  validate_matrix(b);
  const DenseMatrix c = exact_product(a, b);
  if (!(c.norm() > 1e-13 * a.norm() * b.norm())) {
    throw Error(ErrorKind::kZeroProduct, "AB = 0");
  }
  return c;
}

void require_real(const DenseMatrix& a) {
  if (a.imag().cwiseAbs().maxCoeff() > 0.0) {
    throw Error(ErrorKind::kInvalidArgument,
                "the swap-test pipeline needs real matrices");
  }
}

// Phase width and accuracy: `scale` converts the phase accuracy
// pi 2^g / 2^t into the accuracy reported in PipelineResult::epsilon.
std::pair<int, double> phase_plan(const PipelineOptions& opts,
                                  double needed_phase_accuracy,
                                  double scale) {
  const int t = opts.phase_bits
                    ? *opts.phase_bits
                    : bits_for_accuracy(needed_phase_accuracy) + opts.guard_bits;
  if (t < 1 || t > kMaxPhaseBits) {
    throw Error(ErrorKind::kInvalidArgument,
                "phase width " + std::to_string(t) + " outside [1, " +
                    std::to_string(kMaxPhaseBits) + "]");
  }
  return {t, scale * kPi * std::ldexp(1.0, opts.guard_bits - t)};
}

double signed_phase(double lambda) {
  return lambda <= kPi ? lambda : lambda - 2.0 * kPi;
}

// Restricts the leading register of a (row, j) state to `qi` qubits and
// renames the registers to (i, j).
PreparedState shrink_rows(PreparedState p, int qi) {
  const Layout& layout = p.state.layout();
  const int qj = layout[1].qubits;
  Vector head = p.state.amplitudes().head(pow2(qi + qj));
  const double kept = head.squaredNorm();
  if (!(kept > 0.0)) {
    throw Error(ErrorKind::kZeroProbability, "output has no weight on A's rows");
  }
  p.state = Statevector({{"i", qi}, {"j", qj}}, head / std::sqrt(kept));
  p.success_probability *= kept;
  return p;
}

void finish(PipelineResult& r, const DenseMatrix& c) {
  r.ledger = r.state.ledger;
  r.realized_error = fidelity(r.state.state, vectorize(c).joint).distance;
}

double condition_number(const MatrixProfile& p) {
  if (p.kappa) return *p.kappa;
  return p.sigma_min_nonzero ? p.sigma_max / *p.sigma_min_nonzero
                             : std::numeric_limits<double>::infinity();
}

void check_support(PipelineResult& r, const DenseMatrix& a,
                   const DenseMatrix& b, const PipelineOptions& opts) {
  const double residual = support_residual(a, b);
  if (residual <= 1e-8) return;
  const std::string msg = "columns of B leave the row space of A (residual " +
                          std::to_string(residual) + ")";
  if (opts.strict_support) throw Error(ErrorKind::kSupportViolation, msg);
  r.support_ok = false;
  r.warnings.push_back(msg);
}

// Signed column-index amplitudes of B on registers (first, j).
Vector column_state(const DenseMatrix& b, Index row_offset, int q, int qj) {
  Vector v = Vector::Zero(pow2(q + qj));
  for (Index k = 0; k < b.rows(); ++k) {
    for (Index j = 0; j < b.cols(); ++j) {
      v[((row_offset + k) << qj) | j] = b(k, j);
    }
  }
  return v / v.norm();
}

// Relative singular value accuracy e for a final state error eps:
// eps / sqrt(3) = e * scale * ||B||^2 / ||AB||^2, where scale is
// ||A||_F sigma_max (SVE) or sigma_max^2 (HHL).
double sigma_accuracy(const DenseMatrix& c, const DenseMatrix& b, double eps,
                      double scale) {
  return eps * c.squaredNorm() / (std::sqrt(3.0) * scale * b.squaredNorm());
}

}  // namespace

double swaptest_bound(const DenseMatrix& a, const DenseMatrix& b, double eps) {
  const double ratio =
      std::pow(a.norm() * b.norm() / exact_product(a, b).norm(), 2);
  return std::sqrt(2.0 * ratio * eps * eps + 2.0 * ratio * ratio * eps * eps);
}

PipelineResult matmul_swaptest(const DenseMatrix& a, const DenseMatrix& b,
                               double eps, const PipelineOptions& opts) {
  const DenseMatrix c = checked_product(a, b);
  require_real(a);
  require_real(b);
  if (!(eps > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "eps must be positive");
  }
  const Index l = a.rows(), m = a.cols(), n = b.cols();
  const double fa = a.norm(), fb = b.norm(), fc = c.norm();
  const double ratio = std::pow(fa * fb / fc, 2);
  const double eps_inner = eps / std::sqrt(2.0 * ratio + 2.0 * ratio * ratio);
  PipelineOptions plan = opts;
  plan.guard_bits = 0;
  if (!opts.phase_bits) {
    plan.phase_bits = bits_for_accuracy(eps_inner) + opts.guard_bits;
  }
  const auto [t, eps_phase] = phase_plan(plan, eps_inner, 1.0);

  const int qi = qubits_for(l), qj = qubits_for(n), qd = qubits_for(m);
  const Index dd = pow2(qd);
  const RealVector rn = a.rowwise().norm();
  const RealVector cn = b.colwise().norm().transpose();
  Statevector s = tensor(Statevector::from_vector("i", rn.cast<Complex>()),
                         Statevector::from_vector("j", cn.cast<Complex>()));
  s = insert_register(s, {"c", 1}, 2);
  s = insert_register(s, {"d", qd}, 3);
  s = insert_register(s, {"anc", 1}, 4);

  // Hadamard on c, identity on d.
  Matrix hc(2 * dd, 2 * dd);
  const Matrix id = Matrix::Identity(dd, dd) / std::sqrt(2.0);
  hc << id, id, id, -id;
  const Index count = pow2(qi + qj);
  std::vector<Matrix> prep(count, Matrix::Identity(2 * dd, 2 * dd));
  std::vector<Matrix> walk(count, Matrix::Identity(2 * dd, 2 * dd));
  for (Index i = 0; i < l; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (rn[i] == 0.0 || cn[j] == 0.0) continue;
      Vector v = Vector::Zero(2 * dd);
      v.head(m) = a.row(i).adjoint() / rn[i];
      v.segment(dd, m) = b.col(j) / cn[j];
      v /= std::sqrt(2.0);
      const Matrix u = hc * complete_unitary(v);
      const Index k = (i << qj) | j;
      prep[k] = u;
      walk[k] = grover_rotation(Statevector({{"c", 1}, {"d", qd}}, u.col(0)))
                    .blocks()
                    .front();
    }
  }
  const Operator p_op =
      Operator::multiplexed({"i", "j"}, {"c", "d"}, std::move(prep), 1.0);
  const Operator g_op =
      Operator::multiplexed({"i", "j"}, {"c", "d"}, std::move(walk), 2.0);

  CostLedger ledger;
  s = apply_unitary(s, p_op);
  ledger.oracle_calls += 2;  // row/column norm states and P
  const PhaseFunction rotate{"anc", [](double lambda) {
                               const double v = std::sin(lambda / 2.0);
                               return amplitude_rotation(2.0 * v * v - 1.0);
                             }};
  s = apply_phase_function(g_op, s, rotate, PhaseConfig::from_bits(t),
                           opts.exact_phase, &ledger);
  s = apply_unitary(s, p_op.adjoint());
  ledger.oracle_calls += 1;

  PipelineResult r;
  r.state = postselect_all(s, {{"anc", 0}, {"phase", 0}, {"c", 0}, {"d", 0}});
  charge_amplification(ledger, r.state.success_probability);
  ledger.model_costs["swaptest_model"] = std::pow(fa * fb / fc, 3) / eps;
  r.state.ledger = ledger;
  r.phase_bits = t;
  r.epsilon = eps_phase;
  r.predicted_bound = swaptest_bound(a, b, eps_phase);
  r.formula_probability = 1.0 / ratio;
  finish(r, c);
  return r;
}

PipelineResult rank_one_product(const Vector& a, const Vector& b, double eps,
                                const PipelineOptions& opts) {
  if (!(a.norm() > 0.0) || !(b.norm() > 0.0)) {
    throw Error(ErrorKind::kZeroVector, "rank-one factors must be nonzero");
  }
  const DenseMatrix left = a;
  const DenseMatrix right = b.transpose();
  return matmul_swaptest(left, right, eps, opts);
}

PipelineResult matmul_lcu(const DenseMatrix& a, const DenseMatrix& b,
                          double eps, const PipelineOptions& opts) {
  const DenseMatrix c = checked_product(a, b);
  if (a.rows() * b.cols() == 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "the product is a scalar; there is no state to prepare");
  }
  std::vector<PreparedState> parts;
  std::vector<double> weights;
  double bound = 0.0;
  int t = 0;
  for (Index k = 0; k < a.cols(); ++k) {
    const double wa = a.col(k).norm(), wb = b.row(k).norm();
    if (wa == 0.0 || wb == 0.0) continue;
    PipelineResult part =
        rank_one_product(a.col(k), b.row(k).transpose(), eps, opts);
    bound += wa * wb * part.predicted_bound;
    t = std::max(t, part.phase_bits);
    weights.push_back(wa * wb);
    parts.push_back(std::move(part.state));
  }
  double total = 0.0;
  for (double w : weights) total += w;
  PipelineResult r;
  r.state = lcu_combine(parts, weights, CombineScheme::kLcu);
  r.state.ledger.model_costs["lcu_model"] = total / (eps * c.norm());
  r.phase_bits = t;
  r.epsilon = eps;
  // Normalizing sum_k w_k |c~_k> at most doubles the unnormalized error.
  r.predicted_bound = 2.0 * bound / c.norm();
  r.formula_probability = std::pow(c.norm() / total, 2);
  finish(r, c);
  return r;
}

SVEOperators sve_operators(const DenseMatrix& a) {
  validate_matrix(a);
  const double fa = a.norm();
  if (!(fa > 0.0)) {
    throw Error(ErrorKind::kZeroVector, "singular value estimation of a zero matrix");
  }
  const int q = qubits_for(std::max(a.rows(), a.cols()));
  const Index p = pow2(q);
  const DenseMatrix ap = pad(a, p, p);
  const RealVector rn = ap.rowwise().norm();

  Matrix iso_m = Matrix::Zero(p * p, p), iso_n = Matrix::Zero(p * p, p);
  std::vector<Matrix> blocks;
  blocks.reserve(p);
  for (Index i = 0; i < p; ++i) {
    Vector row = Vector::Unit(p, 0);
    if (rn[i] > 0.0) row = ap.row(i).adjoint() / rn[i];
    iso_m.block(i * p, i, p, 1) = row;
    blocks.push_back(complete_unitary(row));
    for (Index j = 0; j < p; ++j) iso_n(i * p + j, j) = rn[i] / fa;
  }
  const Matrix id = Matrix::Identity(p * p, p * p);
  SVEOperators ops{
      iso_m,
      iso_n,
      (2.0 * iso_m * iso_m.adjoint() - id) * (2.0 * iso_n * iso_n.adjoint() - id),
      Operator::multiplexed({"r"}, {"c"}, std::move(blocks), 1.0),
      Operator::dense({"r"}, complete_unitary(rn.cast<Complex>() / fa), 1.0),
      Operator::dense({"r"}, Matrix::Identity(1, 1)),
      fa,
      q};
  ops.w = Operator::dense({"r", "c"}, ops.walk, 4.0);
  return ops;
}

SveResult sve_transform(const DenseMatrix& a, const Statevector& input,
                        double eps, const PipelineOptions& opts) {
  const SVEOperators ops = sve_operators(a);
  if (input.layout().size() != 1 || input.size() > pow2(ops.qubits)) {
    throw Error(ErrorKind::kRegisterMismatch,
                "input must be one register of at most " +
                    std::to_string(pow2(ops.qubits)) + " states");
  }
  if (!(eps > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "eps must be positive");
  }
  // |d sigma| <= ||A||_F |d theta| / 2.
  const auto [t, eps_sigma] = phase_plan(opts, 2.0 * eps, 0.5);
  Vector v = Vector::Zero(pow2(ops.qubits));
  v.head(input.size()) = input.amplitudes();
  Statevector s({{"c", ops.qubits}}, v);
  s = insert_register(s, {"r", ops.qubits}, 0);
  SveResult out{Statevector::scalar(), FixedPoint{1, t - 1, false}, ops.frobenius,
                t, eps_sigma, 0.0, {}};
  s = apply_unitary(s, ops.u_n);
  out.ledger.oracle_calls += 2;  // input state and U_N
  s = phase_estimate(ops.w, s, PhaseConfig::from_bits(t), &out.ledger);
  const Index grid = pow2(t);
  s = apply_diagonal(s, [&](Index flat) {
    const double theta = signed_phase(label_phase(s.digit(flat, "phase"), t));
    return std::polar(1.0, theta / 2.0);
  });
  const FixedPoint enc = out.encoding;
  TagResult tag = tag_even_function(
      s, ops.w,
      [&](Index y) {
        const double theta = signed_phase(label_phase(y % grid, t));
        return std::clamp(std::cos(theta / 2.0), 0.0, 1.0);
      },
      enc, &out.ledger, "sigma", "phase");
  out.phase_return_probability = tag.phase_return_probability;
  s = apply_unitary(tag.state, ops.u_m.adjoint());
  out.ledger.oracle_calls += 1;
  PreparedState kept = postselect_all(s, {{"phase", 0}, {"c", 0}});
  out.state = permute_registers(kept.state, {"r", "sigma"});
  return out;
}

double support_residual(const DenseMatrix& a, const DenseMatrix& b) {
  const SvdBundle svd = compute_svd(a);
  const MatrixProfile p = matrix_profile(a);
  const Matrix v = svd.right.leftCols(p.rank);
  const double fb = b.norm();
  if (!(fb > 0.0)) return 0.0;
  return (b - v * (v.adjoint() * b)).norm() / fb;
}

double sve_bound(const DenseMatrix& a, const DenseMatrix& b, double eps,
                 double norm_scale) {
  const SvdBundle svd = compute_svd(a);
  const Matrix coeff = svd.right.adjoint() * b;  // ||B_j|| alpha_jk
  const double delta = eps * norm_scale;
  double z = 0.0, w = 0.0;
  for (Index k = 0; k < coeff.rows(); ++k) {
    const double sigma = svd.sigmas[k];
    const double low = std::max(sigma - delta, 0.0);
    const double weight = coeff.row(k).squaredNorm();
    z += weight * low * low;
    w += weight * sigma * sigma;
  }
  if (!(z > 0.0)) return std::numeric_limits<double>::infinity();
  const double fb2 = b.squaredNorm();
  const double top = 2.0 * svd.sigmas.maxCoeff() + delta;
  const double sum = std::sqrt(z) + std::sqrt(w);
  return std::sqrt(2.0 * delta * delta * fb2 / z +
                   2.0 * delta * delta * fb2 * fb2 * top * top /
                       (z * sum * sum));
}

ProductCircuit sve_circuit(const DenseMatrix& a, const DenseMatrix& b,
                           int phase_bits, bool exact_phase) {
  const SVEOperators ops = sve_operators(a);
  const double fa = ops.frobenius;
  const double smax = matrix_profile(a).sigma_max;
  const int t = phase_bits, q = ops.qubits, qj = qubits_for(b.cols());

  Statevector s({{"c", q}, {"j", qj}}, column_state(b, 0, q, qj));
  s = insert_register(s, {"r", q}, 0);
  s = insert_register(s, {"anc", 1}, 3);
  ProductCircuit out{Statevector::scalar(), {{"anc", 0}, {"phase", 0}, {"c", 0}},
                     "r", smax, t, {}};
  s = apply_unitary(s, ops.u_n);
  out.ledger.oracle_calls += 2;  // |B> and U_N

  const Index grid = pow2(t);
  if (!exact_phase) {
    const double theta = 2.0 * std::acos(std::min(1.0, smax / fa));
    const auto y = std::llround(theta * static_cast<double>(grid) / (2.0 * kPi));
    const double est = fa * std::cos(kPi * static_cast<double>(y) /
                                     static_cast<double>(grid));
    if (est > 0.0) out.sigma_hat = est;
  }
  const double sigma_hat = out.sigma_hat;
  const PhaseFunction rotate{"anc", [&](double lambda) {
                               const double theta = signed_phase(lambda);
                               const double sigma =
                                   std::max(0.0, fa * std::cos(theta / 2.0));
                               const double v = std::min(sigma, sigma_hat) / sigma_hat;
                               return amplitude_rotation(std::polar(v, theta / 2.0));
                             }};
  s = apply_phase_function(ops.w, s, rotate, PhaseConfig::from_bits(t),
                           exact_phase, &out.ledger);
  out.state = apply_unitary(s, ops.u_m.adjoint());
  out.ledger.oracle_calls += 1;
  return out;
}

PipelineResult matmul_sve(const DenseMatrix& a, const DenseMatrix& b,
                          double eps, const PipelineOptions& opts) {
  const DenseMatrix c = checked_product(a, b);
  if (!(eps > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "eps must be positive");
  }
  PipelineResult r;
  check_support(r, a, b, opts);
  const MatrixProfile prof = matrix_profile(a);
  const double fa = prof.frobenius, smax = prof.sigma_max;
  // Budget split: eps1 = e ||A||_F, eps2 = eps1 ||B||^2 sigma_max and
  // eps2 = eps3 ||AB||^2 with the final error sqrt(3) eps3 <= eps.
  const double eps_rel = sigma_accuracy(c, b, eps, fa * smax);
  const auto [t, eps_sigma] = phase_plan(opts, 2.0 * eps_rel, 0.5);
  ProductCircuit circuit = sve_circuit(a, b, t, opts.exact_phase);
  CostLedger& ledger = circuit.ledger;
  r.state = shrink_rows(postselect_all(circuit.state, circuit.keep),
                        qubits_for(a.rows()));
  charge_amplification(ledger, r.state.success_probability);
  const double kappa = condition_number(prof);
  ledger.model_costs["sve_model"] =
      fa * b.norm() * kappa * kappa / (eps * c.norm());
  r.state.ledger = ledger;
  r.phase_bits = t;
  r.epsilon = eps_sigma;
  r.predicted_bound = sve_bound(a, b, eps_sigma, fa);
  r.formula_probability = std::pow(c.norm() / (b.norm() * smax), 2);
  finish(r, c);
  return r;
}

ProductCircuit hhl_circuit(const DenseMatrix& a, const DenseMatrix& b,
                           int phase_bits, bool exact_phase) {
  const double smax = matrix_profile(a).sigma_max;
  const double tau = hhl_time(smax);
  const int t = phase_bits;
  const int q = qubits_for(std::max(a.rows(), a.cols()));
  const int qj = qubits_for(b.cols());
  const Index p = pow2(q);

  const DenseMatrix dil = hermitian_dilation(pad(a, p, p));
  Eigen::SelfAdjointEigenSolver<Matrix> es(dil);
  if (es.info() != Eigen::Success) {
    throw Error(ErrorKind::kNoConvergence, "dilation eigendecomposition failed");
  }
  Vector phases(2 * p);
  for (Index k = 0; k < 2 * p; ++k) {
    phases[k] = std::polar(1.0, es.eigenvalues()[k] * tau);
  }
  const Matrix u =
      es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
  const Operator evolve = Operator::dense({"flag", "idx"}, u, 1.0, 1e-9);

  Statevector s({{"flag", 1}, {"idx", q}, {"j", qj}},
                column_state(b, p, q + 1, qj));
  s = insert_register(s, {"anc", 1}, 3);
  ProductCircuit out{Statevector::scalar(),
                     {{"anc", 0}, {"phase", 0}, {"flag", 0}}, "idx", smax, t, {}};
  out.ledger.oracle_calls += 1;  // |B>

  const Index grid = pow2(t);
  const auto y_max = std::llround(smax * tau * static_cast<double>(grid) / (2.0 * kPi));
  if (!exact_phase && y_max > 0) out.sigma_hat = label_phase(y_max, t) / tau;
  const double sigma_hat = out.sigma_hat;
  const PhaseFunction rotate{"anc", [&](double lambda) {
                               const double sigma = signed_phase(lambda) / tau;
                               return amplitude_rotation(
                                   std::clamp(sigma / sigma_hat, -1.0, 1.0));
                             }};
  out.state = apply_phase_function(evolve, s, rotate, PhaseConfig::from_bits(t),
                                   exact_phase, &out.ledger);
  out.ledger.hamiltonian_simulations += 2 * static_cast<std::uint64_t>(grid - 1);
  return out;
}

PipelineResult matmul_hhl(const DenseMatrix& a, const DenseMatrix& b,
                          double eps, const PipelineOptions& opts) {
  const DenseMatrix c = checked_product(a, b);
  if (!(eps > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "eps must be positive");
  }
  PipelineResult r;
  check_support(r, a, b, opts);
  const MatrixProfile prof = matrix_profile(a);
  const double smax = prof.sigma_max;
  const double tau = hhl_time(smax);
  // |d sigma| = |d lambda| / tau, so the phase needs eps * sigma_max * tau.
  const double eps_rel = sigma_accuracy(c, b, eps, smax * smax);
  const auto [t, eps_sigma] =
      phase_plan(opts, eps_rel * kPi / 2.0, 1.0 / (tau * smax));
  ProductCircuit circuit = hhl_circuit(a, b, t, opts.exact_phase);
  CostLedger& ledger = circuit.ledger;
  r.state = shrink_rows(postselect_all(circuit.state, circuit.keep),
                        qubits_for(a.rows()));
  charge_amplification(ledger, r.state.success_probability);
  const double kappa = condition_number(prof);
  ledger.model_costs["hhl_model"] = kappa * kappa * kappa / eps;
  r.state.ledger = ledger;
  r.phase_bits = t;
  r.epsilon = eps_sigma;
  r.predicted_bound = sve_bound(a, b, eps_sigma, smax);
  r.formula_probability = std::pow(c.norm() / (b.norm() * smax), 2);
  finish(r, c);
  return r;
}

}  // namespace qmm
