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


#include "qmm/state_prep.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qmm/error.h"
#include "qmm/linalg.h"

namespace qmm {
namespace {

double log2_at_least_one(double v) { return std::max(1.0, std::log2(v)); }

// Uniform superposition over `indices` of an n-entry register.
Statevector uniform_over(const std::string& reg, Index n,
                         const std::vector<Index>& indices) {
  Vector v = Vector::Zero(n);
  for (Index k : indices) v[k] = 1.0;
  return Statevector::from_vector(reg, v);
}

std::string fresh_name(const Statevector& s, const std::string& base) {
  std::string name = base;
  while (s.has_register(name)) name += "_";
  return name;
}

// Hamiltonian-simulation preparation. With allow_zeros the base may cover
// entries where f vanishes; amplification then pays for their weight.
PrepReport hamiltonian_core(const RealVector& f, const Statevector& base,
                            double eps, bool allow_zeros) {
  if (base.layout().size() != 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "base state must hold a single register");
  }
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "eps must lie in (0, 1)");
  }
  const Index n = base.size();
  if (f.size() > n) {
    throw Error(ErrorKind::kDimensionMismatch,
                "f has more entries than the base register");
  }
  const Vector& b = base.amplitudes();
  RealVector fk = RealVector::Zero(n);
  fk.head(f.size()) = f;
  double maxf = 0.0, minf = 0.0, zero_weight = 0.0;
  for (Index k = 0; k < n; ++k) {
    if (std::abs(b[k]) == 0.0) continue;
    const double a = std::abs(fk[k]);
    if (a == 0.0) {
      if (!allow_zeros) {
        throw Error(ErrorKind::kInvalidArgument,
                    "f vanishes at index " + std::to_string(k) +
                        " on the support of the base state");
      }
      zero_weight += std::norm(b[k]);
      continue;
    }
    maxf = std::max(maxf, a);
    minf = minf == 0.0 ? a : std::min(minf, a);
  }
  if (maxf == 0.0) {
    throw Error(ErrorKind::kZeroVector, "f vanishes on the base support");
  }
  const double kappa = maxf / minf;
  const double eps1 = eps / std::sqrt(kappa);
  const double t = std::asin(eps1) / maxf;
  const double eps0 = eps1 / kappa;
  if (maxf * t >= 1.0) {
    throw Error(ErrorKind::kInvalidArgument, "evolution angle exceeds 1");
  }

  const std::string reg = base.layout().front().name;
  const std::string h = fresh_name(base, "h");
  Statevector s = insert_register(base, {h, 1}, 0);
  s = apply_transform(s, h, Transform::kWalshHadamard);
  Matrix forward = Matrix::Zero(n, n), backward = Matrix::Zero(n, n);
  for (Index k = 0; k < n; ++k) {
    forward(k, k) = std::polar(1.0, fk[k] * t);
    backward(k, k) = std::polar(1.0, -fk[k] * t);
  }
  s = apply_unitary(s, Operator::multiplexed({h}, {reg}, {forward, backward}));
  s = apply_transform(s, h, Transform::kWalshHadamard);
  Matrix sdag = Matrix::Identity(2, 2);
  sdag(1, 1) = Complex(0.0, -1.0);
  s = apply_unitary(s, Operator::dense({h}, sdag));

  PrepReport r;
  r.method = PrepMethod::kHamiltonian;
  r.result = postselect(s, h, 1);
  CostLedger& ledger = r.result.ledger;
  ledger.oracle_calls = 1;
  ledger.hamiltonian_simulations = 1;
  // Amplification is charged for the guaranteed floor eps0^2 on the
  // probability (scaled by the support weight when zeros are present).
  charge_amplification(ledger, eps0 * eps0 * (1.0 - zero_weight));
  ledger.postselect_probability = r.result.success_probability;
  r.cost_model = "hamiltonian";

  Vector target = Vector::Zero(n);
  for (Index k = 0; k < n; ++k) target[k] = fk[k] * b[k];
  r.realized_distance =
      fidelity(r.result.state,
               Statevector(base.layout(), target / target.norm()))
          .distance;
  r.target_fidelity_bound = std::sqrt(kappa / 3.0) * eps1;
  r.epsilon0 = eps0;
  r.epsilon1 = eps1;
  r.evolution_time = t;
  return r;
}

}  // namespace

VectorSpec VectorSpec::from_values(const RealVector& values, double zero_tol) {
  VectorSpec x;
  x.values = values;
  for (Index k = 0; k < values.size(); ++k) {
    if (!std::isfinite(values[k])) {
      throw Error(ErrorKind::kInvalidArgument, "vector entries must be finite");
    }
    const double a = std::abs(values[k]);
    if (a <= zero_tol) continue;
    x.support.push_back(k);
    x.max_abs = std::max(x.max_abs, a);
    x.min_abs_nonzero = x.min_abs_nonzero == 0.0
                            ? a
                            : std::min(x.min_abs_nonzero, a);
  }
  if (x.support.empty()) {
    throw Error(ErrorKind::kZeroVector, "vector has empty support");
  }
  x.kappa_x = x.max_abs / x.min_abs_nonzero;
  return x;
}

VectorSpec VectorSpec::restricted(const std::vector<Index>& indices) const {
  RealVector v = RealVector::Zero(values.size());
  for (Index k : indices) v[k] = values[k];
  return from_values(v);
}

Statevector VectorSpec::normalized(const std::string& reg) const {
  return Statevector::from_vector(reg, values.cast<Complex>());
}

std::string to_string(PrepMethod m) {
  switch (m) {
    case PrepMethod::kDirect: return "direct";
    case PrepMethod::kHamiltonian: return "hamiltonian";
    case PrepMethod::kSparse: return "sparse";
    case PrepMethod::kDyadic: return "dyadic";
    case PrepMethod::kSignShift: return "signshift";
  }
  return "unknown";
}

PreparedState synthesize_direct(const VectorSpec& x, double eps,
                                const PrepOptions& opts) {
  if (!(eps > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "eps must be positive");
  }
  const Statevector target = x.normalized(opts.reg);
  const Matrix u = complete_unitary(target.amplitudes());
  PreparedState out{Statevector(target.layout(), u.col(0)), 1.0, {}};
  const double n = static_cast<double>(x.values.size());
  const double body = n * n * std::pow(log2_at_least_one(n), 2);
  out.ledger.synthesis_gates =
      body * std::pow(log2_at_least_one(body / eps), opts.synthesis_exponent);
  return out;
}

PrepReport prep_hamiltonian(const RealVector& f, const Statevector& base,
                            double eps) {
  return hamiltonian_core(f, base, eps, false);
}

PrepReport prep_sparse(const VectorSpec& x, double eps,
                       const PrepOptions& opts) {
  const Index n = x.values.size();
  std::vector<Index> all(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) all[static_cast<std::size_t>(k)] = k;
  const Statevector base =
      uniform_over(opts.reg, n, opts.known_support ? x.support : all);
  PrepReport r = hamiltonian_core(x.values, base, eps, !opts.known_support);
  r.method = PrepMethod::kSparse;
  r.cost_model = opts.known_support ? "sparse-known-support"
                                    : "sparse-unknown-support";
  r.realized_distance =
      fidelity(r.result.state, x.normalized(opts.reg)).distance;
  return r;
}

int dyadic_band_count(double kappa) {
  if (!(kappa >= 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "kappa must be at least 1");
  }
  return static_cast<int>(std::floor(std::log2(kappa) + 1e-12)) + 1;
}

std::vector<VectorSpec> dyadic_bands(const VectorSpec& x) {
  const int q = dyadic_band_count(x.kappa_x);
  std::vector<VectorSpec> bands(static_cast<std::size_t>(q));
  for (VectorSpec& b : bands) b.values = RealVector::Zero(x.values.size());
  for (Index k : x.support) {
    const double a = std::abs(x.values[k]);
    int j = 1;
    while (j < q && a >= std::ldexp(x.min_abs_nonzero, j)) ++j;
    VectorSpec& b = bands[static_cast<std::size_t>(j - 1)];
    b.values[k] = x.values[k];
    b.support.push_back(k);
    b.max_abs = std::max(b.max_abs, a);
    b.min_abs_nonzero = b.min_abs_nonzero == 0.0
                            ? a
                            : std::min(b.min_abs_nonzero, a);
  }
  for (VectorSpec& b : bands) {
    if (!b.support.empty()) b.kappa_x = b.max_abs / b.min_abs_nonzero;
  }
  return bands;
}

PrepReport prep_dyadic(const VectorSpec& x, double eps,
                       const PrepOptions& opts) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "eps must lie in (0, 1)");
  }
  const double xnorm = x.values.norm();
  std::vector<VectorSpec> bands;
  std::vector<double> weights;
  for (VectorSpec& b : dyadic_bands(x)) {
    if (b.support.empty()) continue;
    weights.push_back(b.values.norm() / xnorm);
    bands.push_back(std::move(b));
  }
  double lambda_sum = 0.0;
  for (double w : weights) lambda_sum += w;
  // Normalizing sum_j lambda_j |y~_j> at most doubles sum_j lambda_j e_j.
  const double eps_band = eps * std::sqrt(3.0) / (2.0 * lambda_sum);
  std::vector<PreparedState> parts;
  double bound = 0.0;
  for (std::size_t j = 0; j < bands.size(); ++j) {
    PrepReport part = prep_sparse(bands[j], eps_band, opts);
    bound += 2.0 * weights[j] * part.target_fidelity_bound;
    parts.push_back(std::move(part.result));
  }
  PrepReport r;
  r.method = PrepMethod::kDyadic;
  r.result = lcu_combine(parts, weights, CombineScheme::kLcu);
  r.target_fidelity_bound = bound;
  r.realized_distance =
      fidelity(r.result.state, x.normalized(opts.reg)).distance;
  const double q = static_cast<double>(bands.size());
  const double prep = q * q * std::pow(log2_at_least_one(q), 2);
  r.result.ledger.model_costs["dyadic_formula"] =
      std::pow(q, 2.5) * std::pow(log2_at_least_one(q), 2) *
      std::pow(log2_at_least_one(prep / eps), opts.synthesis_exponent) *
      log2_at_least_one(static_cast<double>(x.values.size())) / eps;
  r.cost_model = "lcu";
  return r;
}

PrepReport prep_signshift(const VectorSpec& x, double eps,
                          const PrepOptions& opts) {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "eps must lie in (0, 1)");
  }
  const double m = x.max_abs;
  RealVector y = RealVector::Zero(x.values.size());
  for (Index k : x.support) y[k] = x.values[k] >= 0.0 ? m : -m;
  const RealVector z = x.values + y;
  const double xnorm = x.values.norm();
  const double lambda = z.norm() / xnorm, mu = y.norm() / xnorm;
  const double eps_part = eps * std::sqrt(3.0) / (2.0 * (lambda + mu));
  PrepReport pz = prep_sparse(VectorSpec::from_values(z), eps_part, opts);
  PrepReport py = prep_sparse(VectorSpec::from_values(y), eps_part, opts);
  PrepReport r;
  r.method = PrepMethod::kSignShift;
  r.target_fidelity_bound = 2.0 * (lambda * pz.target_fidelity_bound +
                                   mu * py.target_fidelity_bound);
  r.result = lcu_combine({pz.result, py.result}, {lambda, -mu},
                         CombineScheme::kHadamardTest);
  r.realized_distance =
      fidelity(r.result.state, x.normalized(opts.reg)).distance;
  CostLedger& ledger = r.result.ledger;
  ledger.model_costs["hadamard_test"] =
      static_cast<double>(ledger.total_queries());
  ledger.model_costs["log_n_over_eps2"] =
      log2_at_least_one(static_cast<double>(x.values.size())) / (eps * eps);
  r.cost_model = "hadamard_test";
  return r;
}

PreparedState lcu_combine(const std::vector<PreparedState>& states,
                          const std::vector<double>& weights,
                          CombineScheme scheme) {
  if (states.empty() || states.size() != weights.size()) {
    throw Error(ErrorKind::kInvalidArgument,
                "need one weight per state and at least one state");
  }
  std::vector<const PreparedState*> used;
  std::vector<double> w;
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (!(states[k].state.layout() == states.front().state.layout())) {
      throw Error(ErrorKind::kRegisterMismatch,
                  "combined states must share a layout");
    }
    if (!std::isfinite(weights[k])) {
      throw Error(ErrorKind::kInvalidArgument, "weights must be finite");
    }
    if (weights[k] == 0.0) continue;
    used.push_back(&states[k]);
    w.push_back(weights[k]);
  }
  if (used.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "all weights are zero");
  }
  const Index count = static_cast<Index>(used.size());
  const int q = qubits_for(count);
  const Statevector& first = used.front()->state;
  const std::string sel = fresh_name(first, "select");

  Vector prep = Vector::Zero(pow2(q));
  for (Index k = 0; k < count; ++k) {
    const double a = std::abs(w[static_cast<std::size_t>(k)]);
    prep[k] = scheme == CombineScheme::kLcu ? std::sqrt(a) : a;
  }
  prep /= prep.norm();
  const Matrix prep_u = complete_unitary(prep);

  std::vector<std::string> data;
  for (const Register& r : first.layout()) data.push_back(r.name);
  const Index d = first.size();
  std::vector<Matrix> blocks(static_cast<std::size_t>(pow2(q)),
                             Matrix::Identity(d, d));
  for (Index k = 0; k < count; ++k) {
    const double sign = w[static_cast<std::size_t>(k)] < 0.0 ? -1.0 : 1.0;
    blocks[static_cast<std::size_t>(k)] =
        complete_unitary(sign * used[static_cast<std::size_t>(k)]
                                    ->state.amplitudes());
  }

  Statevector s = insert_register(Statevector::zero(first.layout()), {sel, q}, 0);
  s = apply_unitary(s, Operator::dense({sel}, prep_u));
  s = apply_unitary(s, Operator::multiplexed({sel}, data, std::move(blocks)));
  if (scheme == CombineScheme::kLcu) {
    s = apply_unitary(s, Operator::dense({sel}, prep_u.adjoint()));
  } else {
    s = apply_transform(s, sel, Transform::kWalshHadamard);
  }
  PreparedState out = postselect(s, sel, 0);

  CostLedger ledger = used.front()->ledger;
  for (const PreparedState* p : used) ledger = ledger_max(ledger, p->ledger);
  charge_amplification(ledger, out.success_probability);
  out.ledger = std::move(ledger);
  return out;
}

}  // namespace qmm
