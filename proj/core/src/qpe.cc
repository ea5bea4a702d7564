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

#include "qmm/qpe.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qmm/error.h"

namespace qmm {

PhaseConfig PhaseConfig::from_bits(int t) {
  if (t < 1 || t > kMaxPhaseBits) {
    throw Error(ErrorKind::kInvalidArgument,
                "phase bits must be in [1, " + std::to_string(kMaxPhaseBits) +
                    "], got " + std::to_string(t));
  }
  PhaseConfig cfg;
  cfg.phase_bits = t;
  cfg.epsilon = kPi / static_cast<double>(pow2(t));
  return cfg;
}

int bits_for_accuracy(double eps) {
  if (!(eps > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "accuracy must be positive");
  }
  return static_cast<int>(std::max<long long>(1, ceil_tolerant(std::log2(kPi / eps))));
}

PhaseConfig PhaseConfig::from_epsilon(double eps, int guard_bits) {
  return from_bits(bits_for_accuracy(eps) + guard_bits);
}

double label_phase(Index y, int t) {
  return 2.0 * kPi * static_cast<double>(y) / static_cast<double>(pow2(t));
}

Operator grover_rotation(const Statevector& phi) {
  if (phi.layout().empty() || phi.layout().front().qubits != 1) {
    throw Error(ErrorKind::kRegisterMismatch,
                "Grover rotation needs a leading one-qubit register");
  }
  const Index n = phi.size();
  const Vector& v = phi.amplitudes();
  Matrix refl = 2.0 * v * v.adjoint() - Matrix::Identity(n, n);
  // Z here maps |0> to -|0> and fixes |1>, so G is the rotation
  // [[cos 2t, sin 2t], [-sin 2t, cos 2t]] on {|0>|u>, |1>|v>}.
  refl.leftCols(n / 2) *= -1.0;
  std::vector<std::string> targets;
  for (const Register& r : phi.layout()) targets.push_back(r.name);
  return Operator::dense(std::move(targets), std::move(refl), 2.0);
}

namespace {

void charge_qpe(const Operator& u, int t, CostLedger* ledger) {
  if (ledger == nullptr) return;
  ledger->controlled_oracle_calls += static_cast<std::uint64_t>(
      std::llround(static_cast<double>(pow2(t) - 1) * u.oracle_cost()));
  ledger->phase_bits_used = std::max(ledger->phase_bits_used, t);
}

}  // namespace

Statevector phase_estimate(const Operator& u, const Statevector& s,
                           const PhaseConfig& cfg, CostLedger* ledger,
                           const std::string& phase_reg) {
  const int t = cfg.phase_bits;
  if (t < 1 || t > kMaxPhaseBits) {
    throw Error(ErrorKind::kInvalidArgument, "phase bits out of range");
  }
  Statevector x = insert_register(s, {phase_reg, t}, 0);
  x = apply_transform(x, phase_reg, Transform::kWalshHadamard);
  Operator p = u;
  for (int k = 0; k < t; ++k) {
    if (k > 0) p = p.power(2);
    x = apply_unitary(x, p, QubitControl{phase_reg, k});
  }
  x = apply_transform(x, phase_reg, Transform::kInverseQft);
  charge_qpe(u, t, ledger);
  return x;
}

Statevector undo_phase_estimate(const Operator& u, const Statevector& s,
                                CostLedger* ledger,
                                const std::string& phase_reg) {
  const int t = s.reg(phase_reg).qubits;
  Statevector x = apply_transform(s, phase_reg, Transform::kQft);
  std::vector<Operator> powers{u.adjoint()};
  for (int k = 1; k < t; ++k) powers.push_back(powers.back().power(2));
  for (int k = t - 1; k >= 0; --k) {
    x = apply_unitary(x, powers[k], QubitControl{phase_reg, k});
  }
  x = apply_transform(x, phase_reg, Transform::kWalshHadamard);
  charge_qpe(u, t, ledger);
  return x;
}

double qpe_kernel(double lambda, Index y, int t) {
  const double n = static_cast<double>(pow2(t));
  const double delta = lambda - 2.0 * kPi * static_cast<double>(y) / n;
  const double den = std::sin(delta / 2.0);
  if (std::abs(den) < 1e-14) return 1.0;
  const double num = std::sin(n * delta / 2.0);
  return (num * num) / (n * n * den * den);
}

Statevector apply_phase_function(const Operator& u, const Statevector& s,
                                 const PhaseFunction& f, const PhaseConfig& cfg,
                                 bool exact, CostLedger* ledger,
                                 const std::string& phase_reg) {
  const int t = cfg.phase_bits;
  const Index kd = s.reg(f.reg).dimension();
  if (!exact) {
    Statevector x = phase_estimate(u, s, cfg, ledger, phase_reg);
    std::vector<Matrix> blocks;
    blocks.reserve(cfg.grid());
    for (Index y = 0; y < cfg.grid(); ++y) {
      blocks.push_back(f.fn(label_phase(y, t)));
    }
    x = apply_unitary(
        x, Operator::multiplexed({phase_reg}, {f.reg}, std::move(blocks)));
    return undo_phase_estimate(u, x, ledger, phase_reg);
  }
  std::vector<Matrix> blocks;
  for (const Matrix& b : u.blocks()) {
    Eigen::ComplexSchur<Matrix> schur(b);
    const Matrix& z = schur.matrixU();
    const Index d = b.rows();
    Matrix combined = Matrix::Zero(d * kd, d * kd);
    for (Index m = 0; m < d; ++m) {
      double lambda = std::arg(schur.matrixT()(m, m));
      if (lambda < 0) lambda += 2.0 * kPi;
      const Matrix proj = z.col(m) * z.col(m).adjoint();
      const Matrix v = f.fn(lambda);
      for (Index r = 0; r < d; ++r) {
        for (Index c = 0; c < d; ++c) {
          combined.block(r * kd, c * kd, kd, kd) += proj(r, c) * v;
        }
      }
    }
    blocks.push_back(std::move(combined));
  }
  std::vector<std::string> targets = u.targets();
  targets.push_back(f.reg);
  Statevector x = apply_unitary(
      s, Operator::multiplexed(u.selectors(), std::move(targets),
                               std::move(blocks), 0.0, 1e-8));
  charge_qpe(u, t, ledger);
  charge_qpe(u, t, ledger);
  // The phase register returns to |0>; it is kept as a one-state placeholder.
  return insert_register(x, {phase_reg, 0}, 0);
}

double FixedPoint::resolution() const {
  return std::ldexp(1.0, -fraction_bits);
}

bool FixedPoint::representable(double v) const {
  const double top = std::ldexp(1.0, is_signed ? integer_bits - 1 : integer_bits);
  const double low = is_signed ? -top : 0.0;
  const double r = std::nearbyint(v / resolution()) * resolution();
  return r >= low && r < top;
}

Index FixedPoint::encode(double v) const {
  if (!std::isfinite(v) || !representable(v)) {
    throw Error(ErrorKind::kInvalidArgument,
                "value " + std::to_string(v) + " does not fit the encoding");
  }
  const long long q = std::llrint(v / resolution());
  return static_cast<Index>(q) & (pow2(width()) - 1);
}

double FixedPoint::decode(Index code) const {
  Index q = code & (pow2(width()) - 1);
  if (is_signed && (q >> (width() - 1)) != 0) q -= pow2(width());
  return static_cast<double>(q) * resolution();
}

FixedPoint FixedPoint::for_phase_bits(int t) {
  return {2, std::max(0, t - 2), true};
}

TagResult tag_even_function(const Statevector& s, const Operator& u,
                            const std::function<double(Index)>& f,
                            const FixedPoint& enc, CostLedger* ledger,
                            const std::string& tag_reg,
                            const std::string& phase_reg) {
  const int t = s.reg(phase_reg).qubits;
  const Index n = pow2(t);
  std::vector<Index> codes(n);
  for (Index y = 0; y < n; ++y) {
    const double a = f(y), b = f((n - y) % n);
    if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
      throw Error(ErrorKind::kNotEven,
                  "f(" + std::to_string(y) + ") != f(" +
                      std::to_string((n - y) % n) + ")");
    }
    codes[y] = enc.encode(a);
  }
  Statevector x = insert_register(s, {tag_reg, enc.width()}, 0);
  x = apply_xor_map(x, phase_reg, tag_reg, [&](Index y) { return codes[y]; });
  x = undo_phase_estimate(u, x, ledger, phase_reg);
  return {x, x.marginal(phase_reg)[0]};
}

Matrix amplitude_rotation(Complex a) {
  if (std::abs(a) > 1.0 + 1e-12) {
    throw Error(ErrorKind::kRotationRange,
                "rotation amplitude " + std::to_string(std::abs(a)) +
                    " exceeds 1");
  }
  const double mag = std::min(1.0, std::abs(a));
  const double r = std::sqrt(std::max(0.0, 1.0 - mag * mag));
  if (mag == 1.0) a /= std::abs(a);
  Matrix m(2, 2);
  m << a, -r, r, std::conj(a);
  return m;
}

Operator value_rotation(const std::string& value_reg, int value_qubits,
                        const std::string& anc_reg, const FixedPoint& enc,
                        double c) {
  if (enc.width() != value_qubits) {
    throw Error(ErrorKind::kRegisterMismatch,
                "encoding width does not match the value register");
  }
  std::vector<Matrix> blocks;
  for (Index code = 0; code < pow2(value_qubits); ++code) {
    // Values no state can populate are clamped to keep the block unitary.
    const double a = std::clamp(c * enc.decode(code), -1.0, 1.0);
    blocks.push_back(amplitude_rotation(a));
  }
  return Operator::multiplexed({value_reg}, {anc_reg}, std::move(blocks));
}

Statevector controlled_value_rotation(const Statevector& s,
                                      const std::string& value_reg, double c,
                                      const FixedPoint& enc,
                                      const std::string& anc_reg) {
  const RealVector p = s.marginal(value_reg);
  for (Index code = 0; code < p.size(); ++code) {
    if (p[code] > 1e-24 && std::abs(c * enc.decode(code)) > 1.0 + 1e-12) {
      throw Error(ErrorKind::kRotationRange,
                  "c * value = " + std::to_string(c * enc.decode(code)) +
                      " exceeds 1");
    }
  }
  const Statevector x = insert_register(s, {anc_reg, 1}, s.layout().size());
  return apply_unitary(
      x, value_rotation(value_reg, s.reg(value_reg).qubits, anc_reg, enc, c));
}

}  // namespace qmm
