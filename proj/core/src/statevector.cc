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

#include "qmm/statevector.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <random>
#include <set>
#include <string>
#include <unordered_map>

#include "qmm/error.h"

namespace qmm {

namespace {

constexpr double kNormTol = 1e-10;

Index digit_at(Index flat, int offset, int qubits) {
  return (flat >> offset) & (pow2(qubits) - 1);
}

void check_unitary(const Matrix& u, double tol) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw Error(ErrorKind::kNotUnitary, "operator block must be square");
  }
  const double dev =
      (u.adjoint() * u - Matrix::Identity(u.rows(), u.cols())).norm();
  if (!(dev <= tol * std::max<double>(1.0, std::sqrt(double(u.rows()))))) {
    throw Error(ErrorKind::kNotUnitary,
                "operator is not unitary (|U^dag U - I| = " +
                    std::to_string(dev) + ")");
  }
}

// Offset and width of each named register in layout order lookups.
struct Placement {
  int offset;
  int qubits;
};

Placement place(const Statevector& s, const std::string& name) {
  return {s.bit_offset(name), s.reg(name).qubits};
}

}  // namespace

int qubits_for(Index n) {
  int q = 0;
  while (pow2(q) < n) ++q;
  return q;
}

long long ceil_tolerant(double x) {
  const double r = std::round(x);
  if (std::abs(x - r) <= 1e-9 * std::max(1.0, std::abs(x))) {
    return static_cast<long long>(r);
  }
  return static_cast<long long>(std::ceil(x));
}

int max_qubits() {
  static const int cap = [] {
    const char* env = std::getenv("QMM_MAX_QUBITS");
    if (env == nullptr || *env == '\0') return 24;
    const int v = std::atoi(env);
    return v > 0 ? std::min(v, 30) : 24;
  }();
  return cap;
}

Statevector::Statevector(Layout layout, Vector amplitudes)
    : layout_(std::move(layout)), amplitudes_(std::move(amplitudes)) {
  int total = 0;
  std::set<std::string> names;
  for (const Register& r : layout_) {
    if (r.qubits < 0) {
      throw Error(ErrorKind::kRegisterMismatch,
                  "negative register width: " + r.name);
    }
    if (!names.insert(r.name).second) {
      throw Error(ErrorKind::kRegisterMismatch,
                  "duplicate register name: " + r.name);
    }
    total += r.qubits;
  }
  if (total > max_qubits()) {
    throw Error(ErrorKind::kQubitBudget,
                "layout needs " + std::to_string(total) +
                    " qubits; the cap is " + std::to_string(max_qubits()));
  }
  if (amplitudes_.size() != pow2(total)) {
    throw Error(ErrorKind::kDimensionMismatch,
                "amplitude count does not match the layout");
  }
  const double norm = amplitudes_.norm();
  if (!(std::abs(norm - 1.0) <= kNormTol)) {
    throw Error(ErrorKind::kNotNormalized,
                "state norm is " + std::to_string(norm));
  }
}

Statevector Statevector::zero(Layout layout) { return basis(std::move(layout), 0); }

Statevector Statevector::basis(Layout layout, Index index) {
  int total = 0;
  for (const Register& r : layout) total += r.qubits;
  if (total > max_qubits()) {
    throw Error(ErrorKind::kQubitBudget,
                "layout needs " + std::to_string(total) + " qubits");
  }
  if (index < 0 || index >= pow2(total)) {
    throw Error(ErrorKind::kInvalidArgument, "basis index out of range");
  }
  Vector a = Vector::Zero(pow2(total));
  a[index] = 1.0;
  return Statevector(std::move(layout), std::move(a));
}

Statevector Statevector::from_vector(const std::string& name,
                                     const Vector& values) {
  const double norm = values.norm();
  if (values.size() == 0 || !(norm > 0.0)) {
    throw Error(ErrorKind::kZeroVector, "cannot encode a zero vector");
  }
  const int q = qubits_for(values.size());
  Vector a = Vector::Zero(pow2(q));
  a.head(values.size()) = values / norm;
  return Statevector({{name, q}}, std::move(a));
}

Statevector Statevector::scalar() {
  Vector a(1);
  a[0] = 1.0;
  return Statevector({}, std::move(a));
}

int Statevector::total_qubits() const {
  int total = 0;
  for (const Register& r : layout_) total += r.qubits;
  return total;
}

bool Statevector::has_register(const std::string& name) const {
  return std::any_of(layout_.begin(), layout_.end(),
                     [&](const Register& r) { return r.name == name; });
}

std::size_t Statevector::position(const std::string& name) const {
  for (std::size_t k = 0; k < layout_.size(); ++k) {
    if (layout_[k].name == name) return k;
  }
  throw Error(ErrorKind::kRegisterMismatch, "no register named " + name);
}

const Register& Statevector::reg(const std::string& name) const {
  return layout_[position(name)];
}

int Statevector::bit_offset(const std::string& name) const {
  const std::size_t p = position(name);
  int offset = 0;
  for (std::size_t k = p + 1; k < layout_.size(); ++k) {
    offset += layout_[k].qubits;
  }
  return offset;
}

Index Statevector::digit(Index flat, const std::string& name) const {
  const Placement pl = place(*this, name);
  return digit_at(flat, pl.offset, pl.qubits);
}

RealVector Statevector::marginal(const std::string& name) const {
  const Placement pl = place(*this, name);
  RealVector p = RealVector::Zero(pow2(pl.qubits));
  for (Index k = 0; k < size(); ++k) {
    p[digit_at(k, pl.offset, pl.qubits)] += std::norm(amplitudes_[k]);
  }
  return p;
}

// --- Operator ---------------------------------------------------------------

Operator Operator::dense(std::vector<std::string> targets, Matrix u,
                         double oracle_cost, double tol) {
  return multiplexed({}, std::move(targets), {std::move(u)}, oracle_cost, tol);
}

Operator Operator::multiplexed(std::vector<std::string> selectors,
                               std::vector<std::string> targets,
                               std::vector<Matrix> blocks, double oracle_cost,
                               double tol) {
  if (targets.empty() || blocks.empty()) {
    throw Error(ErrorKind::kInvalidArgument,
                "operator needs targets and at least one block");
  }
  std::set<std::string> seen;
  for (const auto& n : targets) {
    if (!seen.insert(n).second) {
      throw Error(ErrorKind::kRegisterMismatch, "repeated register " + n);
    }
  }
  for (const auto& n : selectors) {
    if (!seen.insert(n).second) {
      throw Error(ErrorKind::kRegisterMismatch, "repeated register " + n);
    }
  }
  const Index d = blocks.front().rows();
  for (const Matrix& b : blocks) {
    if (b.rows() != d) {
      throw Error(ErrorKind::kDimensionMismatch, "blocks differ in size");
    }
    check_unitary(b, tol);
  }
  Operator op;
  op.selectors_ = std::move(selectors);
  op.targets_ = std::move(targets);
  op.blocks_ = std::move(blocks);
  op.oracle_cost_ = oracle_cost;
  return op;
}

Operator Operator::adjoint() const {
  Operator op = *this;
  for (Matrix& b : op.blocks_) b = b.adjoint().eval();
  return op;
}

Operator Operator::power(std::uint64_t k) const {
  Operator op = *this;
  for (std::size_t n = 0; n < blocks_.size(); ++n) {
    Matrix base = blocks_[n];
    Matrix acc = Matrix::Identity(base.rows(), base.cols());
    for (std::uint64_t e = k; e != 0; e >>= 1) {
      if (e & 1) acc = (acc * base).eval();
      if (e > 1) base = (base * base).eval();
    }
    op.blocks_[n] = std::move(acc);
  }
  op.oracle_cost_ = oracle_cost_ * static_cast<double>(k);
  return op;
}

Operator Operator::with_cost(double oracle_cost) const {
  Operator op = *this;
  op.oracle_cost_ = oracle_cost;
  return op;
}

// --- kernels ----------------------------------------------------------------

Statevector apply_unitary(const Statevector& s, const Operator& u,
                          const std::optional<QubitControl>& control) {
  const Index n = s.size();
  // Offsets of each target-block basis state, last target least significant.
  std::vector<Index> offsets{0};
  Index tmask = 0;
  for (const std::string& name : u.targets()) {
    const Placement pl = place(s, name);
    std::vector<Index> next;
    next.reserve(offsets.size() * pow2(pl.qubits));
    for (Index hi : offsets) {
      for (Index v = 0; v < pow2(pl.qubits); ++v) {
        next.push_back(hi + (v << pl.offset));
      }
    }
    offsets = std::move(next);
    tmask |= (pow2(pl.qubits) - 1) << pl.offset;
  }
  const Index d = static_cast<Index>(offsets.size());
  if (d != u.block_dimension()) {
    throw Error(ErrorKind::kRegisterMismatch,
                "operator dimension " + std::to_string(u.block_dimension()) +
                    " does not match target registers (" + std::to_string(d) +
                    ")");
  }
  std::vector<Placement> sel;
  Index selector_count = 1;
  for (const std::string& name : u.selectors()) {
    sel.push_back(place(s, name));
    selector_count *= pow2(sel.back().qubits);
  }
  if (static_cast<Index>(u.blocks().size()) != selector_count) {
    throw Error(ErrorKind::kRegisterMismatch,
                "multiplexed operator block count does not match selectors");
  }
  Index cmask = 0;
  if (control) {
    const Placement pl = place(s, control->reg);
    if (control->bit < 0 || control->bit >= pl.qubits) {
      throw Error(ErrorKind::kRegisterMismatch, "control bit out of range");
    }
    cmask = Index{1} << (pl.offset + control->bit);
    if (cmask & tmask) {
      throw Error(ErrorKind::kRegisterMismatch,
                  "control qubit overlaps a target");
    }
  }

  Vector out = s.amplitudes();
  Vector in(d), res(d);
  const Index comp = (n - 1) & ~tmask;
  Index base = 0;
  do {
    if ((base & cmask) == cmask) {
      Index k = 0;
      for (const Placement& pl : sel) {
        k = (k << pl.qubits) | digit_at(base, pl.offset, pl.qubits);
      }
      const Matrix& block = u.blocks()[k];
      for (Index t = 0; t < d; ++t) in[t] = out[base + offsets[t]];
      res.noalias() = block * in;
      for (Index t = 0; t < d; ++t) out[base + offsets[t]] = res[t];
    }
    base = (base - comp) & comp;
  } while (base != 0);
  return Statevector(s.layout(), std::move(out));
}

Statevector apply_xor_map(const Statevector& s, const std::string& source,
                          const std::string& target,
                          const std::function<Index(Index)>& g) {
  const Placement src = place(s, source);
  const Placement tgt = place(s, target);
  if (source == target) {
    throw Error(ErrorKind::kRegisterMismatch, "xor map needs two registers");
  }
  std::vector<Index> table(pow2(src.qubits));
  for (Index y = 0; y < static_cast<Index>(table.size()); ++y) {
    table[y] = g(y);
    if (table[y] < 0 || table[y] >= pow2(tgt.qubits)) {
      throw Error(ErrorKind::kInvalidArgument,
                  "xor-map value does not fit register " + target);
    }
  }
  const Vector& a = s.amplitudes();
  Vector out(a.size());
  for (Index k = 0; k < a.size(); ++k) {
    const Index v = table[digit_at(k, src.offset, src.qubits)];
    out[k ^ (v << tgt.offset)] = a[k];
  }
  return Statevector(s.layout(), std::move(out));
}

namespace {

void walsh_hadamard(Vector& x) {
  const Index n = x.size();
  for (Index h = 1; h < n; h <<= 1) {
    for (Index i = 0; i < n; i += h << 1) {
      for (Index j = i; j < i + h; ++j) {
        const Complex a = x[j], b = x[j + h];
        x[j] = a + b;
        x[j + h] = a - b;
      }
    }
  }
  x /= std::sqrt(static_cast<double>(n));
}

// Radix-2 DFT, y_k = sum_j x_j e^{sign 2 pi i j k / n}, unnormalized.
void fft(Vector& x, int sign) {
  const Index n = x.size();
  for (Index i = 1, j = 0; i < n; ++i) {
    Index bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(x[i], x[j]);
  }
  for (Index len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * kPi / static_cast<double>(len);
    for (Index i = 0; i < n; i += len) {
      for (Index k = 0; k < len / 2; ++k) {
        const Complex w = std::polar(1.0, ang * static_cast<double>(k));
        const Complex a = x[i + k], b = x[i + k + len / 2] * w;
        x[i + k] = a + b;
        x[i + k + len / 2] = a - b;
      }
    }
  }
}

}  // namespace

Statevector apply_transform(const Statevector& s, const std::string& reg,
                            Transform t) {
  const Placement pl = place(s, reg);
  const Index d = pow2(pl.qubits);
  if (d == 1) return s;
  const Index n = s.size();
  const Index rmask = (d - 1) << pl.offset;
  const Index comp = (n - 1) & ~rmask;
  Vector out = s.amplitudes();
  Vector x(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  Index base = 0;
  do {
    for (Index v = 0; v < d; ++v) x[v] = out[base + (v << pl.offset)];
    switch (t) {
      case Transform::kWalshHadamard:
        walsh_hadamard(x);
        break;
      case Transform::kQft:
        fft(x, +1);
        x *= scale;
        break;
      case Transform::kInverseQft:
        fft(x, -1);
        x *= scale;
        break;
    }
    for (Index v = 0; v < d; ++v) out[base + (v << pl.offset)] = x[v];
    base = (base - comp) & comp;
  } while (base != 0);
  return Statevector(s.layout(), std::move(out));
}

Statevector apply_diagonal(const Statevector& s,
                           const std::function<Complex(Index)>& phase) {
  Vector out = s.amplitudes();
  for (Index k = 0; k < out.size(); ++k) {
    const Complex p = phase(k);
    if (std::abs(std::abs(p) - 1.0) > 1e-12) {
      throw Error(ErrorKind::kNotUnitary, "diagonal entry is not a phase");
    }
    out[k] *= p;
  }
  return Statevector(s.layout(), std::move(out));
}

Statevector tensor(const Statevector& a, const Statevector& b) {
  for (const Register& r : b.layout()) {
    if (a.has_register(r.name)) {
      throw Error(ErrorKind::kRegisterMismatch,
                  "register name collision: " + r.name);
    }
  }
  Layout layout = a.layout();
  layout.insert(layout.end(), b.layout().begin(), b.layout().end());
  int total = 0;
  for (const Register& r : layout) total += r.qubits;
  if (total > max_qubits()) {
    throw Error(ErrorKind::kQubitBudget,
                "tensor product needs " + std::to_string(total) + " qubits");
  }
  Vector out(a.size() * b.size());
  for (Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a.amplitudes()[i] * b.amplitudes();
  }
  return Statevector(std::move(layout), std::move(out));
}

Statevector insert_register(const Statevector& s, const Register& r,
                            std::size_t position) {
  if (position > s.layout().size()) {
    throw Error(ErrorKind::kRegisterMismatch, "insert position out of range");
  }
  if (s.has_register(r.name)) {
    throw Error(ErrorKind::kRegisterMismatch,
                "register name collision: " + r.name);
  }
  int low = 0;
  for (std::size_t k = position; k < s.layout().size(); ++k) {
    low += s.layout()[k].qubits;
  }
  Layout layout = s.layout();
  layout.insert(layout.begin() + static_cast<std::ptrdiff_t>(position), r);
  if (s.total_qubits() + r.qubits > max_qubits()) {
    throw Error(ErrorKind::kQubitBudget,
                "adding register " + r.name + " exceeds the qubit cap");
  }
  Vector out = Vector::Zero(s.size() << r.qubits);
  const Index lmask = pow2(low) - 1;
  for (Index k = 0; k < s.size(); ++k) {
    out[((k & ~lmask) << r.qubits) | (k & lmask)] = s.amplitudes()[k];
  }
  return Statevector(std::move(layout), std::move(out));
}

Statevector permute_registers(const Statevector& s,
                              const std::vector<std::string>& order) {
  if (order.size() != s.layout().size()) {
    throw Error(ErrorKind::kRegisterMismatch,
                "register order must name every register");
  }
  Layout layout;
  std::vector<Placement> from;
  for (const std::string& name : order) {
    layout.push_back(s.reg(name));
    from.push_back(place(s, name));
  }
  std::set<std::string> distinct(order.begin(), order.end());
  if (distinct.size() != order.size()) {
    throw Error(ErrorKind::kRegisterMismatch, "repeated register in order");
  }
  Vector out(s.size());
  for (Index k = 0; k < s.size(); ++k) {
    Index j = 0;
    for (const Placement& pl : from) {
      j = (j << pl.qubits) | digit_at(k, pl.offset, pl.qubits);
    }
    out[j] = s.amplitudes()[k];
  }
  return Statevector(std::move(layout), std::move(out));
}

Statevector rename_register(const Statevector& s, const std::string& from,
                            const std::string& to) {
  Layout layout = s.layout();
  layout[s.position(from)].name = to;
  return Statevector(std::move(layout), s.amplitudes());
}

Vector branch(const Statevector& s, const std::string& reg, Index outcome) {
  const Placement pl = place(s, reg);
  if (outcome < 0 || outcome >= pow2(pl.qubits)) {
    throw Error(ErrorKind::kInvalidArgument, "outcome out of range");
  }
  Vector out(s.size() >> pl.qubits);
  const Index lmask = pow2(pl.offset) - 1;
  for (Index j = 0; j < out.size(); ++j) {
    const Index k = ((j & ~lmask) << pl.qubits) | (outcome << pl.offset) |
                    (j & lmask);
    out[j] = s.amplitudes()[k];
  }
  return out;
}

PreparedState postselect(const Statevector& s, const std::string& reg,
                         Index outcome) {
  Vector b = branch(s, reg, outcome);
  const double p = b.squaredNorm();
  if (!(p > 1e-24)) {
    throw Error(ErrorKind::kZeroProbability,
                "postselecting " + reg + "=" + std::to_string(outcome) +
                    " has zero probability");
  }
  Layout layout = s.layout();
  layout.erase(layout.begin() + static_cast<std::ptrdiff_t>(s.position(reg)));
  PreparedState out{Statevector(std::move(layout), b / std::sqrt(p)), p, {}};
  out.ledger.postselect_probability = p;
  return out;
}

PreparedState postselect_all(
    const Statevector& s,
    const std::vector<std::pair<std::string, Index>>& outcomes) {
  PreparedState acc{s, 1.0, {}};
  for (const auto& [name, value] : outcomes) {
    PreparedState next = postselect(acc.state, name, value);
    acc.state = std::move(next.state);
    acc.success_probability *= next.success_probability;
  }
  acc.ledger.postselect_probability = acc.success_probability;
  return acc;
}

Vector partial_inner(const Statevector& s, const Statevector& ref) {
  std::vector<std::string> order;
  for (const Register& r : ref.layout()) {
    if (!s.has_register(r.name) || !(s.reg(r.name) == r)) {
      throw Error(ErrorKind::kRegisterMismatch,
                  "reference register " + r.name + " not found in state");
    }
    order.push_back(r.name);
  }
  for (const Register& r : s.layout()) {
    if (!ref.has_register(r.name)) order.push_back(r.name);
  }
  const Statevector p = permute_registers(s, order);
  const Index rest = s.size() / ref.size();
  Vector out = Vector::Zero(rest);
  for (Index x = 0; x < ref.size(); ++x) {
    const Complex c = std::conj(ref.amplitudes()[x]);
    if (c == Complex(0.0)) continue;
    out += c * p.amplitudes().segment(x * rest, rest);
  }
  return out;
}

Fidelity fidelity(const Statevector& a, const Statevector& b) {
  if (a.layout() != b.layout()) {
    throw Error(ErrorKind::kRegisterMismatch, "fidelity needs equal layouts");
  }
  Fidelity f;
  f.inner = a.amplitudes().dot(b.amplitudes());
  f.overlap = std::min(1.0, std::abs(f.inner));
  // |a - e^{i phi} b|^2 = 2 - 2|<a|b>| at the best phase.
  f.distance = std::sqrt(std::max(0.0, 2.0 - 2.0 * f.overlap));
  if (f.distance < 1e-6) {
    const Complex phase = std::abs(f.inner) > 0 ? f.inner / std::abs(f.inner)
                                                : Complex(1.0);
    f.distance = (a.amplitudes() - phase * b.amplitudes()).norm();
  }
  return f;
}

std::vector<std::uint64_t> sample_counts(const Statevector& s,
                                         const std::string& reg,
                                         std::uint64_t shots,
                                         std::uint64_t seed) {
  const RealVector p = s.marginal(reg);
  std::mt19937_64 rng(seed);
  std::discrete_distribution<Index> dist(p.data(), p.data() + p.size());
  std::vector<std::uint64_t> counts(p.size(), 0);
  for (std::uint64_t k = 0; k < shots; ++k) ++counts[dist(rng)];
  return counts;
}

GroverCheck verify_amplification(const Statevector& s,
                                 const std::function<bool(Index)>& good) {
  if (s.total_qubits() > 6) {
    throw Error(ErrorKind::kQubitBudget,
                "Grover verification is limited to 6 qubits");
  }
  const Vector& psi = s.amplitudes();
  std::vector<bool> mark(psi.size());
  double p = 0.0;
  for (Index k = 0; k < psi.size(); ++k) {
    mark[k] = good(k);
    if (mark[k]) p += std::norm(psi[k]);
  }
  GroverCheck out;
  out.charged_rounds = amplification_rounds_for(p);
  // Iterate Q = -(2|psi><psi| - I)(I - 2 P_good) until the probability stops
  // growing.
  Vector x = psi;
  double best = p;
  std::uint64_t best_k = 0;
  const std::uint64_t limit = 4 * out.charged_rounds + 4;
  for (std::uint64_t k = 1; k <= limit; ++k) {
    for (Index j = 0; j < x.size(); ++j) {
      if (mark[j]) x[j] = -x[j];
    }
    const Complex c = psi.dot(x);
    x = (2.0 * c) * psi - x;
    double q = 0.0;
    for (Index j = 0; j < x.size(); ++j) {
      if (mark[j]) q += std::norm(x[j]);
    }
    if (q > best + 1e-12) {
      best = q;
      best_k = k;
    } else if (q < best - 1e-12) {
      break;
    }
  }
  out.iterations = best_k;
  out.probability = best;
  out.within_charge =
      static_cast<double>(2 * best_k + 1) <=
      std::ceil(kPi / 2.0 * static_cast<double>(out.charged_rounds));
  return out;
}

}  // namespace qmm
