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


#include "qmm/harness.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

#include <boost/math/distributions/students_t.hpp>

#include "parallel.h"
#include "qmm/error.h"
#include "qmm/matmul.h"
#include "qmm/matrix_io.h"
#include "qmm/readout.h"
#include "qmm/report.h"
#include "qmm/state_prep.h"

namespace qmm {
namespace {

constexpr std::pair<Method, const char*> kMethodNames[] = {
    {Method::kSwap, "swap"},
    {Method::kSve, "sve"},
    {Method::kHhl, "hhl"},
    {Method::kLcu, "lcu"},
    {Method::kReadoutSwap, "readout-swap"},
    {Method::kReadoutSve, "readout-sve"},
    {Method::kReadoutHhl, "readout-hhl"},
    {Method::kPrepDirect, "prep-direct"},
    {Method::kPrepHamiltonian, "prep-hamiltonian"},
    {Method::kPrepSparse, "prep-sparse"},
    {Method::kPrepDyadic, "prep-dyadic"},
    {Method::kPrepSignShift, "prep-signshift"},
};

// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the signs
// of R's diagonal moved into Q.
Eigen::MatrixXd haar_orthogonal(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) g(i, j) = normal(rng);
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR();
  for (Index j = 0; j < n; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string describe(const ExperimentConfig& cfg, std::uint64_t seed) {
  std::ostringstream out;
  out << to_string(cfg.method);
  if (!cfg.a_path.empty() || !cfg.x_path.empty()) {
    const std::string& path = is_prep(cfg.method) ? cfg.x_path : cfg.a_path;
    out << " file=" << std::filesystem::path(path).filename().string();
  } else {
    out << " n=" << cfg.n << " kappa=" << format_double(cfg.kappa);
  }
  char seed_buf[32];
  std::snprintf(seed_buf, sizeof(seed_buf), "%06llu",
                static_cast<unsigned long long>(seed));
  out << " eps=" << format_double(cfg.eps) << " seed=" << seed_buf;
  return out.str();
}

PipelineOptions pipeline_options(const ExperimentConfig& cfg) {
  PipelineOptions o;
  o.phase_bits = cfg.phase_bits;
  o.exact_phase = cfg.exact_phase;
  o.strict_support = cfg.strict_support;
  return o;
}

ReadoutOptions readout_options(const ExperimentConfig& cfg) {
  ReadoutOptions o;
  o.exact_phase = cfg.exact_phase;
  o.strict_support = cfg.strict_support;
  return o;
}

void fill_pipeline(ReportRow& row, const PipelineResult& r) {
  row.phase_bits = r.phase_bits;
  row.epsilon = r.epsilon;
  row.realized_error = r.realized_error;
  row.bound = r.predicted_bound;
  row.success_probability = r.state.success_probability;
  row.formula_probability = r.formula_probability;
  row.ledger = r.ledger;
  row.warnings = r.warnings;
}

void fill_readout(ReportRow& row, const ReadoutReport& r) {
  row.phase_bits = r.phase_bits;
  row.epsilon = row.eps;
  row.realized_error = r.max_observed_error;
  row.bound = r.entrywise_error_bound;
  row.ledger = r.ledger;
  row.entries = r.c_tilde;
  row.warnings = r.warnings;
}

void fill_prep(ReportRow& row, const PrepReport& r) {
  row.epsilon = r.epsilon1;
  row.realized_error = r.realized_distance;
  row.bound = r.target_fidelity_bound;
  row.success_probability = r.result.success_probability;
  row.ledger = r.result.ledger;
}

Statevector uniform_state(Index n) {
  return Statevector::from_vector("k", Vector::Ones(n));
}

PrepReport run_prep(Method m, const RealVector& x, double eps) {
  const VectorSpec spec = VectorSpec::from_values(x);
  switch (m) {
    case Method::kPrepDirect: {
      PrepReport r;
      r.result = synthesize_direct(spec, eps);
      r.method = PrepMethod::kDirect;
      r.target_fidelity_bound = eps;
      r.realized_distance =
          fidelity(r.result.state, spec.normalized()).distance;
      return r;
    }
    case Method::kPrepHamiltonian:
      return prep_hamiltonian(x, uniform_state(x.size()), eps);
    case Method::kPrepSparse:
      return prep_sparse(spec, eps);
    case Method::kPrepDyadic:
      return prep_dyadic(spec, eps);
    case Method::kPrepSignShift:
      return prep_signshift(spec, eps);
    default:
      throw Error(ErrorKind::kInvalidArgument, "not a preparation method");
  }
}

struct Inputs {
  DenseMatrix a, b;
  RealVector x;
};

Inputs load_inputs(const ExperimentConfig& cfg, std::uint64_t seed) {
  Inputs in;
  if (is_prep(cfg.method)) {
    in.x = cfg.x_path.empty() ? generate_vector(cfg.n, cfg.kappa, seed)
                              : read_vector_file(cfg.x_path);
    return in;
  }
  in.a = cfg.a_path.empty() ? generate_matrix(cfg.n, cfg.kappa, seed)
                            : read_matrix_file(cfg.a_path);
  if (!cfg.b_path.empty()) {
    in.b = read_matrix_file(cfg.b_path);
  } else {
    // B is well conditioned and independent of A's seed stream.
    in.b = generate_matrix(in.a.cols(), 2.0, seed ^ 0x9e3779b97f4a7c15ULL);
  }
  return in;
}

ReportRow run_one(const ExperimentConfig& cfg, std::uint64_t seed) {
  ReportRow row;
  row.descriptor = describe(cfg, seed);
  row.method = cfg.method;
  row.seed = seed;
  row.eps = cfg.eps;
  row.exact_phase = cfg.exact_phase;
  const Inputs in = load_inputs(cfg, seed);
  row.a = in.a;
  row.b = in.b;
  row.x = in.x;
  const auto start = std::chrono::steady_clock::now();
  try {
    const PipelineOptions po = pipeline_options(cfg);
    const ReadoutOptions ro = readout_options(cfg);
    switch (cfg.method) {
      case Method::kSwap:
        fill_pipeline(row, matmul_swaptest(in.a, in.b, cfg.eps, po));
        break;
      case Method::kSve:
        fill_pipeline(row, matmul_sve(in.a, in.b, cfg.eps, po));
        break;
      case Method::kHhl:
        fill_pipeline(row, matmul_hhl(in.a, in.b, cfg.eps, po));
        break;
      case Method::kLcu:
        fill_pipeline(row, matmul_lcu(in.a, in.b, cfg.eps, po));
        break;
      case Method::kReadoutSwap:
        fill_readout(row, readout_swaptest(in.a, in.b, cfg.eps, ro));
        break;
      case Method::kReadoutSve:
        fill_readout(row, readout_sve(in.a, in.b, cfg.eps, ro));
        break;
      case Method::kReadoutHhl:
        fill_readout(row, readout_hhl(in.a, in.b, cfg.eps, ro));
        break;
      default:
        fill_prep(row, run_prep(cfg.method, in.x, cfg.eps));
        break;
    }
  } catch (const Error& e) {
    throw Error(e.kind(), row.descriptor + ": " + e.what());
  }
  row.wall_seconds = std::chrono::duration<double>(
                         std::chrono::steady_clock::now() - start)
                         .count();
  return row;
}

double geometric_mean(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += std::log(x);
  return std::exp(s / static_cast<double>(v.size()));
}

// Fits cost against key(cell) after averaging (geometrically) the cells that
// share a key.
template <typename Key>
std::optional<SlopeFit> fit_by(const std::vector<ScalingCell>& cells, Key key) {
  std::map<double, std::vector<double>> groups;
  for (const ScalingCell& c : cells) groups[key(c)].push_back(c.cost);
  if (groups.size() < 2) return std::nullopt;
  std::vector<double> x, y;
  for (const auto& [k, costs] : groups) {
    x.push_back(k);
    y.push_back(geometric_mean(costs));
  }
  return fit_loglog(x, y);
}

bool close(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

// The bound implied by a row's instance data.
double recompute_bound(const ReportRow& row) {
  switch (row.method) {
    case Method::kSwap:
      return swaptest_bound(row.a, row.b, row.epsilon);
    case Method::kSve:
      return sve_bound(row.a, row.b, row.epsilon, row.a.norm());
    case Method::kHhl:
      return sve_bound(row.a, row.b, row.epsilon, matrix_profile(row.a).sigma_max);
    case Method::kLcu: {
      // Rank-one components share the width, so each has inner-product
      // accuracy pi / 2^t.
      const double e = kPi / std::ldexp(1.0, row.phase_bits);
      double sum = 0.0;
      for (Index k = 0; k < row.a.cols(); ++k) {
        const double wa = row.a.col(k).norm(), wb = row.b.row(k).norm();
        if (wa == 0.0 || wb == 0.0) continue;
        sum += wa * wb * swaptest_bound(row.a.col(k), row.b.row(k), e);
      }
      return 2.0 * sum / exact_product(row.a, row.b).norm();
    }
    case Method::kReadoutSwap:
    case Method::kReadoutSve:
    case Method::kReadoutHhl:
    case Method::kPrepDirect:
      return row.eps;
    case Method::kPrepHamiltonian:
    case Method::kPrepSparse:
      return std::sqrt(VectorSpec::from_values(row.x).kappa_x / 3.0) * row.epsilon;
    case Method::kPrepDyadic:
    case Method::kPrepSignShift:
      return run_prep(row.method, row.x, row.eps).target_fidelity_bound;
  }
  return 0.0;
}

void require_instance(const ReportRow& row) {
  const bool prep = is_prep(row.method);
  const bool missing = prep ? row.x.size() == 0
                            : row.a.size() == 0 || row.b.size() == 0 ||
                                  (is_readout(row.method) && row.entries.size() == 0);
  if (missing) {
    throw Error(ErrorKind::kParse,
                row.descriptor + ": report row has no instance data");
  }
}

}  // namespace

std::string to_string(Method m) {
  for (const auto& [method, name] : kMethodNames) {
    if (method == m) return name;
  }
  return "unknown";
}

Method parse_method(const std::string& name) {
  std::string accepted;
  for (const auto& [method, n] : kMethodNames) {
    if (name == n) return method;
    accepted += accepted.empty() ? n : std::string(", ") + n;
  }
  throw Error(ErrorKind::kInvalidArgument,
              "unknown method '" + name + "' (expected one of " + accepted + ")");
}

std::vector<Method> all_methods() {
  std::vector<Method> out;
  for (const auto& [method, name] : kMethodNames) out.push_back(method);
  return out;
}

bool is_readout(Method m) {
  return m == Method::kReadoutSwap || m == Method::kReadoutSve ||
         m == Method::kReadoutHhl;
}

bool is_prep(Method m) {
  return m == Method::kPrepDirect || m == Method::kPrepHamiltonian ||
         m == Method::kPrepSparse || m == Method::kPrepDyadic ||
         m == Method::kPrepSignShift;
}

DenseMatrix generate_matrix(Index n, double kappa_target, std::uint64_t seed) {
  if (n < 1 || !(kappa_target >= 1.0) || (n == 1 && kappa_target != 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "generate_matrix needs n >= 1 and kappa >= 1 (kappa = 1 when n = 1)");
  }
  std::mt19937_64 rng(seed);
  const Eigen::MatrixXd u = haar_orthogonal(n, rng);
  const Eigen::MatrixXd v = haar_orthogonal(n, rng);
  Eigen::VectorXd sigma(n);
  for (Index k = 0; k < n; ++k) {
    const double frac = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
    sigma[k] = std::pow(kappa_target, -frac);
  }
  const Eigen::MatrixXd a = u * sigma.asDiagonal() * v.transpose();
  return a.cast<Complex>();
}

RealVector generate_vector(Index n, double kappa, std::uint64_t seed) {
  if (n < 1 || !(kappa >= 1.0) || (n == 1 && kappa != 1.0)) {
    throw Error(ErrorKind::kInvalidArgument,
                "generate_vector needs n >= 1 and kappa >= 1 (kappa = 1 when n = 1)");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  RealVector x(n);
  for (Index k = 0; k < n; ++k) {
    const double mag = k == 0 ? 1.0 : k == 1 ? kappa : std::pow(kappa, unit(rng));
    x[k] = unit(rng) < 0.5 ? -mag : mag;
  }
  std::shuffle(x.data(), x.data() + n, rng);
  return x;
}

void ExperimentConfig::validate() const {
  if (!(eps > 0.0 && eps < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "eps must lie in (0, 1)");
  }
  if (phase_bits && (*phase_bits < 1 || *phase_bits > 20)) {
    throw Error(ErrorKind::kInvalidArgument, "phase bits must lie in [1, 20]");
  }
  if (n < 1 || !(kappa >= 1.0) || repeats < 1) {
    throw Error(ErrorKind::kInvalidArgument,
                "need n >= 1, kappa >= 1 and repeats >= 1");
  }
}

bool ReportTable::all_ok() const {
  return std::all_of(rows.begin(), rows.end(),
                     [](const ReportRow& r) { return r.ok(); });
}

ReportTable run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  ReportTable table;
  table.rows.resize(static_cast<std::size_t>(cfg.repeats));
  internal::parallel_for(cfg.repeats, cfg.workers, [&](Index k) {
    table.rows[k] = run_one(cfg, cfg.seed + static_cast<std::uint64_t>(k));
  });
  std::sort(table.rows.begin(), table.rows.end(),
            [](const ReportRow& x, const ReportRow& y) {
              return x.descriptor < y.descriptor;
            });
  return table;
}

SlopeFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw Error(ErrorKind::kInvalidArgument, "a fit needs two or more points");
  }
  const std::size_t m = x.size();
  std::vector<double> lx(m), ly(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (!(x[k] > 0.0) || !(y[k] > 0.0)) {
      throw Error(ErrorKind::kInvalidArgument, "log-log fit needs positive data");
    }
    lx[k] = std::log(x[k]);
    ly[k] = std::log(y[k]);
  }
  const double mx = std::accumulate(lx.begin(), lx.end(), 0.0) / m;
  const double my = std::accumulate(ly.begin(), ly.end(), 0.0) / m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    sxx += (lx[k] - mx) * (lx[k] - mx);
    sxy += (lx[k] - mx) * (ly[k] - my);
  }
  if (!(sxx > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "a fit needs distinct x values");
  }
  SlopeFit fit;
  fit.points = m;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (m > 2) {
    double sse = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
      const double r = ly[k] - fit.intercept - fit.slope * lx[k];
      sse += r * r;
    }
    fit.std_error = std::sqrt(sse / static_cast<double>(m - 2) / sxx);
    const boost::math::students_t dist(static_cast<double>(m - 2));
    const double q = boost::math::quantile(dist, 0.975);
    fit.ci_low = fit.slope - q * fit.std_error;
    fit.ci_high = fit.slope + q * fit.std_error;
  } else {
    fit.ci_low = fit.ci_high = fit.slope;
  }
  return fit;
}

std::string ScalingStudy::to_csv() const {
  std::ostringstream out;
  out.precision(17);
  out << "method,n,eps,kappa,seed,cost,total_queries,amplification_rounds,"
         "realized_error,bound\n";
  for (const ScalingCell& c : cells) {
    out << to_string(method) << ',' << c.n << ',' << c.eps << ',' << c.kappa
        << ',' << c.seed << ',' << c.cost << ',' << c.total_queries << ','
        << c.amplification_rounds << ',' << c.realized_error << ',' << c.bound
        << '\n';
  }
  return out.str();
}

ScalingStudy scaling_study(Method method, const std::vector<Index>& n_grid,
                           const std::vector<double>& eps_grid,
                           const std::vector<std::uint64_t>& seeds,
                           const std::vector<double>& kappa_grid, int workers) {
  if (n_grid.empty() || eps_grid.empty() || seeds.empty() || kappa_grid.empty()) {
    throw Error(ErrorKind::kInvalidArgument, "scaling grids must be nonempty");
  }
  ScalingStudy study;
  study.method = method;
  std::vector<ExperimentConfig> configs;
  for (Index n : n_grid) {
    for (double eps : eps_grid) {
      for (double kappa : kappa_grid) {
        for (std::uint64_t seed : seeds) {
          ExperimentConfig cfg;
          cfg.method = method;
          cfg.n = n;
          cfg.eps = eps;
          cfg.kappa = kappa;
          cfg.seed = seed;
          cfg.validate();
          configs.push_back(cfg);
        }
      }
    }
  }
  study.cells.resize(configs.size());
  internal::parallel_for(static_cast<Index>(configs.size()), workers, [&](Index k) {
    const ExperimentConfig& cfg = configs[k];
    const ReportRow row = run_one(cfg, cfg.seed);
    ScalingCell& c = study.cells[k];
    c.n = cfg.n;
    c.eps = cfg.eps;
    c.kappa = cfg.kappa;
    c.seed = cfg.seed;
    c.total_queries = row.ledger.total_queries();
    c.amplification_rounds = row.ledger.amplification_rounds;
    c.cost = static_cast<double>(is_prep(method) ? c.amplification_rounds
                                                 : c.total_queries);
    c.realized_error = row.realized_error;
    c.bound = row.bound;
  });
  study.vs_inverse_eps =
      fit_by(study.cells, [](const ScalingCell& c) { return 1.0 / c.eps; });
  study.vs_n = fit_by(study.cells,
                      [](const ScalingCell& c) { return static_cast<double>(c.n); });
  const bool prep = is_prep(method);
  study.vs_kappa = fit_by(study.cells, [prep](const ScalingCell& c) {
    return prep ? std::pow(c.kappa, 1.5) : c.kappa;
  });
  return study;
}

VerifySummary verify_bounds(const ReportTable& table) {
  VerifySummary summary;
  for (const ReportRow& row : table.rows) {
    ++summary.rows;
    require_instance(row);
    const double bound = recompute_bound(row);
    double realized = row.realized_error;
    if (is_readout(row.method)) {
      realized = (row.entries - exact_product(row.a, row.b)).cwiseAbs().maxCoeff();
      if (!close(realized, row.realized_error)) {
        summary.violations.push_back(row.descriptor +
                                     ": stored realized error " +
                                     format_double(row.realized_error) +
                                     " does not match the entries (" +
                                     format_double(realized) + ")");
        continue;
      }
    }
    if (!close(bound, row.bound)) {
      summary.violations.push_back(row.descriptor + ": stored bound " +
                                   format_double(row.bound) +
                                   " differs from recomputed " +
                                   format_double(bound));
    } else if (!(std::isfinite(realized) && realized >= 0.0 && realized <= bound)) {
      summary.violations.push_back(row.descriptor + ": realized error " +
                                   format_double(realized) + " exceeds bound " +
                                   format_double(bound));
    }
  }
  return summary;
}

VerifySummary verify_bounds(const std::string& report_path) {
  return verify_bounds(report_from_json(read_text_file(report_path)));
}

}  // namespace qmm
