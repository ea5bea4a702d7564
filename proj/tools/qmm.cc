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


// qmm: command-line driver for the matrix multiplication and state
// preparation simulators.
//
//   qmm multiply --method sve --eps 0.05 --n 4 --kappa 3 --repeats 10
//   qmm readout --method swap --a a.csv --b b.csv --entries c.csv
//   qmm prepare --method dyadic --x x.csv
//   qmm scaling --method readout-swap --eps 0.125,0.0625,0.03125
//   qmm verify report.json
//   qmm gen --kind matrix --n 8 --kappa 10 --seed 3 --out a.csv
//
// Exit status: 0 when every bound holds, 1 on a bound violation, 2 on error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qmm/error.h"
#include "qmm/harness.h"
#include "qmm/matrix_io.h"
#include "qmm/report.h"

namespace {

constexpr int kViolation = 1;
constexpr int kFailure = 2;

int env_workers() {
  const char* v = std::getenv("QMM_WORKERS");
  if (v == nullptr || *v == '\0') return 1;
  try {
    return std::max(1, std::stoi(v));
  } catch (const std::exception&) {
    throw qmm::Error(qmm::ErrorKind::kInvalidArgument,
                     std::string("QMM_WORKERS is not an integer: ") + v);
  }
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    qmm::write_text_file(out, text);
  }
}

// Prefixes a short method name with the verb's family, so `readout --method
// swap` means readout-swap.
qmm::Method method_for(const std::string& family, const std::string& name) {
  if (family.empty() || name.rfind(family, 0) == 0) {
    return qmm::parse_method(name);
  }
  return qmm::parse_method(family + name);
}

struct RunFlags {
  std::string method;
  double eps = 0.05;
  std::optional<int> phase_bits;
  std::uint64_t seed = 0;
  bool strict_support = false;
  bool exact_phase = false;
  std::string a_path, b_path, x_path;
  qmm::Index n = 4;
  double kappa = 2.0;
  int repeats = 1;
  std::string out;
  std::string format = "json";
  std::string entries;
};

void add_common(CLI::App* cmd, RunFlags& f, const std::string& default_method) {
  f.method = default_method;
  cmd->add_option("--method", f.method, "Pipeline name")->capture_default_str();
  cmd->add_option("--eps", f.eps, "Target accuracy in (0, 1)")->capture_default_str();
  cmd->add_option("--phase-bits", f.phase_bits, "Override the phase width (1-20)");
  cmd->add_option("--seed", f.seed, "First fixture seed")->capture_default_str();
  cmd->add_flag("--strict-support", f.strict_support,
                "Fail when B leaves the row space of A");
  cmd->add_flag("--exact-phase", f.exact_phase,
                "Use exact eigenphases instead of phase estimation");
  cmd->add_option("--n", f.n, "Generated fixture size")->capture_default_str();
  cmd->add_option("--kappa", f.kappa, "Generated fixture condition number")
      ->capture_default_str();
  cmd->add_option("--repeats", f.repeats, "Number of consecutive seeds")
      ->capture_default_str();
  cmd->add_option("--out", f.out, "Report path (default: stdout)");
  cmd->add_option("--format", f.format, "Report format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
}

int run(const RunFlags& f, const std::string& family) {
  qmm::ExperimentConfig cfg;
  cfg.method = method_for(family, f.method);
  cfg.eps = f.eps;
  cfg.phase_bits = f.phase_bits;
  cfg.seed = f.seed;
  cfg.strict_support = f.strict_support;
  cfg.exact_phase = f.exact_phase;
  cfg.a_path = f.a_path;
  cfg.b_path = f.b_path;
  cfg.x_path = f.x_path;
  cfg.n = f.n;
  cfg.kappa = f.kappa;
  cfg.repeats = f.repeats;
  cfg.workers = env_workers();
  qmm::ReportTable table = qmm::run_experiment(cfg);
  if (!f.entries.empty()) {
    // One CSV per row; rows after the first get the seed appended.
    for (std::size_t k = 0; k < table.rows.size(); ++k) {
      qmm::ReportRow& row = table.rows[k];
      row.entries_path =
          k == 0 ? f.entries : f.entries + "." + std::to_string(row.seed);
      std::ostringstream csv;
      qmm::write_matrix_csv(csv, row.entries);
      qmm::write_text_file(row.entries_path, csv.str());
    }
  }
  emit(f.format == "csv" ? qmm::report_to_csv(table) : qmm::report_to_json(table),
       f.out);
  for (const qmm::ReportRow& row : table.rows) {
    for (const std::string& w : row.warnings) {
      std::cerr << "warning: " << row.descriptor << ": " << w << "\n";
    }
    if (!row.ok()) {
      std::cerr << "bound violated: " << row.descriptor << "\n";
    }
  }
  return table.all_ok() ? 0 : kViolation;
}

template <typename T>
std::vector<T> parse_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::istringstream v(item);
    T value{};
    if (!(v >> value) || !(v >> std::ws).eof()) {
      throw qmm::Error(qmm::ErrorKind::kParse, "bad list item '" + item + "'");
    }
    out.push_back(value);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulated quantum matrix multiplication and state preparation"};
  app.require_subcommand(1);

  RunFlags multiply, readout, prepare;
  CLI::App* mul = app.add_subcommand("multiply", "Prepare |AB> and check its error bound");
  add_common(mul, multiply, "swap");
  mul->add_option("--a", multiply.a_path, "CSV file for A");
  mul->add_option("--b", multiply.b_path, "CSV file for B");

  CLI::App* rd = app.add_subcommand("readout", "Estimate the entries of AB");
  add_common(rd, readout, "swap");
  rd->add_option("--a", readout.a_path, "CSV file for A");
  rd->add_option("--b", readout.b_path, "CSV file for B");
  rd->add_option("--entries", readout.entries, "Write the estimated entries as CSV");

  CLI::App* prep = app.add_subcommand("prepare", "Prepare |x> from a classical vector");
  add_common(prep, prepare, "dyadic");
  prep->add_option("--x", prepare.x_path, "CSV file for x");

  std::string sc_method = "readout-swap", sc_n = "4", sc_eps = "0.05",
              sc_seeds = "0", sc_kappa = "1", sc_out, sc_format = "csv";
  CLI::App* sc = app.add_subcommand("scaling", "Ledger totals over a grid with log-log fits");
  sc->add_option("--method", sc_method, "Pipeline name")->capture_default_str();
  sc->add_option("--n", sc_n, "Comma-separated sizes")->capture_default_str();
  sc->add_option("--eps", sc_eps, "Comma-separated accuracies")->capture_default_str();
  sc->add_option("--seed", sc_seeds, "Comma-separated seeds")->capture_default_str();
  sc->add_option("--kappa", sc_kappa, "Comma-separated condition numbers")
      ->capture_default_str();
  sc->add_option("--out", sc_out, "Output path (default: stdout)");
  sc->add_option("--format", sc_format, "Cells as csv, or cells and fits as json")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();

  std::string report_path;
  CLI::App* ver = app.add_subcommand("verify", "Recompute the bounds of a stored report");
  ver->add_option("report", report_path, "Report JSON")->required();

  std::string gen_kind = "matrix", gen_out;
  qmm::Index gen_n = 4;
  double gen_kappa = 1.0;
  std::uint64_t gen_seed = 0;
  CLI::App* gen = app.add_subcommand("gen", "Write a seeded fixture as CSV");
  gen->add_option("--kind", gen_kind, "matrix or vector")
      ->check(CLI::IsMember({"matrix", "vector"}))
      ->capture_default_str();
  gen->add_option("--n", gen_n, "Size")->capture_default_str();
  gen->add_option("--kappa", gen_kappa, "Condition number")->capture_default_str();
  gen->add_option("--seed", gen_seed, "Seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output path (default: stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*mul) return run(multiply, "");
    if (*rd) return run(readout, "readout-");
    if (*prep) return run(prepare, "prep-");
    if (*sc) {
      const qmm::ScalingStudy study = qmm::scaling_study(
          qmm::parse_method(sc_method), parse_list<qmm::Index>(sc_n),
          parse_list<double>(sc_eps), parse_list<std::uint64_t>(sc_seeds),
          parse_list<double>(sc_kappa), env_workers());
      emit(sc_format == "json" ? qmm::scaling_to_json(study) : study.to_csv(), sc_out);
      for (const auto& [name, fit] : {std::pair{"1/eps", study.vs_inverse_eps},
                                      std::pair{"n", study.vs_n},
                                      std::pair{"kappa", study.vs_kappa}}) {
        if (fit) {
          std::cerr << "slope vs " << name << ": " << fit->slope << " [" << fit->ci_low
                    << ", " << fit->ci_high << "]\n";
        }
      }
      return 0;
    }
    if (*ver) {
      const qmm::VerifySummary v = qmm::verify_bounds(report_path);
      for (const std::string& line : v.violations) std::cout << "FAIL " << line << "\n";
      std::cout << (v.pass() ? "PASS" : "FAIL") << " " << v.rows << " rows, "
                << v.violations.size() << " violations\n";
      return v.pass() ? 0 : kViolation;
    }
    if (*gen) {
      std::ostringstream csv;
      if (gen_kind == "matrix") {
        qmm::write_matrix_csv(csv, qmm::generate_matrix(gen_n, gen_kappa, gen_seed));
      } else {
        qmm::write_vector_csv(csv, qmm::generate_vector(gen_n, gen_kappa, gen_seed));
      }
      emit(csv.str(), gen_out);
      return 0;
    }
  } catch (const qmm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kFailure;
}
