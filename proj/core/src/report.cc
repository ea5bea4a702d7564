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


#include "qmm/report.h"

#include <fstream>
#include <sstream>

#include "json.hpp"
#include "qmm/error.h"

namespace qmm {
namespace {

using nlohmann::json;

json matrix_json(const DenseMatrix& a) {
  json rows = json::array();
  for (Index i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < a.cols(); ++j) row.push_back(a(i, j).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

DenseMatrix matrix_from(const json& j) {
  const Index rows = static_cast<Index>(j.size());
  if (rows == 0) return DenseMatrix(0, 0);
  const Index cols = static_cast<Index>(j.at(0).size());
  DenseMatrix a(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const json& row = j.at(i);
    if (static_cast<Index>(row.size()) != cols) {
      throw Error(ErrorKind::kParse, "ragged matrix in report");
    }
    for (Index k = 0; k < cols; ++k) a(i, k) = row.at(k).get<double>();
  }
  return a;
}

json vector_json(const RealVector& x) {
  return json(std::vector<double>(x.data(), x.data() + x.size()));
}

RealVector vector_from(const json& j) {
  const auto v = j.get<std::vector<double>>();
  return Eigen::Map<const RealVector>(v.data(), static_cast<Index>(v.size()));
}

json ledger_value(const CostLedger& l) {
  return {{"oracle_calls", l.oracle_calls},
          {"controlled_oracle_calls", l.controlled_oracle_calls},
          {"total_queries", l.total_queries()},
          {"phase_bits_used", l.phase_bits_used},
          {"amplification_rounds", l.amplification_rounds},
          {"postselect_probability", l.postselect_probability},
          {"hamiltonian_simulations", l.hamiltonian_simulations},
          {"classical_entries", l.classical_entries},
          {"synthesis_gates", l.synthesis_gates},
          {"model_costs", l.model_costs}};
}

CostLedger ledger_from(const json& j) {
  CostLedger l;
  l.oracle_calls = j.at("oracle_calls").get<std::uint64_t>();
  l.controlled_oracle_calls = j.at("controlled_oracle_calls").get<std::uint64_t>();
  l.phase_bits_used = j.at("phase_bits_used").get<int>();
  l.amplification_rounds = j.at("amplification_rounds").get<std::uint64_t>();
  l.postselect_probability = j.at("postselect_probability").get<double>();
  l.hamiltonian_simulations = j.at("hamiltonian_simulations").get<std::uint64_t>();
  l.classical_entries = j.at("classical_entries").get<std::uint64_t>();
  l.synthesis_gates = j.at("synthesis_gates").get<double>();
  l.model_costs = j.at("model_costs").get<std::map<std::string, double>>();
  return l;
}

json row_json(const ReportRow& r) {
  json j = {{"descriptor", r.descriptor},
            {"method", to_string(r.method)},
            {"seed", r.seed},
            {"eps", r.eps},
            {"phase_bits", r.phase_bits},
            {"epsilon", r.epsilon},
            {"realized_error", r.realized_error},
            {"bound", r.bound},
            {"ok", r.ok()},
            {"success_probability", r.success_probability},
            {"formula_probability", r.formula_probability},
            {"exact_phase", r.exact_phase},
            {"wall_seconds", r.wall_seconds},
            {"warnings", r.warnings},
            {"ledger", ledger_value(r.ledger)}};
  json instance = json::object();
  if (r.a.size() > 0) instance["a"] = matrix_json(r.a);
  if (r.b.size() > 0) instance["b"] = matrix_json(r.b);
  if (r.x.size() > 0) instance["x"] = vector_json(r.x);
  j["instance"] = std::move(instance);
  if (is_readout(r.method)) {
    j["eps_abs"] = r.eps;
    j["max_observed_error"] = r.realized_error;
    j["entries"] = matrix_json(r.entries);
    if (!r.entries_path.empty()) j["entries_path"] = r.entries_path;
  }
  return j;
}

ReportRow row_from(const json& j) {
  ReportRow r;
  r.descriptor = j.at("descriptor").get<std::string>();
  r.method = parse_method(j.at("method").get<std::string>());
  r.seed = j.at("seed").get<std::uint64_t>();
  r.eps = j.at("eps").get<double>();
  r.phase_bits = j.at("phase_bits").get<int>();
  r.epsilon = j.at("epsilon").get<double>();
  r.realized_error = j.at("realized_error").get<double>();
  r.bound = j.at("bound").get<double>();
  r.success_probability = j.at("success_probability").get<double>();
  r.formula_probability = j.at("formula_probability").get<double>();
  r.exact_phase = j.at("exact_phase").get<bool>();
  r.wall_seconds = j.at("wall_seconds").get<double>();
  r.warnings = j.at("warnings").get<std::vector<std::string>>();
  r.ledger = ledger_from(j.at("ledger"));
  const json& instance = j.at("instance");
  if (instance.contains("a")) r.a = matrix_from(instance["a"]);
  if (instance.contains("b")) r.b = matrix_from(instance["b"]);
  if (instance.contains("x")) r.x = vector_from(instance["x"]);
  if (j.contains("entries")) r.entries = matrix_from(j["entries"]);
  if (j.contains("entries_path")) r.entries_path = j["entries_path"].get<std::string>();
  return r;
}

json fit_json(const std::optional<SlopeFit>& f) {
  if (!f) return nullptr;
  return {{"slope", f->slope},       {"intercept", f->intercept},
          {"std_error", f->std_error}, {"ci_low", f->ci_low},
          {"ci_high", f->ci_high},   {"points", f->points}};
}

}  // namespace

std::string scaling_to_json(const ScalingStudy& study) {
  json cells = json::array();
  for (const ScalingCell& c : study.cells) {
    cells.push_back({{"n", c.n},
                     {"eps", c.eps},
                     {"kappa", c.kappa},
                     {"seed", c.seed},
                     {"cost", c.cost},
                     {"total_queries", c.total_queries},
                     {"amplification_rounds", c.amplification_rounds},
                     {"realized_error", c.realized_error},
                     {"bound", c.bound}});
  }
  const json doc = {{"schema", kReportSchema},
                    {"method", to_string(study.method)},
                    {"cells", std::move(cells)},
                    {"fits",
                     {{"vs_inverse_eps", fit_json(study.vs_inverse_eps)},
                      {"vs_n", fit_json(study.vs_n)},
                      {"vs_kappa", fit_json(study.vs_kappa)}}}};
  return doc.dump(2) + "\n";
}

std::string ledger_to_json(const CostLedger& ledger) {
  return ledger_value(ledger).dump(2);
}

std::string report_to_json(const ReportTable& table) {
  json rows = json::array();
  std::size_t violations = 0;
  for (const ReportRow& r : table.rows) {
    rows.push_back(row_json(r));
    if (!r.ok()) ++violations;
  }
  const json doc = {{"schema", kReportSchema},
                    {"rows", std::move(rows)},
                    {"summary",
                     {{"rows", table.rows.size()},
                      {"violations", violations},
                      {"all_ok", violations == 0}}}};
  return doc.dump(2) + "\n";
}

ReportTable report_from_json(const std::string& text) {
  try {
    const json doc = json::parse(text);
    const int schema = doc.at("schema").get<int>();
    if (schema != kReportSchema) {
      throw Error(ErrorKind::kParse,
                  "unsupported report schema " + std::to_string(schema));
    }
    ReportTable table;
    for (const json& row : doc.at("rows")) table.rows.push_back(row_from(row));
    return table;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::kParse, std::string("malformed report: ") + e.what());
  }
}

std::string report_to_csv(const ReportTable& table) {
  std::ostringstream out;
  out.precision(17);
  out << "descriptor,method,seed,eps,phase_bits,realized_error,bound,ok,"
         "success_probability,formula_probability,oracle_calls,"
         "controlled_oracle_calls,amplification_rounds,hamiltonian_simulations,"
         "classical_entries,wall_seconds\n";
  for (const ReportRow& r : table.rows) {
    const CostLedger& l = r.ledger;
    out << '"' << r.descriptor << "\"," << to_string(r.method) << ',' << r.seed
        << ',' << r.eps << ',' << r.phase_bits << ',' << r.realized_error << ','
        << r.bound << ',' << (r.ok() ? 1 : 0) << ',' << r.success_probability
        << ',' << r.formula_probability << ',' << l.oracle_calls << ','
        << l.controlled_oracle_calls << ',' << l.amplification_rounds << ','
        << l.hamiltonian_simulations << ',' << l.classical_entries << ','
        << r.wall_seconds << '\n';
  }
  return out.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text) || !out.flush()) {
    throw Error(ErrorKind::kIo, "cannot write " + path);
  }
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace qmm
