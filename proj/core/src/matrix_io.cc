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

#include "qmm/matrix_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <vector>

#include "qmm/error.h"

namespace qmm {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<double> parse_row(const std::string& line, int line_no) {
  std::vector<double> row;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    const std::string t = trim(cell);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size() ||
        !std::isfinite(v)) {
      throw Error(ErrorKind::kParse, "line " + std::to_string(line_no) +
                                         ": cannot parse '" + t + "'");
    }
    row.push_back(v);
  }
  if (!line.empty() && line.back() == ',') {
    throw Error(ErrorKind::kParse,
                "line " + std::to_string(line_no) + ": trailing comma");
  }
  return row;
}

std::vector<std::vector<double>> parse_rows(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    rows.push_back(parse_row(t, line_no));
    if (rows.size() > 1 && rows.back().size() != rows.front().size()) {
      throw Error(ErrorKind::kParse,
                  "line " + std::to_string(line_no) + ": expected " +
                      std::to_string(rows.front().size()) + " values, got " +
                      std::to_string(rows.back().size()));
    }
  }
  if (rows.empty()) throw Error(ErrorKind::kParse, "no data rows");
  return rows;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot open " + path);
  return in;
}

}  // namespace

DenseMatrix read_matrix_csv(std::istream& in) {
  const auto rows = parse_rows(in);
  DenseMatrix a(static_cast<Index>(rows.size()),
                static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) a(i, j) = rows[i][j];
  }
  return a;
}

DenseMatrix read_matrix_file(const std::string& path) {
  auto in = open(path);
  return read_matrix_csv(in);
}

RealVector read_vector_csv(std::istream& in) {
  const auto rows = parse_rows(in);
  std::vector<double> flat;
  if (rows.size() == 1) {
    flat = rows.front();
  } else {
    if (rows.front().size() != 1) {
      throw Error(ErrorKind::kParse, "vector must be one row or one column");
    }
    for (const auto& r : rows) flat.push_back(r.front());
  }
  return Eigen::Map<const RealVector>(flat.data(),
                                      static_cast<Index>(flat.size()));
}

RealVector read_vector_file(const std::string& path) {
  auto in = open(path);
  return read_vector_csv(in);
}

void write_matrix_csv(std::ostream& out, const DenseMatrix& a) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (j) out << ',';
      out << a(i, j).real();
    }
    out << '\n';
  }
}

void write_vector_csv(std::ostream& out, const RealVector& x) {
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Index k = 0; k < x.size(); ++k) out << x[k] << '\n';
}

}  // namespace qmm
