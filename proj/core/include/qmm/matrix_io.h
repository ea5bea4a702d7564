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

#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "qmm/linalg.h"

namespace qmm {

/// CSV, one matrix row per line, decimal reals. Blank lines and lines
/// starting with '#' are skipped. Throws kParse naming the line number.
DenseMatrix read_matrix_csv(std::istream& in);
DenseMatrix read_matrix_file(const std::string& path);

/// One line of comma-separated values or one value per line.
RealVector read_vector_csv(std::istream& in);
RealVector read_vector_file(const std::string& path);

/// Real parts only, full round-trip precision.
void write_matrix_csv(std::ostream& out, const DenseMatrix& a);
void write_vector_csv(std::ostream& out, const RealVector& x);

}  // namespace qmm
