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

#include "qmm/error.h"

namespace qmm {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidArgument: return "invalid argument";
    case ErrorKind::kDimensionMismatch: return "dimension mismatch";
    case ErrorKind::kNotUnitary: return "not unitary";
    case ErrorKind::kNotNormalized: return "not normalized";
    case ErrorKind::kRegisterMismatch: return "register mismatch";
    case ErrorKind::kQubitBudget: return "qubit budget exceeded";
    case ErrorKind::kZeroProbability: return "zero probability";
    case ErrorKind::kZeroProduct: return "zero product";
    case ErrorKind::kZeroVector: return "zero vector";
    case ErrorKind::kSupportViolation: return "support violation";
    case ErrorKind::kNotEven: return "function not even";
    case ErrorKind::kRotationRange: return "rotation out of range";
    case ErrorKind::kNoConvergence: return "no convergence";
    case ErrorKind::kParse: return "parse error";
    case ErrorKind::kIo: return "i/o error";
  }
  return "unknown";
}

}  // namespace qmm
