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


// JSON and CSV serialization of experiment reports.

#pragma once

#include <string>

#include "qmm/harness.h"
#include "qmm/ledger.h"

namespace qmm {

inline constexpr int kReportSchema = 1;

/// {"schema": 1, "rows": [...], "summary": {...}}. Doubles round-trip.
std::string report_to_json(const ReportTable& table);
/// Throws kParse on malformed input or a different schema version.
ReportTable report_from_json(const std::string& text);

std::string ledger_to_json(const CostLedger& ledger);

/// {"schema": 1, "method": ..., "cells": [...], "fits": {...}}.
std::string scaling_to_json(const ScalingStudy& study);

/// One line per row: descriptor, method, seed, eps, errors, probabilities
/// and ledger counters.
std::string report_to_csv(const ReportTable& table);

/// Throws kIo when the file cannot be written or read.
void write_text_file(const std::string& path, const std::string& text);
std::string read_text_file(const std::string& path);

}  // namespace qmm
