// Copyright 2026 The entsrc Authors
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

// File formats: measurement records (JSON), test sets (JSON lines) and
// histograms (CSV).
//
// Record document:
//   {"settings": [{"a": 1, "b": 1, "counts": [n++, n+-, n-+, n--]}, ...],
//    "meta": {"seed": 7, "label": "...", "shots_per_setting": 400}}
// A setting may carry "povm": four 4x4 matrices, each row a list of
// [re, im] pairs, replacing the ideal projectors.
//
// Test set: a header line {"format": "entsrc-testset", "version": 1,
// "model": ..., "n_states": ...} followed by one line per state with
// "params", "prior", "negativity", "purity", "entangled".

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "entsrc/bayes.hpp"
#include "entsrc/measure.hpp"
#include "entsrc/statefam.hpp"

namespace entsrc {

std::string record_to_json(const MeasurementRecord& rec);

/// Throws kParseFailure on malformed input or a record without settings.
MeasurementRecord record_from_json(std::string_view text);

/// Throws kIoFailure.
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

MeasurementRecord load_record(const std::filesystem::path& path);
void save_record(const std::filesystem::path& path, const MeasurementRecord& rec);

void write_test_set(std::ostream& out, const TestSet& ts);

/// Rebuilds every state from its label and checks the cached negativity and
/// purity against a fresh computation (1e-10). Throws kParseFailure.
TestSet read_test_set(std::istream& in);

/// Columns bin_low,bin_high,mass. The first data row is the separable bin,
/// written as 0,0,separable_mass.
std::string histogram_to_csv(const Histogram& h);

}  // namespace entsrc
