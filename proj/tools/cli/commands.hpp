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

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "entsrc/measure.hpp"
#include "entsrc/qcore.hpp"
#include "entsrc/statefam.hpp"

namespace entsrc::cli {

enum class OutputFormat { kDoc, kCsv };

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Source state for `simulate`. Families: two-param (--p, --sigma), rho-k
/// (--k), rho1, rho2, bell (--index), bell-diag (--weights), mixed.
struct StateSpec {
  std::string family = "two-param";
  double p = 0.4;
  double sigma = 0.4;
  double k = 1.0;
  int index = 1;
  std::array<double, 4> weights{0.25, 0.25, 0.25, 0.25};
};

struct PriorSpec {
  ModelId model = ModelId::kTwoParam;
  int grid_p = 600;
  int grid_sigma = 600;
  std::size_t samples = 100000;
};

struct RunConfig {
  std::string command;
  StateSpec state;
  std::int64_t shots = 400;
  std::optional<std::uint64_t> seed;
  PriorSpec prior;
  int bins = 50;
  std::string record_path;
  std::string out_path;
  OutputFormat format = OutputFormat::kDoc;
};

/// Throws kUnknownStateFamily or the family's domain error.
DensityMatrix build_state(const StateSpec& spec);

/// Throws kInvalidCount when the prior needs a seed that is missing.
TestSet build_prior(const PriorSpec& spec, std::uint64_t seed);

/// Simulates a record; requires cfg.seed.
MeasurementRecord cmd_simulate(const RunConfig& cfg);

/// Returns the result document (or CSV histogram) as text.
std::string cmd_characterize(const RunConfig& cfg, const MeasurementRecord& rec);
std::string cmd_compare(const RunConfig& cfg, const MeasurementRecord& rec);
std::string cmd_prior_hist(const RunConfig& cfg);

/// Re-runs the command recorded in a result document's config echo and
/// returns the new document.
std::string replay_document(const std::string& document);

/// Full command-line entry point. Returns the process exit code: 0 success,
/// 1 usage/config error, 2 data error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace entsrc::cli
