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

// Two-qubit correlation measurements: local spin projectors, outcome
// probabilities, seeded simulation of finite records, and the four CHSH
// combinations available from the X/Y correlations.
//
// Outcome order within a setting is (+,+), (+,-), (-,+), (-,-).

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "entsrc/qcore.hpp"

namespace entsrc {

/// Axis pair measured jointly: a on the first qubit, b on the second
/// (1 = X, 2 = Y, 3 = Z).
struct Setting {
  int a = 1;
  int b = 1;
  friend constexpr bool operator==(const Setting&, const Setting&) = default;
};

/// XX, XY, YX, YY, ZZ.
inline constexpr std::array<Setting, 5> kDefaultSettings{{{1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 3}}};

/// Four POVM elements, in the outcome order above.
using Povm = std::array<Matrix4, 4>;

/// (1 + sign * sigma_axis) / 2. Throws kIndexOutOfRange for a bad axis or
/// a sign other than +1/-1.
Matrix2 spin_projector(int axis, int sign);

/// Ideal von Neumann measurement of the setting.
Povm projective_povm(Setting s);

/// Checks that each element is Hermitian and PSD and that the elements sum
/// to the identity (all within 1e-10). Throws kOutOfDomain otherwise.
void validate_povm(const Povm& povm);

struct SettingCounts {
  Setting setting;
  std::array<std::int64_t, 4> counts{};
  /// Measurement actually performed; empty means the ideal projectors.
  std::optional<Povm> povm;

  std::int64_t total() const { return counts[0] + counts[1] + counts[2] + counts[3]; }
};

struct RecordMeta {
  std::uint64_t seed = 0;
  std::string label;
  std::int64_t shots_per_setting = 0;
};

class MeasurementRecord {
 public:
  MeasurementRecord() = default;
  MeasurementRecord(std::vector<SettingCounts> settings, RecordMeta meta);

  std::span<const SettingCounts> settings() const { return settings_; }
  const RecordMeta& meta() const { return meta_; }

  /// N_m: total shots over all settings.
  std::int64_t total_shots() const;

  const SettingCounts* find(Setting s) const;
  bool covers_default_settings() const;

  /// Counts summed setting by setting; settings present in only one record
  /// are appended. Meta is taken from *this.
  MeasurementRecord merged_with(const MeasurementRecord& other) const;

 private:
  std::vector<SettingCounts> settings_;
  RecordMeta meta_;
};

struct SettingFrequencies {
  Setting setting;
  std::array<double, 4> f{};
  /// N_ij, the number of shots the frequencies were taken from. Real-valued
  /// so that noise-free (expected) data can be expressed.
  double shots = 0.0;
};

class FrequencyTable {
 public:
  FrequencyTable() = default;
  explicit FrequencyTable(std::vector<SettingFrequencies> rows);

  std::span<const SettingFrequencies> rows() const { return rows_; }
  const SettingFrequencies* find(Setting s) const;
  double total_shots() const;

 private:
  std::vector<SettingFrequencies> rows_;
};

/// Tr(rho * (P_a^+- (x) P_b^+-)) for the four outcomes.
std::array<double, 4> outcome_probabilities(const DensityMatrix& rho, Setting s);
std::array<double, 4> outcome_probabilities(const DensityMatrix& rho, const Povm& povm);

/// Probabilities for one recorded setting, honouring a custom POVM.
std::array<double, 4> outcome_probabilities(const DensityMatrix& rho, const SettingCounts& sc);

/// Multinomial draw of shots_per_setting outcomes for each default setting.
/// Every setting uses its own stream derived from (seed, setting index), so
/// the record does not depend on evaluation order. Throws kInvalidCount for
/// shots_per_setting < 1.
MeasurementRecord simulate_record(const DensityMatrix& rho, std::int64_t shots_per_setting, std::uint64_t seed,
                                  std::string label = {});

/// f_ijk = count / N_ij. Throws kEmptySetting if a setting has no shots.
FrequencyTable frequencies(const MeasurementRecord& rec);

/// Noise-free frequencies: the exact outcome probabilities of rho for the
/// default settings, each weighted by shots_per_setting.
FrequencyTable expected_frequencies(const DensityMatrix& rho, double shots_per_setting);

/// <A_i B_j> for i, j in {1, 2} with A1 = B1 = X, A2 = B2 = Y, returned as
/// {E11, E12, E21, E22}.
std::array<double, 4> xy_correlations(const DensityMatrix& rho);

/// Expectations of
///   B1 = A1(B1+B2) + A2(B1-B2),  B2 = A1(B1+B2) - A2(B1-B2),
///   B3 = A1(B1-B2) + A2(B1+B2),  B4 = A1(-B1+B2) + A2(B1+B2).
std::array<double, 4> chsh_values(const DensityMatrix& rho);

/// True iff some |<B_i>| exceeds 2 + 1e-10.
bool chsh_violated(const DensityMatrix& rho);

}  // namespace entsrc
