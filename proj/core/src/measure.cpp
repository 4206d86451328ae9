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

#include "entsrc/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "entsrc/error.hpp"
#include "rng.hpp"

namespace entsrc {
namespace {

constexpr double kPovmTolerance = 1e-10;

void check_axis(int axis) {
  if (axis < 1 || axis > 3) {
    throw Error(ErrorCode::kIndexOutOfRange, "axis must be 1, 2 or 3, got " + std::to_string(axis));
  }
}

// Re Tr(rho * op).
double trace_product(const Matrix4& rho, const Matrix4& op) {
  double t = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      const Complex& r = rho(i, j);
      const Complex& o = op(j, i);
      t += r.real() * o.real() - r.imag() * o.imag();
    }
  }
  return t;
}

const Povm& cached_projective_povm(Setting s) {
  static const std::array<Povm, 9> table = [] {
    std::array<Povm, 9> t;
    for (int a = 1; a <= 3; ++a) {
      for (int b = 1; b <= 3; ++b) t[static_cast<std::size_t>(3 * (a - 1) + (b - 1))] = projective_povm({a, b});
    }
    return t;
  }();
  check_axis(s.a);
  check_axis(s.b);
  return table[static_cast<std::size_t>(3 * (s.a - 1) + (s.b - 1))];
}

std::array<double, 4> probabilities_from(const Matrix4& rho, const Povm& povm) {
  std::array<double, 4> p{};
  for (std::size_t k = 0; k < 4; ++k) p[k] = trace_product(rho, povm[k]);
  return p;
}

}  // namespace

Matrix2 spin_projector(int axis, int sign) {
  check_axis(axis);
  if (sign != 1 && sign != -1) {
    throw Error(ErrorCode::kIndexOutOfRange, "sign must be +1 or -1, got " + std::to_string(sign));
  }
  Matrix2 m = pauli(axis) * static_cast<double>(sign);
  m += Matrix2::identity();
  return m * 0.5;
}

Povm projective_povm(Setting s) {
  Povm povm;
  const std::array<int, 2> signs{1, -1};
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      povm[2 * i + j] = kron(spin_projector(s.a, signs[i]), spin_projector(s.b, signs[j]));
    }
  }
  return povm;
}

void validate_povm(const Povm& povm) {
  Matrix4 sum;
  for (const Matrix4& e : povm) {
    if (hermiticity_defect(e) > kPovmTolerance) throw Error(ErrorCode::kOutOfDomain, "POVM element is not Hermitian");
    if (eig_hermitian(e).min() < -kPovmTolerance) throw Error(ErrorCode::kOutOfDomain, "POVM element is not PSD");
    sum += e;
  }
  const Matrix4 diff = sum - Matrix4::identity();
  for (const Complex& x : diff.data()) {
    if (std::abs(x) > kPovmTolerance) throw Error(ErrorCode::kOutOfDomain, "POVM elements do not sum to identity");
  }
}

MeasurementRecord::MeasurementRecord(std::vector<SettingCounts> settings, RecordMeta meta)
    : settings_(std::move(settings)), meta_(std::move(meta)) {
  for (std::size_t i = 0; i < settings_.size(); ++i) {
    const SettingCounts& sc = settings_[i];
    check_axis(sc.setting.a);
    check_axis(sc.setting.b);
    for (std::int64_t c : sc.counts) {
      if (c < 0) throw Error(ErrorCode::kInvalidCount, "outcome counts must be non-negative");
    }
    if (sc.povm) validate_povm(*sc.povm);
    for (std::size_t j = 0; j < i; ++j) {
      if (settings_[j].setting == sc.setting) throw Error(ErrorCode::kParseFailure, "setting listed twice");
    }
  }
}

std::int64_t MeasurementRecord::total_shots() const {
  std::int64_t n = 0;
  for (const SettingCounts& sc : settings_) n += sc.total();
  return n;
}

const SettingCounts* MeasurementRecord::find(Setting s) const {
  for (const SettingCounts& sc : settings_) {
    if (sc.setting == s) return &sc;
  }
  return nullptr;
}

bool MeasurementRecord::covers_default_settings() const {
  return std::all_of(kDefaultSettings.begin(), kDefaultSettings.end(), [this](Setting s) { return find(s) != nullptr; });
}

MeasurementRecord MeasurementRecord::merged_with(const MeasurementRecord& other) const {
  std::vector<SettingCounts> merged = settings_;
  for (const SettingCounts& sc : other.settings_) {
    auto it = std::find_if(merged.begin(), merged.end(), [&](const SettingCounts& m) { return m.setting == sc.setting; });
    if (it == merged.end()) {
      merged.push_back(sc);
    } else {
      for (std::size_t k = 0; k < 4; ++k) it->counts[k] += sc.counts[k];
    }
  }
  return MeasurementRecord(std::move(merged), meta_);
}

FrequencyTable::FrequencyTable(std::vector<SettingFrequencies> rows) : rows_(std::move(rows)) {}

const SettingFrequencies* FrequencyTable::find(Setting s) const {
  for (const SettingFrequencies& r : rows_) {
    if (r.setting == s) return &r;
  }
  return nullptr;
}

double FrequencyTable::total_shots() const {
  double n = 0.0;
  for (const SettingFrequencies& r : rows_) n += r.shots;
  return n;
}

std::array<double, 4> outcome_probabilities(const DensityMatrix& rho, Setting s) {
  return probabilities_from(rho.matrix(), cached_projective_povm(s));
}

std::array<double, 4> outcome_probabilities(const DensityMatrix& rho, const Povm& povm) {
  return probabilities_from(rho.matrix(), povm);
}

std::array<double, 4> outcome_probabilities(const DensityMatrix& rho, const SettingCounts& sc) {
  return sc.povm ? outcome_probabilities(rho, *sc.povm) : outcome_probabilities(rho, sc.setting);
}

MeasurementRecord simulate_record(const DensityMatrix& rho, std::int64_t shots_per_setting, std::uint64_t seed,
                                  std::string label) {
  if (shots_per_setting < 1) throw Error(ErrorCode::kInvalidCount, "shots per setting must be >= 1");
  std::vector<SettingCounts> settings;
  settings.reserve(kDefaultSettings.size());
  for (std::size_t s = 0; s < kDefaultSettings.size(); ++s) {
    std::array<double, 4> p = outcome_probabilities(rho, kDefaultSettings[s]);
    for (double& x : p) x = std::max(0.0, x);
    std::array<double, 4> cdf{};
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t k = 0; k < 4; ++k) {
      acc += p[k];
      cdf[k] = acc;
      if (p[k] > 0.0) last_nonzero = k;
    }
    for (double& c : cdf) c /= acc;

    auto rng = detail::seeded_engine(seed, s);
    SettingCounts sc{kDefaultSettings[s], {}, std::nullopt};
    for (std::int64_t shot = 0; shot < shots_per_setting; ++shot) {
      const double u = detail::uniform01(rng);
      std::size_t k = 0;
      while (k < 4 && !(u < cdf[k])) ++k;
      ++sc.counts[std::min(k, last_nonzero)];
    }
    settings.push_back(sc);
  }
  return MeasurementRecord(std::move(settings), RecordMeta{seed, std::move(label), shots_per_setting});
}

FrequencyTable frequencies(const MeasurementRecord& rec) {
  std::vector<SettingFrequencies> rows;
  rows.reserve(rec.settings().size());
  for (const SettingCounts& sc : rec.settings()) {
    const std::int64_t n = sc.total();
    if (n <= 0) {
      throw Error(ErrorCode::kEmptySetting, "setting (" + std::to_string(sc.setting.a) + "," +
                                                std::to_string(sc.setting.b) + ") has no shots");
    }
    SettingFrequencies row{sc.setting, {}, static_cast<double>(n)};
    for (std::size_t k = 0; k < 4; ++k) row.f[k] = static_cast<double>(sc.counts[k]) / static_cast<double>(n);
    rows.push_back(row);
  }
  return FrequencyTable(std::move(rows));
}

FrequencyTable expected_frequencies(const DensityMatrix& rho, double shots_per_setting) {
  if (!(shots_per_setting > 0.0)) throw Error(ErrorCode::kInvalidCount, "shots per setting must be positive");
  std::vector<SettingFrequencies> rows;
  for (Setting s : kDefaultSettings) {
    SettingFrequencies row{s, outcome_probabilities(rho, s), shots_per_setting};
    for (double& x : row.f) x = std::max(0.0, x);
    rows.push_back(row);
  }
  return FrequencyTable(std::move(rows));
}

std::array<double, 4> xy_correlations(const DensityMatrix& rho) {
  const Matrix2 x = pauli(1);
  const Matrix2 y = pauli(2);
  return {expectation(rho, kron(x, x)), expectation(rho, kron(x, y)), expectation(rho, kron(y, x)),
          expectation(rho, kron(y, y))};
}

std::array<double, 4> chsh_values(const DensityMatrix& rho) {
  const auto [e11, e12, e21, e22] = xy_correlations(rho);
  return {e11 + e12 + e21 - e22, e11 + e12 - e21 + e22, e11 - e12 + e21 + e22, -e11 + e12 + e21 + e22};
}

bool chsh_violated(const DensityMatrix& rho) {
  const auto values = chsh_values(rho);
  return std::any_of(values.begin(), values.end(), [](double v) { return std::abs(v) > 2.0 + 1e-10; });
}

}  // namespace entsrc
