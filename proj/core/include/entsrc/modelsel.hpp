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

// Maximum likelihoods of three nested source models given the five-setting
// correlation data, and their comparison by the Akaike and Bayesian
// information criteria (both in the "larger is better" form
// Omega = log L - k and Omega' = log L - k ln(N_m) / 2).
//
// All log-likelihoods omit the multinomial coefficient, matching
// log_likelihood() in bayes.hpp. Differences between models are unaffected.

#include <array>
#include <string_view>

#include "entsrc/measure.hpp"
#include "entsrc/statefam.hpp"

namespace entsrc {

enum class Model { kFull, kBellDiagonal, kTwoParam };

std::string_view model_label(Model m);

/// Independent observables for the five-setting suite (four are missing
/// from the 15 of a general two-qubit state).
inline constexpr int kFullModelParams = 11;
inline constexpr int kBellDiagonalParams = 3;
inline constexpr int kTwoParamParams = 2;

int parameter_count(Model m);

struct ModelScore {
  Model model = Model::kFull;
  double log_l = 0.0;
  int k = 0;
  double n_m = 0.0;
  double omega_aic = 0.0;
  double omega_bic = 0.0;
};

/// Throws kInvalidCount for n_m < 1 or k < 0.
ModelScore score(Model model, double log_l, int k, double n_m);

/// sum over settings and outcomes of N_ij f log f (0 log 0 = 0). Upper bound
/// on the log-likelihood of any state; used as the full model's value.
double log_l_full_bound(const FrequencyTable& freq);

/// Frequencies a Bell-diagonal state predicts for a setting. Only the
/// diagonal settings (XX, YY, ZZ) depend on the weights; all others are 1/4.
std::array<double, 4> bell_diagonal_prediction(const BellDiagonalPoint& pt, Setting s);

struct BellDiagonalFit {
  BellDiagonalPoint point;
  /// True when the unconstrained closed form was already a valid simplex
  /// point; false when the constrained maximizer had to be searched for.
  bool closed_form = true;
  double log_l = 0.0;
};

/// Maximum-likelihood Bell-diagonal state. The closed form matches the
/// observed XX, YY and ZZ correlations; when it leaves the simplex the
/// boundary faces are searched exactly (the objective is separable and
/// concave in the three correlation sums). Throws kMissingSetting if XX, YY
/// or ZZ data are absent.
BellDiagonalFit fit_bell_diagonal(const FrequencyTable& freq);
double log_l_bell_diagonal(const FrequencyTable& freq);

struct TwoParamFit {
  double p = 0.0;
  /// p * c(sigma): the fitted XX correlation.
  double coherence_product = 0.0;
  /// c(sigma) = coherence_product / p (1 when p == 0).
  double coherence = 1.0;
  /// Width reproducing the coherence; +inf when coherence == 0.
  double sigma = 0.0;
  bool closed_form = true;
  double log_l = 0.0;
};

/// Maximum likelihood over p in [0, 1], sigma >= 0, i.e. over
/// 0 <= p * c(sigma) <= p. Only ZZ and the XX - YY combination carry
/// information; the closed form is used when it lands in that triangle,
/// otherwise the best point on its edges (each a 1-D closed form).
TwoParamFit fit_two_param(const FrequencyTable& freq);
double log_l_two_param(const FrequencyTable& freq);

struct ComparisonReport {
  ModelScore full;
  ModelScore bell_diagonal;
  ModelScore two_param;
  BellDiagonalFit bell_diagonal_fit;
  TwoParamFit two_param_fit;
  double delta_omega = 0.0;         // Omega_{p,sigma} - Omega_a
  double delta_omega_bd = 0.0;      // Omega_Bd - Omega_a
  double delta_omega_bic = 0.0;     // Omega'_{p,sigma} - Omega'_a
  double delta_omega_bd_bic = 0.0;  // Omega'_Bd - Omega'_a
  Model winner_aic = Model::kFull;
  Model winner_bic = Model::kFull;
};

/// Scores all three models. Throws kMissingSetting unless all five default
/// settings are present.
ComparisonReport compare(const FrequencyTable& freq);
ComparisonReport compare(const MeasurementRecord& rec);

}  // namespace entsrc
