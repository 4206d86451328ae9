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

// Bayesian updating over a finite test set of states, and the posterior
// summaries derived from it.

#include <cstddef>
#include <span>
#include <vector>

#include "entsrc/measure.hpp"
#include "entsrc/qcore.hpp"
#include "entsrc/statefam.hpp"

namespace entsrc {

/// Predicted probabilities at or below this value count as exactly zero.
inline constexpr double kZeroProbability = 1e-14;

/// log p(d|rho) without the multinomial coefficient:
/// sum over settings and outcomes of count * log(prob). Zero counts
/// contribute nothing; a positive count on a zero-probability outcome gives
/// -infinity.
double log_likelihood(const MeasurementRecord& rec, const DensityMatrix& rho);

/// log of the multinomial coefficients, prod_settings N_ij! / prod_k n_ijk!.
/// Constant across states and models.
double log_multinomial_coefficient(const MeasurementRecord& rec);

/// Posterior weights, aligned index-for-index with the test set they came
/// from.
class Posterior {
 public:
  explicit Posterior(std::vector<double> weights);

  std::span<const double> weights() const { return weights_; }
  std::size_t size() const { return weights_.size(); }

  /// Returns the posterior as prior weights (for the next update).
  std::vector<double> as_prior() const { return weights_; }

 private:
  std::vector<double> weights_;
};

/// p(rho|d) proportional to prior(rho) * p(d|rho), normalized with a
/// max-shifted exponential sum in fixed index order. Throws
/// kAllStatesExcluded if no state with positive prior weight has finite
/// likelihood.
Posterior update_posterior(const TestSet& ts, const MeasurementRecord& rec);

struct EstimateSummary {
  double prob_entangled = 0.0;
  double neg_mean = 0.0;
  double neg_std = 0.0;
  double pur_mean = 0.0;
  double pur_std = 0.0;
};

/// Posterior (or prior) expectations of the cached negativity and purity.
/// Throws kLengthMismatch when the weights do not match the set.
EstimateSummary summarize(const TestSet& ts, std::span<const double> weights);
EstimateSummary summarize(const TestSet& ts, const Posterior& post);

struct Histogram {
  std::vector<double> bin_edges;  // n_bins + 1 ascending edges over [0, max negativity]
  std::vector<double> bin_mass;
  double separable_mass = 0.0;
};

/// Equal-width bins over (0, max negativity in the set]; states with zero
/// cached negativity go to separable_mass. Bins are half-open (lo, hi] so a
/// state sitting on an edge counts in the lower bin.
Histogram histogram_negativity(const TestSet& ts, std::span<const double> weights, int n_bins);
Histogram histogram_negativity(const TestSet& ts, const Posterior& post, int n_bins);

/// sum_i w_i rho_i over the test set.
DensityMatrix mean_state(const TestSet& ts, const Posterior& post);

}  // namespace entsrc
