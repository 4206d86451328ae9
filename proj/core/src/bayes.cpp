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

#include "entsrc/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "entsrc/error.hpp"
#include "parallel.hpp"

namespace entsrc {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_aligned(const TestSet& ts, std::size_t n) {
  if (ts.size() != n) {
    throw Error(ErrorCode::kLengthMismatch,
                "weights have " + std::to_string(n) + " entries, test set has " + std::to_string(ts.size()));
  }
}

}  // namespace

double log_likelihood(const MeasurementRecord& rec, const DensityMatrix& rho) {
  double ll = 0.0;
  for (const SettingCounts& sc : rec.settings()) {
    const std::array<double, 4> p = outcome_probabilities(rho, sc);
    for (std::size_t k = 0; k < 4; ++k) {
      if (sc.counts[k] == 0) continue;
      if (p[k] <= kZeroProbability) return kNegInf;
      ll += static_cast<double>(sc.counts[k]) * std::log(p[k]);
    }
  }
  return ll;
}

double log_multinomial_coefficient(const MeasurementRecord& rec) {
  double c = 0.0;
  for (const SettingCounts& sc : rec.settings()) {
    c += std::lgamma(static_cast<double>(sc.total()) + 1.0);
    for (std::int64_t n : sc.counts) c -= std::lgamma(static_cast<double>(n) + 1.0);
  }
  return c;
}

Posterior::Posterior(std::vector<double> weights) : weights_(std::move(weights)) {}

Posterior update_posterior(const TestSet& ts, const MeasurementRecord& rec) {
  const std::size_t n = ts.size();
  const std::span<const double> prior = ts.prior_weights();
  std::vector<double> log_w(n, kNegInf);
  detail::parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      if (prior[i] > 0.0) log_w[i] = std::log(prior[i]) + log_likelihood(rec, ts.state(i).rho);
    }
  });

  const double max_log = *std::max_element(log_w.begin(), log_w.end());
  if (!std::isfinite(max_log)) {
    throw Error(ErrorCode::kAllStatesExcluded, "every state in the test set assigns zero probability to the record");
  }
  double sum = 0.0;
  for (double& lw : log_w) {
    lw = std::exp(lw - max_log);
    sum += lw;
  }
  for (double& w : log_w) w /= sum;
  return Posterior(std::move(log_w));
}

EstimateSummary summarize(const TestSet& ts, std::span<const double> weights) {
  check_aligned(ts, weights.size());
  EstimateSummary s;
  double neg_sq = 0.0;
  double pur_sq = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const double w = weights[i];
    if (w == 0.0) continue;
    const TestState& st = ts.state(i);
    if (st.entangled) s.prob_entangled += w;
    s.neg_mean += w * st.negativity;
    neg_sq += w * st.negativity * st.negativity;
    s.pur_mean += w * st.purity;
    pur_sq += w * st.purity * st.purity;
  }
  s.neg_std = std::sqrt(std::max(0.0, neg_sq - s.neg_mean * s.neg_mean));
  s.pur_std = std::sqrt(std::max(0.0, pur_sq - s.pur_mean * s.pur_mean));
  return s;
}

EstimateSummary summarize(const TestSet& ts, const Posterior& post) { return summarize(ts, post.weights()); }

Histogram histogram_negativity(const TestSet& ts, std::span<const double> weights, int n_bins) {
  check_aligned(ts, weights.size());
  if (n_bins < 1) throw Error(ErrorCode::kInvalidCount, "histogram needs at least one bin");
  const auto bins = static_cast<std::size_t>(n_bins);
  const double top = ts.max_negativity();
  Histogram h;
  h.bin_edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b) h.bin_edges[b] = top * static_cast<double>(b) / static_cast<double>(bins);
  h.bin_mass.assign(bins, 0.0);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const TestState& st = ts.state(i);
    if (!st.entangled) {
      h.separable_mass += weights[i];
      continue;
    }
    const double pos = std::ceil(st.negativity / top * static_cast<double>(bins)) - 1.0;
    const auto b = static_cast<std::size_t>(std::clamp(pos, 0.0, static_cast<double>(bins - 1)));
    h.bin_mass[b] += weights[i];
  }
  return h;
}

Histogram histogram_negativity(const TestSet& ts, const Posterior& post, int n_bins) {
  return histogram_negativity(ts, post.weights(), n_bins);
}

DensityMatrix mean_state(const TestSet& ts, const Posterior& post) {
  check_aligned(ts, post.size());
  Matrix4 acc;
  const std::span<const double> w = post.weights();
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i] == 0.0) continue;
    const Matrix4& m = ts.state(i).rho.matrix();
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) acc(r, c) += w[i] * m(r, c);
    }
  }
  return validate_state(acc);
}

}  // namespace entsrc
