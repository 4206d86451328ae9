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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "entsrc/error.hpp"
#include "oracles.hpp"

using namespace entsrc;

namespace {

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::kIoFailure;
}

DensityMatrix maximally_mixed() { return validate_state(Matrix4::identity() * Complex(0.25)); }

TestSet singleton(const DensityMatrix& rho) {
  return TestSet(ModelId::kTwoParam, {make_test_state(rho, {ModelId::kTwoParam, {}})});
}

double sum(std::span<const double> w) { return std::accumulate(w.begin(), w.end(), 0.0); }

}  // namespace

TEST(bayes, log_likelihood_examples) {
  EXPECT_EQ(log_likelihood(MeasurementRecord({{{1, 1}, {0, 0, 0, 0}, {}}}, {}), maximally_mixed()), 0.0);
  const MeasurementRecord one_each({{{1, 1}, {1, 1, 1, 1}, {}}}, {});
  EXPECT_NEAR(log_likelihood(one_each, maximally_mixed()), 4 * std::log(0.25), 1e-15);
  const MeasurementRecord impossible({{{1, 1}, {0, 1, 0, 0}, {}}}, {});
  EXPECT_EQ(log_likelihood(impossible, bell_state(1)), -std::numeric_limits<double>::infinity());
}

TEST(bayes, log_likelihood_matches_direct_sum) {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const DensityMatrix rho = oracle::random_state(rng);
    const MeasurementRecord rec = simulate_record(rho, 200, static_cast<std::uint64_t>(trial));
    EXPECT_NEAR(log_likelihood(rec, rho), oracle::direct_log_l(frequencies(rec), rho), 1e-9);
  }
}

TEST(bayes, multinomial_coefficient_examples) {
  EXPECT_NEAR(log_multinomial_coefficient(MeasurementRecord({{{1, 1}, {1, 1, 1, 1}, {}}}, {})), std::log(24.0),
              1e-12);
  EXPECT_NEAR(log_multinomial_coefficient(MeasurementRecord({{{1, 1}, {2, 0, 0, 1}, {}}}, {})), std::log(3.0),
              1e-12);
}

TEST(bayes, singleton_and_tied_posteriors) {
  const MeasurementRecord rec = simulate_record(maximally_mixed(), 10, 1);
  const Posterior one = update_posterior(singleton(maximally_mixed()), rec);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one.weights()[0], 1.0);

  // Phi1 and Phi2 only differ in XX/YY; a ZZ-only record cannot tell them apart.
  const TestSet pair(ModelId::kBellDiagonal, {make_test_state(bell_state(1), {ModelId::kBellDiagonal, {1, 0, 0, 0}}),
                                              make_test_state(bell_state(2), {ModelId::kBellDiagonal, {0, 1, 0, 0}})});
  const Posterior tied = update_posterior(pair, MeasurementRecord({{{3, 3}, {5, 0, 0, 5}, {}}}, {}));
  EXPECT_DOUBLE_EQ(tied.weights()[0], 0.5);
  EXPECT_DOUBLE_EQ(tied.weights()[1], 0.5);
}

TEST(bayes, all_states_excluded) {
  const MeasurementRecord rec({{{1, 1}, {0, 1, 0, 0}, {}}}, {});
  EXPECT_EQ(code_of([&] { update_posterior(singleton(bell_state(1)), rec); }), ErrorCode::kAllStatesExcluded);
}

TEST(bayes, posterior_is_normalized) {
  const TestSet ts = grid_prior_two_param(40, 40);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const MeasurementRecord rec = simulate_record(two_param_state({0.3 + 0.05 * seed, 0.5}), 300, seed);
    const Posterior post = update_posterior(ts, rec);
    EXPECT_NEAR(sum(post.weights()), 1.0, 1e-12);
    for (double w : post.weights()) EXPECT_GE(w, 0.0);
  }
}

TEST(bayes, posterior_matches_bayes_rule_oracle) {
  const TestSet ts = simplex_prior_bell_diagonal(300, 5);
  const MeasurementRecord rec = simulate_record(bell_diagonal_state({{0.5, 0.2, 0.2, 0.1}}), 50, 3);
  const Posterior post = update_posterior(ts, rec);
  std::vector<long double> raw(ts.size());
  long double z = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    raw[i] = std::exp(static_cast<long double>(oracle::direct_log_l(frequencies(rec), ts.state(i).rho)) + 200.0L);
    z += raw[i];
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    EXPECT_NEAR(post.weights()[i], static_cast<double>(raw[i] / z), 1e-12);
  }
}

TEST(bayes, sequential_update_equals_joint_update) {
  const TestSet ts = grid_prior_two_param(60, 60);
  const DensityMatrix rho = two_param_state({0.6, 0.8});
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const MeasurementRecord d1 = simulate_record(rho, 200, 2 * seed);
    const MeasurementRecord d2 = simulate_record(rho, 300, 2 * seed + 1);
    const Posterior joint = update_posterior(ts, d1.merged_with(d2));
    const Posterior first = update_posterior(ts, d1);
    const Posterior second = update_posterior(ts.with_prior(first.as_prior()), d2);
    for (std::size_t i = 0; i < ts.size(); ++i) EXPECT_NEAR(joint.weights()[i], second.weights()[i], 1e-9);
  }
}

TEST(bayes, summary_of_concentrated_weights) {
  const TestSet ts = grid_prior_two_param(5, 5);
  std::vector<double> w(ts.size(), 0.0);
  w[0] = 1.0;
  const EstimateSummary s = summarize(ts, w);
  EXPECT_EQ(s.prob_entangled, 0.0);
  EXPECT_EQ(s.neg_mean, 0.0);
  EXPECT_EQ(s.neg_std, 0.0);
  EXPECT_DOUBLE_EQ(s.pur_mean, 0.25);
  EXPECT_EQ(code_of([&] { summarize(ts, std::vector<double>(3, 1.0 / 3)); }), ErrorCode::kLengthMismatch);
}

TEST(bayes, summary_moments_match_direct_sums) {
  const TestSet ts = grid_prior_two_param(30, 30);
  const Posterior post = update_posterior(ts, simulate_record(two_param_state({0.5, 0.3}), 100, 4));
  const EstimateSummary s = summarize(ts, post);
  double pe = 0, m1 = 0, m2 = 0, q1 = 0, q2 = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const double w = post.weights()[i];
    const double n = negativity(ts.state(i).rho);
    const double p = purity(ts.state(i).rho);
    pe += n > 1e-12 ? w : 0.0;
    m1 += w * n;
    m2 += w * n * n;
    q1 += w * p;
    q2 += w * p * p;
  }
  EXPECT_NEAR(s.prob_entangled, pe, 1e-12);
  EXPECT_NEAR(s.neg_mean, m1, 1e-12);
  EXPECT_NEAR(s.neg_std, std::sqrt(std::max(0.0, m2 - m1 * m1)), 1e-9);
  EXPECT_NEAR(s.pur_mean, q1, 1e-12);
  EXPECT_NEAR(s.pur_std, std::sqrt(std::max(0.0, q2 - q1 * q1)), 1e-9);
}

TEST(bayes, histogram_mass_and_edges) {
  const TestSet ts = grid_prior_two_param(40, 40);
  const Posterior post = update_posterior(ts, simulate_record(two_param_state({0.7, 0.5}), 100, 5));
  const Histogram h = histogram_negativity(ts, post, 50);
  ASSERT_EQ(h.bin_mass.size(), 50u);
  ASSERT_EQ(h.bin_edges.size(), 51u);
  EXPECT_EQ(h.bin_edges.front(), 0.0);
  EXPECT_DOUBLE_EQ(h.bin_edges.back(), ts.max_negativity());
  EXPECT_NEAR(h.separable_mass + sum(h.bin_mass), 1.0, 1e-12);
  EXPECT_NEAR(h.separable_mass, 1.0 - summarize(ts, post).prob_entangled, 1e-12);

  const Histogram one = histogram_negativity(ts, post, 1);
  EXPECT_NEAR(one.bin_mass[0], summarize(ts, post).prob_entangled, 1e-12);
  EXPECT_EQ(code_of([&] { histogram_negativity(ts, post, 0); }), ErrorCode::kInvalidCount);
}

TEST(bayes, histogram_of_point_mass) {
  const TestSet ts = grid_prior_two_param(11, 3);
  std::vector<double> w(ts.size(), 0.0);
  w.back() = 1.0;  // p = 1, sigma = pi
  const Histogram h = histogram_negativity(ts, w, 10);
  EXPECT_EQ(h.separable_mass, 0.0);
  EXPECT_EQ(std::count(h.bin_mass.begin(), h.bin_mass.end(), 1.0), 1);
}

TEST(bayes, mean_state_examples) {
  const Posterior one({1.0});
  EXPECT_EQ(mean_state(singleton(bell_state(1)), one), bell_state(1));
  const TestSet pair(ModelId::kBellDiagonal, {make_test_state(bell_state(1), {ModelId::kBellDiagonal, {1, 0, 0, 0}}),
                                              make_test_state(bell_state(2), {ModelId::kBellDiagonal, {0, 1, 0, 0}})});
  EXPECT_EQ(negativity(mean_state(pair, Posterior({0.5, 0.5}))), 0.0);
}

TEST(bayes, negativity_of_mean_state_is_bounded_by_mean_negativity) {
  const TestSet grid = grid_prior_two_param(50, 50);
  const TestSet simplex = simplex_prior_bell_diagonal(5000, 8);
  std::mt19937_64 rng(32);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const DensityMatrix rho = oracle::random_state(rng);
    const MeasurementRecord rec = simulate_record(rho, 100, seed);
    for (const TestSet* ts : {&grid, &simplex}) {
      const Posterior post = update_posterior(*ts, rec);
      EXPECT_LE(negativity(mean_state(*ts, post)), summarize(*ts, post).neg_mean + 1e-12);
    }
  }
}

TEST(bayes, more_data_concentrates_the_posterior) {
  const TestSet ts = grid_prior_two_param(21, 21);
  const std::size_t truth = 12 * 21 + 5;
  const DensityMatrix rho = ts.state(truth).rho;
  int improved = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const double small = update_posterior(ts, simulate_record(rho, 100, seed)).weights()[truth];
    const double large = update_posterior(ts, simulate_record(rho, 1000, seed + 100)).weights()[truth];
    improved += large > small ? 1 : 0;
  }
  EXPECT_GE(improved, 16);
}
