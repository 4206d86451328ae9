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

// State families used as candidate sources and the prior test sets built
// from them.

#include <array>
#include <cstdint>
#include <memory>
#include <numbers>
#include <span>
#include <string_view>
#include <vector>

#include "entsrc/qcore.hpp"

namespace entsrc {

/// p in [0, 1] is the weight of the phase-noised Bell state, sigma in [0, pi]
/// the width (radians) of the Gaussian phase distribution.
struct TwoParamPoint {
  double p = 0.0;
  double sigma = 0.0;
};

/// Weights of the four Bell projectors, ordered Phi1..Phi4 with
/// Phi1 = (|00>+|11>)/sqrt2, Phi2 = (|00>-|11>)/sqrt2,
/// Phi3 = (|01>+|10>)/sqrt2, Phi4 = (|01>-|10>)/sqrt2.
struct BellDiagonalPoint {
  std::array<double, 4> weights{};
};

enum class ModelId { kTwoParam, kBellDiagonal };

std::string_view model_name(ModelId id);
ModelId parse_model_name(std::string_view name);  // throws kUnknownStateFamily

/// Identifies where a test state came from. For kTwoParam params = {p, sigma};
/// for kBellDiagonal params = {p1, p2, p3, p4}.
struct StateLabel {
  ModelId model = ModelId::kTwoParam;
  std::array<double, 4> params{};
};

struct TestState {
  DensityMatrix rho;
  StateLabel label;
  double negativity = 0.0;
  double purity = 0.0;
  bool entangled = false;
};

/// Entangled/separable cut on cached negativity.
inline constexpr double kEntanglementThreshold = 1e-12;

/// Builds the cached scalars for a state.
TestState make_test_state(const DensityMatrix& rho, const StateLabel& label);

/// Immutable list of candidate states with prior weights. The state list is
/// shared between copies, so re-weighting (e.g. using a posterior as the next
/// prior) does not duplicate the matrices.
class TestSet {
 public:
  /// Uniform prior 1/N_s.
  TestSet(ModelId model, std::vector<TestState> states);
  /// Explicit prior; weights must be non-negative and sum to 1 within 1e-12.
  TestSet(ModelId model, std::vector<TestState> states, std::vector<double> prior_weights);

  std::size_t size() const { return states_->size(); }
  ModelId model_id() const { return model_; }
  std::span<const TestState> states() const { return *states_; }
  const TestState& state(std::size_t i) const { return (*states_)[i]; }
  std::span<const double> prior_weights() const { return weights_; }

  /// Same states, new prior (for sequential updating).
  TestSet with_prior(std::vector<double> prior_weights) const;

  /// Prior mass on states with cached entangled == true.
  double prior_entangled_fraction() const;

  double max_negativity() const;

 private:
  TestSet(ModelId model, std::shared_ptr<const std::vector<TestState>> states,
          std::vector<double> prior_weights);
  static std::vector<double> checked_weights(std::size_t n, std::vector<double> w);

  ModelId model_;
  std::shared_ptr<const std::vector<TestState>> states_;
  std::vector<double> weights_;
};

Ket4 bell_vector(int index);  // 1..4, throws kIndexOutOfRange

/// Projector onto the Bell vector with the given index (1..4).
DensityMatrix bell_state(int index);

/// Off-diagonal damping of the phase-noised Bell state: the mean of cos(phi)
/// under the Gaussian exp(-phi^2/sigma^2) truncated to [-pi, pi] and
/// renormalized there. Evaluated by adaptive Simpson quadrature (absolute
/// tolerance 1e-12). sigma = 0 returns 1 (the limit). Any sigma >= 0 is
/// accepted; throws kOutOfDomain for negative or non-finite sigma.
double coherence_factor(double sigma);

/// Inverse of coherence_factor on sigma in [0, inf). Returns +inf for c == 0.
/// Throws kOutOfDomain unless 0 <= c <= 1.
double sigma_for_coherence(double c);

/// p * (phase-damped Phi1) + (1-p) * identity/4 with the |00><11| element
/// equal to p * coherence / 2.
DensityMatrix phase_damped_bell_state(double p, double coherence);

DensityMatrix two_param_state(const TwoParamPoint& pt);

/// sum_i w_i |Phi_i><Phi_i|; throws kInvalidSimplexPoint.
DensityMatrix bell_diagonal_state(const BellDiagonalPoint& pt);

/// 0.5 |psi_k><psi_k| + 0.5 identity/4 with psi_k = (|00> + k|11>)/sqrt(1+k^2),
/// 0 < k <= 1. Purity is 7/16 for every k.
DensityMatrix skewed_bell_state(double k);

/// 0.53 |psi><psi| + 0.47 |phi><phi| with psi = (|00> + a|11>)/N and
/// phi = (|01> + a|10>)/N, N = sqrt(1 + a^2).
DensityMatrix crossed_pair_mixture(double amplitude);

enum class ReferenceMixture {
  kAmplitude09,  // a = 0.9: close to Bell-diagonal, far from the 2-parameter family
  kAmplitude05,  // a = 0.5: counterexample where the 2-parameter model reports separability
};
DensityMatrix reference_mixture(ReferenceMixture which);

/// Rebuilds the state a label describes.
DensityMatrix state_from_label(const StateLabel& label);

/// n_p x n_sigma grid over [0,1] x [0, sigma_max], both endpoints included,
/// uniform weights. Throws kInvalidGridSize unless both counts are >= 2.
TestSet grid_prior_two_param(int n_p, int n_sigma, double sigma_max = std::numbers::pi);

/// n points uniform on the 3-simplex (sorted-uniform spacings), deterministic
/// for a given seed.
std::vector<BellDiagonalPoint> sample_simplex(std::size_t n, std::uint64_t seed);

/// Test set over sample_simplex(n, seed) with uniform weights.
TestSet simplex_prior_bell_diagonal(std::size_t n, std::uint64_t seed);

}  // namespace entsrc
