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

#include "entsrc/statefam.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <string>

#include "entsrc/error.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace entsrc {
namespace {

constexpr double kQuadratureTolerance = 1e-12;
constexpr int kMaxSimpsonDepth = 48;

template <class F>
double simpson_step(const F& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
                    int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, kMaxSimpsonDepth);
}

void check_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::kOutOfDomain, std::string(what) + " must lie in [0, 1], got " + std::to_string(x));
  }
}

Matrix4 bell_diagonal_matrix(const std::array<double, 4>& w) {
  Matrix4 m;
  m(0, 0) = m(3, 3) = 0.5 * (w[0] + w[1]);
  m(1, 1) = m(2, 2) = 0.5 * (w[2] + w[3]);
  m(0, 3) = m(3, 0) = 0.5 * (w[0] - w[1]);
  m(1, 2) = m(2, 1) = 0.5 * (w[2] - w[3]);
  return m;
}

}  // namespace

std::string_view model_name(ModelId id) {
  switch (id) {
    case ModelId::kTwoParam: return "two-param";
    case ModelId::kBellDiagonal: return "bell-diag";
  }
  return "unknown";
}

ModelId parse_model_name(std::string_view name) {
  if (name == "two-param" || name == "two_param") return ModelId::kTwoParam;
  if (name == "bell-diag" || name == "bell_diag") return ModelId::kBellDiagonal;
  throw Error(ErrorCode::kUnknownStateFamily, "unknown prior model '" + std::string(name) + "'");
}

TestState make_test_state(const DensityMatrix& rho, const StateLabel& label) {
  TestState s{rho, label, negativity(rho), purity(rho), false};
  s.entangled = s.negativity > kEntanglementThreshold;
  return s;
}

TestSet::TestSet(ModelId model, std::vector<TestState> states)
    : TestSet(model, std::move(states), std::vector<double>{}) {}

TestSet::TestSet(ModelId model, std::vector<TestState> states, std::vector<double> prior_weights)
    : model_(model) {
  const std::size_t n = states.size();
  weights_ = checked_weights(n, std::move(prior_weights));
  states_ = std::make_shared<const std::vector<TestState>>(std::move(states));
}

TestSet::TestSet(ModelId model, std::shared_ptr<const std::vector<TestState>> states,
                 std::vector<double> prior_weights)
    : model_(model), states_(std::move(states)) {
  weights_ = checked_weights(states_->size(), std::move(prior_weights));
}

std::vector<double> TestSet::checked_weights(std::size_t n, std::vector<double> w) {
  if (n == 0) throw Error(ErrorCode::kInvalidCount, "a test set needs at least one state");
  if (w.empty()) return std::vector<double>(n, 1.0 / static_cast<double>(n));
  if (w.size() != n) throw Error(ErrorCode::kLengthMismatch, "prior weights do not match the number of states");
  double sum = 0.0;
  for (double x : w) {
    if (!(x >= 0.0)) throw Error(ErrorCode::kOutOfDomain, "prior weight is negative or NaN");
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::kOutOfDomain, "prior weights sum to " + std::to_string(sum) + ", not 1");
  }
  return w;
}

TestSet TestSet::with_prior(std::vector<double> prior_weights) const {
  return TestSet(model_, states_, std::move(prior_weights));
}

double TestSet::prior_entangled_fraction() const {
  double mass = 0.0;
  for (std::size_t i = 0; i < size(); ++i) {
    if ((*states_)[i].entangled) mass += weights_[i];
  }
  return mass;
}

double TestSet::max_negativity() const {
  double m = 0.0;
  for (const TestState& s : *states_) m = std::max(m, s.negativity);
  return m;
}

Ket4 bell_vector(int index) {
  const double h = std::numbers::sqrt2 / 2.0;
  switch (index) {
    case 1: return {h, 0.0, 0.0, h};
    case 2: return {h, 0.0, 0.0, -h};
    case 3: return {0.0, h, h, 0.0};
    case 4: return {0.0, h, -h, 0.0};
    default:
      throw Error(ErrorCode::kIndexOutOfRange, "Bell index must be 1..4, got " + std::to_string(index));
  }
}

DensityMatrix bell_state(int index) {
  if (index < 1 || index > 4) {
    throw Error(ErrorCode::kIndexOutOfRange, "Bell index must be 1..4, got " + std::to_string(index));
  }
  std::array<double, 4> w{};
  w[static_cast<std::size_t>(index - 1)] = 1.0;
  return validate_state(bell_diagonal_matrix(w));
}

double coherence_factor(double sigma) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
    throw Error(ErrorCode::kOutOfDomain, "sigma must be finite and non-negative, got " + std::to_string(sigma));
  }
  if (sigma == 0.0) return 1.0;
  // With phi = sigma * t the ratio becomes
  //   int_0^T cos(sigma t) e^{-t^2} dt / int_0^T e^{-t^2} dt,  T = pi / sigma,
  // whose integrands are O(1) for every sigma.
  const double upper = std::numbers::pi / sigma;
  const auto integrand = [sigma](double t) { return std::cos(sigma * t) * std::exp(-t * t); };
  const double split = std::min(upper, 8.0);
  double numerator = adaptive_simpson(integrand, 0.0, split, kQuadratureTolerance);
  if (upper > split) numerator += adaptive_simpson(integrand, split, upper, kQuadratureTolerance);
  const double denominator = 0.5 * std::sqrt(std::numbers::pi) * std::erf(upper);
  return numerator / denominator;
}

double sigma_for_coherence(double c) {
  check_unit_interval(c, "coherence");
  if (c == 1.0) return 0.0;
  if (c == 0.0) return std::numeric_limits<double>::infinity();
  double lo = 0.0;
  double hi = 1.0;
  while (coherence_factor(hi) > c) {
    lo = hi;
    hi *= 2.0;
    if (hi > 1e12) return std::numeric_limits<double>::infinity();
  }
  for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (coherence_factor(mid) > c ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

DensityMatrix phase_damped_bell_state(double p, double coherence) {
  check_unit_interval(p, "p");
  check_unit_interval(coherence, "coherence");
  Matrix4 m;
  m(0, 0) = m(3, 3) = 0.25 * (1.0 + p);
  m(1, 1) = m(2, 2) = 0.25 * (1.0 - p);
  m(0, 3) = m(3, 0) = 0.5 * p * coherence;
  return validate_state(m);
}

DensityMatrix two_param_state(const TwoParamPoint& pt) {
  check_unit_interval(pt.p, "p");
  if (!(pt.sigma >= 0.0 && pt.sigma <= std::numbers::pi)) {
    throw Error(ErrorCode::kOutOfDomain, "sigma must lie in [0, pi], got " + std::to_string(pt.sigma));
  }
  return phase_damped_bell_state(pt.p, coherence_factor(pt.sigma));
}

DensityMatrix bell_diagonal_state(const BellDiagonalPoint& pt) {
  double sum = 0.0;
  for (double w : pt.weights) {
    if (!(w >= 0.0)) {
      throw Error(ErrorCode::kInvalidSimplexPoint, "Bell weight is negative or NaN: " + std::to_string(w));
    }
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(ErrorCode::kInvalidSimplexPoint, "Bell weights sum to " + std::to_string(sum));
  }
  return validate_state(bell_diagonal_matrix(pt.weights));
}

DensityMatrix skewed_bell_state(double k) {
  if (!(k > 0.0 && k <= 1.0)) {
    throw Error(ErrorCode::kOutOfDomain, "k must lie in (0, 1], got " + std::to_string(k));
  }
  const double norm = 1.0 / std::sqrt(1.0 + k * k);
  Matrix4 m = Matrix4::outer({norm, 0.0, 0.0, k * norm}) * 0.5;
  m += Matrix4::identity() * 0.125;
  return validate_state(m);
}

DensityMatrix crossed_pair_mixture(double amplitude) {
  const double norm = 1.0 / std::sqrt(1.0 + amplitude * amplitude);
  Matrix4 m = Matrix4::outer({norm, 0.0, 0.0, amplitude * norm}) * 0.53;
  m += Matrix4::outer({0.0, norm, amplitude * norm, 0.0}) * 0.47;
  return validate_state(m);
}

DensityMatrix reference_mixture(ReferenceMixture which) {
  return crossed_pair_mixture(which == ReferenceMixture::kAmplitude09 ? 0.9 : 0.5);
}

DensityMatrix state_from_label(const StateLabel& label) {
  switch (label.model) {
    case ModelId::kTwoParam:
      return two_param_state({label.params[0], label.params[1]});
    case ModelId::kBellDiagonal:
      return bell_diagonal_state({label.params});
  }
  throw Error(ErrorCode::kUnknownStateFamily, "unknown label model");
}

TestSet grid_prior_two_param(int n_p, int n_sigma, double sigma_max) {
  if (n_p < 2 || n_sigma < 2) {
    throw Error(ErrorCode::kInvalidGridSize,
                "grid needs at least 2x2 points, got " + std::to_string(n_p) + "x" + std::to_string(n_sigma));
  }
  if (!(sigma_max > 0.0) || !std::isfinite(sigma_max)) {
    throw Error(ErrorCode::kOutOfDomain, "sigma range must be positive");
  }
  const auto np = static_cast<std::size_t>(n_p);
  const auto ns = static_cast<std::size_t>(n_sigma);
  std::vector<double> sigmas(ns);
  std::vector<double> coherences(ns);
  for (std::size_t j = 0; j < ns; ++j) {
    sigmas[j] = sigma_max * static_cast<double>(j) / static_cast<double>(ns - 1);
    coherences[j] = coherence_factor(sigmas[j]);
  }

  std::vector<std::optional<TestState>> built(np * ns);
  detail::parallel_for(built.size(), [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const std::size_t i = idx / ns;
      const std::size_t j = idx % ns;
      const double p = static_cast<double>(i) / static_cast<double>(np - 1);
      StateLabel label{ModelId::kTwoParam, {p, sigmas[j], 0.0, 0.0}};
      built[idx] = make_test_state(phase_damped_bell_state(p, coherences[j]), label);
    }
  });
  std::vector<TestState> states;
  states.reserve(built.size());
  for (auto& s : built) states.push_back(std::move(*s));
  return TestSet(ModelId::kTwoParam, std::move(states));
}

std::vector<BellDiagonalPoint> sample_simplex(std::size_t n, std::uint64_t seed) {
  auto rng = detail::seeded_engine(seed, 0);
  std::vector<BellDiagonalPoint> points(n);
  for (auto& pt : points) {
    std::array<double, 3> u{detail::uniform01(rng), detail::uniform01(rng), detail::uniform01(rng)};
    std::sort(u.begin(), u.end());
    pt.weights = {u[0], u[1] - u[0], u[2] - u[1], 1.0 - u[2]};
  }
  return points;
}

TestSet simplex_prior_bell_diagonal(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::kInvalidCount, "simplex prior needs at least one sample");
  const std::vector<BellDiagonalPoint> points = sample_simplex(n, seed);
  std::vector<std::optional<TestState>> built(n);
  detail::parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const StateLabel label{ModelId::kBellDiagonal, points[i].weights};
      built[i] = make_test_state(validate_state(bell_diagonal_matrix(points[i].weights)), label);
    }
  });
  std::vector<TestState> states;
  states.reserve(n);
  for (auto& s : built) states.push_back(std::move(*s));
  return TestSet(ModelId::kBellDiagonal, std::move(states));
}

}  // namespace entsrc
