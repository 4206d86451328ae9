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

#include "entsrc/qcore.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "entsrc/error.hpp"
#include "entsrc/statefam.hpp"
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

Matrix4 maximally_mixed() { return Matrix4::identity() * Complex(0.25); }

}  // namespace

TEST(qcore, kron_of_paulis) {
  const Matrix4 zz = kron(pauli(3), pauli(3));
  EXPECT_EQ(zz, Matrix4::diagonal({1, -1, -1, 1}));
  const Matrix4 xx = kron(pauli(1), pauli(1));
  EXPECT_EQ(xx(0, 3), Complex(1));
  EXPECT_EQ(xx(1, 2), Complex(1));
  EXPECT_EQ(xx(0, 0), Complex(0));
  const Matrix4 yy = kron(pauli(2), pauli(2));
  EXPECT_EQ(yy(0, 3), Complex(-1));
  EXPECT_EQ(yy(1, 2), Complex(1));
  EXPECT_EQ(code_of([] { pauli(0); }), ErrorCode::kIndexOutOfRange);
}

TEST(qcore, validate_state_accepts_valid_inputs) {
  EXPECT_NO_THROW(validate_state(maximally_mixed()));
  EXPECT_NO_THROW(validate_state(Matrix4::diagonal({1, 0, 0, 0})));
}

TEST(qcore, validate_state_rejects_each_violation) {
  EXPECT_EQ(code_of([] { validate_state(Matrix4::diagonal({0.5, 0.6, 0.0, -0.1})); }), ErrorCode::kNotPsd);
  EXPECT_EQ(code_of([] { validate_state(Matrix4::identity() * Complex(0.5)); }), ErrorCode::kTraceNotOne);
  Matrix4 m = maximally_mixed();
  m(0, 1) = 0.1;
  EXPECT_EQ(code_of([&] { validate_state(m); }), ErrorCode::kNotHermitian);
}

TEST(qcore, validate_state_message_carries_magnitude) {
  try {
    validate_state(Matrix4::diagonal({0.5, 0.6, 0.0, -0.1}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("-1.000e-01"), std::string::npos) << e.what();
  }
}

TEST(qcore, partial_transpose_examples) {
  EXPECT_EQ(partial_transpose(maximally_mixed()), maximally_mixed());
  const Matrix4 pt = partial_transpose(bell_state(1));
  const auto ref = oracle::eigen_oracle(pt);
  EXPECT_NEAR(ref[0], 0.5, 1e-14);
  EXPECT_NEAR(ref[3], -0.5, 1e-14);
  const Spectrum s = eig_hermitian(pt);
  EXPECT_NEAR(s.values[0], 0.5, 1e-12);
  EXPECT_NEAR(s.values[1], 0.5, 1e-12);
  EXPECT_NEAR(s.values[2], 0.5, 1e-12);
  EXPECT_NEAR(s.values[3], -0.5, 1e-12);
}

TEST(qcore, partial_transpose_of_phase_damped_state) {
  const DensityMatrix rho = two_param_state({0.4, 0.4});
  const double c = oracle::coherence_oracle(0.4);
  const auto ref = oracle::eigen_oracle(partial_transpose(rho));
  EXPECT_NEAR(ref[3], 0.15 - 0.4 * c / 2, 1e-10);
  EXPECT_NEAR(ref[3], -0.0421, 1e-4);
  EXPECT_NEAR(eig_hermitian(partial_transpose(rho)).min(), ref[3], 1e-12);
}

TEST(qcore, double_partial_transpose_is_identity) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 200; ++trial) {
    Matrix4 m;
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) m(r, c) = Complex(g(rng), g(rng));
    }
    EXPECT_EQ(partial_transpose(partial_transpose(m)), m);
  }
}

TEST(qcore, partial_transpose_preserves_trace_and_hermiticity) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = oracle::random_state(rng);
    const Matrix4 pt = partial_transpose(rho);
    EXPECT_NEAR(pt.trace().real(), 1.0, 1e-12);
    EXPECT_LE(hermiticity_defect(pt), 1e-15);
  }
}

TEST(qcore, eig_hermitian_matches_oracles) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 500; ++trial) {
    const Matrix4 h = oracle::random_hermitian(rng);
    const Spectrum s = eig_hermitian(h);
    const auto ref = oracle::eigen_oracle(h);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(s.values[i], ref[i], 1e-10);
    for (std::size_t i = 0; i + 1 < 4; ++i) EXPECT_GE(s.values[i], s.values[i + 1]);
    const auto powers = oracle::trace_powers(h);
    for (std::size_t k = 0; k < 4; ++k) {
      double sum = 0.0;
      for (double v : s.values) sum += std::pow(v, static_cast<double>(k + 1));
      EXPECT_NEAR(sum, powers[k], 1e-9 * std::max(1.0, std::abs(powers[k])));
    }
  }
}

TEST(qcore, eig_hermitian_degenerate_and_diagonal) {
  const Spectrum id = eig_hermitian(Matrix4::identity());
  for (double v : id.values) EXPECT_DOUBLE_EQ(v, 1.0);
  const Spectrum d = eig_hermitian(Matrix4::diagonal({0.1, 0.7, -0.3, 0.2}));
  EXPECT_DOUBLE_EQ(d.values[0], 0.7);
  EXPECT_DOUBLE_EQ(d.values[1], 0.2);
  EXPECT_DOUBLE_EQ(d.values[2], 0.1);
  EXPECT_DOUBLE_EQ(d.values[3], -0.3);
}

TEST(qcore, eig_hermitian_is_deterministic) {
  std::mt19937_64 rng(14);
  const Matrix4 h = oracle::random_hermitian(rng);
  const Spectrum a = eig_hermitian(h);
  const Spectrum b = eig_hermitian(h);
  EXPECT_EQ(a.values, b.values);
}

TEST(qcore, eig_hermitian_rejects_non_hermitian) {
  Matrix4 m = Matrix4::identity();
  m(0, 1) = 1.0;
  EXPECT_EQ(code_of([&] { eig_hermitian(m); }), ErrorCode::kNotHermitian);
}

TEST(qcore, negativity_examples) {
  EXPECT_EQ(negativity(validate_state(maximally_mixed())), 0.0);
  for (int i = 1; i <= 4; ++i) EXPECT_NEAR(negativity(bell_state(i)), 1.0, 1e-12);
  EXPECT_NEAR(negativity(two_param_state({0.4, 0.4})), 0.0843, 1e-3);
  EXPECT_NEAR(negativity(skewed_bell_state(0.9)), 0.247, 1e-3);
}

TEST(qcore, negativity_is_twice_negative_eigenvalue_mass) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 200; ++trial) {
    const DensityMatrix rho = oracle::random_state(rng);
    const auto ev = oracle::eigen_oracle(partial_transpose(rho));
    double trace_norm = 0.0;
    for (double v : ev) trace_norm += std::abs(v);
    const double expected = trace_norm - 1.0 < 1e-12 ? 0.0 : trace_norm - 1.0;
    EXPECT_NEAR(negativity(rho), expected, 1e-10);
  }
}

TEST(qcore, bell_diagonal_negativity_formula) {
  const auto points = sample_simplex(1000, 16);
  for (const BellDiagonalPoint& pt : points) {
    double pmax = 0.0;
    for (double w : pt.weights) pmax = std::max(pmax, w);
    EXPECT_NEAR(negativity(bell_diagonal_state(pt)), std::max(0.0, 2 * pmax - 1), 1e-9);
  }
}

TEST(qcore, two_param_negativity_formula_on_grid) {
  for (int i = 0; i < 50; ++i) {
    for (int j = 0; j < 50; ++j) {
      const double p = i / 49.0;
      const double sigma = std::numbers::pi * j / 49.0;
      const double c = coherence_factor(sigma);
      const double analytic = 2 * std::max(0.0, p * c / 2 - (1 - p) / 4);
      EXPECT_NEAR(negativity(two_param_state({p, sigma})), analytic, 1e-9) << p << " " << sigma;
    }
  }
}

TEST(qcore, purity_examples_and_bounds) {
  EXPECT_DOUBLE_EQ(purity(validate_state(maximally_mixed())), 0.25);
  EXPECT_NEAR(purity(bell_state(1)), 1.0, 1e-15);
  EXPECT_NEAR(purity(two_param_state({0.4, 0.4})), 0.3638, 5e-4);
  EXPECT_NEAR(purity(skewed_bell_state(0.7)), 0.4375, 1e-15);
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 200; ++trial) {
    const double pur = purity(oracle::random_state(rng));
    EXPECT_GE(pur, 0.25 - 1e-12);
    EXPECT_LE(pur, 1.0 + 1e-12);
  }
}

TEST(qcore, purity_equals_sum_of_squared_eigenvalues) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 100; ++trial) {
    const DensityMatrix rho = oracle::random_state(rng);
    double sum = 0.0;
    for (double v : oracle::eigen_oracle(rho.matrix())) sum += v * v;
    EXPECT_NEAR(purity(rho), sum, 1e-12);
  }
}

TEST(qcore, expectation_examples) {
  const Matrix4 xx = kron(pauli(1), pauli(1));
  const Matrix4 yy = kron(pauli(2), pauli(2));
  const Matrix4 zz = kron(pauli(3), pauli(3));
  EXPECT_EQ(expectation(validate_state(maximally_mixed()), xx), 0.0);
  EXPECT_NEAR(expectation(bell_state(1), xx), 1.0, 1e-15);
  EXPECT_NEAR(expectation(bell_state(1), yy), -1.0, 1e-15);
  EXPECT_NEAR(expectation(bell_state(1), zz), 1.0, 1e-15);
  Matrix4 bad = xx;
  bad(0, 1) = 1.0;
  EXPECT_EQ(code_of([&] { expectation(bell_state(1), bad); }), ErrorCode::kNotHermitian);
}

TEST(qcore, mix_states_is_convex_combination) {
  const DensityMatrix a = bell_state(1);
  const DensityMatrix b = bell_state(2);
  const std::array states{a, b};
  const std::array w{0.5, 0.5};
  const DensityMatrix m = mix_states(states, w);
  EXPECT_EQ(negativity(m), 0.0);
  EXPECT_NEAR(m(0, 0).real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(m(0, 3)), 0.0, 1e-15);
  const std::array bad{0.7, 0.7};
  EXPECT_THROW(mix_states(states, bad), Error);
}
