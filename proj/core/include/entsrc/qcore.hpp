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

// Dense two-qubit linear algebra: fixed-size complex matrices, validated
// density matrices, partial transpose, a Jacobi eigensolver and the scalar
// functionals (negativity, purity, expectation values) built on top of them.
//
// Basis order is |00>, |01>, |10>, |11> everywhere; index = 2 * a + b where
// a is the first qubit and b the second.

#include <array>
#include <complex>
#include <cstddef>
#include <span>

namespace entsrc {

using Complex = std::complex<double>;

/// Row-major N x N complex matrix with value semantics.
template <std::size_t N>
class SquareMatrix {
 public:
  static constexpr std::size_t kDim = N;

  constexpr SquareMatrix() = default;

  static constexpr SquareMatrix identity() {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = 1.0;
    return m;
  }

  static constexpr SquareMatrix diagonal(const std::array<double, N>& d) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) m(i, i) = d[i];
    return m;
  }

  /// |v><v| for an arbitrary (not necessarily normalized) vector.
  static constexpr SquareMatrix outer(const std::array<Complex, N>& v) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < N; ++j) m(i, j) = v[i] * std::conj(v[j]);
    }
    return m;
  }

  constexpr Complex& operator()(std::size_t r, std::size_t c) { return data_[r * N + c]; }
  constexpr const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * N + c]; }

  std::span<const Complex, N * N> data() const { return data_; }

  constexpr Complex trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < N; ++i) t += (*this)(i, i);
    return t;
  }

  constexpr SquareMatrix adjoint() const {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
    }
    return m;
  }

  constexpr SquareMatrix& operator+=(const SquareMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] += o.data_[i];
    return *this;
  }
  constexpr SquareMatrix& operator-=(const SquareMatrix& o) {
    for (std::size_t i = 0; i < N * N; ++i) data_[i] -= o.data_[i];
    return *this;
  }
  constexpr SquareMatrix& operator*=(Complex s) {
    for (auto& x : data_) x *= s;
    return *this;
  }

  friend constexpr SquareMatrix operator+(SquareMatrix a, const SquareMatrix& b) { return a += b; }
  friend constexpr SquareMatrix operator-(SquareMatrix a, const SquareMatrix& b) { return a -= b; }
  friend constexpr SquareMatrix operator*(SquareMatrix a, Complex s) { return a *= s; }
  friend constexpr SquareMatrix operator*(Complex s, SquareMatrix a) { return a *= s; }

  friend constexpr SquareMatrix operator*(const SquareMatrix& a, const SquareMatrix& b) {
    SquareMatrix m;
    for (std::size_t i = 0; i < N; ++i) {
      for (std::size_t k = 0; k < N; ++k) {
        const Complex aik = a(i, k);
        for (std::size_t j = 0; j < N; ++j) m(i, j) += aik * b(k, j);
      }
    }
    return m;
  }

  friend constexpr bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  std::array<Complex, N * N> data_{};
};

using Matrix2 = SquareMatrix<2>;
using Matrix4 = SquareMatrix<4>;
using Ket4 = std::array<Complex, 4>;

Matrix4 kron(const Matrix2& a, const Matrix2& b);

/// Pauli matrix for axis 1 (X), 2 (Y) or 3 (Z).
Matrix2 pauli(int axis);

/// Largest |m(i,j) - conj(m(j,i))|.
double hermiticity_defect(const Matrix4& m);

/// Eigenvalues sorted in descending order.
struct Spectrum {
  std::array<double, 4> values{};

  double min() const { return values[3]; }
  double max() const { return values[0]; }
  double sum() const { return values[0] + values[1] + values[2] + values[3]; }
};

/// A 4x4 Hermitian, unit-trace, positive semidefinite matrix. Instances can
/// only be obtained through validate_state (or helpers that call it), so
/// holding one is proof that the invariants were checked.
class DensityMatrix {
 public:
  static constexpr double kHermitianTolerance = 1e-12;
  static constexpr double kTraceTolerance = 1e-12;
  static constexpr double kPsdTolerance = -1e-10;

  const Matrix4& matrix() const { return m_; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

  friend bool operator==(const DensityMatrix&, const DensityMatrix&) = default;

 private:
  explicit DensityMatrix(const Matrix4& m) : m_(m) {}
  friend DensityMatrix validate_state(const Matrix4& m);

  Matrix4 m_;
};

/// Checks hermiticity (1e-12), unit trace (1e-12) and positivity (eigenvalues
/// >= -1e-10). Throws Error with kNotHermitian / kTraceNotOne / kNotPsd.
DensityMatrix validate_state(const Matrix4& m);

/// Convex combination sum_i w_i rho_i. Weights must be non-negative and sum
/// to one; the result is re-validated.
DensityMatrix mix_states(std::span<const DensityMatrix> states, std::span<const double> weights);

/// Transpose on the second qubit: <a b|M^TB|a' b'> = <a b'|M|a' b>.
/// Pure index permutation, so applying it twice returns the input bit-exactly.
Matrix4 partial_transpose(const Matrix4& m);
Matrix4 partial_transpose(const DensityMatrix& rho);

/// Cyclic complex Jacobi diagonalization. Converges when the off-diagonal
/// Frobenius norm drops below 1e-13 (scaled by the matrix norm when that
/// exceeds one); sweep order is fixed so identical input gives identical
/// output. Throws kNotHermitian if the defect exceeds 1e-10.
Spectrum eig_hermitian(const Matrix4& m);

/// Negativity in the trace-norm convention N = ||rho^TB||_1 - 1, i.e. twice
/// the sum of |negative eigenvalues| of the partial transpose. This is twice
/// the (||.||_1 - 1)/2 normalization that is also common in the literature:
/// a maximally entangled pair has N = 1 here. Values below 1e-12 return 0.
double negativity(const DensityMatrix& rho);

/// Tr(rho^2).
double purity(const DensityMatrix& rho);

/// Re Tr(rho * obs). Throws kNotHermitian if obs is not Hermitian (1e-10).
double expectation(const DensityMatrix& rho, const Matrix4& obs);

}  // namespace entsrc
