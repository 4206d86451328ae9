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

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <sstream>
#include <string>

#include "entsrc/error.hpp"

namespace entsrc {
namespace {

constexpr double kEigHermitianTolerance = 1e-10;
constexpr double kOffDiagonalThreshold = 1e-13;
constexpr int kMaxSweeps = 64;
constexpr double kNegativityFloor = 1e-12;

std::string describe(const char* what, double magnitude) {
  std::ostringstream out;
  out.precision(3);
  out << what << " (magnitude " << std::scientific << magnitude << ")";
  return out.str();
}

double off_diagonal_norm(const Matrix4& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (i != j) s += std::norm(a(i, j));
    }
  }
  return std::sqrt(s);
}

double frobenius_norm(const Matrix4& a) {
  double s = 0.0;
  for (const Complex& x : a.data()) s += std::norm(x);
  return std::sqrt(s);
}

// One two-sided rotation zeroing a(p, q). The unitary is diag(1, e^{-i phi})
// on the (p, q) block followed by the real Jacobi rotation of the resulting
// real symmetric 2x2 block.
void rotate(Matrix4& a, std::size_t p, std::size_t q) {
  const double apq_abs = std::abs(a(p, q));
  if (apq_abs == 0.0) return;
  const Complex phase = a(p, q) / apq_abs;  // e^{i phi}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * apq_abs);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const Complex upp = c;
  const Complex upq = s;
  const Complex uqp = -s * std::conj(phase);
  const Complex uqq = c * std::conj(phase);

  // a <- a * U (columns p, q)
  for (std::size_t k = 0; k < 4; ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * upp + akq * uqp;
    a(k, q) = akp * upq + akq * uqq;
  }
  // a <- U^dagger * a (rows p, q)
  for (std::size_t k = 0; k < 4; ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
    a(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
}

}  // namespace

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 m;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t l = 0; l < 2; ++l) m(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
      }
    }
  }
  return m;
}

Matrix2 pauli(int axis) {
  Matrix2 m;
  switch (axis) {
    case 1:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 2:
      m(0, 1) = Complex(0.0, -1.0);
      m(1, 0) = Complex(0.0, 1.0);
      break;
    case 3:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
      break;
    default:
      throw Error(ErrorCode::kIndexOutOfRange, "Pauli axis must be 1, 2 or 3, got " + std::to_string(axis));
  }
  return m;
}

double hermiticity_defect(const Matrix4& m) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = i; j < 4; ++j) worst = std::max(worst, std::abs(m(i, j) - std::conj(m(j, i))));
  }
  return worst;
}

DensityMatrix validate_state(const Matrix4& m) {
  const double defect = hermiticity_defect(m);
  if (!(defect <= DensityMatrix::kHermitianTolerance)) {
    throw Error(ErrorCode::kNotHermitian, describe("matrix is not Hermitian", defect));
  }
  const double trace_error = std::abs(m.trace() - 1.0);
  if (!(trace_error <= DensityMatrix::kTraceTolerance)) {
    throw Error(ErrorCode::kTraceNotOne, describe("trace differs from one", trace_error));
  }
  const Spectrum spectrum = eig_hermitian(m);
  if (spectrum.min() < DensityMatrix::kPsdTolerance) {
    throw Error(ErrorCode::kNotPsd, describe("negative eigenvalue", spectrum.min()));
  }
  return DensityMatrix(m);
}

DensityMatrix mix_states(std::span<const DensityMatrix> states, std::span<const double> weights) {
  if (states.size() != weights.size()) {
    throw Error(ErrorCode::kLengthMismatch, "mixture needs one weight per state");
  }
  Matrix4 acc;
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (weights[i] < 0.0) throw Error(ErrorCode::kOutOfDomain, "mixture weight is negative");
    if (weights[i] == 0.0) continue;
    const Matrix4& m = states[i].matrix();
    for (std::size_t r = 0; r < 4; ++r) {
      for (std::size_t c = 0; c < 4; ++c) acc(r, c) += weights[i] * m(r, c);
    }
  }
  return validate_state(acc);
}

Matrix4 partial_transpose(const Matrix4& m) {
  Matrix4 out;
  for (std::size_t a = 0; a < 2; ++a) {
    for (std::size_t b = 0; b < 2; ++b) {
      for (std::size_t ap = 0; ap < 2; ++ap) {
        for (std::size_t bp = 0; bp < 2; ++bp) out(2 * a + b, 2 * ap + bp) = m(2 * a + bp, 2 * ap + b);
      }
    }
  }
  return out;
}

Matrix4 partial_transpose(const DensityMatrix& rho) { return partial_transpose(rho.matrix()); }

Spectrum eig_hermitian(const Matrix4& m) {
  const double defect = hermiticity_defect(m);
  if (!(defect <= kEigHermitianTolerance)) {
    throw Error(ErrorCode::kNotHermitian, describe("eigensolver input is not Hermitian", defect));
  }
  Matrix4 a = m;
  for (std::size_t i = 0; i < 4; ++i) a(i, i) = a(i, i).real();
  const double threshold = kOffDiagonalThreshold * std::max(1.0, frobenius_norm(a));
  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > threshold; ++sweep) {
    for (std::size_t p = 0; p < 3; ++p) {
      for (std::size_t q = p + 1; q < 4; ++q) rotate(a, p, q);
    }
  }
  Spectrum s;
  for (std::size_t i = 0; i < 4; ++i) s.values[i] = a(i, i).real();
  std::sort(s.values.begin(), s.values.end(), std::greater<>());
  return s;
}

double negativity(const DensityMatrix& rho) {
  const Spectrum s = eig_hermitian(partial_transpose(rho));
  double neg = 0.0;
  for (double v : s.values) {
    if (v < 0.0) neg -= v;
  }
  const double n = 2.0 * neg;
  return n < kNegativityFloor ? 0.0 : n;
}

double purity(const DensityMatrix& rho) {
  double s = 0.0;
  for (const Complex& x : rho.matrix().data()) s += std::norm(x);
  return s;
}

double expectation(const DensityMatrix& rho, const Matrix4& obs) {
  const double defect = hermiticity_defect(obs);
  if (!(defect <= kEigHermitianTolerance)) {
    throw Error(ErrorCode::kNotHermitian, describe("observable is not Hermitian", defect));
  }
  Complex t = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) t += rho(i, j) * obs(j, i);
  }
  assert(std::abs(t.imag()) <= 1e-10);
  return t.real();
}

}  // namespace entsrc
