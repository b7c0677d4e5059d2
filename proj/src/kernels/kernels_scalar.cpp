// kernels/kernels_scalar.cpp
//
// Copyright 2026  The gecgan authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

// Reference kernels.  Plain loops, no intrinsics; the vector variants
// are checked for equivalence against these.

#include <cmath>
#include <cstddef>

#include "gecgan/kernels/kernels.hpp"

namespace gecgan {
namespace kernels {

namespace {

double dot_scalar(const double *a, const double *b, size_t n) {
  double s = 0.0;
  for (size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_scalar(double alpha, const double *x, double *y, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal_scalar(double alpha, double *x, size_t n) {
  for (size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void vadd_scalar(const double *a, const double *b, double *out, size_t n) {
  for (size_t i = 0; i < n; ++i) out[i] = a[i] + b[i];
}

void vsub_scalar(const double *a, const double *b, double *out, size_t n) {
  for (size_t i = 0; i < n; ++i) out[i] = a[i] - b[i];
}

void vmul_scalar(const double *a, const double *b, double *out, size_t n) {
  for (size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void vmul_acc_scalar(const double *a, const double *b, double *out, size_t n) {
  for (size_t i = 0; i < n; ++i) out[i] += a[i] * b[i];
}

void matvec_scalar(const double *a, const double *x, double *y, size_t m, size_t n) {
  for (size_t i = 0; i < m; ++i) y[i] = dot_scalar(a + i * n, x, n);
}

void matvec_acc_scalar(const double *a, const double *x, double *y, size_t m, size_t n) {
  for (size_t i = 0; i < m; ++i) y[i] += dot_scalar(a + i * n, x, n);
}

void matvec_t_acc_scalar(const double *a, const double *x, double *y, size_t m, size_t n) {
  for (size_t i = 0; i < m; ++i) axpy_scalar(x[i], a + i * n, y, n);
}

void ger_acc_scalar(const double *x, const double *y, double *a, size_t m, size_t n) {
  for (size_t i = 0; i < m; ++i) axpy_scalar(x[i], y, a + i * n, n);
}

void vtanh_scalar(const double *x, double *y, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] = std::tanh(x[i]);
}

void vsigmoid_scalar(const double *x, double *y, size_t n) {
  for (size_t i = 0; i < n; ++i) {
    // Evaluate through exp of a negative argument only, so it cannot overflow.
    if (x[i] >= 0) {
      const double e = std::exp(-x[i]);
      y[i] = 1.0 / (1.0 + e);
    } else {
      const double e = std::exp(x[i]);
      y[i] = e / (1.0 + e);
    }
  }
}

void vrelu_scalar(const double *x, double *y, size_t n) {
  for (size_t i = 0; i < n; ++i) y[i] = x[i] > 0 ? x[i] : 0.0;
}

void softmax_scalar(double *x, size_t n) {
  double mx = x[0];
  for (size_t i = 1; i < n; ++i) mx = x[i] > mx ? x[i] : mx;
  double z = 0.0;
  for (size_t i = 0; i < n; ++i) {
    x[i] = std::exp(x[i] - mx);
    z += x[i];
  }
  const double inv = 1.0 / z;
  for (size_t i = 0; i < n; ++i) x[i] *= inv;
}

double logsumexp_scalar(const double *x, size_t n) {
  double mx = x[0];
  for (size_t i = 1; i < n; ++i) mx = x[i] > mx ? x[i] : mx;
  double z = 0.0;
  for (size_t i = 0; i < n; ++i) z += std::exp(x[i] - mx);
  return mx + std::log(z);
}

}  // namespace

const Ops &scalar_ops() {
  static const Ops ops = {
      "scalar",          dot_scalar,     axpy_scalar,         scal_scalar,
      vadd_scalar,       vsub_scalar,    vmul_scalar,         vmul_acc_scalar,
      matvec_scalar,     matvec_acc_scalar, matvec_t_acc_scalar, ger_acc_scalar,
      vtanh_scalar,      vsigmoid_scalar, vrelu_scalar,       softmax_scalar,
      logsumexp_scalar,
  };
  return ops;
}

}  // namespace kernels
}  // namespace gecgan
