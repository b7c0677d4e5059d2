// kernels/kernels_avx2.cpp
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

// AVX2+FMA variants of the linear-algebra kernels, 4-wide doubles with
// unaligned loads.  Horizontal sums reassociate additions, so results
// may differ from the scalar kernels in the last ulps; the equivalence
// tests use a relative tolerance.  This translation unit is compiled
// with -mavx2 -mfma and only on x86-64.

#include "gecgan/kernels/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cstddef>

namespace gecgan {
namespace kernels {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

double dot_avx2(const double *a, const double *b, size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i + 4), _mm256_loadu_pd(b + i + 4), acc1);
  }
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc0);
  }
  double s = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy_avx2(double alpha, const double *x, double *y, size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal_avx2(double alpha, double *x, size_t n) {
  const __m256d va = _mm256_set1_pd(alpha);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) x[i] *= alpha;
}

void vadd_avx2(const double *a, const double *b, double *out, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] + b[i];
}

void vsub_avx2(const double *a, const double *b, double *out, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] - b[i];
}

void vmul_avx2(const double *a, const double *b, double *out, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(out + i, _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void vmul_acc_avx2(const double *a, const double *b, double *out, size_t n) {
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vo = _mm256_loadu_pd(out + i);
    vo = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), vo);
    _mm256_storeu_pd(out + i, vo);
  }
  for (; i < n; ++i) out[i] += a[i] * b[i];
}

void matvec_avx2(const double *a, const double *x, double *y, size_t m, size_t n) {
  for (size_t i = 0; i < m; ++i) y[i] = dot_avx2(a + i * n, x, n);
}

void matvec_acc_avx2(const double *a, const double *x, double *y, size_t m, size_t n) {
  for (size_t i = 0; i < m; ++i) y[i] += dot_avx2(a + i * n, x, n);
}

void matvec_t_acc_avx2(const double *a, const double *x, double *y, size_t m, size_t n) {
  for (size_t i = 0; i < m; ++i) axpy_avx2(x[i], a + i * n, y, n);
}

void ger_acc_avx2(const double *x, const double *y, double *a, size_t m, size_t n) {
  for (size_t i = 0; i < m; ++i) axpy_avx2(x[i], y, a + i * n, n);
}

}  // namespace

const Ops &avx2_ops() {
  const Ops &ref = scalar_ops();
  static const Ops ops = {
      "avx2",       dot_avx2,        axpy_avx2,         scal_avx2,
      vadd_avx2,    vsub_avx2,       vmul_avx2,         vmul_acc_avx2,
      matvec_avx2,  matvec_acc_avx2, matvec_t_acc_avx2, ger_acc_avx2,
      ref.vtanh,    ref.vsigmoid,    ref.vrelu,         ref.softmax,
      ref.logsumexp,
  };
  return ops;
}

}  // namespace kernels
}  // namespace gecgan

#else  // non-x86: table never referenced, keep a stub so the TU is not empty.

namespace gecgan {
namespace kernels {
const Ops &avx2_ops() { return scalar_ops(); }
}  // namespace kernels
}  // namespace gecgan

#endif
