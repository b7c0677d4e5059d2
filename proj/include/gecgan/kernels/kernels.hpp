// kernels/kernels.hpp
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

#ifndef GECGAN_KERNELS_KERNELS_HPP_
#define GECGAN_KERNELS_KERNELS_HPP_

#include <cstddef>
#include <string>
#include <vector>

namespace gecgan {
namespace kernels {

// Data-parallel inner loops of the numeric stack.  Matrices are
// row-major, double precision.  Each entry point exists as a scalar
// reference kernel and, on x86-64 with AVX2+FMA, as a vectorized
// variant; the active table is picked once at startup and can be forced
// with GECGAN_KERNELS=scalar|avx2.  The transcendental kernels share
// the scalar implementation across tables: libm calls dominate them and
// a polynomial vector exp would change numerics for no real win.
struct Ops {
  const char *name;

  double (*dot)(const double *a, const double *b, size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double *x, double *y, size_t n);
  // x *= alpha
  void (*scal)(double alpha, double *x, size_t n);
  // out = a + b / out = a - b / out = a * b   (elementwise)
  void (*vadd)(const double *a, const double *b, double *out, size_t n);
  void (*vsub)(const double *a, const double *b, double *out, size_t n);
  void (*vmul)(const double *a, const double *b, double *out, size_t n);
  // out += a * b  (elementwise)
  void (*vmul_acc)(const double *a, const double *b, double *out, size_t n);
  // y = A x          (A: m x n)
  void (*matvec)(const double *a, const double *x, double *y, size_t m, size_t n);
  // y += A x
  void (*matvec_acc)(const double *a, const double *x, double *y, size_t m, size_t n);
  // y += A^T x       (A: m x n, x: m, y: n)
  void (*matvec_t_acc)(const double *a, const double *x, double *y, size_t m, size_t n);
  // A += x y^T       (rank-1 update, A: m x n)
  void (*ger_acc)(const double *x, const double *y, double *a, size_t m, size_t n);

  void (*vtanh)(const double *x, double *y, size_t n);
  void (*vsigmoid)(const double *x, double *y, size_t n);
  void (*vrelu)(const double *x, double *y, size_t n);
  // In-place, numerically stable softmax.
  void (*softmax)(double *x, size_t n);
  // log(sum(exp(x))) with max shift.
  double (*logsumexp)(const double *x, size_t n);
};

// Active table (selected once, thread-safe).
const Ops &active();

// Named tables for tests and explicit selection.
const Ops &scalar_ops();
bool avx2_available();
const Ops &avx2_ops();  // valid only when avx2_available()

// Tables compiled into this binary (scalar always, avx2 when supported).
std::vector<const Ops *> all_ops();

// Force a table by name ("scalar", "avx2").  Throws on unknown/unsupported.
void set_active(const std::string &name);

}  // namespace kernels
}  // namespace gecgan

#endif  // GECGAN_KERNELS_KERNELS_HPP_
