// nn/tensor.hpp
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

#ifndef GECGAN_NN_TENSOR_HPP_
#define GECGAN_NN_TENSOR_HPP_

#include <algorithm>
#include <cassert>
#include <cstddef>
#include <vector>

namespace gecgan {
namespace nn {

// Dense row-major matrix of doubles.  Vectors are 1 x n.
struct Tensor {
  int rows = 0;
  int cols = 0;
  std::vector<double> v;

  Tensor() = default;
  Tensor(int r, int c) : rows(r), cols(c), v(static_cast<size_t>(r) * c, 0.0) {}

  static Tensor zeros(int r, int c) { return Tensor(r, c); }

  size_t size() const { return v.size(); }
  bool empty() const { return v.empty(); }

  double *data() { return v.data(); }
  const double *data() const { return v.data(); }

  double *row(int r) {
    assert(r >= 0 && r < rows);
    return v.data() + static_cast<size_t>(r) * cols;
  }
  const double *row(int r) const {
    assert(r >= 0 && r < rows);
    return v.data() + static_cast<size_t>(r) * cols;
  }

  double &at(int r, int c) { return v[static_cast<size_t>(r) * cols + c]; }
  double at(int r, int c) const { return v[static_cast<size_t>(r) * cols + c]; }

  void zero() { std::fill(v.begin(), v.end(), 0.0); }

  void resize(int r, int c) {
    rows = r;
    cols = c;
    v.assign(static_cast<size_t>(r) * c, 0.0);
  }

  bool same_shape(const Tensor &o) const { return rows == o.rows && cols == o.cols; }
};

}  // namespace nn
}  // namespace gecgan

#endif  // GECGAN_NN_TENSOR_HPP_
