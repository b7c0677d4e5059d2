// nn/tape.hpp
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

#ifndef GECGAN_NN_TAPE_HPP_
#define GECGAN_NN_TAPE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "gecgan/nn/params.hpp"
#include "gecgan/nn/tensor.hpp"
#include "gecgan/util/rng.hpp"

namespace gecgan {
namespace nn {

// Reverse-mode autodiff tape.  Values are computed eagerly as nodes are
// appended, so the same graph serves for plain inference (never call
// backward) and for training.  Decoding therefore runs on exactly the
// arithmetic the gradients are taken through.
//
// Node handles are plain ints.  A tape is single-threaded and is meant
// to be built, differentiated, and discarded per example.
class Tape {
 public:
  explicit Tape(ParamStore *params) : params_(params) {}

  // Leaves.
  int input(Tensor t);                 // constant, no gradient
  int param(int param_id);             // parameter leaf
  int param(const std::string &name);

  // y[l] = emb.row(ids[l])
  int gather(int emb, std::span<const int> ids);
  // y = x W^T (+ b);  x: L x in, w: out x in, b: 1 x out
  int linear(int x, int w, int b = -1);

  int add(int a, int b);
  int sub(int a, int b);
  int mul(int a, int b);
  int scale(int a, double s);
  int add_scalar(int a, double s);
  int tanh_n(int a);
  int sigmoid_n(int a);
  int relu_n(int a);
  int abs_n(int a);
  int clamp_n(int a, double lo, double hi);
  int log_n(int a);

  // C = A B^T;  A: L x d, B: M x d  ->  L x M
  int matmul_nt(int a, int b);
  // C = A B;    A: L x M, B: M x N  ->  L x N
  int matmul(int a, int b);
  int softmax_rows(int a);
  int layer_norm(int x, int gamma, int beta);

  int concat_cols(int a, int b);
  int slice_cols(int a, int c0, int c1);
  int row(int a, int r);
  int stack_rows(std::span<const int> rows);
  int mean_rows(int a);
  int max_over_time(int a);
  // 1-D convolution over rows with same padding; w: dout x (k*din), b: 1 x dout.
  int conv1d(int x, int w, int b, int k);

  // lp[l] = logits[l][targets[l]] - logsumexp(logits[l]);  -> L x 1
  int pick_log_softmax(int logits, std::span<const int> targets);
  int sum_all(int a);

  // Inverted dropout; identity when p == 0.  The mask is drawn at build
  // time, so forward and backward see the same mask.
  int dropout(int a, double p, Rng &rng);

  const Tensor &val(int id) const;
  int size() const { return static_cast<int>(nodes_.size()); }

  // Accumulates d(root)/d(param) * seed into the parameter gradients.
  // root must be 1 x 1.
  void backward(int root, double seed = 1.0);

  ParamStore *params() { return params_; }

 private:
  enum class Op : uint8_t {
    kInput, kParam, kGather, kLinear, kAdd, kSub, kMul, kScale, kAddScalar,
    kTanh, kSigmoid, kRelu, kAbs, kClamp, kLog, kMatmulNT, kMatmul,
    kSoftmaxRows, kLayerNorm, kConcatCols, kSliceCols, kRow, kStackRows,
    kMeanRows, kMaxOverTime, kConv1d, kPickLogSoftmax, kSumAll, kDropout,
  };

  struct Node {
    Op op;
    int a = -1, b = -1, c = -1;
    int i0 = 0, i1 = 0;
    double x0 = 0.0, x1 = 0.0;
    int param = -1;
    Tensor val;
    Tensor grad;
    Tensor aux;   // op-dependent cache (mask, probs, normalized rows)
    Tensor aux2;  // second cache (layer-norm inverse stddev)
    std::vector<int> ints;  // gather/pick targets, stacked node ids, argmaxes
  };

  int push(Node n);
  Tensor &ensure_grad(int id);
  void backward_node(int id);

  ParamStore *params_;
  std::vector<Node> nodes_;
};

}  // namespace nn
}  // namespace gecgan

#endif  // GECGAN_NN_TAPE_HPP_
