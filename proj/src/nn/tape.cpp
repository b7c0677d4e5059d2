// nn/tape.cpp
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

#include "gecgan/nn/tape.hpp"

#include <cmath>
#include <cstring>

#include "gecgan/kernels/kernels.hpp"
#include "gecgan/util/error.hpp"

namespace gecgan {
namespace nn {

namespace {
const kernels::Ops &K() { return kernels::active(); }
}  // namespace

int Tape::push(Node n) {
  nodes_.push_back(std::move(n));
  return static_cast<int>(nodes_.size()) - 1;
}

const Tensor &Tape::val(int id) const {
  const Node &n = nodes_[id];
  if (n.op == Op::kParam) return params_->value(n.param);
  return n.val;
}

Tensor &Tape::ensure_grad(int id) {
  Node &n = nodes_[id];
  if (n.grad.empty()) {
    const Tensor &v = val(id);
    n.grad.resize(v.rows, v.cols);
  }
  return n.grad;
}

int Tape::input(Tensor t) {
  Node n;
  n.op = Op::kInput;
  n.val = std::move(t);
  return push(std::move(n));
}

int Tape::param(int param_id) {
  Node n;
  n.op = Op::kParam;
  n.param = param_id;
  return push(std::move(n));
}

int Tape::param(const std::string &name) { return param(params_->require(name)); }

int Tape::gather(int emb, std::span<const int> ids) {
  const Tensor &e = val(emb);
  Node n;
  n.op = Op::kGather;
  n.a = emb;
  n.ints.assign(ids.begin(), ids.end());
  n.val.resize(static_cast<int>(ids.size()), e.cols);
  for (size_t l = 0; l < ids.size(); ++l) {
    if (ids[l] < 0 || ids[l] >= e.rows) throw Error("gather: id out of range");
    std::memcpy(n.val.row(static_cast<int>(l)), e.row(ids[l]), sizeof(double) * e.cols);
  }
  return push(std::move(n));
}

int Tape::linear(int x, int w, int b) {
  const Tensor &xv = val(x);
  const Tensor &wv = val(w);
  if (xv.cols != wv.cols) throw Error("linear: shape mismatch");
  Node n;
  n.op = Op::kLinear;
  n.a = x;
  n.b = w;
  n.c = b;
  n.val.resize(xv.rows, wv.rows);
  for (int l = 0; l < xv.rows; ++l) {
    K().matvec(wv.data(), xv.row(l), n.val.row(l), wv.rows, wv.cols);
    if (b >= 0) {
      const Tensor &bv = val(b);
      K().axpy(1.0, bv.data(), n.val.row(l), wv.rows);
    }
  }
  return push(std::move(n));
}

int Tape::add(int a, int b) {
  const Tensor &av = val(a), &bv = val(b);
  if (!av.same_shape(bv)) throw Error("add: shape mismatch");
  Node n;
  n.op = Op::kAdd;
  n.a = a;
  n.b = b;
  n.val.resize(av.rows, av.cols);
  K().vadd(av.data(), bv.data(), n.val.data(), av.size());
  return push(std::move(n));
}

int Tape::sub(int a, int b) {
  const Tensor &av = val(a), &bv = val(b);
  if (!av.same_shape(bv)) throw Error("sub: shape mismatch");
  Node n;
  n.op = Op::kSub;
  n.a = a;
  n.b = b;
  n.val.resize(av.rows, av.cols);
  K().vsub(av.data(), bv.data(), n.val.data(), av.size());
  return push(std::move(n));
}

int Tape::mul(int a, int b) {
  const Tensor &av = val(a), &bv = val(b);
  if (!av.same_shape(bv)) throw Error("mul: shape mismatch");
  Node n;
  n.op = Op::kMul;
  n.a = a;
  n.b = b;
  n.val.resize(av.rows, av.cols);
  K().vmul(av.data(), bv.data(), n.val.data(), av.size());
  return push(std::move(n));
}

int Tape::scale(int a, double s) {
  const Tensor &av = val(a);
  Node n;
  n.op = Op::kScale;
  n.a = a;
  n.x0 = s;
  n.val = av;
  K().scal(s, n.val.data(), n.val.size());
  return push(std::move(n));
}

int Tape::add_scalar(int a, double s) {
  const Tensor &av = val(a);
  Node n;
  n.op = Op::kAddScalar;
  n.a = a;
  n.x0 = s;
  n.val = av;
  for (auto &x : n.val.v) x += s;
  return push(std::move(n));
}

int Tape::tanh_n(int a) {
  const Tensor &av = val(a);
  Node n;
  n.op = Op::kTanh;
  n.a = a;
  n.val.resize(av.rows, av.cols);
  K().vtanh(av.data(), n.val.data(), av.size());
  return push(std::move(n));
}

int Tape::sigmoid_n(int a) {
  const Tensor &av = val(a);
  Node n;
  n.op = Op::kSigmoid;
  n.a = a;
  n.val.resize(av.rows, av.cols);
  K().vsigmoid(av.data(), n.val.data(), av.size());
  return push(std::move(n));
}

int Tape::relu_n(int a) {
  const Tensor &av = val(a);
  Node n;
  n.op = Op::kRelu;
  n.a = a;
  n.val.resize(av.rows, av.cols);
  K().vrelu(av.data(), n.val.data(), av.size());
  return push(std::move(n));
}

int Tape::abs_n(int a) {
  const Tensor &av = val(a);
  Node n;
  n.op = Op::kAbs;
  n.a = a;
  n.val.resize(av.rows, av.cols);
  for (size_t i = 0; i < av.size(); ++i) n.val.v[i] = std::fabs(av.v[i]);
  return push(std::move(n));
}

int Tape::clamp_n(int a, double lo, double hi) {
  const Tensor &av = val(a);
  Node n;
  n.op = Op::kClamp;
  n.a = a;
  n.x0 = lo;
  n.x1 = hi;
  n.val = av;
  for (auto &x : n.val.v) x = x < lo ? lo : (x > hi ? hi : x);
  return push(std::move(n));
}

int Tape::log_n(int a) {
  const Tensor &av = val(a);
  Node n;
  n.op = Op::kLog;
  n.a = a;
  n.val.resize(av.rows, av.cols);
  for (size_t i = 0; i < av.size(); ++i) n.val.v[i] = std::log(av.v[i]);
  return push(std::move(n));
}

int Tape::matmul_nt(int a, int b) {
  const Tensor &av = val(a), &bv = val(b);
  if (av.cols != bv.cols) throw Error("matmul_nt: shape mismatch");
  Node n;
  n.op = Op::kMatmulNT;
  n.a = a;
  n.b = b;
  n.val.resize(av.rows, bv.rows);
  for (int l = 0; l < av.rows; ++l) {
    K().matvec(bv.data(), av.row(l), n.val.row(l), bv.rows, bv.cols);
  }
  return push(std::move(n));
}

int Tape::matmul(int a, int b) {
  const Tensor &av = val(a), &bv = val(b);
  if (av.cols != bv.rows) throw Error("matmul: shape mismatch");
  Node n;
  n.op = Op::kMatmul;
  n.a = a;
  n.b = b;
  n.val.resize(av.rows, bv.cols);
  for (int l = 0; l < av.rows; ++l) {
    K().matvec_t_acc(bv.data(), av.row(l), n.val.row(l), bv.rows, bv.cols);
  }
  return push(std::move(n));
}

int Tape::softmax_rows(int a) {
  const Tensor &av = val(a);
  Node n;
  n.op = Op::kSoftmaxRows;
  n.a = a;
  n.val = av;
  for (int l = 0; l < av.rows; ++l) K().softmax(n.val.row(l), av.cols);
  return push(std::move(n));
}

int Tape::layer_norm(int x, int gamma, int beta) {
  const Tensor &xv = val(x);
  const Tensor &gv = val(gamma);
  const Tensor &bv = val(beta);
  const int d = xv.cols;
  if (gv.cols != d || bv.cols != d) throw Error("layer_norm: shape mismatch");
  constexpr double kEps = 1e-5;
  Node n;
  n.op = Op::kLayerNorm;
  n.a = x;
  n.b = gamma;
  n.c = beta;
  n.val.resize(xv.rows, d);
  n.aux.resize(xv.rows, d);   // normalized rows
  n.aux2.resize(xv.rows, 1);  // inverse stddev
  for (int l = 0; l < xv.rows; ++l) {
    const double *xr = xv.row(l);
    double mean = 0.0;
    for (int j = 0; j < d; ++j) mean += xr[j];
    mean /= d;
    double var = 0.0;
    for (int j = 0; j < d; ++j) var += (xr[j] - mean) * (xr[j] - mean);
    var /= d;
    const double inv = 1.0 / std::sqrt(var + kEps);
    n.aux2.at(l, 0) = inv;
    double *xhat = n.aux.row(l);
    double *out = n.val.row(l);
    for (int j = 0; j < d; ++j) {
      xhat[j] = (xr[j] - mean) * inv;
      out[j] = xhat[j] * gv.v[j] + bv.v[j];
    }
  }
  return push(std::move(n));
}

int Tape::concat_cols(int a, int b) {
  const Tensor &av = val(a), &bv = val(b);
  if (av.rows != bv.rows) throw Error("concat_cols: row mismatch");
  Node n;
  n.op = Op::kConcatCols;
  n.a = a;
  n.b = b;
  n.val.resize(av.rows, av.cols + bv.cols);
  for (int l = 0; l < av.rows; ++l) {
    std::memcpy(n.val.row(l), av.row(l), sizeof(double) * av.cols);
    std::memcpy(n.val.row(l) + av.cols, bv.row(l), sizeof(double) * bv.cols);
  }
  return push(std::move(n));
}

int Tape::slice_cols(int a, int c0, int c1) {
  const Tensor &av = val(a);
  if (c0 < 0 || c1 > av.cols || c0 >= c1) throw Error("slice_cols: bad range");
  Node n;
  n.op = Op::kSliceCols;
  n.a = a;
  n.i0 = c0;
  n.i1 = c1;
  n.val.resize(av.rows, c1 - c0);
  for (int l = 0; l < av.rows; ++l) {
    std::memcpy(n.val.row(l), av.row(l) + c0, sizeof(double) * (c1 - c0));
  }
  return push(std::move(n));
}

int Tape::row(int a, int r) {
  const Tensor &av = val(a);
  if (r < 0 || r >= av.rows) throw Error("row: out of range");
  Node n;
  n.op = Op::kRow;
  n.a = a;
  n.i0 = r;
  n.val.resize(1, av.cols);
  std::memcpy(n.val.data(), av.row(r), sizeof(double) * av.cols);
  return push(std::move(n));
}

int Tape::stack_rows(std::span<const int> rows) {
  if (rows.empty()) throw Error("stack_rows: empty");
  const int d = val(rows[0]).cols;
  Node n;
  n.op = Op::kStackRows;
  n.ints.assign(rows.begin(), rows.end());
  n.val.resize(static_cast<int>(rows.size()), d);
  for (size_t l = 0; l < rows.size(); ++l) {
    const Tensor &rv = val(rows[l]);
    if (rv.rows != 1 || rv.cols != d) throw Error("stack_rows: shape mismatch");
    std::memcpy(n.val.row(static_cast<int>(l)), rv.data(), sizeof(double) * d);
  }
  return push(std::move(n));
}

int Tape::mean_rows(int a) {
  const Tensor &av = val(a);
  Node n;
  n.op = Op::kMeanRows;
  n.a = a;
  n.val.resize(1, av.cols);
  for (int l = 0; l < av.rows; ++l) K().axpy(1.0, av.row(l), n.val.data(), av.cols);
  K().scal(1.0 / av.rows, n.val.data(), av.cols);
  return push(std::move(n));
}

int Tape::max_over_time(int a) {
  const Tensor &av = val(a);
  Node n;
  n.op = Op::kMaxOverTime;
  n.a = a;
  n.val.resize(1, av.cols);
  n.ints.resize(av.cols);
  for (int c = 0; c < av.cols; ++c) {
    int best = 0;
    double bv = av.at(0, c);
    for (int l = 1; l < av.rows; ++l) {
      if (av.at(l, c) > bv) {
        bv = av.at(l, c);
        best = l;
      }
    }
    n.val.at(0, c) = bv;
    n.ints[c] = best;
  }
  return push(std::move(n));
}

int Tape::conv1d(int x, int w, int b, int k) {
  const Tensor &xv = val(x);
  const Tensor &wv = val(w);
  const int din = xv.cols;
  if (wv.cols != k * din) throw Error("conv1d: kernel shape mismatch");
  const int dout = wv.rows;
  const int pad = k / 2;
  Node n;
  n.op = Op::kConv1d;
  n.a = x;
  n.b = w;
  n.c = b;
  n.i0 = k;
  n.val.resize(xv.rows, dout);
  std::vector<double> window(static_cast<size_t>(k) * din);
  for (int l = 0; l < xv.rows; ++l) {
    std::fill(window.begin(), window.end(), 0.0);
    for (int j = 0; j < k; ++j) {
      const int src = l + j - pad;
      if (src >= 0 && src < xv.rows) {
        std::memcpy(window.data() + static_cast<size_t>(j) * din, xv.row(src), sizeof(double) * din);
      }
    }
    K().matvec(wv.data(), window.data(), n.val.row(l), dout, k * din);
    if (b >= 0) K().axpy(1.0, val(b).data(), n.val.row(l), dout);
  }
  return push(std::move(n));
}

int Tape::pick_log_softmax(int logits, std::span<const int> targets) {
  const Tensor &lv = val(logits);
  if (static_cast<int>(targets.size()) != lv.rows) throw Error("pick_log_softmax: target count");
  Node n;
  n.op = Op::kPickLogSoftmax;
  n.a = logits;
  n.ints.assign(targets.begin(), targets.end());
  n.val.resize(lv.rows, 1);
  n.aux = lv;  // turned into softmax probabilities row by row
  for (int l = 0; l < lv.rows; ++l) {
    const int t = targets[l];
    if (t < 0 || t >= lv.cols) throw Error("pick_log_softmax: target out of range");
    const double lse = K().logsumexp(lv.row(l), lv.cols);
    n.val.at(l, 0) = lv.at(l, t) - lse;
    K().softmax(n.aux.row(l), lv.cols);
  }
  return push(std::move(n));
}

int Tape::sum_all(int a) {
  const Tensor &av = val(a);
  Node n;
  n.op = Op::kSumAll;
  n.a = a;
  n.val.resize(1, 1);
  double s = 0.0;
  for (double x : av.v) s += x;
  n.val.at(0, 0) = s;
  return push(std::move(n));
}

int Tape::dropout(int a, double p, Rng &rng) {
  if (p <= 0.0) return a;
  if (p >= 1.0) throw Error("dropout: p must be < 1");
  const Tensor &av = val(a);
  Node n;
  n.op = Op::kDropout;
  n.a = a;
  n.x0 = p;
  n.aux.resize(av.rows, av.cols);
  const double keep_scale = 1.0 / (1.0 - p);
  for (auto &m : n.aux.v) m = rng.bernoulli(p) ? 0.0 : keep_scale;
  n.val.resize(av.rows, av.cols);
  K().vmul(av.data(), n.aux.data(), n.val.data(), av.size());
  return push(std::move(n));
}

void Tape::backward(int root, double seed) {
  const Tensor &rv = val(root);
  if (rv.rows != 1 || rv.cols != 1) throw Error("backward: root must be scalar");
  ensure_grad(root).at(0, 0) += seed;
  for (int id = root; id >= 0; --id) {
    if (nodes_[id].grad.empty()) continue;
    backward_node(id);
  }
  // Keep node grads around until the tape dies; callers reuse nothing.
}

void Tape::backward_node(int id) {
  Node &n = nodes_[id];
  const Tensor &g = n.grad;
  switch (n.op) {
    case Op::kInput:
      break;
    case Op::kParam: {
      Tensor &pg = params_->grad(n.param);
      K().axpy(1.0, g.data(), pg.data(), pg.size());
      break;
    }
    case Op::kGather: {
      Tensor &eg = ensure_grad(n.a);
      for (size_t l = 0; l < n.ints.size(); ++l) {
        K().axpy(1.0, g.row(static_cast<int>(l)), eg.row(n.ints[l]), eg.cols);
      }
      break;
    }
    case Op::kLinear: {
      const Tensor &xv = val(n.a);
      const Tensor &wv = val(n.b);
      Tensor &xg = ensure_grad(n.a);
      Tensor &wg = ensure_grad(n.b);
      for (int l = 0; l < xv.rows; ++l) {
        K().matvec_t_acc(wv.data(), g.row(l), xg.row(l), wv.rows, wv.cols);
        K().ger_acc(g.row(l), xv.row(l), wg.data(), wv.rows, wv.cols);
      }
      if (n.c >= 0) {
        Tensor &bg = ensure_grad(n.c);
        for (int l = 0; l < xv.rows; ++l) K().axpy(1.0, g.row(l), bg.data(), bg.cols);
      }
      break;
    }
    case Op::kAdd: {
      Tensor &ag = ensure_grad(n.a);
      Tensor &bg = ensure_grad(n.b);
      K().axpy(1.0, g.data(), ag.data(), ag.size());
      K().axpy(1.0, g.data(), bg.data(), bg.size());
      break;
    }
    case Op::kSub: {
      Tensor &ag = ensure_grad(n.a);
      Tensor &bg = ensure_grad(n.b);
      K().axpy(1.0, g.data(), ag.data(), ag.size());
      K().axpy(-1.0, g.data(), bg.data(), bg.size());
      break;
    }
    case Op::kMul: {
      const Tensor &av = val(n.a), &bv = val(n.b);
      Tensor &ag = ensure_grad(n.a);
      Tensor &bg = ensure_grad(n.b);
      K().vmul_acc(g.data(), bv.data(), ag.data(), g.size());
      K().vmul_acc(g.data(), av.data(), bg.data(), g.size());
      break;
    }
    case Op::kScale: {
      Tensor &ag = ensure_grad(n.a);
      K().axpy(n.x0, g.data(), ag.data(), ag.size());
      break;
    }
    case Op::kAddScalar: {
      Tensor &ag = ensure_grad(n.a);
      K().axpy(1.0, g.data(), ag.data(), ag.size());
      break;
    }
    case Op::kTanh: {
      Tensor &ag = ensure_grad(n.a);
      for (size_t i = 0; i < g.size(); ++i) ag.v[i] += g.v[i] * (1.0 - n.val.v[i] * n.val.v[i]);
      break;
    }
    case Op::kSigmoid: {
      Tensor &ag = ensure_grad(n.a);
      for (size_t i = 0; i < g.size(); ++i) ag.v[i] += g.v[i] * n.val.v[i] * (1.0 - n.val.v[i]);
      break;
    }
    case Op::kRelu: {
      const Tensor &av = val(n.a);
      Tensor &ag = ensure_grad(n.a);
      for (size_t i = 0; i < g.size(); ++i) ag.v[i] += av.v[i] > 0 ? g.v[i] : 0.0;
      break;
    }
    case Op::kAbs: {
      const Tensor &av = val(n.a);
      Tensor &ag = ensure_grad(n.a);
      for (size_t i = 0; i < g.size(); ++i) {
        ag.v[i] += av.v[i] > 0 ? g.v[i] : (av.v[i] < 0 ? -g.v[i] : 0.0);
      }
      break;
    }
    case Op::kClamp: {
      const Tensor &av = val(n.a);
      Tensor &ag = ensure_grad(n.a);
      for (size_t i = 0; i < g.size(); ++i) {
        if (av.v[i] > n.x0 && av.v[i] < n.x1) ag.v[i] += g.v[i];
      }
      break;
    }
    case Op::kLog: {
      const Tensor &av = val(n.a);
      Tensor &ag = ensure_grad(n.a);
      for (size_t i = 0; i < g.size(); ++i) ag.v[i] += g.v[i] / av.v[i];
      break;
    }
    case Op::kMatmulNT: {
      const Tensor &av = val(n.a), &bv = val(n.b);
      Tensor &ag = ensure_grad(n.a);
      Tensor &bg = ensure_grad(n.b);
      for (int l = 0; l < av.rows; ++l) {
        K().matvec_t_acc(bv.data(), g.row(l), ag.row(l), bv.rows, bv.cols);
        K().ger_acc(g.row(l), av.row(l), bg.data(), bv.rows, bv.cols);
      }
      break;
    }
    case Op::kMatmul: {
      const Tensor &av = val(n.a), &bv = val(n.b);
      Tensor &ag = ensure_grad(n.a);
      Tensor &bg = ensure_grad(n.b);
      for (int l = 0; l < av.rows; ++l) {
        K().matvec_acc(bv.data(), g.row(l), ag.row(l), bv.rows, bv.cols);
        K().ger_acc(av.row(l), g.row(l), bg.data(), bv.rows, bv.cols);
      }
      break;
    }
    case Op::kSoftmaxRows: {
      Tensor &ag = ensure_grad(n.a);
      for (int l = 0; l < g.rows; ++l) {
        const double *y = n.val.row(l);
        const double *gr = g.row(l);
        const double dot = K().dot(gr, y, g.cols);
        double *agr = ag.row(l);
        for (int c = 0; c < g.cols; ++c) agr[c] += (gr[c] - dot) * y[c];
      }
      break;
    }
    case Op::kLayerNorm: {
      const Tensor &gv = val(n.b);
      Tensor &xg = ensure_grad(n.a);
      Tensor &gg = ensure_grad(n.b);
      Tensor &bg = ensure_grad(n.c);
      const int d = g.cols;
      for (int l = 0; l < g.rows; ++l) {
        const double *gr = g.row(l);
        const double *xhat = n.aux.row(l);
        const double inv = n.aux2.at(l, 0);
        double mean_dy = 0.0, mean_dyx = 0.0;
        for (int c = 0; c < d; ++c) {
          const double dy = gr[c] * gv.v[c];
          mean_dy += dy;
          mean_dyx += dy * xhat[c];
          gg.v[c] += gr[c] * xhat[c];
          bg.v[c] += gr[c];
        }
        mean_dy /= d;
        mean_dyx /= d;
        double *xgr = xg.row(l);
        for (int c = 0; c < d; ++c) {
          const double dy = gr[c] * gv.v[c];
          xgr[c] += inv * (dy - mean_dy - xhat[c] * mean_dyx);
        }
      }
      break;
    }
    case Op::kConcatCols: {
      const Tensor &av = val(n.a);
      Tensor &ag = ensure_grad(n.a);
      Tensor &bg = ensure_grad(n.b);
      for (int l = 0; l < g.rows; ++l) {
        K().axpy(1.0, g.row(l), ag.row(l), av.cols);
        K().axpy(1.0, g.row(l) + av.cols, bg.row(l), bg.cols);
      }
      break;
    }
    case Op::kSliceCols: {
      Tensor &ag = ensure_grad(n.a);
      for (int l = 0; l < g.rows; ++l) {
        K().axpy(1.0, g.row(l), ag.row(l) + n.i0, n.i1 - n.i0);
      }
      break;
    }
    case Op::kRow: {
      Tensor &ag = ensure_grad(n.a);
      K().axpy(1.0, g.data(), ag.row(n.i0), ag.cols);
      break;
    }
    case Op::kStackRows: {
      for (size_t l = 0; l < n.ints.size(); ++l) {
        Tensor &rg = ensure_grad(n.ints[l]);
        K().axpy(1.0, g.row(static_cast<int>(l)), rg.data(), rg.size());
      }
      break;
    }
    case Op::kMeanRows: {
      const Tensor &av = val(n.a);
      Tensor &ag = ensure_grad(n.a);
      const double s = 1.0 / av.rows;
      for (int l = 0; l < av.rows; ++l) K().axpy(s, g.data(), ag.row(l), ag.cols);
      break;
    }
    case Op::kMaxOverTime: {
      Tensor &ag = ensure_grad(n.a);
      for (int c = 0; c < g.cols; ++c) ag.at(n.ints[c], c) += g.at(0, c);
      break;
    }
    case Op::kConv1d: {
      const Tensor &xv = val(n.a);
      const Tensor &wv = val(n.b);
      Tensor &xg = ensure_grad(n.a);
      Tensor &wg = ensure_grad(n.b);
      const int k = n.i0;
      const int din = xv.cols;
      const int dout = wv.rows;
      const int pad = k / 2;
      std::vector<double> window(static_cast<size_t>(k) * din);
      std::vector<double> dwindow(window.size());
      for (int l = 0; l < xv.rows; ++l) {
        std::fill(window.begin(), window.end(), 0.0);
        for (int j = 0; j < k; ++j) {
          const int src = l + j - pad;
          if (src >= 0 && src < xv.rows) {
            std::memcpy(window.data() + static_cast<size_t>(j) * din, xv.row(src),
                        sizeof(double) * din);
          }
        }
        K().ger_acc(g.row(l), window.data(), wg.data(), dout, k * din);
        std::fill(dwindow.begin(), dwindow.end(), 0.0);
        K().matvec_t_acc(wv.data(), g.row(l), dwindow.data(), dout, k * din);
        for (int j = 0; j < k; ++j) {
          const int src = l + j - pad;
          if (src >= 0 && src < xv.rows) {
            K().axpy(1.0, dwindow.data() + static_cast<size_t>(j) * din, xg.row(src), din);
          }
        }
      }
      if (n.c >= 0) {
        Tensor &bg = ensure_grad(n.c);
        for (int l = 0; l < g.rows; ++l) K().axpy(1.0, g.row(l), bg.data(), bg.cols);
      }
      break;
    }
    case Op::kPickLogSoftmax: {
      Tensor &ag = ensure_grad(n.a);
      for (int l = 0; l < g.rows; ++l) {
        const double gl = g.at(l, 0);
        if (gl == 0.0) continue;
        K().axpy(-gl, n.aux.row(l), ag.row(l), ag.cols);
        ag.at(l, n.ints[l]) += gl;
      }
      break;
    }
    case Op::kSumAll: {
      Tensor &ag = ensure_grad(n.a);
      const double gl = g.at(0, 0);
      for (auto &x : ag.v) x += gl;
      break;
    }
    case Op::kDropout: {
      Tensor &ag = ensure_grad(n.a);
      K().vmul_acc(g.data(), n.aux.data(), ag.data(), g.size());
      break;
    }
  }
}

}  // namespace nn
}  // namespace gecgan
