// model/net_common.hpp
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

// Shared building blocks for the tape-built networks: per-tape caching
// of parameter leaves, GRU cells, bidirectional layers, and sinusoidal
// position rows.

#ifndef GECGAN_SRC_MODEL_NET_COMMON_HPP_
#define GECGAN_SRC_MODEL_NET_COMMON_HPP_

#include <cmath>
#include <string>
#include <unordered_map>
#include <vector>

#include "gecgan/nn/tape.hpp"

namespace gecgan {
namespace model {

// One leaf node per parameter per tape; repeated uses share the leaf.
class ParamNodes {
 public:
  explicit ParamNodes(nn::Tape &tape) : tape_(tape) {}

  int operator()(int param_id) {
    auto it = cache_.find(param_id);
    if (it != cache_.end()) return it->second;
    const int node = tape_.param(param_id);
    cache_.emplace(param_id, node);
    return node;
  }

 private:
  nn::Tape &tape_;
  std::unordered_map<int, int> cache_;
};

struct GruParamIds {
  int wz, uz, bz;
  int wr, ur, br;
  int wh, uh, bh;
};

inline GruParamIds register_gru(nn::ParamStore &ps, const std::string &prefix, int in_dim,
                                int hidden, Rng &rng) {
  GruParamIds p;
  p.wz = ps.add_glorot(prefix + ".wz", hidden, in_dim, rng);
  p.uz = ps.add_glorot(prefix + ".uz", hidden, hidden, rng);
  p.bz = ps.add(prefix + ".bz", 1, hidden);
  p.wr = ps.add_glorot(prefix + ".wr", hidden, in_dim, rng);
  p.ur = ps.add_glorot(prefix + ".ur", hidden, hidden, rng);
  p.br = ps.add(prefix + ".br", 1, hidden);
  p.wh = ps.add_glorot(prefix + ".wh", hidden, in_dim, rng);
  p.uh = ps.add_glorot(prefix + ".uh", hidden, hidden, rng);
  p.bh = ps.add(prefix + ".bh", 1, hidden);
  return p;
}

// h' = (1-z) h + z tanh(W_h x + U_h (r*h) + b_h)
inline int gru_cell(nn::Tape &t, ParamNodes &pn, const GruParamIds &p, int x, int h) {
  const int z = t.sigmoid_n(t.add(t.linear(x, pn(p.wz), pn(p.bz)), t.linear(h, pn(p.uz))));
  const int r = t.sigmoid_n(t.add(t.linear(x, pn(p.wr), pn(p.br)), t.linear(h, pn(p.ur))));
  const int cand = t.tanh_n(t.add(t.linear(x, pn(p.wh), pn(p.bh)), t.linear(t.mul(r, h), pn(p.uh))));
  return t.add(h, t.mul(z, t.sub(cand, h)));
}

// Runs forward and backward GRUs over the rows of `input` and returns
// the L x (2*hidden) concatenation.  `last_fwd`/`last_bwd` receive the
// final state of each direction when non-null.
inline int bi_gru_layer(nn::Tape &t, ParamNodes &pn, const GruParamIds &fwd,
                        const GruParamIds &bwd, int input, int hidden, int *last_fwd = nullptr,
                        int *last_bwd = nullptr) {
  const int length = t.val(input).rows;
  const int h0 = t.input(nn::Tensor(1, hidden));
  std::vector<int> f_states(length), b_states(length);
  int h = h0;
  for (int i = 0; i < length; ++i) {
    h = gru_cell(t, pn, fwd, t.row(input, i), h);
    f_states[i] = h;
  }
  if (last_fwd) *last_fwd = h;
  h = h0;
  for (int i = length - 1; i >= 0; --i) {
    h = gru_cell(t, pn, bwd, t.row(input, i), h);
    b_states[i] = h;
  }
  if (last_bwd) *last_bwd = h;
  const int f = t.stack_rows(f_states);
  const int b = t.stack_rows(b_states);
  return t.concat_cols(f, b);
}

inline nn::Tensor sinusoid_row(int pos, int dim) {
  nn::Tensor row(1, dim);
  for (int i = 0; i < dim; i += 2) {
    const double angle = pos / std::pow(10000.0, static_cast<double>(i) / dim);
    row.v[i] = std::sin(angle);
    if (i + 1 < dim) row.v[i + 1] = std::cos(angle);
  }
  return row;
}

inline nn::Tensor sinusoid_rows(int length, int dim) {
  nn::Tensor out(length, dim);
  for (int p = 0; p < length; ++p) {
    const nn::Tensor row = sinusoid_row(p, dim);
    for (int i = 0; i < dim; ++i) out.at(p, i) = row.v[i];
  }
  return out;
}

}  // namespace model
}  // namespace gecgan

#endif  // GECGAN_SRC_MODEL_NET_COMMON_HPP_
