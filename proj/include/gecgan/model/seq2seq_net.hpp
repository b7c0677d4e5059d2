// model/seq2seq_net.hpp
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

#ifndef GECGAN_MODEL_SEQ2SEQ_NET_HPP_
#define GECGAN_MODEL_SEQ2SEQ_NET_HPP_

#include <vector>

#include "gecgan/bpe/bpe.hpp"
#include "gecgan/nn/tape.hpp"

namespace gecgan {
namespace model {

using bpe::Ids;

// Node handles produced by encode(); layout is the net's own business.
struct EncCtx {
  std::vector<int> nodes;
};

// Incremental decoder state: per-layer node lists (RNN hidden vectors,
// transformer key/value caches) plus the position counter.  Copyable,
// which is what beam search forks.
struct DecState {
  std::vector<std::vector<int>> mem;
  int t = 0;
};

// A sequence-to-sequence network built step by step on a Tape.  Both
// teacher-forced training and incremental decoding drive the same
// dec_step, so decoding runs on exactly the arithmetic that training
// differentiates.
class Seq2SeqNet {
 public:
  virtual ~Seq2SeqNet() = default;

  virtual EncCtx encode(nn::Tape &tape, const Ids &x, bool train, Rng *dropout_rng) const = 0;
  virtual DecState dec_init(nn::Tape &tape, const EncCtx &enc) const = 0;
  // Consumes prev_id at position state.t, returns the 1 x V logits node
  // for the next token and advances the state.
  virtual int dec_step(nn::Tape &tape, const EncCtx &enc, DecState &state, int prev_id,
                       bool train, Rng *dropout_rng) const = 0;
};

}  // namespace model
}  // namespace gecgan

#endif  // GECGAN_MODEL_SEQ2SEQ_NET_HPP_
