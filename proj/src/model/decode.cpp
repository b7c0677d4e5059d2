// model/decode.cpp
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

// Ancestral sampling and length-normalized beam search.  Both run in
// evaluation mode on the shared incremental decoder.

#include <algorithm>
#include <cmath>

#include "gecgan/kernels/kernels.hpp"
#include "gecgan/model/generator.hpp"
#include "gecgan/util/error.hpp"

namespace gecgan {
namespace model {

namespace {

// Stable log-softmax of a 1 x V logits node value.
std::vector<double> log_probs_of(const nn::Tensor &logits) {
  const double lse = kernels::active().logsumexp(logits.data(), logits.cols);
  std::vector<double> lp(logits.cols);
  for (int v = 0; v < logits.cols; ++v) lp[v] = logits.at(0, v) - lse;
  return lp;
}

}  // namespace

DecodeResult GeneratorModel::sample(const Ids &x, uint64_t seed) const {
  nn::Tape tape(const_cast<nn::ParamStore *>(&params_));
  const EncCtx enc = net_->encode(tape, x, false, nullptr);
  DecState st = net_->dec_init(tape, enc);
  Rng rng(seed);

  DecodeResult res;
  int prev = bpe::kBosId;
  for (int t = 0; t < cfg_.max_decode_len; ++t) {
    const int logits = net_->dec_step(tape, enc, st, prev, false, nullptr);
    const auto lp = log_probs_of(tape.val(logits));
    // Inverse-CDF draw over the softmax.
    const double u = rng.uniform();
    double cum = 0.0;
    int chosen = static_cast<int>(lp.size()) - 1;
    for (size_t v = 0; v < lp.size(); ++v) {
      cum += std::exp(lp[v]);
      if (u < cum) {
        chosen = static_cast<int>(v);
        break;
      }
    }
    res.ids.push_back(chosen);
    res.per_step_log_probs.push_back(lp[chosen]);
    res.log_prob += lp[chosen];
    if (chosen == bpe::kEosId) break;
    prev = chosen;
  }
  return res;
}

DecodeResult GeneratorModel::beam_decode(const Ids &x, int beam_size) const {
  if (beam_size < 1) throw ValidationError("beam_decode: beam_size must be >= 1");
  nn::Tape tape(const_cast<nn::ParamStore *>(&params_));
  const EncCtx enc = net_->encode(tape, x, false, nullptr);

  struct Hyp {
    Ids ids;
    std::vector<double> step_lps;
    double lp = 0.0;
    DecState st;
    int prev = bpe::kBosId;
  };
  struct Cand {
    double score;
    int hyp;
    int token;
  };

  std::vector<Hyp> active(1);
  active[0].st = net_->dec_init(tape, enc);
  std::vector<Hyp> completed;

  for (int t = 0; t < cfg_.max_decode_len && !active.empty(); ++t) {
    std::vector<std::vector<double>> step_lps(active.size());
    std::vector<Cand> cands;
    for (size_t h = 0; h < active.size(); ++h) {
      // The state update is independent of the token chosen next, so all
      // continuations of this hypothesis share the stepped state.
      const int logits = net_->dec_step(tape, enc, active[h].st, active[h].prev, false, nullptr);
      step_lps[h] = log_probs_of(tape.val(logits));
      for (size_t v = 0; v < step_lps[h].size(); ++v) {
        cands.push_back({active[h].lp + step_lps[h][v], static_cast<int>(h), static_cast<int>(v)});
      }
    }
    std::stable_sort(cands.begin(), cands.end(), [](const Cand &a, const Cand &b) {
      if (a.score != b.score) return a.score > b.score;
      if (a.hyp != b.hyp) return a.hyp < b.hyp;
      return a.token < b.token;
    });

    // The top beam_size candidates overall survive; EOS retires a
    // hypothesis into the completed pool.
    std::vector<Hyp> next;
    int taken = 0;
    for (const Cand &c : cands) {
      if (taken >= beam_size) break;
      ++taken;
      Hyp hyp = active[c.hyp];
      hyp.ids.push_back(c.token);
      hyp.step_lps.push_back(step_lps[c.hyp][c.token]);
      hyp.lp = c.score;
      hyp.prev = c.token;
      if (c.token == bpe::kEosId) {
        completed.push_back(std::move(hyp));
      } else {
        next.push_back(std::move(hyp));
      }
    }
    active = std::move(next);
  }
  // Anything still alive at the length cap counts as completed.
  for (auto &h : active) completed.push_back(std::move(h));

  if (completed.empty()) throw Error("beam_decode: no hypotheses");
  const Hyp *best = &completed[0];
  double best_score = best->lp / static_cast<double>(best->ids.size());
  for (const Hyp &h : completed) {
    const double score = h.lp / static_cast<double>(h.ids.size());
    if (score > best_score) {
      best = &h;
      best_score = score;
    }
  }
  DecodeResult res;
  res.ids = best->ids;
  res.per_step_log_probs = best->step_lps;
  res.log_prob = best->lp;
  return res;
}

}  // namespace model
}  // namespace gecgan
