// model/discriminator.hpp
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

#ifndef GECGAN_MODEL_DISCRIMINATOR_HPP_
#define GECGAN_MODEL_DISCRIMINATOR_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gecgan/bpe/bpe.hpp"
#include "gecgan/nn/params.hpp"
#include "gecgan/nn/tape.hpp"
#include "gecgan/util/config.hpp"
#include "gecgan/util/rng.hpp"

namespace gecgan {
namespace model {

using bpe::Ids;

struct DiscriminatorConfig {
  enum class Formulation { kSingleSentence, kSentencePair };
  enum class Arch { kRecurrent, kConvolutional };
  enum class Optimizer { kSgd, kAdam };

  Formulation formulation = Formulation::kSentencePair;
  Arch architecture = Arch::kRecurrent;
  int embed_dim = 64;    // paper setting 300
  int hidden_dim = 64;   // paper setting 128 (bi-GRU output width)
  int num_layers = 1;    // paper setting 2, residual between layers
  double dropout = 0.2;
  int dense_dim = 64;    // paper setting 128
  double learning_rate = 0.05;  // alpha_d
  double prob_clamp = 1e-6;     // delta
  Optimizer optimizer = Optimizer::kSgd;
  int vocab_size = 0;

  void validate() const;
  Config to_kv() const;
  static DiscriminatorConfig from_kv(const Config &kv);
};

// A (source, candidate-correction) pair labeled positive when the
// correction is ground truth and negative when it came from the
// generator.
struct LabeledPair {
  Ids x;
  Ids y;
  bool positive = false;
};

// D-phi: probability that y is a genuine correction of x.  The
// sentence-pair formulation encodes both sequences with one shared
// (siamese) encoder; the single-sentence variant reuses the same
// encoder on y alone and never looks at x.  Outputs are clamped into
// [delta, 1-delta] so the downstream reward -log(1-D) stays finite.
class DiscriminatorModel {
 public:
  DiscriminatorModel(const DiscriminatorConfig &config, uint64_t seed);

  const DiscriminatorConfig &config() const { return cfg_; }
  nn::ParamStore &params() { return params_; }
  const nn::ParamStore &params() const { return params_; }
  Rng &rng() { return rng_; }
  int64_t step_count() const { return step_count_; }

  // Deterministic evaluation-mode score in [delta, 1-delta].
  double score(const Ids &x, const Ids &y) const;

  // One BCE step over a mixed batch:
  //   loss = -mean[ l log D + (1-l) log(1-D) ]
  // followed by one optimizer update at the configured rate, or at an
  // explicit one (the pre-training controller anneals its step size).
  double d_step(std::span<const LabeledPair> batch);
  double d_step(std::span<const LabeledPair> batch, double learning_rate);

  // Accumulates scale * d(pair BCE)/d(phi) into the gradients without
  // updating; returns the pair loss.  Training-mode forward.
  double pair_loss_backward(const LabeledPair &pair, double scale);

  // Evaluation-mode BCE of a batch, no update.
  double batch_loss(std::span<const LabeledPair> batch) const;

  // Fraction of pairs whose thresholded score (0.5) matches the label.
  double accuracy(std::span<const LabeledPair> pairs) const;

  void apply_update();
  void apply_update(double learning_rate);

  void save(const std::string &path) const;
  void load(const std::string &path);
  static DiscriminatorModel load_new(const std::string &path);

 private:
  // Clamped probability node for one pair.
  int prob_node(nn::Tape &tape, const Ids &x, const Ids &y, bool train, Rng *rng) const;
  // Sentence vector: bi-GRU final states or max-pooled convolutions.
  int encode_sentence(nn::Tape &tape, const Ids &ids, bool train, Rng *rng) const;

  DiscriminatorConfig cfg_;
  nn::ParamStore params_;
  Rng rng_;
  int64_t step_count_ = 0;

  // Parameter ids (layout depends on the architecture).
  struct Layout;
  std::shared_ptr<const Layout> layout_;
};

}  // namespace model
}  // namespace gecgan

#endif  // GECGAN_MODEL_DISCRIMINATOR_HPP_
