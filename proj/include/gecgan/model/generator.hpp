// model/generator.hpp
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

#ifndef GECGAN_MODEL_GENERATOR_HPP_
#define GECGAN_MODEL_GENERATOR_HPP_

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "gecgan/bpe/bpe.hpp"
#include "gecgan/model/seq2seq_net.hpp"
#include "gecgan/nn/params.hpp"
#include "gecgan/util/config.hpp"
#include "gecgan/util/rng.hpp"

namespace gecgan {
namespace model {

struct GeneratorConfig {
  enum class Arch { kRnn, kTransformer };
  enum class Optimizer { kSgd, kAdam };

  Arch architecture = Arch::kRnn;
  int num_layers = 2;
  int embed_dim = 64;
  int hidden_dim = 128;   // bi-GRU output width (both directions together)
  int num_heads = 2;      // transformer
  int ffn_dim = 256;      // transformer
  double layer_dropout = 0.3;
  double attention_dropout = 0.1;
  double source_word_dropout = 0.2;
  double target_word_dropout = 0.1;
  int max_decode_len = 32;
  double learning_rate = 0.2;  // alpha_g
  Optimizer optimizer = Optimizer::kSgd;
  int vocab_size = 0;

  void validate() const;  // throws ValidationError listing violations
  Config to_kv() const;
  static GeneratorConfig from_kv(const Config &kv);
};

// Sampled or decoded output.  ids end with EOS unless decoding was
// truncated at max_decode_len; log_prob is the sum of the per-step
// log-probabilities.
struct DecodeResult {
  Ids ids;
  double log_prob = 0.0;
  std::vector<double> per_step_log_probs;
};

// Training pair in id space: x raw subword ids, y framed with a final
// EOS.  BOS is supplied internally as the decoder start symbol.
struct TrainPair {
  Ids x;
  Ids y;
};

// Seq2seq generator G with switchable architecture.  Single writer
// during training; log_prob and the decoders are const and safe to call
// concurrently on a frozen instance.
class GeneratorModel {
 public:
  GeneratorModel(const GeneratorConfig &config, uint64_t seed);

  const GeneratorConfig &config() const { return cfg_; }
  nn::ParamStore &params() { return params_; }
  const nn::ParamStore &params() const { return params_; }
  Rng &rng() { return rng_; }
  int64_t step_count() const { return step_count_; }
  void set_step_count(int64_t s) { step_count_ = s; }

  // Mean per-token cross entropy over the batch, one optimizer update.
  // Word dropout is applied to the input ids in training mode.
  double mle_step(std::span<const TrainPair> batch);

  // Evaluation-mode mean per-token cross entropy, no update.
  double batch_loss(std::span<const TrainPair> batch) const;

  // Sum of step log-probabilities of y (which must end with EOS) under
  // teacher forcing, evaluation mode.
  double log_prob(const Ids &x, const Ids &y) const;

  // Same forward pass, but also accumulates scale * d(log_prob)/d(theta)
  // into the parameter gradients.  Used by the policy-gradient step.
  double log_prob_backward(const Ids &x, const Ids &y, double scale);

  // Ancestral sampling from the step-wise softmax; deterministic given
  // the seed.
  DecodeResult sample(const Ids &x, uint64_t seed) const;

  // Length-normalized beam search; beam_size 1 is greedy decoding.
  DecodeResult beam_decode(const Ids &x, int beam_size) const;

  // Teacher-forced next-token log-distribution after a given prefix
  // (evaluation mode).  Test oracles build greedy/enumeration baselines
  // from this.
  std::vector<double> next_token_log_probs(const Ids &x, const Ids &prefix) const;

  // Applies the configured optimizer to the accumulated gradients,
  // clears them, and bumps the step counter.
  void apply_update();
  void zero_grads() { params_.zero_grads(); }

  void save(const std::string &path) const;
  // Loads parameters/rng/step into this model; the stored config must
  // match exactly (CheckpointError otherwise).
  void load(const std::string &path);
  static GeneratorModel load_new(const std::string &path);

 private:
  friend class GeneratorTestPeer;
  // Builds the teacher-forced graph; returns the 1x1 sum-of-logprobs node.
  int logprob_node(nn::Tape &tape, const Ids &x, const Ids &y, bool train, Rng *rng) const;

  GeneratorConfig cfg_;
  nn::ParamStore params_;
  std::unique_ptr<Seq2SeqNet> net_;
  Rng rng_;
  int64_t step_count_ = 0;
};

// Factories for the two architectures (register parameters on
// construction).
std::unique_ptr<Seq2SeqNet> make_rnn_net(const GeneratorConfig &cfg, nn::ParamStore &params,
                                         Rng &init_rng);
std::unique_ptr<Seq2SeqNet> make_transformer_net(const GeneratorConfig &cfg,
                                                 nn::ParamStore &params, Rng &init_rng);

}  // namespace model
}  // namespace gecgan

#endif  // GECGAN_MODEL_GENERATOR_HPP_
