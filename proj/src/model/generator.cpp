// model/generator.cpp
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

#include "gecgan/model/generator.hpp"

#include <cmath>

#include "gecgan/kernels/kernels.hpp"
#include "gecgan/model/checkpoint.hpp"
#include "gecgan/util/error.hpp"
#include "gecgan/util/text.hpp"

namespace gecgan {
namespace model {

void GeneratorConfig::validate() const {
  std::vector<std::string> bad;
  if (vocab_size < 3) bad.push_back("vocab_size must be >= 3 (bos/eos required)");
  if (num_layers < 1) bad.push_back("num_layers must be positive");
  if (embed_dim < 1) bad.push_back("embed_dim must be positive");
  if (hidden_dim < 1) bad.push_back("hidden_dim must be positive");
  if (max_decode_len < 1) bad.push_back("max_decode_len must be positive");
  if (learning_rate <= 0) bad.push_back("learning_rate must be positive");
  for (const auto &[name, p] :
       {std::pair<const char *, double>{"layer_dropout", layer_dropout},
        {"attention_dropout", attention_dropout},
        {"source_word_dropout", source_word_dropout},
        {"target_word_dropout", target_word_dropout}}) {
    if (p < 0.0 || p >= 1.0) bad.push_back(std::string(name) + " must be in [0,1)");
  }
  if (architecture == Arch::kTransformer) {
    if (num_heads < 1) bad.push_back("num_heads must be positive");
    else if (embed_dim % num_heads != 0) bad.push_back("num_heads must divide embed_dim");
    if (ffn_dim < 1) bad.push_back("ffn_dim must be positive");
  }
  if (architecture == Arch::kRnn && hidden_dim % 2 != 0) {
    bad.push_back("hidden_dim must be even for the bidirectional encoder");
  }
  if (vocab_size <= bpe::kUnkId && (source_word_dropout > 0 || target_word_dropout > 0)) {
    bad.push_back("word dropout needs the UNK id inside the vocabulary");
  }
  if (!bad.empty()) throw ValidationError("generator config: " + join(bad, "; "));
}

Config GeneratorConfig::to_kv() const {
  Config kv;
  kv.set("arch", architecture == Arch::kRnn ? "rnn" : "transformer");
  kv.set("num_layers", std::to_string(num_layers));
  kv.set("embed_dim", std::to_string(embed_dim));
  kv.set("hidden_dim", std::to_string(hidden_dim));
  kv.set("num_heads", std::to_string(num_heads));
  kv.set("ffn_dim", std::to_string(ffn_dim));
  kv.set("layer_dropout", std::to_string(layer_dropout));
  kv.set("attention_dropout", std::to_string(attention_dropout));
  kv.set("source_word_dropout", std::to_string(source_word_dropout));
  kv.set("target_word_dropout", std::to_string(target_word_dropout));
  kv.set("max_decode_len", std::to_string(max_decode_len));
  kv.set("learning_rate", std::to_string(learning_rate));
  kv.set("optimizer", optimizer == Optimizer::kSgd ? "sgd" : "adam");
  kv.set("vocab_size", std::to_string(vocab_size));
  return kv;
}

GeneratorConfig GeneratorConfig::from_kv(const Config &kv) {
  GeneratorConfig cfg;
  const std::string arch = kv.get_string("arch", "rnn");
  if (arch == "rnn") {
    cfg.architecture = Arch::kRnn;
  } else if (arch == "transformer") {
    cfg.architecture = Arch::kTransformer;
  } else {
    throw ValidationError("unknown generator architecture: " + arch);
  }
  cfg.num_layers = static_cast<int>(kv.get_int("num_layers", cfg.num_layers));
  cfg.embed_dim = static_cast<int>(kv.get_int("embed_dim", cfg.embed_dim));
  cfg.hidden_dim = static_cast<int>(kv.get_int("hidden_dim", cfg.hidden_dim));
  cfg.num_heads = static_cast<int>(kv.get_int("num_heads", cfg.num_heads));
  cfg.ffn_dim = static_cast<int>(kv.get_int("ffn_dim", cfg.ffn_dim));
  cfg.layer_dropout = kv.get_double("layer_dropout", cfg.layer_dropout);
  cfg.attention_dropout = kv.get_double("attention_dropout", cfg.attention_dropout);
  cfg.source_word_dropout = kv.get_double("source_word_dropout", cfg.source_word_dropout);
  cfg.target_word_dropout = kv.get_double("target_word_dropout", cfg.target_word_dropout);
  cfg.max_decode_len = static_cast<int>(kv.get_int("max_decode_len", cfg.max_decode_len));
  cfg.learning_rate = kv.get_double("learning_rate", cfg.learning_rate);
  const std::string opt = kv.get_string("optimizer", "sgd");
  if (opt == "sgd") {
    cfg.optimizer = Optimizer::kSgd;
  } else if (opt == "adam") {
    cfg.optimizer = Optimizer::kAdam;
  } else {
    throw ValidationError("unknown optimizer: " + opt);
  }
  cfg.vocab_size = static_cast<int>(kv.get_int("vocab_size"));
  return cfg;
}

GeneratorModel::GeneratorModel(const GeneratorConfig &config, uint64_t seed)
    : cfg_(config), rng_(Rng(seed).substream("generator-init")) {
  cfg_.validate();
  net_ = cfg_.architecture == GeneratorConfig::Arch::kRnn
             ? make_rnn_net(cfg_, params_, rng_)
             : make_transformer_net(cfg_, params_, rng_);
}

int GeneratorModel::logprob_node(nn::Tape &tape, const Ids &x, const Ids &y, bool train,
                                 Rng *rng) const {
  if (x.empty()) throw ValidationError("generator: empty source sequence");
  if (y.empty()) throw ValidationError("generator: empty target sequence");
  Ids xs = x;
  if (train && rng && cfg_.source_word_dropout > 0) {
    for (int &id : xs) {
      if (rng->bernoulli(cfg_.source_word_dropout)) id = bpe::kUnkId;
    }
  }
  const EncCtx enc = net_->encode(tape, xs, train, rng);
  DecState st = net_->dec_init(tape, enc);
  std::vector<int> lp_nodes;
  lp_nodes.reserve(y.size());
  int prev = bpe::kBosId;
  for (size_t t = 0; t < y.size(); ++t) {
    int in = prev;
    if (train && rng && t > 0 && cfg_.target_word_dropout > 0 &&
        rng->bernoulli(cfg_.target_word_dropout)) {
      in = bpe::kUnkId;
    }
    const int logits = net_->dec_step(tape, enc, st, in, train, rng);
    const int target = y[t];
    lp_nodes.push_back(tape.pick_log_softmax(logits, std::span<const int>(&target, 1)));
    prev = y[t];
  }
  return tape.sum_all(tape.stack_rows(lp_nodes));
}

double GeneratorModel::mle_step(std::span<const TrainPair> batch) {
  if (batch.empty()) throw ValidationError("mle_step: empty batch");
  size_t total_tokens = 0;
  for (const auto &p : batch) {
    if (p.y.empty() || p.y.back() != bpe::kEosId) {
      throw ValidationError("mle_step: targets must be framed with a final EOS");
    }
    total_tokens += p.y.size();
  }

  params_.zero_grads();
  double loss_sum = 0.0;
  for (const auto &p : batch) {
    nn::Tape tape(&params_);
    const int lp = logprob_node(tape, p.x, p.y, /*train=*/true, &rng_);
    loss_sum -= tape.val(lp).at(0, 0);
    tape.backward(lp, -1.0 / static_cast<double>(total_tokens));
  }
  apply_update();
  return loss_sum / static_cast<double>(total_tokens);
}

double GeneratorModel::batch_loss(std::span<const TrainPair> batch) const {
  if (batch.empty()) throw ValidationError("batch_loss: empty batch");
  size_t total_tokens = 0;
  double loss_sum = 0.0;
  auto *params = const_cast<nn::ParamStore *>(&params_);
  for (const auto &p : batch) {
    if (p.y.empty() || p.y.back() != bpe::kEosId) {
      throw ValidationError("batch_loss: targets must be framed with a final EOS");
    }
    nn::Tape tape(params);
    const int lp = logprob_node(tape, p.x, p.y, /*train=*/false, nullptr);
    loss_sum -= tape.val(lp).at(0, 0);
    total_tokens += p.y.size();
  }
  return loss_sum / static_cast<double>(total_tokens);
}

double GeneratorModel::log_prob(const Ids &x, const Ids &y) const {
  if (y.empty() || y.back() != bpe::kEosId) {
    throw ValidationError("log_prob: target must be framed with a final EOS");
  }
  nn::Tape tape(const_cast<nn::ParamStore *>(&params_));
  const int lp = logprob_node(tape, x, y, /*train=*/false, nullptr);
  return tape.val(lp).at(0, 0);
}

// Unlike log_prob this accepts unframed ids: sampled sequences may have
// been truncated at max_decode_len, and their joint probability is the
// product of exactly the steps taken.
double GeneratorModel::log_prob_backward(const Ids &x, const Ids &y, double scale) {
  nn::Tape tape(&params_);
  const int lp = logprob_node(tape, x, y, /*train=*/false, nullptr);
  tape.backward(lp, scale);
  return tape.val(lp).at(0, 0);
}

std::vector<double> GeneratorModel::next_token_log_probs(const Ids &x, const Ids &prefix) const {
  nn::Tape tape(const_cast<nn::ParamStore *>(&params_));
  const EncCtx enc = net_->encode(tape, x, false, nullptr);
  DecState st = net_->dec_init(tape, enc);
  int logits = -1;
  int prev = bpe::kBosId;
  for (size_t t = 0; t <= prefix.size(); ++t) {
    logits = net_->dec_step(tape, enc, st, prev, false, nullptr);
    if (t < prefix.size()) prev = prefix[t];
  }
  const nn::Tensor &lv = tape.val(logits);
  const double lse = kernels::active().logsumexp(lv.data(), lv.cols);
  std::vector<double> out(lv.cols);
  for (int v = 0; v < lv.cols; ++v) out[v] = lv.at(0, v) - lse;
  return out;
}

void GeneratorModel::apply_update() {
  if (cfg_.optimizer == GeneratorConfig::Optimizer::kSgd) {
    params_.sgd_step(cfg_.learning_rate);
  } else {
    params_.adam_step(cfg_.learning_rate);
  }
  params_.zero_grads();
  ++step_count_;
}

void GeneratorModel::save(const std::string &path) const {
  write_checkpoint(path, "generator", cfg_.to_kv(), params_, rng_, step_count_);
}

void GeneratorModel::load(const std::string &path) {
  CheckpointData data = read_checkpoint(path);
  if (data.kind != "generator") throw CheckpointError("checkpoint kind is " + data.kind);
  if (data.config.echo() != cfg_.to_kv().echo()) {
    throw CheckpointError("checkpoint config does not match the model config");
  }
  restore_params(params_, data);
  rng_ = Rng(data.rng_seed);
  rng_.set_state(data.rng_state);
  step_count_ = data.step_count;
}

GeneratorModel GeneratorModel::load_new(const std::string &path) {
  CheckpointData data = read_checkpoint(path);
  if (data.kind != "generator") throw CheckpointError("checkpoint kind is " + data.kind);
  GeneratorModel model(GeneratorConfig::from_kv(data.config), /*seed=*/0);
  restore_params(model.params_, data);
  model.rng_ = Rng(data.rng_seed);
  model.rng_.set_state(data.rng_state);
  model.step_count_ = data.step_count;
  return model;
}

}  // namespace model
}  // namespace gecgan
