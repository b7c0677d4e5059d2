// model/discriminator.cpp
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

#include "gecgan/model/discriminator.hpp"

#include <cmath>

#include "gecgan/model/checkpoint.hpp"
#include "gecgan/util/error.hpp"
#include "gecgan/util/text.hpp"
#include "net_common.hpp"

namespace gecgan {
namespace model {

void DiscriminatorConfig::validate() const {
  std::vector<std::string> bad;
  if (vocab_size < 3) bad.push_back("vocab_size must be >= 3");
  if (embed_dim < 1) bad.push_back("embed_dim must be positive");
  if (hidden_dim < 1) bad.push_back("hidden_dim must be positive");
  if (num_layers < 1) bad.push_back("num_layers must be positive");
  if (dense_dim < 1) bad.push_back("dense_dim must be positive");
  if (dropout < 0.0 || dropout >= 1.0) bad.push_back("dropout must be in [0,1)");
  if (learning_rate <= 0) bad.push_back("learning_rate must be positive");
  if (prob_clamp <= 0.0 || prob_clamp >= 0.5) bad.push_back("prob_clamp must be in (0, 0.5)");
  if (architecture == Arch::kRecurrent && hidden_dim % 2 != 0) {
    bad.push_back("hidden_dim must be even for the bidirectional encoder");
  }
  if (!bad.empty()) throw ValidationError("discriminator config: " + join(bad, "; "));
}

Config DiscriminatorConfig::to_kv() const {
  Config kv;
  kv.set("formulation", formulation == Formulation::kSingleSentence ? "single_sentence" : "sentence_pair");
  kv.set("arch", architecture == Arch::kRecurrent ? "recurrent" : "convolutional");
  kv.set("embed_dim", std::to_string(embed_dim));
  kv.set("hidden_dim", std::to_string(hidden_dim));
  kv.set("num_layers", std::to_string(num_layers));
  kv.set("dropout", std::to_string(dropout));
  kv.set("dense_dim", std::to_string(dense_dim));
  kv.set("learning_rate", std::to_string(learning_rate));
  kv.set("prob_clamp", std::to_string(prob_clamp));
  kv.set("optimizer", optimizer == Optimizer::kSgd ? "sgd" : "adam");
  kv.set("vocab_size", std::to_string(vocab_size));
  return kv;
}

DiscriminatorConfig DiscriminatorConfig::from_kv(const Config &kv) {
  DiscriminatorConfig cfg;
  const std::string form = kv.get_string("formulation", "sentence_pair");
  if (form == "single_sentence") {
    cfg.formulation = Formulation::kSingleSentence;
  } else if (form == "sentence_pair") {
    cfg.formulation = Formulation::kSentencePair;
  } else {
    throw ValidationError("unknown discriminator formulation: " + form);
  }
  const std::string arch = kv.get_string("arch", "recurrent");
  if (arch == "recurrent") {
    cfg.architecture = Arch::kRecurrent;
  } else if (arch == "convolutional") {
    cfg.architecture = Arch::kConvolutional;
  } else {
    throw ValidationError("unknown discriminator architecture: " + arch);
  }
  cfg.embed_dim = static_cast<int>(kv.get_int("embed_dim", cfg.embed_dim));
  cfg.hidden_dim = static_cast<int>(kv.get_int("hidden_dim", cfg.hidden_dim));
  cfg.num_layers = static_cast<int>(kv.get_int("num_layers", cfg.num_layers));
  cfg.dropout = kv.get_double("dropout", cfg.dropout);
  cfg.dense_dim = static_cast<int>(kv.get_int("dense_dim", cfg.dense_dim));
  cfg.learning_rate = kv.get_double("learning_rate", cfg.learning_rate);
  cfg.prob_clamp = kv.get_double("prob_clamp", cfg.prob_clamp);
  const std::string opt = kv.get_string("optimizer", "sgd");
  cfg.optimizer = opt == "adam" ? Optimizer::kAdam : Optimizer::kSgd;
  cfg.vocab_size = static_cast<int>(kv.get_int("vocab_size"));
  return cfg;
}

// Parameter handles; which members are live depends on the architecture.
struct DiscriminatorModel::Layout {
  int emb = -1;
  // Recurrent: stacked bi-GRUs with residual connections between layers.
  std::vector<GruParamIds> fwd, bwd;
  // Convolutional: two stacked kernel-3 conv layers.
  int conv1_w = -1, conv1_b = -1, conv2_w = -1, conv2_b = -1;
  // Combine head: dense -> relu -> dense(1) -> sigmoid.
  int dense_w = -1, dense_b = -1, out_w = -1, out_b = -1;
};

DiscriminatorModel::DiscriminatorModel(const DiscriminatorConfig &config, uint64_t seed)
    : cfg_(config), rng_(Rng(seed).substream("discriminator-init")) {
  cfg_.validate();
  auto layout = std::make_shared<Layout>();
  const int e = cfg_.embed_dim;
  const int h = cfg_.hidden_dim;
  layout->emb = params_.add_uniform("emb", cfg_.vocab_size, e, 0.08, rng_);
  if (cfg_.architecture == DiscriminatorConfig::Arch::kRecurrent) {
    for (int l = 0; l < cfg_.num_layers; ++l) {
      const int in = l == 0 ? e : h;
      layout->fwd.push_back(register_gru(params_, "gru.l" + std::to_string(l) + ".f", in, h / 2, rng_));
      layout->bwd.push_back(register_gru(params_, "gru.l" + std::to_string(l) + ".b", in, h / 2, rng_));
    }
  } else {
    layout->conv1_w = params_.add_glorot("conv1.w", h, 3 * e, rng_);
    layout->conv1_b = params_.add("conv1.b", 1, h);
    layout->conv2_w = params_.add_glorot("conv2.w", h, 3 * h, rng_);
    layout->conv2_b = params_.add("conv2.b", 1, h);
  }
  const int feat = cfg_.formulation == DiscriminatorConfig::Formulation::kSentencePair ? 4 * h : h;
  layout->dense_w = params_.add_glorot("dense.w", cfg_.dense_dim, feat, rng_);
  layout->dense_b = params_.add("dense.b", 1, cfg_.dense_dim);
  layout->out_w = params_.add_glorot("out.w", 1, cfg_.dense_dim, rng_);
  layout->out_b = params_.add("out.b", 1, 1);
  layout_ = std::move(layout);
}

int DiscriminatorModel::encode_sentence(nn::Tape &t, const Ids &ids, bool train, Rng *rng) const {
  if (ids.empty()) throw ValidationError("discriminator: empty sequence");
  ParamNodes pn(t);
  const Layout &lay = *layout_;
  int cur = t.gather(pn(lay.emb), ids);
  if (cfg_.architecture == DiscriminatorConfig::Arch::kRecurrent) {
    int sent = -1;
    for (int l = 0; l < cfg_.num_layers; ++l) {
      int last_f = -1, last_b = -1;
      int out = bi_gru_layer(t, pn, lay.fwd[l], lay.bwd[l], cur, cfg_.hidden_dim / 2, &last_f, &last_b);
      // Residual connections at each time step between stacked layers.
      if (l > 0) out = t.add(out, cur);
      if (train && rng) out = t.dropout(out, cfg_.dropout, *rng);
      cur = out;
      sent = t.concat_cols(last_f, last_b);
    }
    return sent;
  }
  cur = t.relu_n(t.conv1d(cur, pn(lay.conv1_w), pn(lay.conv1_b), 3));
  if (train && rng) cur = t.dropout(cur, cfg_.dropout, *rng);
  cur = t.relu_n(t.conv1d(cur, pn(lay.conv2_w), pn(lay.conv2_b), 3));
  return t.max_over_time(cur);
}

int DiscriminatorModel::prob_node(nn::Tape &t, const Ids &x, const Ids &y, bool train,
                                  Rng *rng) const {
  if (y.empty()) throw ValidationError("discriminator: empty candidate sentence");
  ParamNodes pn(t);
  const Layout &lay = *layout_;
  int features;
  const int vy = encode_sentence(t, y, train, rng);
  if (cfg_.formulation == DiscriminatorConfig::Formulation::kSentencePair) {
    const int vx = encode_sentence(t, x, train, rng);
    const int diff = t.abs_n(t.sub(vx, vy));
    const int prod = t.mul(vx, vy);
    features = t.concat_cols(t.concat_cols(vx, vy), t.concat_cols(diff, prod));
  } else {
    features = vy;  // x is never consumed
  }
  int hidden = t.relu_n(t.linear(features, pn(lay.dense_w), pn(lay.dense_b)));
  if (train && rng) hidden = t.dropout(hidden, cfg_.dropout, *rng);
  const int logit = t.linear(hidden, pn(lay.out_w), pn(lay.out_b));
  return t.clamp_n(t.sigmoid_n(logit), cfg_.prob_clamp, 1.0 - cfg_.prob_clamp);
}

double DiscriminatorModel::score(const Ids &x, const Ids &y) const {
  nn::Tape tape(const_cast<nn::ParamStore *>(&params_));
  return tape.val(prob_node(tape, x, y, false, nullptr)).at(0, 0);
}

double DiscriminatorModel::pair_loss_backward(const LabeledPair &pair, double scale) {
  nn::Tape tape(&params_);
  const int p = prob_node(tape, pair.x, pair.y, /*train=*/true, &rng_);
  // -log p for positives, -log(1-p) for negatives.
  const int target = pair.positive ? p : tape.add_scalar(tape.scale(p, -1.0), 1.0);
  const int loss = tape.scale(tape.log_n(target), -1.0);
  tape.backward(loss, scale);
  return tape.val(loss).at(0, 0);
}

double DiscriminatorModel::d_step(std::span<const LabeledPair> batch) {
  return d_step(batch, cfg_.learning_rate);
}

double DiscriminatorModel::d_step(std::span<const LabeledPair> batch, double learning_rate) {
  if (batch.empty()) throw ValidationError("d_step: empty batch");
  params_.zero_grads();
  double loss_sum = 0.0;
  const double inv_b = 1.0 / static_cast<double>(batch.size());
  for (const auto &pair : batch) loss_sum += pair_loss_backward(pair, inv_b);
  apply_update(learning_rate);
  return loss_sum * inv_b;
}

double DiscriminatorModel::batch_loss(std::span<const LabeledPair> batch) const {
  if (batch.empty()) throw ValidationError("batch_loss: empty batch");
  double loss_sum = 0.0;
  for (const auto &pair : batch) {
    const double p = score(pair.x, pair.y);
    loss_sum -= pair.positive ? std::log(p) : std::log(1.0 - p);
  }
  return loss_sum / static_cast<double>(batch.size());
}

double DiscriminatorModel::accuracy(std::span<const LabeledPair> pairs) const {
  if (pairs.empty()) throw ValidationError("accuracy: empty evaluation set");
  long correct = 0;
  for (const auto &pair : pairs) {
    const bool predicted = score(pair.x, pair.y) > 0.5;
    correct += predicted == pair.positive;
  }
  return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

void DiscriminatorModel::apply_update() { apply_update(cfg_.learning_rate); }

void DiscriminatorModel::apply_update(double learning_rate) {
  if (cfg_.optimizer == DiscriminatorConfig::Optimizer::kSgd) {
    params_.sgd_step(learning_rate);
  } else {
    params_.adam_step(learning_rate);
  }
  params_.zero_grads();
  ++step_count_;
}

void DiscriminatorModel::save(const std::string &path) const {
  write_checkpoint(path, "discriminator", cfg_.to_kv(), params_, rng_, step_count_);
}

void DiscriminatorModel::load(const std::string &path) {
  CheckpointData data = read_checkpoint(path);
  if (data.kind != "discriminator") throw CheckpointError("checkpoint kind is " + data.kind);
  if (data.config.echo() != cfg_.to_kv().echo()) {
    throw CheckpointError("checkpoint config does not match the model config");
  }
  restore_params(params_, data);
  rng_ = Rng(data.rng_seed);
  rng_.set_state(data.rng_state);
  step_count_ = data.step_count;
}

DiscriminatorModel DiscriminatorModel::load_new(const std::string &path) {
  CheckpointData data = read_checkpoint(path);
  if (data.kind != "discriminator") throw CheckpointError("checkpoint kind is " + data.kind);
  DiscriminatorModel model(DiscriminatorConfig::from_kv(data.config), /*seed=*/0);
  restore_params(model.params_, data);
  model.rng_ = Rng(data.rng_seed);
  model.rng_.set_state(data.rng_state);
  model.step_count_ = data.step_count;
  return model;
}

}  // namespace model
}  // namespace gecgan
