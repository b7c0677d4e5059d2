// tests/test_train.cpp
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "gecgan/train/adversarial.hpp"
#include "gecgan/train/pretrain.hpp"
#include "gecgan/util/error.hpp"

using namespace gecgan;
using namespace gecgan::train;
using bpe::kEosId;
using model::DiscriminatorConfig;
using model::DiscriminatorModel;
using model::GeneratorConfig;
using model::GeneratorModel;
using model::Ids;
using model::LabeledPair;
using model::TrainPair;

namespace {

GeneratorConfig tiny_gen(int vocab, int max_len = 4) {
  GeneratorConfig cfg;
  cfg.architecture = GeneratorConfig::Arch::kRnn;
  cfg.num_layers = 1;
  cfg.embed_dim = 4;
  cfg.hidden_dim = 4;
  cfg.layer_dropout = 0.0;
  cfg.attention_dropout = 0.0;
  cfg.source_word_dropout = 0.0;
  cfg.target_word_dropout = 0.0;
  cfg.max_decode_len = max_len;
  cfg.learning_rate = 0.1;
  cfg.vocab_size = vocab;
  return cfg;
}

DiscriminatorConfig tiny_disc(int vocab) {
  DiscriminatorConfig cfg;
  cfg.embed_dim = 4;
  cfg.hidden_dim = 4;
  cfg.num_layers = 1;
  cfg.dropout = 0.0;
  cfg.dense_dim = 6;
  cfg.learning_rate = 0.2;
  cfg.vocab_size = vocab;
  return cfg;
}

}  // namespace

TEST_CASE("reward closed forms") {
  CHECK(reward_from_score(0.5, 1e-6) == doctest::Approx(0.69314718).epsilon(1e-6));
  CHECK(reward_from_score(1.0, 1e-6) == doctest::Approx(-std::log(1e-6)).epsilon(1e-9));
  CHECK(reward_from_score(1.0, 1e-6) == doctest::Approx(13.8155).epsilon(1e-4));
  CHECK(reward_from_score(1e-6, 1e-6) == doctest::Approx(1e-6).epsilon(1e-3));
  CHECK(reward_from_score(0.0, 1e-6) == reward_from_score(1e-6, 1e-6));  // clamped up
}

TEST_CASE("baseline update rule and closed form") {
  TrainState st;
  st.baseline_decay = 0.9;
  // First call initializes.
  update_baseline(st, 0.6931);
  CHECK(st.baseline == doctest::Approx(0.6931));

  TrainState st2;
  st2.baseline = 0.0;
  st2.baseline_initialized = true;
  st2.baseline_decay = 0.9;
  update_baseline(st2, 1.0);
  CHECK(st2.baseline == doctest::Approx(0.1).epsilon(1e-12));

  // k sequential rewards match the closed-form exponential average.
  TrainState st3;
  st3.baseline_decay = 0.8;
  Rng rng(4);
  std::vector<double> rewards;
  for (int i = 0; i < 40; ++i) rewards.push_back(rng.uniform_range(0.0, 3.0));
  for (double r : rewards) update_baseline(st3, r);
  double expect = rewards[0];
  for (size_t i = 1; i < rewards.size(); ++i) expect = 0.8 * expect + 0.2 * rewards[i];
  CHECK(std::fabs(st3.baseline - expect) <= 1e-12);
}

TEST_CASE("train state validation") {
  TrainState st;
  st.lambda = 1.5;
  CHECK_THROWS_AS(st.validate(), ValidationError);
  st.lambda = 0.4;
  st.epsilon = 0.5;
  CHECK_THROWS_AS(st.validate(), ValidationError);
  st.epsilon = 0.7;
  st.d_updates_per_g_update = 0;
  CHECK_THROWS_AS(st.validate(), ValidationError);
  st.d_updates_per_g_update = 1;
  st.validate();
}

TEST_CASE("zero advantage is a parameter no-op") {
  GeneratorModel g(tiny_gen(6), 3);
  const auto before = g.params().flatten();
  TrainState st;
  st.baseline = 0.6931;
  st.baseline_initialized = true;
  const RewardFn constant = [](const Ids &, const Ids &, const Ids &) { return 0.6931; };
  Rng rng(5);
  const std::vector<TrainPair> batch{{{4, 5}, {4, kEosId}}, {{5}, {5, kEosId}}};
  const auto stats = pg_step(g, constant, st, batch, rng);
  CHECK(stats.mean_advantage == doctest::Approx(0.0).epsilon(1e-15));
  const auto after = g.params().flatten();
  double delta = 0.0;
  for (size_t i = 0; i < before.size(); ++i) delta += std::fabs(after[i] - before[i]);
  CHECK(delta <= 1e-12);
  // The baseline absorbed the constant rewards.
  CHECK(st.baseline == doctest::Approx(0.6931));
}

namespace {

// Enumerates every sequence the sampler can emit (vocab {0,1,EOS=2},
// max_decode_len 2) with its probability and score-function gradient,
// entirely through the teacher-forced path.
struct Enumerated {
  std::vector<Ids> seqs;
  std::vector<double> probs;
  std::vector<std::vector<double>> grads;  // d log G / d theta
};

Enumerated enumerate_toy(GeneratorModel &g, const Ids &x) {
  Enumerated out;
  out.seqs = {{2}, {0, 2}, {1, 2}, {0, 0}, {0, 1}, {1, 0}, {1, 1}};
  for (const auto &seq : out.seqs) {
    double lp = 0.0;
    Ids prefix;
    for (int tok : seq) {
      lp += g.next_token_log_probs(x, prefix)[tok];
      prefix.push_back(tok);
    }
    out.probs.push_back(std::exp(lp));
    g.zero_grads();
    g.log_prob_backward(x, seq, 1.0);
    out.grads.push_back(g.params().flatten_grads());
    g.zero_grads();
  }
  return out;
}

}  // namespace

TEST_CASE("single-sample REINFORCE estimator is unbiased on the toy policy") {
  auto cfg = tiny_gen(3, 2);
  GeneratorModel g(cfg, 17);
  const Ids x{0, 1};
  const double baseline = 0.3;
  const RewardFn reward_fn = [](const Ids &, const Ids &, const Ids &y) {
    // Fixed, varied reward: likes sequences containing 0, dislikes length 2.
    double r = 0.2;
    for (int t : y) r += t == 0 ? 1.0 : 0.0;
    if (y.size() == 2) r += 0.3;
    return r;
  };

  // Exact gradient of the estimator's expectation:
  //   E[g] = sum_y G(y) * -(r(y) - b) * dlogG(y).
  const auto enumerated = enumerate_toy(g, x);
  double mass = 0.0;
  for (double p : enumerated.probs) mass += p;
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));

  const size_t dim = g.params().total_params();
  std::vector<double> exact(dim, 0.0);
  for (size_t s = 0; s < enumerated.seqs.size(); ++s) {
    const double w = -enumerated.probs[s] * (reward_fn(x, {}, enumerated.seqs[s]) - baseline);
    for (size_t i = 0; i < dim; ++i) exact[i] += w * enumerated.grads[s][i];
  }

  const int n = 15000;
  std::vector<double> mean(dim, 0.0), m2(dim, 0.0);
  for (int k = 0; k < n; ++k) {
    const auto est = reinforce_gradient(g, reward_fn, x, baseline, 9000 + k);
    for (size_t i = 0; i < dim; ++i) {
      mean[i] += est.grad[i];
      m2[i] += est.grad[i] * est.grad[i];
    }
  }
  int outside = 0;
  for (size_t i = 0; i < dim; ++i) {
    mean[i] /= n;
    const double var = std::max(0.0, m2[i] / n - mean[i] * mean[i]);
    const double se = std::sqrt(var / n);
    if (std::fabs(mean[i] - exact[i]) > 3.0 * se + 1e-12) ++outside;
  }
  // With ~400 coordinates a few 3-sigma excursions would signal bias;
  // allow none beyond a 1% tail allowance.
  CHECK(outside <= static_cast<int>(dim / 100));
}

TEST_CASE("constant reward without baseline has zero expected gradient") {
  auto cfg = tiny_gen(3, 2);
  GeneratorModel g(cfg, 23);
  const Ids x{1, 0};
  const RewardFn constant = [](const Ids &, const Ids &, const Ids &) { return 0.7; };

  const size_t dim = g.params().total_params();
  const int n = 15000;
  std::vector<double> mean(dim, 0.0), m2(dim, 0.0);
  for (int k = 0; k < n; ++k) {
    const auto est = reinforce_gradient(g, constant, x, 0.0, 7000 + k);
    for (size_t i = 0; i < dim; ++i) {
      mean[i] += est.grad[i];
      m2[i] += est.grad[i] * est.grad[i];
    }
  }
  int outside = 0;
  for (size_t i = 0; i < dim; ++i) {
    mean[i] /= n;
    const double var = std::max(0.0, m2[i] / n - mean[i] * mean[i]);
    const double se = std::sqrt(var / n);
    if (std::fabs(mean[i]) > 3.0 * se + 1e-12) ++outside;
  }
  CHECK(outside <= static_cast<int>(dim / 100));
}

namespace {

std::vector<TrainPair> copy_task_pairs(int n, int vocab, uint64_t seed) {
  std::vector<TrainPair> out;
  Rng rng(seed);
  for (int i = 0; i < n; ++i) {
    Ids x;
    const int len = 1 + static_cast<int>(rng.uniform_int(3));
    for (int k = 0; k < len; ++k) x.push_back(4 + static_cast<int>(rng.uniform_int(vocab - 4)));
    Ids y = x;
    y.push_back(kEosId);
    out.push_back({x, y});
  }
  return out;
}

}  // namespace

TEST_CASE("lambda 0 never takes the policy-gradient branch and matches pure MLE") {
  const int vocab = 10;
  const auto train = copy_task_pairs(24, vocab, 3);
  AdvOptions opts;
  opts.batch_size = 4;
  opts.max_steps = 30;
  opts.eval_every = 1000;  // no dev evals
  opts.log_timing = false;

  GeneratorModel g(tiny_gen(vocab), 77);
  TrainState st;
  st.lambda = 0.0;
  st.seed = 55;
  std::ostringstream log;
  const RewardFn unused = [](const Ids &, const Ids &, const Ids &) { return 1.0; };
  const auto result = adversarial_train(g, nullptr, unused, st, train, nullptr, opts, &log);
  CHECK(result.pg_branches == 0);
  CHECK(result.mle_branches == 30);
  CHECK(log.str().find("\"branch\":\"pg\"") == std::string::npos);

  // Same seed, hand-rolled pure MLE loop over the same substream-driven
  // batch order reproduces the loss trajectory exactly.
  GeneratorModel g2(tiny_gen(vocab), 77);
  Rng order_rng = Rng(st.seed).substream("batch-order");
  std::vector<size_t> order(train.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (size_t i = order.size() - 1; i > 0; --i) {
    const size_t j = order_rng.uniform_int(i + 1);
    std::swap(order[i], order[j]);
  }
  size_t cursor = 0;
  std::vector<double> manual_losses;
  for (int step = 0; step < 30; ++step) {
    std::vector<TrainPair> batch;
    for (int b = 0; b < 4; ++b) {
      if (cursor >= order.size()) {
        for (size_t i = 0; i < order.size(); ++i) order[i] = i;
        for (size_t i = order.size() - 1; i > 0; --i) {
          const size_t j = order_rng.uniform_int(i + 1);
          std::swap(order[i], order[j]);
        }
        cursor = 0;
      }
      batch.push_back(train[order[cursor++]]);
    }
    manual_losses.push_back(g2.mle_step(batch));
  }
  // Compare against the logged g_loss sequence.
  std::istringstream in(log.str());
  std::string line;
  size_t idx = 0;
  while (std::getline(in, line) && idx < manual_losses.size()) {
    const auto pos = line.find("\"g_loss\":");
    REQUIRE(pos != std::string::npos);
    const double logged = std::stod(line.substr(pos + 9));
    CHECK(logged == doctest::Approx(manual_losses[idx]).epsilon(1e-12));
    ++idx;
  }
  CHECK(idx == manual_losses.size());
}

TEST_CASE("lambda 1 takes only the policy-gradient branch") {
  const int vocab = 10;
  const auto train = copy_task_pairs(16, vocab, 5);
  AdvOptions opts;
  opts.batch_size = 2;
  opts.max_steps = 20;
  opts.eval_every = 1000;
  opts.log_timing = false;
  GeneratorModel g(tiny_gen(vocab), 78);
  DiscriminatorModel d(tiny_disc(vocab), 79);
  TrainState st;
  st.lambda = 1.0;
  st.seed = 66;
  const auto result =
      adversarial_train(g, &d, discriminator_reward(d), st, train, nullptr, opts, nullptr);
  CHECK(result.pg_branches == 20);
  CHECK(result.mle_branches == 0);
  CHECK(st.step == 20);
  CHECK(st.baseline_initialized);
}

TEST_CASE("interleaving frequency is binomial at lambda 0.4") {
  const int vocab = 8;
  const auto train = copy_task_pairs(16, vocab, 7);
  AdvOptions opts;
  opts.batch_size = 2;
  opts.max_steps = 2000;
  opts.eval_every = 100000;
  opts.log_timing = false;
  GeneratorModel g(tiny_gen(vocab, 3), 80);
  TrainState st;
  st.lambda = 0.4;
  st.seed = 91;
  const RewardFn cheap = [](const Ids &, const Ids &, const Ids &y) {
    return y.size() == 2 ? 1.0 : 0.5;
  };
  const auto result = adversarial_train(g, nullptr, cheap, st, train, nullptr, opts, nullptr);
  const double expected = 2000 * 0.4;
  const double bound = 4.0 * std::sqrt(2000 * 0.4 * 0.6);
  CHECK(std::fabs(static_cast<double>(result.pg_branches) - expected) <= bound);
  CHECK(result.pg_branches + result.mle_branches == 2000);
}

TEST_CASE("divergence guard aborts on persistently low rewards") {
  const int vocab = 8;
  const auto train = copy_task_pairs(8, vocab, 9);
  AdvOptions opts;
  opts.batch_size = 2;
  opts.max_steps = 500;
  opts.eval_every = 100000;
  opts.reward_floor = 0.01;
  opts.floor_window = 10;
  opts.floor_windows = 3;
  opts.log_timing = false;
  GeneratorModel g(tiny_gen(vocab, 3), 81);
  TrainState st;
  st.lambda = 1.0;  // every step produces rewards
  st.seed = 14;
  const RewardFn dead = [](const Ids &, const Ids &, const Ids &) { return 1e-4; };
  CHECK_THROWS_AS(adversarial_train(g, nullptr, dead, st, train, nullptr, opts, nullptr),
                  DivergenceError);
}

TEST_CASE("a frozen sentinel-penalizing reward drives sentinel emission down") {
  const int vocab = 8;
  const int sentinel = 4;
  // Pre-train towards emitting the sentinel half of the time.
  GeneratorModel g(tiny_gen(vocab, 3), 82);
  std::vector<TrainPair> pretrain;
  for (int i = 0; i < 8; ++i) {
    pretrain.push_back({{5}, {i % 2 == 0 ? sentinel : 6, kEosId}});
  }
  for (int step = 0; step < 150; ++step) g.mle_step(pretrain);

  const auto sentinel_rate = [&](uint64_t seed) {
    int hits = 0;
    const int n = 400;
    Rng rng(seed);
    for (int i = 0; i < n; ++i) {
      const auto res = g.sample({5}, rng.next_u64());
      for (int t : res.ids) hits += t == sentinel;
    }
    return static_cast<double>(hits) / n;
  };
  const double before = sentinel_rate(1);
  CHECK(before > 0.2);

  // Perfect frozen judge: sentinel means fake.
  const double delta = 1e-6;
  const RewardFn judge = [&](const Ids &, const Ids &, const Ids &y) {
    for (int t : y) {
      if (t == sentinel) return reward_from_score(delta, delta);
    }
    return reward_from_score(1.0 - delta, delta);
  };
  TrainState st;
  st.lambda = 1.0;
  st.seed = 15;
  AdvOptions opts;
  opts.batch_size = 4;
  opts.max_steps = 300;
  opts.eval_every = 100000;
  opts.log_timing = false;
  std::vector<TrainPair> xs;
  for (int i = 0; i < 8; ++i) xs.push_back({{5}, {6, kEosId}});
  adversarial_train(g, nullptr, judge, st, xs, nullptr, opts, nullptr);

  const double after = sentinel_rate(1);
  CHECK(after <= 0.5 * before);
}

TEST_CASE("discriminator pretraining stops inside the accuracy band on separable data") {
  const int vocab = 12;
  const int sentinel = 5;
  Rng rng(33);
  std::vector<LabeledPair> pos, neg;
  for (int i = 0; i < 150; ++i) {
    LabeledPair p;
    const int len = 3 + static_cast<int>(rng.uniform_int(3));
    for (int k = 0; k < len; ++k) {
      p.x.push_back(6 + static_cast<int>(rng.uniform_int(vocab - 6)));
      p.y.push_back(6 + static_cast<int>(rng.uniform_int(vocab - 6)));
    }
    p.positive = true;
    pos.push_back(p);
    LabeledPair n = p;
    n.positive = false;
    n.y[rng.uniform_int(n.y.size())] = sentinel;
    neg.push_back(n);
  }

  for (double eps : {0.6, 0.7, 0.8}) {
    CAPTURE(eps);
    auto cfg = tiny_disc(vocab);
    cfg.learning_rate = 0.01;  // slow enough for the band to be observable
    DiscriminatorModel d(cfg, 44);
    DiscPretrainOptions opts;
    opts.batch_size = 8;
    opts.eval_every = 1;
    opts.max_steps = 4000;
    opts.seed = 3;
    const auto result = pretrain_discriminator(d, pos, neg, eps, opts);
    CHECK(result.accuracy >= eps);
    CHECK(result.accuracy <= eps + opts.tolerance);
  }
}

TEST_CASE("discriminator pretraining rejects epsilon at the boundary") {
  DiscriminatorModel d(tiny_disc(8), 1);
  const std::vector<LabeledPair> pos{{{4}, {5}, true}};
  const std::vector<LabeledPair> neg{{{4}, {6}, false}};
  CHECK_THROWS_AS(pretrain_discriminator(d, pos, neg, 0.5, DiscPretrainOptions{}),
                  ValidationError);
  CHECK_THROWS_AS(pretrain_discriminator(d, pos, neg, 1.0, DiscPretrainOptions{}),
                  ValidationError);
}

TEST_CASE("unreachable epsilon exhausts the budget with a typed error") {
  // Label-shuffled data: accuracy hovers near chance, 0.99 is hopeless.
  const int vocab = 10;
  Rng rng(21);
  std::vector<LabeledPair> pos, neg;
  for (int i = 0; i < 60; ++i) {
    LabeledPair p;
    for (int k = 0; k < 4; ++k) {
      p.x.push_back(4 + static_cast<int>(rng.uniform_int(vocab - 4)));
      p.y.push_back(4 + static_cast<int>(rng.uniform_int(vocab - 4)));
    }
    p.positive = rng.bernoulli(0.5);
    (i % 2 == 0 ? pos : neg).push_back(p);
  }
  DiscriminatorModel d(tiny_disc(vocab), 9);
  DiscPretrainOptions opts;
  opts.batch_size = 8;
  opts.max_steps = 150;
  try {
    pretrain_discriminator(d, pos, neg, 0.99, opts);
    FAIL("expected BudgetError");
  } catch (const BudgetError &e) {
    CHECK(e.best_accuracy() < 0.99);
    CHECK(e.best_accuracy() >= 0.0);
  }
}

TEST_CASE("generator pretraining improves dev loss and restores the best snapshot") {
  const int vocab = 10;
  const auto train = copy_task_pairs(48, vocab, 11);
  const auto dev = copy_task_pairs(12, vocab, 12);
  GeneratorModel g(tiny_gen(vocab), 83);
  const double before = g.batch_loss(dev);
  GenPretrainOptions opts;
  opts.batch_size = 8;
  opts.max_steps = 400;
  opts.eval_every = 40;
  opts.patience = 3;
  opts.seed = 2;
  const auto result = pretrain_generator(g, train, dev, opts);
  CHECK(result.best_dev_loss < before);
  CHECK(g.batch_loss(dev) == doctest::Approx(result.best_dev_loss).epsilon(1e-12));
  CHECK((result.stop_reason == "patience" || result.stop_reason == "budget"));
}

TEST_CASE("make_negatives beam-decodes every source with framing intact") {
  GeneratorModel g(tiny_gen(8, 4), 84);
  const std::vector<Ids> sources{{4, 5}, {6}, {7, 4, 5}};
  const auto negs = make_negatives(g, sources, 4);
  REQUIRE(negs.size() == sources.size());
  for (size_t i = 0; i < negs.size(); ++i) {
    CHECK(!negs[i].empty());
    CHECK(negs[i].size() <= 4);
    CHECK(negs[i] == g.beam_decode(sources[i], 4).ids);
  }
}
