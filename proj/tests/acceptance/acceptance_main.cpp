// tests/acceptance/acceptance_main.cpp
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

// Acceptance suite.  Each criterion prints one [PASS]/[FAIL] line plus
// its supporting measurements; the process exits with the number of
// failed criteria.
//
//   gecgan_acceptance --criterion 3
//   gecgan_acceptance                # run all

#include <cmath>
#include <iostream>
#include <string>
#include <vector>

#include "acceptance.hpp"
#include "gecgan/corpus/types.hpp"
#include "gecgan/metrics/metrics.hpp"
#include "gecgan/model/discriminator.hpp"
#include "gecgan/model/generator.hpp"
#include "gecgan/train/adversarial.hpp"
#include "gecgan/train/pretrain.hpp"
#include "gecgan/util/rng.hpp"

namespace acceptance {

using namespace gecgan;
using bpe::kEosId;
using model::DiscriminatorConfig;
using model::DiscriminatorModel;
using model::GeneratorConfig;
using model::GeneratorModel;
using model::Ids;
using model::LabeledPair;
using model::TrainPair;

namespace {

const char *kTitles[8] = {
    "REINFORCE unbiasedness on the enumerable toy policy",
    "analytic gradients match central finite differences",
    "metric oracles (M2 counts, GLEU hand counts, F-beta identity)",
    "algorithm mechanics (interleaving, accuracy bands, baseline)",
    "discriminator-formulation ordering at desk scale",
    "epsilon sensitivity peaks at 0.7 in the sweep",
    "determinism replay of the full pipeline",
    "frozen sentinel discriminator drives sentinel emission down",
};

GeneratorConfig toy_generator_config(int vocab, int max_len) {
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

}  // namespace

bool Report::finish() const {
  std::cout << (passed_ ? "[PASS]" : "[FAIL]") << " criterion " << criterion_ << ": " << title_
            << "\n"
            << detail_.str();
  std::cout.flush();
  return passed_;
}

namespace {
// Uncaught exceptions inside a criterion count as its failure, with the
// message preserved in the report.
bool guarded(bool (*fn)(), int criterion) {
  try {
    return fn();
  } catch (const std::exception &e) {
    std::cout << "[FAIL] criterion " << criterion << ": uncaught exception: " << e.what() << "\n";
    std::cout.flush();
    return false;
  }
}
}  // namespace

// ---------------------------------------------------------------------------
// Criterion 1: the mean of 5e4 single-sample gradient estimates matches the
// exact enumerated gradient per coordinate within three standard errors.

bool criterion1() {
  Report report(1, kTitles[0]);

  GeneratorModel g(toy_generator_config(3, 2), 1701);
  const Ids x{0, 1};
  const double baseline = 0.3;
  const train::RewardFn reward_fn = [](const Ids &, const Ids &, const Ids &y) {
    double r = 0.2;
    for (int t : y) r += t == 0 ? 1.0 : 0.0;
    if (y.size() == 2) r += 0.3;
    return r;
  };

  // Exact E[grad] by enumeration of all length-<=2 outcomes over {a, b, EOS}.
  const std::vector<Ids> outcomes{{2}, {0, 2}, {1, 2}, {0, 0}, {0, 1}, {1, 0}, {1, 1}};
  const size_t dim = g.params().total_params();
  std::vector<double> exact(dim, 0.0);
  double mass = 0.0;
  for (const auto &seq : outcomes) {
    double lp = 0.0;
    Ids prefix;
    for (int tok : seq) {
      lp += g.next_token_log_probs(x, prefix)[tok];
      prefix.push_back(tok);
    }
    const double prob = std::exp(lp);
    mass += prob;
    g.zero_grads();
    g.log_prob_backward(x, seq, 1.0);
    const auto grad = g.params().flatten_grads();
    const double w = -prob * (reward_fn(x, {}, seq) - baseline);
    for (size_t i = 0; i < dim; ++i) exact[i] += w * grad[i];
  }
  g.zero_grads();
  report.expect(std::fabs(mass - 1.0) < 1e-9, "enumerated outcome probabilities sum to 1");

  const int n = 50000;
  std::vector<double> mean(dim, 0.0), m2(dim, 0.0);
  for (int k = 0; k < n; ++k) {
    const auto est = train::reinforce_gradient(g, reward_fn, x, baseline, 400000 + k);
    for (size_t i = 0; i < dim; ++i) {
      mean[i] += est.grad[i];
      m2[i] += est.grad[i] * est.grad[i];
    }
  }
  int outside = 0;
  double worst = 0.0;
  for (size_t i = 0; i < dim; ++i) {
    mean[i] /= n;
    const double var = std::max(0.0, m2[i] / n - mean[i] * mean[i]);
    const double se = std::sqrt(var / n);
    const double z = std::fabs(mean[i] - exact[i]) / (se + 1e-15);
    worst = std::max(worst, z);
    if (std::fabs(mean[i] - exact[i]) > 3.0 * se + 1e-12) ++outside;
  }
  report.detail() << "  coordinates: " << dim << ", samples: " << n << ", worst |z|: " << worst
                  << ", outside 3 SE: " << outside << "\n";
  // A 1% allowance absorbs expected 3-sigma excursions across hundreds
  // of coordinates; systematic bias would blow far past it.
  report.expect(outside <= static_cast<int>(dim / 100),
                "per-coordinate estimates within three standard errors of the exact gradient");
  return report.finish();
}

// ---------------------------------------------------------------------------
// Criterion 2: MLE, BCE, and log-prob gradients vs central differences.

namespace {

struct FdStats {
  double worst_rel = 0.0;
  size_t checked = 0;
  bool ok = true;
};

template <typename LossFn>
FdStats check_fd(nn::ParamStore &params, const std::vector<double> &analytic, LossFn &&loss,
                 double tol = 1e-3, double h = 1e-4) {
  FdStats stats;
  const size_t n = params.total_params();
  for (size_t i = 0; i < n; ++i) {
    const double orig = params.get_flat(i);
    params.set_flat(i, orig + h);
    const double up = loss();
    params.set_flat(i, orig - h);
    const double down = loss();
    params.set_flat(i, orig);
    const double fd = (up - down) / (2 * h);
    const double denom = std::max({std::fabs(fd), std::fabs(analytic[i]), 1e-8});
    const double rel = std::fabs(fd - analytic[i]) / denom;
    stats.worst_rel = std::max(stats.worst_rel, rel);
    stats.ok &= rel <= tol;
    ++stats.checked;
  }
  return stats;
}

}  // namespace

bool criterion2() {
  Report report(2, kTitles[1]);

  const std::vector<TrainPair> batch{{{4, 5, 6}, {5, 6, kEosId}}, {{6, 4}, {4, 7, kEosId}}};
  size_t total_tokens = 0;
  for (const auto &p : batch) total_tokens += p.y.size();

  for (auto arch : {GeneratorConfig::Arch::kRnn, GeneratorConfig::Arch::kTransformer}) {
    const char *name = arch == GeneratorConfig::Arch::kRnn ? "rnn" : "transformer";
    GeneratorConfig cfg = toy_generator_config(9, 6);
    cfg.architecture = arch;
    cfg.embed_dim = 8;
    cfg.hidden_dim = 8;
    cfg.num_heads = 2;
    cfg.ffn_dim = 16;
    GeneratorModel m(cfg, 31);
    report.detail() << "  " << name << " generator: " << m.params().total_params()
                    << " parameters\n";
    report.expect(m.params().total_params() <= 5000, std::string(name) + " model under 5k parameters");

    // MLE loss gradient.
    m.zero_grads();
    for (const auto &p : batch) {
      m.log_prob_backward(p.x, p.y, -1.0 / static_cast<double>(total_tokens));
    }
    auto analytic = m.params().flatten_grads();
    m.zero_grads();
    auto mle_stats = check_fd(m.params(), analytic, [&] { return m.batch_loss(batch); });
    report.detail() << "    mle worst relative error: " << mle_stats.worst_rel << "\n";
    report.expect(mle_stats.ok, std::string(name) + " MLE gradient within 1e-3 of central differences");

    // log-prob gradient.
    const Ids lx{4, 5, 6};
    const Ids ly{6, 5, kEosId};
    m.zero_grads();
    m.log_prob_backward(lx, ly, 1.0);
    analytic = m.params().flatten_grads();
    m.zero_grads();
    auto lp_stats = check_fd(m.params(), analytic, [&] { return m.log_prob(lx, ly); });
    report.detail() << "    log_prob worst relative error: " << lp_stats.worst_rel << "\n";
    report.expect(lp_stats.ok, std::string(name) + " log_prob gradient within 1e-3");
  }

  for (auto arch : {DiscriminatorConfig::Arch::kRecurrent, DiscriminatorConfig::Arch::kConvolutional}) {
    const char *name = arch == DiscriminatorConfig::Arch::kRecurrent ? "recurrent" : "convolutional";
    DiscriminatorConfig cfg;
    cfg.architecture = arch;
    cfg.embed_dim = 8;
    cfg.hidden_dim = 8;
    cfg.num_layers = 1;
    cfg.dropout = 0.0;
    cfg.dense_dim = 8;
    cfg.learning_rate = 0.1;
    cfg.vocab_size = 9;
    DiscriminatorModel d(cfg, 32);
    report.expect(d.params().total_params() <= 5000,
                  std::string(name) + " discriminator under 5k parameters");
    const std::vector<LabeledPair> dbatch{{{4, 5, 6}, {6, 5}, true}, {{7, 8}, {8, 7, 4}, false}};
    d.params().zero_grads();
    for (const auto &p : dbatch) d.pair_loss_backward(p, 1.0 / dbatch.size());
    const auto analytic = d.params().flatten_grads();
    d.params().zero_grads();
    auto stats = check_fd(d.params(), analytic, [&] { return d.batch_loss(dbatch); });
    report.detail() << "    bce worst relative error: " << stats.worst_rel << "\n";
    report.expect(stats.ok, std::string(name) + " BCE gradient within 1e-3");
  }
  return report.finish();
}

// ---------------------------------------------------------------------------
// Criterion 3: metric oracles.

bool criterion3() {
  Report report(3, kTitles[2]);
  using corpus::AnnotatedSentence;
  using corpus::Edit;
  using corpus::Tokens;

  // Perfect system: all gold edits reproduced.
  {
    AnnotatedSentence gold;
    gold.source = {"I", "likes", "cats"};
    gold.annotations[0] = {{1, 2, {"like"}, "V", 0}};
    const auto r = metrics::m2_score({{"I", "like", "cats"}}, {gold});
    report.expect(r.precision == 1.0 && r.recall == 1.0 && r.f_beta == 1.0,
                  "perfect system scores P=R=F0.5=1");
  }
  // One hit, one miss, one spurious edit: all three at exactly 0.5.
  {
    AnnotatedSentence gold;
    gold.source = {"a", "x", "c", "y", "e", "q"};
    gold.annotations[0] = {{1, 2, {"b"}, "U", 0}, {3, 4, {"d"}, "U", 0}};
    const auto r = metrics::m2_score({{"a", "b", "c", "y", "e", "z"}}, {gold});
    report.detail() << "  tp=" << r.per_sentence[0].tp << " fp=" << r.per_sentence[0].fp
                    << " fn=" << r.per_sentence[0].fn << " P=" << r.precision << " R=" << r.recall
                    << " F0.5=" << r.f_beta << "\n";
    report.expect(r.per_sentence[0].tp == 1 && r.per_sentence[0].fp == 1 &&
                      r.per_sentence[0].fn == 1,
                  "hand-counted tp/fp/fn");
    report.expect(std::fabs(r.precision - 0.5) < 1e-12 && std::fabs(r.recall - 0.5) < 1e-12 &&
                      std::fabs(r.f_beta - 0.5) < 1e-12,
                  "P=R=F0.5=0.5 case reproduced exactly");
  }
  // Do-nothing system scores zero.
  {
    AnnotatedSentence gold;
    gold.source = {"I", "likes", "cats"};
    gold.annotations[0] = {{1, 2, {"like"}, "V", 0}};
    const auto r = metrics::m2_score({gold.source}, {gold});
    report.expect(r.precision == 0.0 && r.recall == 0.0 && r.f_beta == 0.0,
                  "do-nothing system scores zero under the 0/0 rules");
  }
  // GLEU unigram hand counts.
  {
    metrics::GleuConfig uni;
    uni.max_n = 1;
    const Tokens src{"a", "b"};
    const double kept_error = metrics::gleu_sentence(src, {"a", "b"}, {{"a", "c"}}, uni);
    const double corrected = metrics::gleu_sentence(src, {"a", "c"}, {{"a", "c"}}, uni);
    report.detail() << "  gleu(kept error)=" << kept_error << " gleu(corrected)=" << corrected
                    << "\n";
    report.expect(kept_error < 1e-6, "source-retained n-gram drives the unigram score to ~0");
    report.expect(std::fabs(corrected - 1.0) < 1e-12, "corrected hypothesis scores exactly 1");
    report.expect(metrics::gleu_sentence(src, {"x"}, {{"a", "c"}}) >= 0.0 &&
                      metrics::gleu_sentence({"a"}, {"a"}, {{"a"}}) == 1.0,
                  "boundary values stay in range");
  }
  // F-beta identity over 1000 random count triples.
  {
    Rng rng(113);
    bool ok = true;
    for (int i = 0; i < 1000; ++i) {
      const long tp = static_cast<long>(rng.uniform_int(25));
      const long fp = static_cast<long>(rng.uniform_int(25));
      const long fn = static_cast<long>(rng.uniform_int(25));
      const double p = metrics::precision_from(tp, fp);
      const double r = metrics::recall_from(tp, fn);
      const double denom = 0.25 * p + r;
      const double expect = denom == 0.0 ? 0.0 : 1.25 * p * r / denom;
      ok &= std::fabs(metrics::f_beta_from(tp, fp, fn) - expect) <= 1e-12;
    }
    report.expect(ok, "F0.5 identity holds on 1000 random count triples");
  }
  return report.finish();
}

// ---------------------------------------------------------------------------
// Criterion 4: Algorithm mechanics.

bool criterion4() {
  Report report(4, kTitles[3]);

  // Interleaving frequency within 4 sigma of Binomial(2000, lambda).
  for (double lambda : {0.2, 0.4, 0.8}) {
    std::vector<TrainPair> train;
    Rng rng(61);
    for (int i = 0; i < 16; ++i) {
      Ids x{static_cast<int>(4 + rng.uniform_int(4))};
      Ids y{static_cast<int>(4 + rng.uniform_int(4)), kEosId};
      train.push_back({x, y});
    }
    GeneratorModel g(toy_generator_config(8, 3), 170 + static_cast<int>(lambda * 10));
    train::TrainState st;
    st.lambda = lambda;
    st.seed = 9000 + static_cast<uint64_t>(lambda * 100);
    train::AdvOptions opts;
    opts.batch_size = 2;
    opts.max_steps = 2000;
    opts.eval_every = 1 << 20;
    opts.log_timing = false;
    const train::RewardFn cheap = [](const Ids &, const Ids &, const Ids &y) {
      return y.size() == 1 ? 1.0 : 0.4;
    };
    const auto result = train::adversarial_train(g, nullptr, cheap, st, train, nullptr, opts, nullptr);
    const double expected = 2000 * lambda;
    const double bound = 4.0 * std::sqrt(2000 * lambda * (1 - lambda));
    report.detail() << "  lambda " << lambda << ": pg branches " << result.pg_branches
                    << " expected " << expected << " +- " << bound << "\n";
    report.expect(std::fabs(result.pg_branches - expected) <= bound,
                  "branch count within 4 sigma at lambda " + std::to_string(lambda));
  }

  // Discriminator pre-training stops inside [eps, eps+0.05] on separable data.
  {
    const int vocab = 12;
    const int sentinel = 5;
    Rng rng(77);
    std::vector<LabeledPair> pos, neg;
    for (int i = 0; i < 400; ++i) {
      LabeledPair p;
      const int len = 3 + static_cast<int>(rng.uniform_int(4));
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
      DiscriminatorConfig cfg;
      cfg.embed_dim = 6;
      cfg.hidden_dim = 6;
      cfg.num_layers = 1;
      cfg.dropout = 0.0;
      cfg.dense_dim = 8;
      cfg.learning_rate = 0.02;
      cfg.vocab_size = vocab;
      DiscriminatorModel d(cfg, 500 + static_cast<uint64_t>(eps * 10));
      train::DiscPretrainOptions opts;
      opts.batch_size = 8;
      opts.max_steps = 6000;
      opts.seed = 19;
      const auto result = train::pretrain_discriminator(d, pos, neg, eps, opts);
      report.detail() << "  eps " << eps << ": stopped at accuracy " << result.accuracy << " after "
                      << result.steps << " steps\n";
      report.expect(result.accuracy >= eps && result.accuracy <= eps + 0.05,
                    "held-out accuracy inside the band for eps " + std::to_string(eps));
    }
  }

  // Baseline equals its closed form within 1e-12 over a random stream.
  {
    train::TrainState st;
    st.baseline_decay = 0.9;
    Rng rng(99);
    std::vector<double> rewards;
    for (int i = 0; i < 500; ++i) rewards.push_back(rng.uniform_range(0.0, 14.0));
    for (double r : rewards) train::update_baseline(st, r);
    double expect = rewards[0];
    for (size_t i = 1; i < rewards.size(); ++i) expect = 0.9 * expect + 0.1 * rewards[i];
    report.detail() << "  baseline " << st.baseline << " closed form " << expect << "\n";
    report.expect(std::fabs(st.baseline - expect) <= 1e-12,
                  "moving-average baseline equals its closed form within 1e-12");
  }
  return report.finish();
}

// ---------------------------------------------------------------------------
// Criterion 8: causal reward flow.

bool criterion8() {
  Report report(8, kTitles[7]);

  const int vocab = 8;
  const int sentinel = 4;
  const double delta = 1e-6;
  for (uint64_t seed = 1; seed <= 3; ++seed) {
    GeneratorModel g(toy_generator_config(vocab, 3), 800 + seed);
    std::vector<TrainPair> pretrain;
    for (int i = 0; i < 8; ++i) pretrain.push_back({{5}, {i % 2 == 0 ? sentinel : 6, kEosId}});
    for (int step = 0; step < 150; ++step) g.mle_step(pretrain);

    const auto sentinel_rate = [&](uint64_t probe_seed) {
      int hits = 0;
      const int n = 600;
      Rng rng(probe_seed);
      for (int i = 0; i < n; ++i) {
        for (int t : g.sample({5}, rng.next_u64()).ids) hits += t == sentinel;
      }
      return static_cast<double>(hits) / n;
    };
    const double before = sentinel_rate(7);

    const train::RewardFn judge = [&](const Ids &, const Ids &, const Ids &y) {
      for (int t : y) {
        if (t == sentinel) return train::reward_from_score(delta, delta);
      }
      return train::reward_from_score(1.0 - delta, delta);
    };
    train::TrainState st;
    st.lambda = 1.0;
    st.seed = 8000 + seed;
    train::AdvOptions opts;
    opts.batch_size = 4;
    opts.max_steps = 1000;
    opts.eval_every = 1 << 20;
    opts.log_timing = false;
    std::vector<TrainPair> xs;
    for (int i = 0; i < 8; ++i) xs.push_back({{5}, {6, kEosId}});
    train::adversarial_train(g, nullptr, judge, st, xs, nullptr, opts, nullptr);

    const double after = sentinel_rate(7);
    report.detail() << "  seed " << seed << ": sentinel rate " << before << " -> " << after << "\n";
    report.expect(before > 0.05, "pre-training makes the sentinel emissible");
    report.expect(after <= 0.5 * before,
                  "sentinel emission dropped by at least half (seed " + std::to_string(seed) + ")");
  }
  return report.finish();
}

}  // namespace acceptance

int main(int argc, char **argv) {
  int criterion = 0;
  for (int i = 1; i + 1 < argc + 1; ++i) {
    const std::string arg = argv[i] ? argv[i] : "";
    if (arg == "--criterion" && i + 1 < argc) criterion = std::atoi(argv[i + 1]);
  }

  using Fn = bool (*)();
  const Fn criteria[8] = {acceptance::criterion1, acceptance::criterion2, acceptance::criterion3,
                          acceptance::criterion4, acceptance::criterion5, acceptance::criterion6,
                          acceptance::criterion7, acceptance::criterion8};

  int failures = 0;
  if (criterion >= 1 && criterion <= 8) {
    failures += !acceptance::guarded(criteria[criterion - 1], criterion);
  } else {
    for (int c = 0; c < 8; ++c) failures += !acceptance::guarded(criteria[c], c + 1);
  }
  return failures;
}
