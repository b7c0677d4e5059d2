// cli/pipeline.cpp
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

#include "gecgan/cli/pipeline.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "gecgan/corpus/corrupt.hpp"
#include "gecgan/corpus/m2.hpp"
#include "gecgan/corpus/synth.hpp"
#include "gecgan/metrics/metrics.hpp"
#include "gecgan/train/pretrain.hpp"
#include "gecgan/util/error.hpp"
#include "gecgan/util/text.hpp"

namespace fs = std::filesystem;

namespace gecgan {
namespace cli {

namespace {

// One process owns a run directory at a time.
class DirLock {
 public:
  explicit DirLock(const std::string &dir) : path_(dir + "/.lock") {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (fs::exists(path_)) {
      throw ValidationError("run directory is locked by another process: " + dir);
    }
    std::ofstream lock(path_);
    lock << "locked\n";
  }
  ~DirLock() {
    std::error_code ec;
    fs::remove(path_, ec);
  }
  DirLock(const DirLock &) = delete;
  DirLock &operator=(const DirLock &) = delete;

 private:
  std::string path_;
};

void echo_config(const Config &cfg, const std::string &dir, const std::string &cmd) {
  cfg.save(dir + "/config_" + cmd + ".txt");
}

// Collects every violated constraint before failing.
void require_input_files(const std::vector<std::pair<std::string, std::string>> &paths) {
  std::vector<std::string> bad;
  for (const auto &[key, path] : paths) {
    if (path.empty()) {
      bad.push_back("missing config key: " + key);
    } else if (!fs::exists(path)) {
      bad.push_back(key + ": no such file: " + path);
    }
  }
  if (!bad.empty()) throw ValidationError("config validation: " + join(bad, "; "));
}

std::vector<corpus::Tokens> read_token_lines(const std::string &path) {
  std::vector<corpus::Tokens> out;
  for (const auto &line : read_lines(path)) out.push_back(split_ws(line));
  return out;
}

struct BpeFiles {
  bpe::BpeModel model;
  bpe::Vocab vocab;
};

BpeFiles load_bpe(const Config &cfg, const std::string &dir) {
  const std::string model_path = cfg.get_string("bpe.model", dir + "/bpe.model");
  const std::string vocab_path = cfg.get_string("bpe.vocab", dir + "/bpe.vocab");
  require_input_files({{"bpe.model", model_path}, {"bpe.vocab", vocab_path}});
  return {bpe::load_model(model_path), bpe::load_vocab(vocab_path)};
}

corpus::Corpus load_split(const Config &cfg, const std::string &dir, const std::string &name) {
  const std::string src = cfg.get_string("paths." + name + "_src", dir + "/" + name + ".src");
  const std::string tgt = cfg.get_string("paths." + name + "_tgt", dir + "/" + name + ".tgt");
  require_input_files({{"paths." + name + "_src", src}, {"paths." + name + "_tgt", tgt}});
  return corpus::read_parallel(src, tgt, name);
}

train::GenPretrainOptions gen_pretrain_options(const Config &cfg, uint64_t seed) {
  train::GenPretrainOptions opts;
  opts.batch_size = static_cast<int>(cfg.get_int("pretrain.batch_size", 32));
  opts.max_steps = cfg.get_int("pretrain.max_steps", 10000);
  opts.eval_every = static_cast<int>(cfg.get_int("pretrain.eval_every", 200));
  opts.patience = static_cast<int>(cfg.get_int("pretrain.patience", 5));
  opts.seed = seed;
  return opts;
}

train::DiscPretrainOptions disc_pretrain_options(const Config &cfg, uint64_t seed) {
  train::DiscPretrainOptions opts;
  opts.tolerance = cfg.get_double("train.eps_tolerance", 0.05);
  opts.batch_size = static_cast<int>(cfg.get_int("disc_pretrain.batch_size", 16));
  opts.eval_every = static_cast<int>(cfg.get_int("disc_pretrain.eval_every", 1));
  opts.max_overshoot_evals = static_cast<int>(cfg.get_int("disc_pretrain.overshoot_evals", 20));
  opts.max_steps = cfg.get_int("disc_pretrain.max_steps", 5000);
  opts.holdout_fraction = cfg.get_double("disc_pretrain.holdout", 0.1);
  opts.seed = seed;
  return opts;
}

train::AdvOptions adv_options(const Config &cfg) {
  train::AdvOptions opts;
  opts.batch_size = static_cast<int>(cfg.get_int("train.batch_size", 32));
  opts.max_steps = cfg.get_int("train.max_steps", 2000);
  opts.eval_every = static_cast<int>(cfg.get_int("train.eval_every", 200));
  opts.patience = static_cast<int>(cfg.get_int("train.patience", 5));
  opts.reward_floor = cfg.get_double("train.reward_floor", 0.01);
  opts.floor_window = static_cast<int>(cfg.get_int("train.floor_window", 100));
  opts.floor_windows = static_cast<int>(cfg.get_int("train.floor_windows", 5));
  opts.log_timing = cfg.get_bool("train.log_timing", true);
  return opts;
}

train::TrainState train_state_from(const Config &cfg, double alpha_g, double alpha_d) {
  train::TrainState st;
  st.lambda = cfg.get_double("train.lambda", 0.4);
  st.epsilon = cfg.get_double("train.epsilon", 0.7);
  st.baseline_decay = cfg.get_double("train.baseline_decay", 0.9);
  st.d_updates_per_g_update = static_cast<int>(cfg.get_int("train.d_updates", 1));
  st.seed = static_cast<uint64_t>(cfg.get_int("seed", 13));
  st.alpha_g = alpha_g;
  st.alpha_d = alpha_d;
  st.validate();
  return st;
}

std::vector<bpe::Ids> read_id_lines(const std::string &path) {
  std::vector<bpe::Ids> out;
  for (const auto &line : read_lines(path)) {
    bpe::Ids ids;
    for (const auto &tok : split_ws(line)) ids.push_back(std::stoi(tok));
    out.push_back(std::move(ids));
  }
  return out;
}

// Builds the labeled set for discriminator pre-training: positives are
// the ground-truth pairs aligned with the negatives file.
void build_labeled(const std::vector<model::TrainPair> &pairs, const std::vector<bpe::Ids> &negs,
                   std::vector<model::LabeledPair> *positives,
                   std::vector<model::LabeledPair> *negatives) {
  const size_t n = std::min(pairs.size(), negs.size());
  for (size_t i = 0; i < n; ++i) {
    if (negs[i].empty()) continue;
    positives->push_back({pairs[i].x, pairs[i].y, true});
    negatives->push_back({pairs[i].x, negs[i], false});
  }
}

// The adversarial loop pieces shared by cmd_adversarial_train and
// cmd_sweep (which must not re-acquire the directory lock).
struct AdvRun {
  train::AdvResult result;
  train::TrainState state;
};

AdvRun run_adversarial(const Config &cfg, const std::string &dir, const std::string &gen_ckpt,
                       const std::string &disc_ckpt, double lambda_override, double seed_override,
                       std::ostream *metrics) {
  const BpeFiles bpe_files = load_bpe(cfg, dir);
  const auto train_corpus = load_split(cfg, dir, "train");
  const auto dev_corpus = load_split(cfg, dir, "dev");
  const auto train_pairs = encode_pairs(bpe_files.model, bpe_files.vocab, train_corpus);

  auto g = model::GeneratorModel::load_new(gen_ckpt);

  const std::string reward_kind = cfg.get_string("train.reward", "disc");
  std::unique_ptr<model::DiscriminatorModel> d;
  train::RewardFn reward_fn;
  if (reward_kind == "disc") {
    require_input_files({{"discriminator checkpoint", disc_ckpt}});
    d = std::make_unique<model::DiscriminatorModel>(model::DiscriminatorModel::load_new(disc_ckpt));
    reward_fn = train::discriminator_reward(*d);
  } else if (reward_kind == "gleu") {
    const bpe::BpeModel *bm = &bpe_files.model;
    const bpe::Vocab *vb = &bpe_files.vocab;
    reward_fn = [bm, vb](const bpe::Ids &x, const bpe::Ids &y_ref, const bpe::Ids &y_prime) {
      const auto src = bpe::decode(*bm, *vb, x);
      const auto hyp = bpe::decode(*bm, *vb, y_prime);
      const auto ref = bpe::decode(*bm, *vb, y_ref);
      return metrics::gleu_sentence(src, hyp, {ref});
    };
  } else if (reward_kind == "none") {
    reward_fn = [](const bpe::Ids &, const bpe::Ids &, const bpe::Ids &) -> double {
      throw ValidationError("train.reward=none requires train.lambda=0");
    };
  } else {
    throw ValidationError("unknown train.reward: " + reward_kind);
  }

  AdvRun run;
  run.state = train_state_from(cfg, g.config().learning_rate,
                               d ? d->config().learning_rate : 0.0);
  if (lambda_override >= 0.0) run.state.lambda = lambda_override;
  if (seed_override >= 0.0) run.state.seed = static_cast<uint64_t>(seed_override);
  if (reward_kind == "none" && run.state.lambda != 0.0) {
    throw ValidationError("train.reward=none requires train.lambda=0");
  }

  const int beam = static_cast<int>(cfg.get_int("train.beam", 4));
  const auto dev_eval = make_dev_evaluator(bpe_files.model, bpe_files.vocab, dev_corpus, beam);
  run.result = train::adversarial_train(g, d.get(), reward_fn, run.state, train_pairs, dev_eval,
                                        adv_options(cfg), metrics);
  g.save(dir + "/generator_adv.ckpt");
  if (d) d->save(dir + "/discriminator_adv.ckpt");
  return run;
}

}  // namespace

std::string resolve_run_dir(const Config &cfg) {
  std::string dir = cfg.get_string("run_dir", "run");
  if (const char *root = std::getenv("GECGAN_RUN_ROOT")) {
    if (!dir.empty() && dir[0] != '/') dir = std::string(root) + "/" + dir;
  }
  fs::create_directories(dir);
  return dir;
}

std::vector<model::TrainPair> encode_pairs(const bpe::BpeModel &bpe_model,
                                           const bpe::Vocab &vocab, const corpus::Corpus &data) {
  std::vector<model::TrainPair> out;
  out.reserve(data.size());
  for (const auto &pair : data) {
    model::TrainPair tp;
    tp.x = bpe::encode(bpe_model, vocab, pair.source);
    tp.y = bpe::encode(bpe_model, vocab, pair.target);
    tp.y.push_back(bpe::kEosId);
    if (tp.x.empty()) continue;
    out.push_back(std::move(tp));
  }
  return out;
}

std::vector<corpus::AnnotatedSentence> gold_from_pairs(const corpus::Corpus &data) {
  std::vector<corpus::AnnotatedSentence> gold;
  gold.reserve(data.size());
  for (const auto &pair : data) {
    corpus::AnnotatedSentence s;
    s.source = pair.source;
    s.annotations[0] = metrics::extract_edits(pair.source, pair.target);
    gold.push_back(std::move(s));
  }
  return gold;
}

train::DevEvaluator make_dev_evaluator(const bpe::BpeModel &bpe_model, const bpe::Vocab &vocab,
                                       const corpus::Corpus &dev, int beam_size) {
  auto gold = std::make_shared<std::vector<corpus::AnnotatedSentence>>(gold_from_pairs(dev));
  auto sources = std::make_shared<std::vector<bpe::Ids>>();
  for (const auto &pair : dev) sources->push_back(bpe::encode(bpe_model, vocab, pair.source));
  const bpe::BpeModel *bm = &bpe_model;
  const bpe::Vocab *vb = &vocab;
  return [gold, sources, bm, vb, beam_size](const model::GeneratorModel &g) {
    std::vector<corpus::Tokens> hyps;
    hyps.reserve(sources->size());
    for (const auto &x : *sources) {
      if (x.empty()) {
        hyps.push_back({});
        continue;
      }
      hyps.push_back(bpe::decode(*bm, *vb, g.beam_decode(x, beam_size).ids));
    }
    return metrics::m2_score(hyps, *gold).f_beta;
  };
}

model::GeneratorConfig generator_config_from(const Config &cfg, int vocab_size) {
  model::GeneratorConfig out;
  Config sub;
  for (const auto &[k, v] : cfg.entries()) {
    if (k.rfind("gen.", 0) == 0) sub.set(k.substr(4), v);
  }
  sub.set("vocab_size", std::to_string(vocab_size));
  out = model::GeneratorConfig::from_kv(sub);
  out.validate();
  return out;
}

model::DiscriminatorConfig discriminator_config_from(const Config &cfg, int vocab_size) {
  Config sub;
  for (const auto &[k, v] : cfg.entries()) {
    if (k.rfind("disc.", 0) == 0) sub.set(k.substr(5), v);
  }
  sub.set("vocab_size", std::to_string(vocab_size));
  auto out = model::DiscriminatorConfig::from_kv(sub);
  out.validate();
  return out;
}

void cmd_synth_clean(const Config &cfg) {
  const std::string dir = resolve_run_dir(cfg);
  DirLock lock(dir);
  const size_t n = static_cast<size_t>(cfg.get_int("synth.n", 500));
  const uint64_t seed = static_cast<uint64_t>(cfg.get_int("seed", 13));
  const auto sentences = corpus::synthesize_clean(n, Rng(seed).substream("corpus").root_seed());
  std::ostringstream ss;
  for (const auto &s : sentences) ss << join(s) << "\n";
  write_file(dir + "/clean.txt", ss.str());
  echo_config(cfg, dir, "synth-clean");
  std::cout << "wrote " << n << " sentences to " << dir << "/clean.txt\n";
}

void cmd_corrupt(const Config &cfg) {
  const std::string dir = resolve_run_dir(cfg);
  DirLock lock(dir);
  const std::string clean_path = cfg.get_string("paths.clean", dir + "/clean.txt");
  require_input_files({{"paths.clean", clean_path}});

  const uint64_t seed = static_cast<uint64_t>(cfg.get_int("seed", 13));
  const auto rules = cfg.has("paths.rules") ? corpus::load_rules(cfg.get_string("paths.rules"))
                                            : corpus::default_rules();

  const int min_len = static_cast<int>(cfg.get_int("corpus.min_len", 1));
  const int max_len = static_cast<int>(cfg.get_int("corpus.max_len", 64));
  const auto fractions = cfg.has("corpus.split") ? cfg.get_doubles("corpus.split")
                                                 : std::vector<double>{0.8, 0.1, 0.1};
  if (fractions.size() != 3) throw ValidationError("corpus.split needs three fractions");

  corpus::Corpus all;
  const auto clean = read_token_lines(clean_path);
  const uint64_t corrupt_seed = Rng(seed).substream("corpus").root_seed();
  for (size_t i = 0; i < clean.size(); ++i) {
    if (clean[i].empty()) continue;
    all.push_back(corpus::corrupt(clean[i], "s" + std::to_string(i), rules, corrupt_seed));
  }
  all = corpus::filter_by_length(all, min_len, max_len);

  auto [train, dev, test] = corpus::split_corpus(all, fractions[0], fractions[1], fractions[2],
                                                 Rng(seed).substream("split").root_seed());
  corpus::write_parallel(train, dir + "/train.src", dir + "/train.tgt");
  corpus::write_parallel(dev, dir + "/dev.src", dir + "/dev.tgt");
  corpus::write_parallel(test, dir + "/test.src", dir + "/test.tgt");
  corpus::write_m2_file(dir + "/dev.m2", gold_from_pairs(dev));
  corpus::write_m2_file(dir + "/test.m2", gold_from_pairs(test));
  echo_config(cfg, dir, "corrupt");
  std::cout << "corrupted " << all.size() << " pairs: train " << train.size() << ", dev "
            << dev.size() << ", test " << test.size() << "\n";
}

void cmd_learn_bpe(const Config &cfg) {
  const std::string dir = resolve_run_dir(cfg);
  DirLock lock(dir);
  const auto train = load_split(cfg, dir, "train");
  // Shared vocabulary: learn on the concatenation of both sides.
  std::vector<corpus::Tokens> both;
  for (const auto &p : train) {
    both.push_back(p.source);
    both.push_back(p.target);
  }
  const auto counts = bpe::count_words(both);
  const int merges = static_cast<int>(cfg.get_int("bpe.num_merges", 2000));
  const int cap = static_cast<int>(cfg.get_int("bpe.vocab_cap", 4000));
  const auto model = bpe::learn_bpe(counts, merges);
  const auto vocab = bpe::build_vocab(model, counts, cap);
  bpe::save_model(model, dir + "/bpe.model");
  bpe::save_vocab(vocab, dir + "/bpe.vocab");
  echo_config(cfg, dir, "learn-bpe");
  std::cout << "learned " << model.merges.size() << " merges, vocab " << vocab.size() << "\n";
}

void cmd_pretrain_generator(const Config &cfg) {
  const std::string dir = resolve_run_dir(cfg);
  DirLock lock(dir);
  const BpeFiles bpe_files = load_bpe(cfg, dir);
  const auto train_pairs = encode_pairs(bpe_files.model, bpe_files.vocab, load_split(cfg, dir, "train"));
  const auto dev_pairs = encode_pairs(bpe_files.model, bpe_files.vocab, load_split(cfg, dir, "dev"));

  const uint64_t seed = static_cast<uint64_t>(cfg.get_int("seed", 13));
  model::GeneratorModel g(generator_config_from(cfg, bpe_files.vocab.size()), seed);
  std::ofstream log(dir + "/pretrain_gen.log");
  const auto result = train::pretrain_generator(g, train_pairs, dev_pairs,
                                                gen_pretrain_options(cfg, seed), &log);
  g.save(dir + "/generator.ckpt");
  echo_config(cfg, dir, "pretrain-generator");
  std::cout << "pretrained generator: dev loss " << result.best_dev_loss << " after "
            << result.steps << " steps (" << result.stop_reason << ")\n";
}

void cmd_make_negatives(const Config &cfg) {
  const std::string dir = resolve_run_dir(cfg);
  DirLock lock(dir);
  const BpeFiles bpe_files = load_bpe(cfg, dir);
  const auto train = load_split(cfg, dir, "train");
  const std::string ckpt = cfg.get_string("paths.gen_ckpt", dir + "/generator.ckpt");
  require_input_files({{"paths.gen_ckpt", ckpt}});
  auto g = model::GeneratorModel::load_new(ckpt);

  const int beam = static_cast<int>(cfg.get_int("train.beam", 4));
  size_t limit = static_cast<size_t>(cfg.get_int("negatives.max", 0));
  if (limit == 0 || limit > train.size()) limit = train.size();

  std::vector<bpe::Ids> sources;
  for (size_t i = 0; i < limit; ++i) {
    sources.push_back(bpe::encode(bpe_files.model, bpe_files.vocab, train[i].source));
  }
  const auto negatives = train::make_negatives(g, sources, beam);

  std::ostringstream ids_out, text_out;
  for (const auto &ids : negatives) {
    for (size_t k = 0; k < ids.size(); ++k) ids_out << (k ? " " : "") << ids[k];
    ids_out << "\n";
    text_out << join(bpe::decode(bpe_files.model, bpe_files.vocab, ids)) << "\n";
  }
  write_file(dir + "/negatives.ids", ids_out.str());
  write_file(dir + "/negatives.txt", text_out.str());
  echo_config(cfg, dir, "make-negatives");
  std::cout << "decoded " << negatives.size() << " negative samples (beam " << beam << ")\n";
}

void cmd_pretrain_discriminator(const Config &cfg) {
  const std::string dir = resolve_run_dir(cfg);
  DirLock lock(dir);
  const BpeFiles bpe_files = load_bpe(cfg, dir);
  const auto train_pairs = encode_pairs(bpe_files.model, bpe_files.vocab, load_split(cfg, dir, "train"));
  const std::string neg_path = cfg.get_string("paths.negatives", dir + "/negatives.ids");
  require_input_files({{"paths.negatives", neg_path}});
  const auto negatives_ids = read_id_lines(neg_path);

  std::vector<model::LabeledPair> positives, negatives;
  build_labeled(train_pairs, negatives_ids, &positives, &negatives);

  const uint64_t seed = static_cast<uint64_t>(cfg.get_int("seed", 13));
  const double epsilon = cfg.get_double("train.epsilon", 0.7);
  model::DiscriminatorModel d(discriminator_config_from(cfg, bpe_files.vocab.size()), seed);
  const auto result = train::pretrain_discriminator(d, positives, negatives, epsilon,
                                                    disc_pretrain_options(cfg, seed));
  d.save(dir + "/discriminator.ckpt");
  write_file(dir + "/disc_pretrain.txt",
             "accuracy = " + std::to_string(result.accuracy) +
                 "\nsteps = " + std::to_string(result.steps) + "\n");
  echo_config(cfg, dir, "pretrain-discriminator");
  std::cout << "pretrained discriminator to held-out accuracy " << result.accuracy << " in "
            << result.steps << " steps\n";
}

void cmd_adversarial_train(const Config &cfg) {
  const std::string dir = resolve_run_dir(cfg);
  DirLock lock(dir);
  const std::string gen_ckpt = cfg.get_string("paths.gen_ckpt", dir + "/generator.ckpt");
  const std::string disc_ckpt = cfg.get_string("paths.disc_ckpt", dir + "/discriminator.ckpt");
  require_input_files({{"paths.gen_ckpt", gen_ckpt}});

  std::ofstream metrics(dir + "/metrics.jsonl");
  const AdvRun run = run_adversarial(cfg, dir, gen_ckpt, disc_ckpt, -1.0, -1.0, &metrics);
  write_file(dir + "/adv_result.txt",
             "best_dev_f05 = " + std::to_string(run.result.best_dev_f05) +
                 "\nsteps = " + std::to_string(run.result.steps) +
                 "\nstop_reason = " + run.result.stop_reason +
                 "\npg_branches = " + std::to_string(run.result.pg_branches) +
                 "\nmle_branches = " + std::to_string(run.result.mle_branches) + "\n");
  echo_config(cfg, dir, "adversarial-train");
  std::cout << "adversarial training: best dev F0.5 " << run.result.best_dev_f05 << " after "
            << run.result.steps << " steps (" << run.result.stop_reason << ")\n";
}

void cmd_decode(const Config &cfg) {
  const std::string dir = resolve_run_dir(cfg);
  DirLock lock(dir);
  const BpeFiles bpe_files = load_bpe(cfg, dir);
  std::string model_path = cfg.get_string("decode.model", "");
  if (model_path.empty()) {
    model_path = fs::exists(dir + "/generator_adv.ckpt") ? dir + "/generator_adv.ckpt"
                                                         : dir + "/generator.ckpt";
  }
  const std::string input = cfg.get_string("decode.input", dir + "/test.src");
  require_input_files({{"decode.model", model_path}, {"decode.input", input}});
  auto g = model::GeneratorModel::load_new(model_path);

  const int beam = static_cast<int>(cfg.get_int("train.beam", 4));
  std::ostringstream out;
  for (const auto &line : read_lines(input)) {
    const auto tokens = split_ws(line);
    if (tokens.empty()) {
      out << "\n";
      continue;
    }
    const auto ids = bpe::encode(bpe_files.model, bpe_files.vocab, tokens);
    const auto res = g.beam_decode(ids, beam);
    out << join(bpe::decode(bpe_files.model, bpe_files.vocab, res.ids)) << "\n";
  }
  const std::string out_path = cfg.get_string("decode.output", dir + "/hyp.txt");
  write_file(out_path, out.str());
  echo_config(cfg, dir, "decode");
  std::cout << "decoded " << input << " -> " << out_path << "\n";
}

void cmd_evaluate(const Config &cfg) {
  const std::string dir = resolve_run_dir(cfg);
  DirLock lock(dir);
  const std::string hyp_path = cfg.get_string("evaluate.hyp", dir + "/hyp.txt");
  const std::string gold_path = cfg.get_string("evaluate.m2", dir + "/test.m2");
  require_input_files({{"evaluate.hyp", hyp_path}, {"evaluate.m2", gold_path}});

  const auto gold = corpus::read_m2_file(gold_path);
  const auto hyps = read_token_lines(hyp_path);
  auto report = metrics::m2_score(hyps, gold);
  report.dataset_id = gold_path;
  report.system_id = hyp_path;

  // GLEU against every annotator's applied correction as a reference.
  std::vector<corpus::Tokens> sources;
  std::vector<std::vector<corpus::Tokens>> references;
  for (const auto &s : gold) {
    sources.push_back(s.source);
    std::vector<corpus::Tokens> refs;
    for (const auto &[ann, edits] : s.annotations) {
      (void)ann;
      refs.push_back(corpus::apply_edits(s.source, edits));
    }
    references.push_back(std::move(refs));
  }
  const double gleu = metrics::gleu_corpus(sources, hyps, references);

  nlohmann::json j = nlohmann::json::parse(metrics::report_to_json(report));
  j["gleu"] = gleu;
  j["config"] = cfg.echo();

  if (cfg.has("evaluate.hyp_b")) {
    const std::string hyp_b_path = cfg.get_string("evaluate.hyp_b");
    require_input_files({{"evaluate.hyp_b", hyp_b_path}});
    const auto report_b = metrics::m2_score(read_token_lines(hyp_b_path), gold);
    const int resamples = static_cast<int>(cfg.get_int("evaluate.resamples", 10000));
    const uint64_t seed = static_cast<uint64_t>(cfg.get_int("seed", 13));
    const double p = metrics::bootstrap_compare(
        report.per_sentence, report_b.per_sentence, resamples,
        Rng(seed).substream("bootstrap").root_seed());
    j["bootstrap"] = {{"hyp_b", hyp_b_path},
                      {"f0.5_b", report_b.f_beta},
                      {"p_value_a_beats_b", p},
                      {"resamples", resamples}};
  }
  write_file(dir + "/report.json", j.dump(2) + "\n");
  echo_config(cfg, dir, "evaluate");
  std::cout << "P " << report.precision << "  R " << report.recall << "  F0.5 " << report.f_beta
            << "  GLEU " << gleu << "\n";
}

void cmd_sweep(const Config &cfg) {
  const std::string dir = resolve_run_dir(cfg);
  DirLock lock(dir);
  const std::string parameter = cfg.get_string("sweep.parameter");
  if (parameter != "lambda" && parameter != "epsilon") {
    throw ValidationError("sweep.parameter must be lambda or epsilon");
  }
  const auto values = cfg.get_doubles("sweep.values");
  if (values.empty()) throw ValidationError("sweep.values is empty");
  std::vector<int64_t> seeds = cfg.has("sweep.seeds") ? cfg.get_ints("sweep.seeds")
                                                      : std::vector<int64_t>{cfg.get_int("seed", 13)};

  const std::string gen_ckpt = cfg.get_string("paths.gen_ckpt", dir + "/generator.ckpt");
  const std::string neg_path = cfg.get_string("paths.negatives", dir + "/negatives.ids");
  require_input_files({{"paths.gen_ckpt", gen_ckpt}, {"paths.negatives", neg_path}});

  const BpeFiles bpe_files = load_bpe(cfg, dir);
  const auto train_pairs = encode_pairs(bpe_files.model, bpe_files.vocab, load_split(cfg, dir, "train"));
  const auto negatives_ids = read_id_lines(neg_path);

  std::ostringstream csv;
  csv << "parameter,value,seed,dev_f05\n";
  for (const double value : values) {
    for (const int64_t seed : seeds) {
      Config run_cfg = cfg;
      if (parameter == "epsilon") run_cfg.set("train.epsilon", std::to_string(value));

      // A fresh discriminator per point, pre-trained to the target band.
      std::vector<model::LabeledPair> positives, negatives;
      build_labeled(train_pairs, negatives_ids, &positives, &negatives);
      model::DiscriminatorModel d(discriminator_config_from(cfg, bpe_files.vocab.size()),
                                  static_cast<uint64_t>(seed));
      const double epsilon = run_cfg.get_double("train.epsilon", 0.7);
      train::pretrain_discriminator(d, positives, negatives, epsilon,
                                    disc_pretrain_options(run_cfg, static_cast<uint64_t>(seed)));
      const std::string disc_path = dir + "/sweep_disc.ckpt";
      d.save(disc_path);

      const double lambda_override = parameter == "lambda" ? value : -1.0;
      const AdvRun run = run_adversarial(run_cfg, dir, gen_ckpt, disc_path, lambda_override,
                                         static_cast<double>(seed), nullptr);
      csv << parameter << "," << value << "," << seed << "," << run.result.best_dev_f05 << "\n";
      std::cout << parameter << "=" << value << " seed=" << seed << " dev_f05="
                << run.result.best_dev_f05 << "\n";
    }
  }
  write_file(dir + "/sweep.csv", csv.str());
  echo_config(cfg, dir, "sweep");
}

void run_command(const std::string &name, const Config &cfg) {
  if (name == "synth-clean") return cmd_synth_clean(cfg);
  if (name == "corrupt") return cmd_corrupt(cfg);
  if (name == "learn-bpe") return cmd_learn_bpe(cfg);
  if (name == "pretrain-generator") return cmd_pretrain_generator(cfg);
  if (name == "make-negatives") return cmd_make_negatives(cfg);
  if (name == "pretrain-discriminator") return cmd_pretrain_discriminator(cfg);
  if (name == "adversarial-train") return cmd_adversarial_train(cfg);
  if (name == "decode") return cmd_decode(cfg);
  if (name == "evaluate") return cmd_evaluate(cfg);
  if (name == "sweep") return cmd_sweep(cfg);
  throw ValidationError("unknown command: " + name);
}

}  // namespace cli
}  // namespace gecgan
