// train/adversarial.cpp
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

#include "gecgan/train/adversarial.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

#include "gecgan/util/error.hpp"

namespace gecgan {
namespace train {

void TrainState::validate() const {
  std::vector<std::string> bad;
  if (lambda < 0.0 || lambda > 1.0) bad.push_back("lambda must be in [0,1]");
  if (epsilon <= 0.5 || epsilon >= 1.0) bad.push_back("epsilon must be in (0.5,1)");
  if (baseline_decay < 0.0 || baseline_decay >= 1.0) bad.push_back("baseline_decay must be in [0,1)");
  if (d_updates_per_g_update < 1) bad.push_back("d_updates_per_g_update must be >= 1");
  if (!std::isfinite(baseline)) bad.push_back("baseline must be finite");
  if (!bad.empty()) {
    std::string msg = "train state:";
    for (const auto &b : bad) msg += " " + b + ";";
    throw ValidationError(msg);
  }
}

double reward_from_score(double d_score, double delta) {
  const double clamped = std::min(std::max(d_score, delta), 1.0 - delta);
  return -std::log1p(-clamped);
}

double reward(const model::DiscriminatorModel &d, const Ids &x, const Ids &y_prime) {
  if (y_prime.empty()) throw ValidationError("reward: empty correction");
  return reward_from_score(d.score(x, y_prime), d.config().prob_clamp);
}

RewardFn discriminator_reward(const model::DiscriminatorModel &d) {
  return [&d](const Ids &x, const Ids & /*y_ref*/, const Ids &y_prime) {
    return reward(d, x, y_prime);
  };
}

void update_baseline(TrainState &state, double r) {
  if (!std::isfinite(r)) throw ValidationError("update_baseline: non-finite reward");
  if (!state.baseline_initialized) {
    state.baseline = r;
    state.baseline_initialized = true;
    return;
  }
  state.baseline = state.baseline_decay * state.baseline + (1.0 - state.baseline_decay) * r;
}

PgStats pg_step(model::GeneratorModel &g, const RewardFn &reward_fn, TrainState &state,
                std::span<const TrainPair> batch, Rng &sample_rng) {
  if (batch.empty()) throw ValidationError("pg_step: empty batch");
  const double b = state.baseline;  // fixed for the whole batch
  const double inv_n = 1.0 / static_cast<double>(batch.size());

  g.zero_grads();
  PgStats stats;
  std::vector<double> rewards;
  rewards.reserve(batch.size());
  for (const auto &pair : batch) {
    const auto sampled = g.sample(pair.x, sample_rng.next_u64());
    const double r = reward_fn(pair.x, pair.y, sampled.ids);
    const double advantage = r - b;
    // Descent direction -A * grad log G, averaged over the batch.
    g.log_prob_backward(pair.x, sampled.ids, -advantage * inv_n);
    rewards.push_back(r);
    stats.mean_reward += r * inv_n;
    stats.mean_advantage += advantage * inv_n;
    ++stats.samples;
  }
  g.apply_update();
  for (double r : rewards) update_baseline(state, r);
  return stats;
}

PgStats pg_step(model::GeneratorModel &g, const model::DiscriminatorModel &d, TrainState &state,
                std::span<const TrainPair> batch, Rng &sample_rng) {
  return pg_step(g, discriminator_reward(d), state, batch, sample_rng);
}

ReinforceSample reinforce_gradient(model::GeneratorModel &g, const RewardFn &reward_fn,
                                   const Ids &x, double baseline, uint64_t sample_seed) {
  ReinforceSample out;
  const auto sampled = g.sample(x, sample_seed);
  out.y_prime = sampled.ids;
  out.reward = reward_fn(x, {}, sampled.ids);
  out.advantage = out.reward - baseline;
  g.zero_grads();
  g.log_prob_backward(x, sampled.ids, -out.advantage);
  out.grad = g.params().flatten_grads();
  g.zero_grads();
  return out;
}

namespace {

std::vector<size_t> shuffled_indices(size_t n, Rng &rng) {
  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (size_t i = n - 1; i > 0; --i) {
    const size_t j = rng.uniform_int(i + 1);
    std::swap(order[i], order[j]);
  }
  return order;
}

}  // namespace

AdvResult adversarial_train(model::GeneratorModel &g, model::DiscriminatorModel *d,
                            const RewardFn &reward_fn, TrainState &state,
                            const std::vector<TrainPair> &train, const DevEvaluator &dev_eval,
                            const AdvOptions &opts, std::ostream *metrics_log) {
  if (train.empty()) throw ValidationError("adversarial_train: empty training set");
  state.validate();

  Rng root(state.seed);
  Rng order_rng = root.substream("batch-order");
  Rng rho_rng = root.substream("interleave-rho");
  Rng pg_rng = root.substream("pg-sample");
  Rng refresh_rng = root.substream("d-refresh-sample");

  AdvResult result;
  result.best_dev_f05 = dev_eval ? dev_eval(g) : 0.0;
  nn::ParamStore best = g.params();
  int stale = 0;

  // Divergence guard over windowed mean rewards.
  double window_reward_sum = 0.0;
  int window_reward_count = 0;
  int window_batches = 0;
  int low_windows = 0;

  std::vector<size_t> order = shuffled_indices(train.size(), order_rng);
  size_t cursor = 0;
  std::vector<TrainPair> batch;
  const auto t0 = std::chrono::steady_clock::now();

  for (int64_t step = 1; step <= opts.max_steps; ++step) {
    batch.clear();
    for (int i = 0; i < opts.batch_size; ++i) {
      if (cursor >= order.size()) {
        order = shuffled_indices(train.size(), order_rng);
        cursor = 0;
      }
      batch.push_back(train[order[cursor++]]);
    }

    const double rho = rho_rng.uniform_pos();
    const bool take_pg = rho <= state.lambda;
    double g_loss = 0.0;
    double mean_reward = std::numeric_limits<double>::quiet_NaN();
    if (take_pg) {
      const PgStats stats = pg_step(g, reward_fn, state, batch, pg_rng);
      g_loss = -stats.mean_advantage;  // the quantity being descended
      mean_reward = stats.mean_reward;
      ++result.pg_branches;
    } else {
      g_loss = g.mle_step(batch);
      ++result.mle_branches;
    }

    // Discriminator refresh on fresh samples from the updated generator.
    double d_loss = 0.0;
    if (d != nullptr) {
      for (int k = 0; k < state.d_updates_per_g_update; ++k) {
        std::vector<model::LabeledPair> mixed;
        mixed.reserve(2 * batch.size());
        double refresh_reward_sum = 0.0;
        for (const auto &pair : batch) {
          const auto sampled = g.sample(pair.x, refresh_rng.next_u64());
          mixed.push_back({pair.x, pair.y, true});
          mixed.push_back({pair.x, sampled.ids, false});
          refresh_reward_sum += reward(*d, pair.x, sampled.ids);
        }
        d_loss = d->d_step(mixed);
        if (std::isnan(mean_reward)) {
          mean_reward = refresh_reward_sum / static_cast<double>(batch.size());
        }
      }
    }

    if (!std::isnan(mean_reward)) {
      window_reward_sum += mean_reward;
      ++window_reward_count;
    }
    ++window_batches;
    if (window_batches >= opts.floor_window) {
      if (window_reward_count > 0) {
        const double window_mean = window_reward_sum / window_reward_count;
        low_windows = window_mean < opts.reward_floor ? low_windows + 1 : 0;
        if (low_windows >= opts.floor_windows) {
          throw DivergenceError("adversarial_train: mean reward below " +
                                std::to_string(opts.reward_floor) + " for " +
                                std::to_string(low_windows) + " consecutive windows of " +
                                std::to_string(opts.floor_window) + " batches at step " +
                                std::to_string(step));
        }
      }
      window_reward_sum = 0.0;
      window_reward_count = 0;
      window_batches = 0;
    }

    state.step = step;
    result.steps = step;

    bool evaluated = false;
    double dev_f05 = 0.0;
    if (dev_eval && (step % opts.eval_every == 0 || step == opts.max_steps)) {
      dev_f05 = dev_eval(g);
      evaluated = true;
      if (dev_f05 > result.best_dev_f05 + 1e-12) {
        result.best_dev_f05 = dev_f05;
        best.copy_values_from(g.params());
        stale = 0;
      } else {
        ++stale;
      }
    }

    if (metrics_log) {
      nlohmann::json j;
      j["step"] = step;
      j["branch"] = take_pg ? "pg" : "mle";
      if (std::isnan(mean_reward)) {
        j["mean_reward"] = nullptr;
      } else {
        j["mean_reward"] = mean_reward;
      }
      j["baseline"] = state.baseline;
      j["g_loss"] = g_loss;
      j["d_loss"] = d_loss;
      if (evaluated) j["dev_f05"] = dev_f05;
      if (opts.log_timing) {
        j["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - t0)
                           .count();
      }
      (*metrics_log) << j.dump() << "\n";
    }

    if (evaluated && stale >= opts.patience) {
      result.stop_reason = "patience";
      break;
    }
  }
  if (result.stop_reason.empty()) result.stop_reason = "budget";
  if (opts.restore_best && dev_eval) g.params().copy_values_from(best);
  return result;
}

}  // namespace train
}  // namespace gecgan
