// train/adversarial.hpp
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

#ifndef GECGAN_TRAIN_ADVERSARIAL_HPP_
#define GECGAN_TRAIN_ADVERSARIAL_HPP_

#include <cstdint>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gecgan/model/discriminator.hpp"
#include "gecgan/model/generator.hpp"

namespace gecgan {
namespace train {

using model::Ids;
using model::TrainPair;

// Co-training state.  alpha_g/alpha_d mirror the model learning rates
// for provenance; the models themselves apply them.
struct TrainState {
  double lambda = 0.4;         // probability of a policy-gradient batch
  double epsilon = 0.7;        // discriminator pre-training target
  double baseline = 0.0;       // moving-average reward baseline b
  bool baseline_initialized = false;
  double baseline_decay = 0.9; // beta
  int64_t step = 0;
  uint64_t seed = 0;           // master seed for the loop's substreams
  double alpha_g = 0.0;
  double alpha_d = 0.0;
  int d_updates_per_g_update = 1;

  void validate() const;
};

// Reward provider for a sampled correction.  y_ref is the ground-truth
// target (used by metric-based rewards); discriminator rewards ignore it.
using RewardFn = std::function<double(const Ids &x, const Ids &y_ref, const Ids &y_prime)>;

// -log(1 - clamp(d, delta, 1-delta)): finite, non-negative.
double reward_from_score(double d_score, double delta);

// Reward of a candidate correction under a discriminator.
double reward(const model::DiscriminatorModel &d, const Ids &x, const Ids &y_prime);

// Wraps a discriminator as a RewardFn.
RewardFn discriminator_reward(const model::DiscriminatorModel &d);

// b <- beta*b + (1-beta)*r;  the first call initializes b = r.
void update_baseline(TrainState &state, double r);

struct PgStats {
  double mean_advantage = 0.0;
  double mean_reward = 0.0;
  int samples = 0;
};

// Single-sample REINFORCE step: for every pair sample y' ~ G(.|x), take
// the advantage A = r - b against the batch-start baseline, accumulate
// the descent gradient -A * grad log G(y'|x) (averaged over the batch),
// apply one update, then fold each raw reward into the baseline in
// sampling order.
PgStats pg_step(model::GeneratorModel &g, const RewardFn &reward_fn, TrainState &state,
                std::span<const TrainPair> batch, Rng &sample_rng);

// Convenience overload with the discriminator providing the reward.
PgStats pg_step(model::GeneratorModel &g, const model::DiscriminatorModel &d, TrainState &state,
                std::span<const TrainPair> batch, Rng &sample_rng);

// One single-sample descent-gradient estimate (flattened), for
// estimator diagnostics: grad = -(r - baseline) * grad log G(y'|x).
struct ReinforceSample {
  Ids y_prime;
  double reward = 0.0;
  double advantage = 0.0;
  std::vector<double> grad;
};
ReinforceSample reinforce_gradient(model::GeneratorModel &g, const RewardFn &reward_fn,
                                   const Ids &x, double baseline, uint64_t sample_seed);

// ---------------------------------------------------------------------------
// The co-training loop

struct AdvOptions {
  int batch_size = 32;
  int64_t max_steps = 2000;
  int eval_every = 200;      // dev F0.5 cadence
  int patience = 5;
  double reward_floor = 0.01;
  int floor_window = 100;    // batches per reward window
  int floor_windows = 5;     // consecutive low windows before aborting
  bool restore_best = true;
  bool log_timing = true;    // wall_ms in the metrics log (off for replay tests)
};

using DevEvaluator = std::function<double(const model::GeneratorModel &)>;

struct AdvResult {
  double best_dev_f05 = 0.0;
  int64_t steps = 0;
  std::string stop_reason;  // "patience" or "budget"
  int64_t pg_branches = 0;
  int64_t mle_branches = 0;
};

// Interleaved MLE / policy-gradient co-training.  Per batch: draw rho
// uniform, run pg_step when rho <= lambda else an MLE step; then sample
// fresh corrections from the updated generator and refresh the
// discriminator on true vs sampled pairs (skipped when d is null, as in
// the pure-MLE control or a metric-reward run).  Stops on the dev
// patience rule or the step budget; throws DivergenceError when the
// mean reward stays below the floor for too many consecutive windows.
// One JSON object per step goes to metrics_log.
AdvResult adversarial_train(model::GeneratorModel &g, model::DiscriminatorModel *d,
                            const RewardFn &reward_fn, TrainState &state,
                            const std::vector<TrainPair> &train, const DevEvaluator &dev_eval,
                            const AdvOptions &opts, std::ostream *metrics_log);

}  // namespace train
}  // namespace gecgan

#endif  // GECGAN_TRAIN_ADVERSARIAL_HPP_
