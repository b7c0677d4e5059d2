// train/pretrain.hpp
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

#ifndef GECGAN_TRAIN_PRETRAIN_HPP_
#define GECGAN_TRAIN_PRETRAIN_HPP_

#include <cstdint>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "gecgan/model/discriminator.hpp"
#include "gecgan/model/generator.hpp"

namespace gecgan {
namespace train {

using model::Ids;
using model::LabeledPair;
using model::TrainPair;

// ---------------------------------------------------------------------------
// Generator MLE pre-training

struct GenPretrainOptions {
  int batch_size = 32;
  int64_t max_steps = 10000;
  int eval_every = 200;  // dev-loss cadence
  int patience = 5;      // evaluations without improvement
  uint64_t seed = 0;     // batch shuffling
  bool restore_best = true;
};

struct GenPretrainResult {
  double best_dev_loss = 0.0;
  int64_t steps = 0;
  std::string stop_reason;  // "patience" or "budget"
};

// Minimizes mean-token cross entropy until the dev loss stops improving
// for `patience` evaluations or the step budget runs out.  With
// restore_best the parameters revert to the best dev snapshot.
GenPretrainResult pretrain_generator(model::GeneratorModel &g, const std::vector<TrainPair> &train,
                                     const std::vector<TrainPair> &dev,
                                     const GenPretrainOptions &opts, std::ostream *log = nullptr);

// Beam-decodes every source into a negative sample for the
// discriminator.  Outputs keep their EOS framing (matching the framed
// positives), so a degenerate empty correction still has one token.
std::vector<Ids> make_negatives(const model::GeneratorModel &g, std::span<const Ids> sources,
                                int beam_size);

// ---------------------------------------------------------------------------
// Discriminator pre-training to a target accuracy band

struct DiscPretrainOptions {
  double tolerance = 0.05;      // stop band is [epsilon, epsilon + tolerance]
  int batch_size = 16;
  int eval_every = 1;           // held-out accuracy cadence, in batches
  int max_overshoot_evals = 20; // consecutive evaluations above the band
  int64_t max_steps = 5000;
  double holdout_fraction = 0.1;
  uint64_t seed = 0;
};

struct DiscPretrainResult {
  double accuracy = 0.0;  // held-out accuracy at the stop
  int64_t steps = 0;
};

// Trains with d_step until the held-out accuracy first lands in
// [epsilon, epsilon + tolerance].  Throws ValidationError for epsilon
// outside (0.5, 1) and BudgetError (carrying the best accuracy seen)
// when the band is overshot for too many consecutive evaluations or the
// budget ends first.
DiscPretrainResult pretrain_discriminator(model::DiscriminatorModel &d,
                                          std::span<const LabeledPair> positives,
                                          std::span<const LabeledPair> negatives, double epsilon,
                                          const DiscPretrainOptions &opts);

}  // namespace train
}  // namespace gecgan

#endif  // GECGAN_TRAIN_PRETRAIN_HPP_
