// model/checkpoint.hpp
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

#ifndef GECGAN_MODEL_CHECKPOINT_HPP_
#define GECGAN_MODEL_CHECKPOINT_HPP_

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gecgan/nn/params.hpp"
#include "gecgan/util/config.hpp"
#include "gecgan/util/rng.hpp"

namespace gecgan {
namespace model {

// Versioned binary container shared by generator and discriminator
// checkpoints: a magic string, the model kind, the config manifest, the
// rng state and step counter, and the named parameter arrays as raw
// doubles.  Round trips are bit exact on one machine.

struct CheckpointData {
  std::string kind;
  Config config;
  uint64_t rng_seed = 0;
  std::array<uint64_t, 4> rng_state{};
  int64_t step_count = 0;
  std::vector<std::pair<std::string, nn::Tensor>> params;
};

void write_checkpoint(const std::string &path, const std::string &kind, const Config &config,
                      const nn::ParamStore &params, const Rng &rng, int64_t step_count);

// Throws CheckpointError on bad magic, truncation, or version mismatch.
CheckpointData read_checkpoint(const std::string &path);

// Copies loaded arrays into the store; names and shapes must match.
void restore_params(nn::ParamStore &params, const CheckpointData &data);

}  // namespace model
}  // namespace gecgan

#endif  // GECGAN_MODEL_CHECKPOINT_HPP_
