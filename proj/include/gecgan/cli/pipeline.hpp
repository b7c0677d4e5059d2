// cli/pipeline.hpp
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

#ifndef GECGAN_CLI_PIPELINE_HPP_
#define GECGAN_CLI_PIPELINE_HPP_

#include <string>
#include <vector>

#include "gecgan/bpe/bpe.hpp"
#include "gecgan/corpus/corpus.hpp"
#include "gecgan/model/discriminator.hpp"
#include "gecgan/model/generator.hpp"
#include "gecgan/train/adversarial.hpp"
#include "gecgan/util/config.hpp"

namespace gecgan {
namespace cli {

// Pipeline stages behind the command-line subcommands.  Every command
// takes the flat run configuration, owns the run directory for its
// duration (lock file), writes its artifacts there, and echoes the
// exact configuration that produced them.
//
// Artifact names inside the run directory are fixed:
//   clean.txt                      synth-clean
//   {train,dev,test}.{src,tgt}     corrupt
//   {dev,test}.m2                  corrupt (gold from the corruption)
//   bpe.model bpe.vocab            learn-bpe
//   generator.ckpt                 pretrain-generator
//   negatives.ids negatives.txt    make-negatives
//   discriminator.ckpt             pretrain-discriminator
//   generator_adv.ckpt metrics.jsonl   adversarial-train
//   hyp.txt                        decode
//   report.json                    evaluate
//   sweep.csv                      sweep

void cmd_synth_clean(const Config &cfg);
void cmd_corrupt(const Config &cfg);
void cmd_learn_bpe(const Config &cfg);
void cmd_pretrain_generator(const Config &cfg);
void cmd_make_negatives(const Config &cfg);
void cmd_pretrain_discriminator(const Config &cfg);
void cmd_adversarial_train(const Config &cfg);
void cmd_decode(const Config &cfg);
void cmd_evaluate(const Config &cfg);
void cmd_sweep(const Config &cfg);

// Dispatch by subcommand name; throws ValidationError for unknown names.
void run_command(const std::string &name, const Config &cfg);

// ---------------------------------------------------------------------------
// Shared helpers (used by the commands and by the acceptance suite)

// Resolves the run directory: cfg "run_dir", prefixed by $GECGAN_RUN_ROOT
// when set and the path is relative.  Creates it when absent.
std::string resolve_run_dir(const Config &cfg);

// Encodes a corpus into id pairs, target framed with EOS.
std::vector<model::TrainPair> encode_pairs(const bpe::BpeModel &bpe_model,
                                           const bpe::Vocab &vocab, const corpus::Corpus &data);

// Gold annotations derived from parallel data via edit extraction
// (annotator 0).
std::vector<corpus::AnnotatedSentence> gold_from_pairs(const corpus::Corpus &data);

// Dev-set F0.5 evaluator: beam-decodes every dev source and runs the
// max-match scorer against gold extracted from the dev pairs.
train::DevEvaluator make_dev_evaluator(const bpe::BpeModel &bpe_model, const bpe::Vocab &vocab,
                                       const corpus::Corpus &dev, int beam_size);

// Generator/discriminator configs from the "gen." / "disc." key groups.
model::GeneratorConfig generator_config_from(const Config &cfg, int vocab_size);
model::DiscriminatorConfig discriminator_config_from(const Config &cfg, int vocab_size);

}  // namespace cli
}  // namespace gecgan

#endif  // GECGAN_CLI_PIPELINE_HPP_
