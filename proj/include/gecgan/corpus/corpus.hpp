// corpus/corpus.hpp
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

#ifndef GECGAN_CORPUS_CORPUS_HPP_
#define GECGAN_CORPUS_CORPUS_HPP_

#include <cstdint>
#include <string>
#include <tuple>

#include "gecgan/corpus/types.hpp"

namespace gecgan {
namespace corpus {

// Plain parallel format: two aligned files, one space-tokenized
// sentence per line.  Ids are "<prefix>:<line-number>".
Corpus read_parallel(const std::string &src_path, const std::string &tgt_path,
                     const std::string &id_prefix = "pair");
void write_parallel(const Corpus &corpus, const std::string &src_path,
                    const std::string &tgt_path);

// Drops pairs whose source length is outside [min_len, max_len].
Corpus filter_by_length(const Corpus &corpus, int min_len, int max_len);

// Deterministic shuffled split into train/dev/test.  Fractions must be
// positive and sum to 1 (1e-9 slop).  Sizes follow the largest-remainder
// rule: ideal sizes are floored, then leftover items go to the parts
// with the largest fractional remainders (earlier part on ties), so each
// size is within one of fraction*N.
std::tuple<Corpus, Corpus, Corpus> split_corpus(const Corpus &corpus, double train_frac,
                                                double dev_frac, double test_frac, uint64_t seed);

}  // namespace corpus
}  // namespace gecgan

#endif  // GECGAN_CORPUS_CORPUS_HPP_
