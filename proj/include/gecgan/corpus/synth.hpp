// corpus/synth.hpp
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

#ifndef GECGAN_CORPUS_SYNTH_HPP_
#define GECGAN_CORPUS_SYNTH_HPP_

#include <cstdint>
#include <vector>

#include "gecgan/corpus/types.hpp"

namespace gecgan {
namespace corpus {

// Grammatical sentences from a closed template grammar over a small
// lexicon: subject-verb agreement, article selection (a/an/the), noun
// number anchored by determiners, and contexts that disambiguate the
// standard confusion words (their/there, then/than, to/too).  The space
// is combinatorially much larger than any corpus drawn from it, so held
// out splits contain unseen sentences.  Deterministic given the seed;
// sentence i depends only on (seed, i).
std::vector<Tokens> synthesize_clean(size_t n, uint64_t seed);

}  // namespace corpus
}  // namespace gecgan

#endif  // GECGAN_CORPUS_SYNTH_HPP_
