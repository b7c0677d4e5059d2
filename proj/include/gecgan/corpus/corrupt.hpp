// corpus/corrupt.hpp
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

#ifndef GECGAN_CORPUS_CORRUPT_HPP_
#define GECGAN_CORPUS_CORRUPT_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gecgan/corpus/types.hpp"

namespace gecgan {
namespace corpus {

// Rule-based sentence corruption: the clean sentence becomes the target
// and the corrupted result the source.  Rules are simple, lexicon
// driven, and deterministic given (seed, sentence id); no taggers.
//
// Kinds and their per-position eligibility:
//   delete-token                  any token, while > 1 token remains
//   substitute-from-confusion-set token present in the confusion map
//   inflect-verb-suffix           alphabetic token of length >= 3 that does
//                                 not follow an article/quantifier: trailing
//                                 "s" is dropped, otherwise appended
//   toggle-noun-number            alphabetic token of length >= 3 right
//                                 after an article/quantifier: same toggle
//   drop-article                  token in {a, an, the}
//   swap-adjacent                 positions i < len-1; a swap skips the
//                                 next position so runs cannot cascade
struct CorruptionRule {
  std::string name;
  enum class Kind {
    kDeleteToken,
    kSubstituteFromConfusionSet,
    kInflectVerbSuffix,
    kToggleNounNumber,
    kDropArticle,
    kSwapAdjacent,
  };
  Kind kind = Kind::kDeleteToken;
  double probability = 0.0;
  std::map<std::string, Tokens> confusion_sets;  // substitute kind only
};

CorruptionRule::Kind rule_kind_from_string(const std::string &s);
std::string rule_kind_to_string(CorruptionRule::Kind k);

// Throws ValidationError on out-of-range probability or a substitute
// rule without confusion entries.
void validate_rule(const CorruptionRule &rule);

// Applies every rule in order, each independently per eligible position
// with its probability.  Returns {source = corrupted, target = sentence}.
SentencePair corrupt(const Tokens &sentence, const std::string &id,
                     const std::vector<CorruptionRule> &rules, uint64_t seed);

// Rule file: one rule per line of `key=value` fields,
//   name=<str> kind=<kind> p=<prob> [confusions=<path>]
// '#' starts a comment.  Confusion files hold `token alt1 alt2 ...` lines.
std::vector<CorruptionRule> load_rules(const std::string &path);
std::map<std::string, Tokens> load_confusions(const std::string &path);

// The rule set used for the bundled synthetic corpus.
std::vector<CorruptionRule> default_rules();

}  // namespace corpus
}  // namespace gecgan

#endif  // GECGAN_CORPUS_CORRUPT_HPP_
