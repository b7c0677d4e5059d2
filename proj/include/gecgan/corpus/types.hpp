// corpus/types.hpp
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

#ifndef GECGAN_CORPUS_TYPES_HPP_
#define GECGAN_CORPUS_TYPES_HPP_

#include <map>
#include <string>
#include <vector>

namespace gecgan {
namespace corpus {

using Tokens = std::vector<std::string>;

// A source/target sentence pair: source is the (possibly ungrammatical)
// input, target its corrected form.  Tokens are whitespace-free.
struct SentencePair {
  Tokens source;
  Tokens target;
  std::string id;
};

using Corpus = std::vector<SentencePair>;

// One contiguous correction of source tokens [start, end) into
// `replacement` (empty replacement = deletion; start == end = insertion).
struct Edit {
  int start = 0;
  int end = 0;
  Tokens replacement;
  std::string type_label = "UNK";
  int annotator = 0;

  bool same_span_and_text(const Edit &o) const {
    return start == o.start && end == o.end && replacement == o.replacement;
  }
};

// A source sentence with per-annotator gold edit sets.  Annotator 0 is
// always present, possibly with an empty list (a "noop" annotation).
struct AnnotatedSentence {
  Tokens source;
  std::map<int, std::vector<Edit>> annotations;
};

// Validates ordering/range invariants for one annotator's edit list.
// Throws ValidationError.
void validate_edits(const Tokens &source, const std::vector<Edit> &edits);

// Right-to-left span replacement; edits must be sorted by start and
// non-overlapping (validated).
Tokens apply_edits(const Tokens &source, const std::vector<Edit> &edits);

}  // namespace corpus
}  // namespace gecgan

#endif  // GECGAN_CORPUS_TYPES_HPP_
