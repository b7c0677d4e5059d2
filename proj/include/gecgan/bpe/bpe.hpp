// bpe/bpe.hpp
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

#ifndef GECGAN_BPE_BPE_HPP_
#define GECGAN_BPE_BPE_HPP_

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "gecgan/corpus/types.hpp"

namespace gecgan {
namespace bpe {

using Ids = std::vector<int>;

// Reserved vocabulary slots, fixed ids.
inline constexpr int kPadId = 0;
inline constexpr int kBosId = 1;
inline constexpr int kEosId = 2;
inline constexpr int kUnkId = 3;
inline constexpr const char *kEndOfWord = "</w>";
inline constexpr const char *kUnkSymbol = "<unk>";

// Byte-pair model: an ordered merge list over word symbols.  Words are
// split into single characters with the end-of-word marker appended to
// the final character, then pairs are merged greedily, most frequent
// first, ties broken by lexicographic order of the (left, right) pair.
struct BpeModel {
  std::vector<std::pair<std::string, std::string>> merges;
  std::vector<std::string> alphabet;  // sorted initial symbols
  std::string end_of_word_marker = kEndOfWord;
};

// Shared source/target vocabulary: symbol <-> id bijection with the
// reserved entries at ids 0..3.
struct Vocab {
  std::vector<std::string> symbols;
  std::unordered_map<std::string, int> id_of;

  int size() const { return static_cast<int>(symbols.size()); }
  int lookup(const std::string &s) const {
    auto it = id_of.find(s);
    return it == id_of.end() ? kUnkId : it->second;
  }
};

// Word frequencies; the learn/vocab corpus representation.
using WordCounts = std::map<std::string, long>;

WordCounts count_words(const std::vector<corpus::Tokens> &sentences);

// Greedy pair-merge learning; exactly min(num_merges, available) merges.
// Throws ValidationError on an empty corpus.
BpeModel learn_bpe(const WordCounts &corpus, int num_merges);

// Splits a word and applies the learned merges in order.
std::vector<std::string> segment_word(const BpeModel &model, const std::string &word);

// Builds the shared vocabulary from the symbols the model produces on
// the corpus, most frequent first (ties lexicographic), capped at
// max_size including the 4 reserved entries.
Vocab build_vocab(const BpeModel &model, const WordCounts &corpus, int max_size);

// Sentence -> subword ids.  No BOS/EOS framing; unknown symbols -> UNK.
Ids encode(const BpeModel &model, const Vocab &vocab, const corpus::Tokens &sentence);

// Ids -> tokens.  Reserved PAD/BOS/EOS ids are skipped; UNK decodes as
// a standalone "<unk>" token (a documented lossy case).  Throws on ids
// outside the vocabulary.
corpus::Tokens decode(const BpeModel &model, const Vocab &vocab, const Ids &ids);

// Model file: first line the marker, then one merge "left right" per
// line, order significant.  Vocab file: "symbol<TAB>id" lines.
void save_model(const BpeModel &model, const std::string &path);
BpeModel load_model(const std::string &path);
void save_vocab(const Vocab &vocab, const std::string &path);
Vocab load_vocab(const std::string &path);

}  // namespace bpe
}  // namespace gecgan

#endif  // GECGAN_BPE_BPE_HPP_
