// bpe/bpe.cpp
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

#include "gecgan/bpe/bpe.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "gecgan/util/error.hpp"
#include "gecgan/util/text.hpp"

namespace gecgan {
namespace bpe {

namespace {

using Sym = std::string;
using SymPair = std::pair<Sym, Sym>;

// Character split with the marker attached to the final character.
std::vector<Sym> split_word(const std::string &word) {
  std::vector<Sym> out;
  // Multi-byte UTF-8 sequences stay one symbol.
  size_t i = 0;
  while (i < word.size()) {
    size_t len = 1;
    const unsigned char c = static_cast<unsigned char>(word[i]);
    if ((c & 0xE0) == 0xC0) len = 2;
    else if ((c & 0xF0) == 0xE0) len = 3;
    else if ((c & 0xF8) == 0xF0) len = 4;
    len = std::min(len, word.size() - i);
    out.push_back(word.substr(i, len));
    i += len;
  }
  if (!out.empty()) out.back() += kEndOfWord;
  return out;
}

void merge_in_place(std::vector<Sym> &syms, const SymPair &pair) {
  size_t w = 0;
  for (size_t r = 0; r < syms.size();) {
    if (r + 1 < syms.size() && syms[r] == pair.first && syms[r + 1] == pair.second) {
      syms[w] = pair.first + pair.second;
      ++w;
      r += 2;
    } else {
      if (w != r) syms[w] = std::move(syms[r]);
      ++w;
      r += 1;
    }
  }
  syms.resize(w);
}

}  // namespace

WordCounts count_words(const std::vector<corpus::Tokens> &sentences) {
  WordCounts counts;
  for (const auto &s : sentences) {
    for (const auto &w : s) ++counts[w];
  }
  return counts;
}

BpeModel learn_bpe(const WordCounts &corpus, int num_merges) {
  if (corpus.empty()) throw ValidationError("learn_bpe: empty corpus");
  if (num_merges < 0) throw ValidationError("learn_bpe: negative merge count");

  std::vector<std::pair<std::vector<Sym>, long>> words;
  words.reserve(corpus.size());
  std::set<Sym> alphabet;
  for (const auto &[word, count] : corpus) {
    auto syms = split_word(word);
    if (syms.empty()) continue;
    for (const auto &s : syms) alphabet.insert(s);
    words.emplace_back(std::move(syms), count);
  }

  BpeModel model;
  model.alphabet.assign(alphabet.begin(), alphabet.end());

  for (int m = 0; m < num_merges; ++m) {
    // Recount pairs from scratch each round; corpora here are small
    // vocabularies, not running text.
    std::map<SymPair, long> pair_counts;
    for (const auto &[syms, count] : words) {
      for (size_t i = 0; i + 1 < syms.size(); ++i) {
        pair_counts[{syms[i], syms[i + 1]}] += count;
      }
    }
    if (pair_counts.empty()) break;
    // Highest count wins; the map order gives lexicographically smallest
    // pair on ties.
    SymPair best;
    long best_count = -1;
    for (const auto &[pair, count] : pair_counts) {
      if (count > best_count) {
        best = pair;
        best_count = count;
      }
    }
    model.merges.push_back(best);
    for (auto &[syms, count] : words) {
      (void)count;
      merge_in_place(syms, best);
    }
  }
  return model;
}

std::vector<std::string> segment_word(const BpeModel &model, const std::string &word) {
  std::vector<Sym> syms = split_word(word);
  if (syms.size() <= 1) return syms;
  // Merge ranks; learned order is the priority order.
  for (const auto &pair : model.merges) {
    if (syms.size() <= 1) break;
    merge_in_place(syms, pair);
  }
  return syms;
}

Vocab build_vocab(const BpeModel &model, const WordCounts &corpus, int max_size) {
  if (max_size < 5) throw ValidationError("build_vocab: max_size must allow reserved ids plus one symbol");
  std::map<Sym, long> sym_counts;
  for (const auto &[word, count] : corpus) {
    for (const auto &sym : segment_word(model, word)) sym_counts[sym] += count;
  }
  std::vector<std::pair<Sym, long>> ranked(sym_counts.begin(), sym_counts.end());
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto &a, const auto &b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });

  Vocab vocab;
  vocab.symbols = {"<pad>", "<bos>", "<eos>", kUnkSymbol};
  for (const auto &[sym, count] : ranked) {
    (void)count;
    if (static_cast<int>(vocab.symbols.size()) >= max_size) break;
    vocab.symbols.push_back(sym);
  }
  for (size_t i = 0; i < vocab.symbols.size(); ++i) {
    vocab.id_of[vocab.symbols[i]] = static_cast<int>(i);
  }
  return vocab;
}

Ids encode(const BpeModel &model, const Vocab &vocab, const corpus::Tokens &sentence) {
  Ids ids;
  for (const auto &word : sentence) {
    for (const auto &sym : segment_word(model, word)) ids.push_back(vocab.lookup(sym));
  }
  return ids;
}

corpus::Tokens decode(const BpeModel &model, const Vocab &vocab, const Ids &ids) {
  corpus::Tokens out;
  std::string word;
  const std::string &marker = model.end_of_word_marker;
  for (int id : ids) {
    if (id < 0 || id >= vocab.size()) throw ValidationError("decode: id out of range: " + std::to_string(id));
    if (id == kPadId || id == kBosId || id == kEosId) continue;
    if (id == kUnkId) {
      // The marker was lost with the original symbol; close any open
      // word and emit a standalone placeholder.
      if (!word.empty()) {
        out.push_back(word);
        word.clear();
      }
      out.push_back(kUnkSymbol);
      continue;
    }
    const std::string &sym = vocab.symbols[id];
    if (sym.size() >= marker.size() && sym.compare(sym.size() - marker.size(), marker.size(), marker) == 0) {
      word += sym.substr(0, sym.size() - marker.size());
      out.push_back(word);
      word.clear();
    } else {
      word += sym;
    }
  }
  if (!word.empty()) out.push_back(word);  // unterminated trailing subwords
  return out;
}

void save_model(const BpeModel &model, const std::string &path) {
  std::ostringstream ss;
  ss << model.end_of_word_marker << "\n";
  for (const auto &[l, r] : model.merges) ss << l << " " << r << "\n";
  write_file(path, ss.str());
}

BpeModel load_model(const std::string &path) {
  const auto lines = read_lines(path);
  if (lines.empty()) throw ParseError("empty model file", 1);
  BpeModel model;
  model.end_of_word_marker = strip(lines[0]);
  if (model.end_of_word_marker.empty()) throw ParseError("missing end-of-word marker", 1);
  std::set<std::string> alphabet;
  for (size_t i = 1; i < lines.size(); ++i) {
    const std::string line = strip(lines[i]);
    if (line.empty()) continue;
    const auto parts = split_ws(line);
    if (parts.size() != 2) throw ParseError("merge line needs two symbols", static_cast<int>(i + 1));
    model.merges.emplace_back(parts[0], parts[1]);
  }
  return model;
}

void save_vocab(const Vocab &vocab, const std::string &path) {
  std::ostringstream ss;
  for (size_t i = 0; i < vocab.symbols.size(); ++i) ss << vocab.symbols[i] << "\t" << i << "\n";
  write_file(path, ss.str());
}

Vocab load_vocab(const std::string &path) {
  Vocab vocab;
  int lineno = 0;
  for (const auto &line : read_lines(path)) {
    ++lineno;
    if (strip(line).empty()) continue;
    const auto parts = split_on(line, "\t");
    if (parts.size() != 2) throw ParseError("vocab line needs symbol<TAB>id", lineno);
    const int id = std::stoi(parts[1]);
    if (id != static_cast<int>(vocab.symbols.size())) throw ParseError("vocab ids must be dense and ordered", lineno);
    vocab.symbols.push_back(parts[0]);
    vocab.id_of[parts[0]] = id;
  }
  if (vocab.size() < 4) throw ParseError("vocab missing reserved entries", lineno);
  return vocab;
}

}  // namespace bpe
}  // namespace gecgan
