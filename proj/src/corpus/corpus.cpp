// corpus/corpus.cpp
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

#include "gecgan/corpus/corpus.hpp"

#include <cmath>
#include <fstream>
#include <numeric>

#include "gecgan/util/error.hpp"
#include "gecgan/util/rng.hpp"
#include "gecgan/util/text.hpp"

namespace gecgan {
namespace corpus {

Corpus read_parallel(const std::string &src_path, const std::string &tgt_path,
                     const std::string &id_prefix) {
  const auto src_lines = read_lines(src_path);
  const auto tgt_lines = read_lines(tgt_path);
  if (src_lines.size() != tgt_lines.size()) {
    throw ValidationError("parallel files differ in length: " + std::to_string(src_lines.size()) +
                          " vs " + std::to_string(tgt_lines.size()));
  }
  Corpus corpus;
  corpus.reserve(src_lines.size());
  for (size_t i = 0; i < src_lines.size(); ++i) {
    SentencePair p;
    p.source = split_ws(src_lines[i]);
    p.target = split_ws(tgt_lines[i]);
    p.id = id_prefix + ":" + std::to_string(i);
    if (p.source.empty() || p.target.empty()) {
      throw ValidationError("empty sentence at line " + std::to_string(i + 1));
    }
    corpus.push_back(std::move(p));
  }
  return corpus;
}

void write_parallel(const Corpus &corpus, const std::string &src_path,
                    const std::string &tgt_path) {
  std::ofstream src(src_path), tgt(tgt_path);
  if (!src || !tgt) throw Error("cannot write parallel files");
  for (const auto &p : corpus) {
    src << join(p.source) << "\n";
    tgt << join(p.target) << "\n";
  }
}

Corpus filter_by_length(const Corpus &corpus, int min_len, int max_len) {
  Corpus out;
  out.reserve(corpus.size());
  for (const auto &p : corpus) {
    const int n = static_cast<int>(p.source.size());
    if (n >= min_len && n <= max_len) out.push_back(p);
  }
  return out;
}

std::tuple<Corpus, Corpus, Corpus> split_corpus(const Corpus &corpus, double train_frac,
                                                double dev_frac, double test_frac, uint64_t seed) {
  if (train_frac <= 0 || dev_frac <= 0 || test_frac <= 0) {
    throw ValidationError("split fractions must be positive");
  }
  if (std::fabs(train_frac + dev_frac + test_frac - 1.0) > 1e-9) {
    throw ValidationError("split fractions must sum to 1");
  }
  const size_t n = corpus.size();
  if (n < 3) throw ValidationError("corpus too small to split three ways");

  // Largest-remainder apportionment.
  const double fracs[3] = {train_frac, dev_frac, test_frac};
  size_t sizes[3];
  double rema[3];
  size_t assigned = 0;
  for (int i = 0; i < 3; ++i) {
    const double ideal = fracs[i] * static_cast<double>(n);
    sizes[i] = static_cast<size_t>(ideal);
    rema[i] = ideal - static_cast<double>(sizes[i]);
    assigned += sizes[i];
  }
  while (assigned < n) {
    int best = 0;
    for (int i = 1; i < 3; ++i) {
      if (rema[i] > rema[best]) best = i;
    }
    ++sizes[best];
    rema[best] = -1.0;
    ++assigned;
  }

  std::vector<size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  Rng rng(seed);
  // Fisher-Yates with our own rng for cross-platform determinism.
  for (size_t i = n - 1; i > 0; --i) {
    const size_t j = rng.uniform_int(i + 1);
    std::swap(order[i], order[j]);
  }

  Corpus train, dev, test;
  for (size_t i = 0; i < n; ++i) {
    const SentencePair &p = corpus[order[i]];
    if (i < sizes[0]) {
      train.push_back(p);
    } else if (i < sizes[0] + sizes[1]) {
      dev.push_back(p);
    } else {
      test.push_back(p);
    }
  }
  return {std::move(train), std::move(dev), std::move(test)};
}

}  // namespace corpus
}  // namespace gecgan
