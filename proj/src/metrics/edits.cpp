// metrics/edits.cpp
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

#include <vector>

#include "gecgan/metrics/metrics.hpp"

namespace gecgan {
namespace metrics {

namespace {

enum class Step : uint8_t { kMatch, kSub, kDel, kIns };

}  // namespace

std::vector<corpus::Edit> extract_edits(const corpus::Tokens &source,
                                        const corpus::Tokens &hypothesis) {
  const int n = static_cast<int>(source.size());
  const int m = static_cast<int>(hypothesis.size());

  // Standard DP over prefix lengths.
  std::vector<std::vector<int>> d(n + 1, std::vector<int>(m + 1, 0));
  for (int i = 0; i <= n; ++i) d[i][0] = i;
  for (int j = 0; j <= m; ++j) d[0][j] = j;
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= m; ++j) {
      const int sub = d[i - 1][j - 1] + (source[i - 1] == hypothesis[j - 1] ? 0 : 1);
      const int del = d[i - 1][j] + 1;
      const int ins = d[i][j - 1] + 1;
      d[i][j] = std::min(sub, std::min(del, ins));
    }
  }

  // Backtrace, preferring match > substitution > deletion > insertion.
  std::vector<Step> steps;
  int i = n, j = m;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0 && source[i - 1] == hypothesis[j - 1] && d[i][j] == d[i - 1][j - 1]) {
      steps.push_back(Step::kMatch);
      --i;
      --j;
    } else if (i > 0 && j > 0 && d[i][j] == d[i - 1][j - 1] + 1) {
      steps.push_back(Step::kSub);
      --i;
      --j;
    } else if (i > 0 && d[i][j] == d[i - 1][j] + 1) {
      steps.push_back(Step::kDel);
      --i;
    } else {
      steps.push_back(Step::kIns);
      --j;
    }
  }
  std::reverse(steps.begin(), steps.end());

  // Walk the alignment merging runs of non-matches into one edit each.
  std::vector<corpus::Edit> edits;
  int si = 0, hj = 0;
  size_t k = 0;
  while (k < steps.size()) {
    if (steps[k] == Step::kMatch) {
      ++si;
      ++hj;
      ++k;
      continue;
    }
    corpus::Edit e;
    e.start = si;
    while (k < steps.size() && steps[k] != Step::kMatch) {
      switch (steps[k]) {
        case Step::kSub:
          e.replacement.push_back(hypothesis[hj]);
          ++si;
          ++hj;
          break;
        case Step::kDel:
          ++si;
          break;
        case Step::kIns:
          e.replacement.push_back(hypothesis[hj]);
          ++hj;
          break;
        case Step::kMatch:
          break;
      }
      ++k;
    }
    e.end = si;
    edits.push_back(std::move(e));
  }
  return edits;
}

}  // namespace metrics
}  // namespace gecgan
