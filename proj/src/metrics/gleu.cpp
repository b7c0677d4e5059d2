// metrics/gleu.cpp
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

#include <cmath>
#include <map>

#include "gecgan/metrics/metrics.hpp"
#include "gecgan/util/error.hpp"

namespace gecgan {
namespace metrics {

namespace {

constexpr double kLogFloor = 1e-9;

using NgramCounts = std::map<std::vector<std::string>, long>;

NgramCounts ngrams(const corpus::Tokens &toks, int n) {
  NgramCounts out;
  if (static_cast<int>(toks.size()) < n) return out;
  for (size_t i = 0; i + n <= toks.size(); ++i) {
    out[std::vector<std::string>(toks.begin() + i, toks.begin() + i + n)] += 1;
  }
  return out;
}

long count_of(const NgramCounts &counts, const std::vector<std::string> &g) {
  auto it = counts.find(g);
  return it == counts.end() ? 0 : it->second;
}

// Clipped matches minus the weighted source-overlap penalty, clamped at 0.
double gleu_numerator(const NgramCounts &hyp, const NgramCounts &src, const NgramCounts &ref,
                      double penalty_weight) {
  long matches = 0;
  long penalty = 0;
  for (const auto &[g, c_hyp] : hyp) {
    matches += std::min(c_hyp, count_of(ref, g));
    const long src_overlap = std::min(c_hyp, count_of(src, g));
    penalty += std::max(0L, src_overlap - count_of(ref, g));
  }
  return std::max(0.0, static_cast<double>(matches) - penalty_weight * static_cast<double>(penalty));
}

long total(const NgramCounts &counts) {
  long t = 0;
  for (const auto &[g, c] : counts) {
    (void)g;
    t += c;
  }
  return t;
}

double brevity_penalty(double ref_len, double hyp_len) {
  if (hyp_len <= 0) return 0.0;
  return std::min(1.0, std::exp(1.0 - ref_len / hyp_len));
}

// Geometric mean over the orders the hypothesis actually has n-grams
// for; a two-token hypothesis is not penalized for lacking trigrams.
double score_from_stats(const std::vector<double> &numer, const std::vector<long> &denom,
                        double ref_len, double hyp_len) {
  double log_sum = 0.0;
  int orders = 0;
  for (size_t n = 0; n < numer.size(); ++n) {
    if (denom[n] <= 0) continue;
    double p = numer[n] / static_cast<double>(denom[n]);
    if (p < kLogFloor) p = kLogFloor;
    log_sum += std::log(p);
    ++orders;
  }
  if (orders == 0) return 0.0;
  const double geo = std::exp(log_sum / static_cast<double>(orders));
  return brevity_penalty(ref_len, hyp_len) * geo;
}

}  // namespace

double gleu_sentence(const corpus::Tokens &source, const corpus::Tokens &hypothesis,
                     const std::vector<corpus::Tokens> &references, const GleuConfig &config) {
  if (references.empty()) throw ValidationError("gleu_sentence: no references");
  if (config.max_n < 1) throw ValidationError("gleu_sentence: max_n must be >= 1");
  if (hypothesis.empty()) return 0.0;

  double sum = 0.0;
  for (const auto &ref : references) {
    std::vector<double> numer(config.max_n, 0.0);
    std::vector<long> denom(config.max_n, 0);
    for (int n = 1; n <= config.max_n; ++n) {
      const auto hyp_grams = ngrams(hypothesis, n);
      const auto src_grams = ngrams(source, n);
      const auto ref_grams = ngrams(ref, n);
      numer[n - 1] = gleu_numerator(hyp_grams, src_grams, ref_grams, config.source_penalty_weight);
      denom[n - 1] = total(hyp_grams);
    }
    sum += score_from_stats(numer, denom, static_cast<double>(ref.size()),
                            static_cast<double>(hypothesis.size()));
  }
  return sum / static_cast<double>(references.size());
}

double gleu_corpus(const std::vector<corpus::Tokens> &sources,
                   const std::vector<corpus::Tokens> &hypotheses,
                   const std::vector<std::vector<corpus::Tokens>> &references,
                   const GleuConfig &config) {
  if (sources.size() != hypotheses.size() || sources.size() != references.size()) {
    throw ValidationError("gleu_corpus: input lengths differ");
  }
  if (config.max_n < 1) throw ValidationError("gleu_corpus: max_n must be >= 1");

  std::vector<double> numer(config.max_n, 0.0);
  std::vector<long> denom(config.max_n, 0);
  double ref_len = 0.0, hyp_len = 0.0;
  for (size_t s = 0; s < sources.size(); ++s) {
    const auto &refs = references[s];
    if (refs.empty()) throw ValidationError("gleu_corpus: sentence without references");
    hyp_len += static_cast<double>(hypotheses[s].size());
    double mean_ref = 0.0;
    for (const auto &r : refs) mean_ref += static_cast<double>(r.size());
    ref_len += mean_ref / static_cast<double>(refs.size());
    if (hypotheses[s].empty()) continue;
    for (int n = 1; n <= config.max_n; ++n) {
      const auto hyp_grams = ngrams(hypotheses[s], n);
      const auto src_grams = ngrams(sources[s], n);
      double num = 0.0;
      for (const auto &r : refs) {
        num += gleu_numerator(hyp_grams, src_grams, ngrams(r, n), config.source_penalty_weight);
      }
      numer[n - 1] += num / static_cast<double>(refs.size());
      denom[n - 1] += total(hyp_grams);
    }
  }
  return score_from_stats(numer, denom, ref_len, hyp_len);
}

}  // namespace metrics
}  // namespace gecgan
