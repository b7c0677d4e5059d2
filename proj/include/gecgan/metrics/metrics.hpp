// metrics/metrics.hpp
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

#ifndef GECGAN_METRICS_METRICS_HPP_
#define GECGAN_METRICS_METRICS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "gecgan/corpus/types.hpp"

namespace gecgan {
namespace metrics {

// ---------------------------------------------------------------------------
// Edit extraction

// Levenshtein alignment (unit costs, match preferred over substitution
// over deletion over insertion on ties), with adjacent non-match
// operations merged into maximal contiguous spans.  The result always
// satisfies apply_edits(source, edits) == hypothesis.
std::vector<corpus::Edit> extract_edits(const corpus::Tokens &source,
                                        const corpus::Tokens &hypothesis);

// ---------------------------------------------------------------------------
// M2 max-match scoring

struct SentenceCounts {
  int tp = 0;
  int fp = 0;
  int fn = 0;
  int chosen_annotator = 0;
};

struct EvalReport {
  double precision = 0.0;
  double recall = 0.0;
  double f_beta = 0.0;  // beta = 0.5
  std::vector<SentenceCounts> per_sentence;
  std::string dataset_id;
  std::string system_id;
  // Edits are extracted deterministically instead of searched over an
  // edit lattice; scores are comparable within this toolkit only.
  bool deterministic_edit_extraction = true;
};

// Precision/recall/F_beta from aggregate counts; 0/0 -> 0.
double precision_from(long tp, long fp);
double recall_from(long tp, long fn);
double f_beta_from(long tp, long fp, long fn, double beta = 0.5);

// System edits are extracted per sentence and matched exactly (span and
// replacement) against each annotator; the annotator maximizing the
// sentence-level F_0.5 wins (ties -> lower id), and the winning counts
// are pooled corpus-wide.
EvalReport m2_score(const std::vector<corpus::Tokens> &hypotheses,
                    const std::vector<corpus::AnnotatedSentence> &gold);

std::string report_to_json(const EvalReport &report);

// ---------------------------------------------------------------------------
// GLEU

struct GleuConfig {
  int max_n = 4;
  double source_penalty_weight = 1.0;
};

// n-gram precision that additionally penalizes n-grams shared with the
// source but absent from the reference:
//   p_n = max(0, matches_n - w * penalty_n) / |hyp n-grams|
// with matches_n = sum_g min(c_hyp, c_ref) and
// penalty_n = sum_g max(0, min(c_hyp, c_src) - c_ref).  The score is
// BP * exp(mean_n log p_n) over the orders the hypothesis has n-grams
// for, p_n floored at 1e-9, BP = min(1, exp(1 - |ref|/|hyp|)).
// Multiple references average the score.
double gleu_sentence(const corpus::Tokens &source, const corpus::Tokens &hypothesis,
                     const std::vector<corpus::Tokens> &references,
                     const GleuConfig &config = GleuConfig());

// Corpus-level aggregation pools numerators and denominators over
// sentences before the geometric mean (per-sentence numerators average
// over that sentence's references; BP uses mean reference length).
double gleu_corpus(const std::vector<corpus::Tokens> &sources,
                   const std::vector<corpus::Tokens> &hypotheses,
                   const std::vector<std::vector<corpus::Tokens>> &references,
                   const GleuConfig &config = GleuConfig());

// ---------------------------------------------------------------------------
// Paired bootstrap

// Paired bootstrap over sentences for the hypothesis "system A beats
// system B": returns the fraction of resamples with F_0.5(A) <= F_0.5(B)
// (ties count against A).  Deterministic given the seed.
double bootstrap_compare(const std::vector<SentenceCounts> &system_a,
                         const std::vector<SentenceCounts> &system_b, int resamples,
                         uint64_t seed);

}  // namespace metrics
}  // namespace gecgan

#endif  // GECGAN_METRICS_METRICS_HPP_
