// metrics/m2score.cpp
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

#include <sstream>

#include <json.hpp>

#include "gecgan/metrics/metrics.hpp"
#include "gecgan/util/error.hpp"

namespace gecgan {
namespace metrics {

double precision_from(long tp, long fp) {
  return tp + fp == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fp);
}

double recall_from(long tp, long fn) {
  return tp + fn == 0 ? 0.0 : static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double f_beta_from(long tp, long fp, long fn, double beta) {
  const double p = precision_from(tp, fp);
  const double r = recall_from(tp, fn);
  const double b2 = beta * beta;
  const double denom = b2 * p + r;
  return denom == 0.0 ? 0.0 : (1.0 + b2) * p * r / denom;
}

EvalReport m2_score(const std::vector<corpus::Tokens> &hypotheses,
                    const std::vector<corpus::AnnotatedSentence> &gold) {
  if (hypotheses.size() != gold.size()) {
    throw ValidationError("m2_score: " + std::to_string(hypotheses.size()) + " hypotheses vs " +
                          std::to_string(gold.size()) + " gold sentences");
  }

  EvalReport report;
  long tp = 0, fp = 0, fn = 0;
  for (size_t s = 0; s < gold.size(); ++s) {
    const auto sys_edits = extract_edits(gold[s].source, hypotheses[s]);

    SentenceCounts best;
    double best_f = -1.0;
    for (const auto &[annotator, gold_edits] : gold[s].annotations) {
      SentenceCounts c;
      c.chosen_annotator = annotator;
      for (const auto &se : sys_edits) {
        bool hit = false;
        for (const auto &ge : gold_edits) {
          if (se.same_span_and_text(ge)) {
            hit = true;
            break;
          }
        }
        if (hit) {
          ++c.tp;
        } else {
          ++c.fp;
        }
      }
      c.fn = static_cast<int>(gold_edits.size()) - c.tp;
      const double f = f_beta_from(c.tp, c.fp, c.fn);
      // Strict > keeps the lowest annotator id on ties (map order).
      if (f > best_f) {
        best_f = f;
        best = c;
      }
    }
    tp += best.tp;
    fp += best.fp;
    fn += best.fn;
    report.per_sentence.push_back(best);
  }

  report.precision = precision_from(tp, fp);
  report.recall = recall_from(tp, fn);
  report.f_beta = f_beta_from(tp, fp, fn);
  return report;
}

std::string report_to_json(const EvalReport &report) {
  nlohmann::json j;
  j["precision"] = report.precision;
  j["recall"] = report.recall;
  j["f0.5"] = report.f_beta;
  j["dataset_id"] = report.dataset_id;
  j["system_id"] = report.system_id;
  j["deterministic_edit_extraction"] = report.deterministic_edit_extraction;
  nlohmann::json per;
  for (const auto &c : report.per_sentence) {
    per.push_back({{"tp", c.tp}, {"fp", c.fp}, {"fn", c.fn}, {"annotator", c.chosen_annotator}});
  }
  j["per_sentence"] = per;
  return j.dump(2) + "\n";
}

}  // namespace metrics
}  // namespace gecgan
