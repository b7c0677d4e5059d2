// metrics/bootstrap.cpp
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

#include "gecgan/metrics/metrics.hpp"
#include "gecgan/util/error.hpp"
#include "gecgan/util/rng.hpp"

namespace gecgan {
namespace metrics {

double bootstrap_compare(const std::vector<SentenceCounts> &system_a,
                         const std::vector<SentenceCounts> &system_b, int resamples,
                         uint64_t seed) {
  if (system_a.size() != system_b.size()) {
    throw ValidationError("bootstrap_compare: per-sentence count lists differ in length");
  }
  if (system_a.empty()) throw ValidationError("bootstrap_compare: empty count lists");
  if (resamples < 1000) throw ValidationError("bootstrap_compare: need at least 1000 resamples");

  Rng rng(seed);
  const size_t n = system_a.size();
  long not_better = 0;
  for (int r = 0; r < resamples; ++r) {
    long tp_a = 0, fp_a = 0, fn_a = 0;
    long tp_b = 0, fp_b = 0, fn_b = 0;
    for (size_t i = 0; i < n; ++i) {
      const size_t k = rng.uniform_int(n);
      tp_a += system_a[k].tp;
      fp_a += system_a[k].fp;
      fn_a += system_a[k].fn;
      tp_b += system_b[k].tp;
      fp_b += system_b[k].fp;
      fn_b += system_b[k].fn;
    }
    const double fa = f_beta_from(tp_a, fp_a, fn_a);
    const double fb = f_beta_from(tp_b, fp_b, fn_b);
    if (fa <= fb) ++not_better;
  }
  return static_cast<double>(not_better) / static_cast<double>(resamples);
}

}  // namespace metrics
}  // namespace gecgan
