// tests/test_metrics.cpp
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gecgan/corpus/m2.hpp"
#include "gecgan/metrics/metrics.hpp"
#include "gecgan/util/error.hpp"
#include "gecgan/util/rng.hpp"

using namespace gecgan;
using namespace gecgan::metrics;
using gecgan::corpus::AnnotatedSentence;
using gecgan::corpus::Edit;
using gecgan::corpus::Tokens;

TEST_CASE("extract_edits hand alignments") {
  CHECK(extract_edits({"a", "b", "c"}, {"a", "b", "c"}).empty());

  const auto e1 = extract_edits({"I", "likes", "cats"}, {"I", "like", "cats"});
  REQUIRE(e1.size() == 1);
  CHECK(e1[0].start == 1);
  CHECK(e1[0].end == 2);
  CHECK(e1[0].replacement == Tokens{"like"});

  // Substitution and insertion merge into one span.
  const auto e2 = extract_edits({"He", "go", "school"}, {"He", "goes", "to", "school"});
  REQUIRE(e2.size() == 1);
  CHECK(e2[0].start == 1);
  CHECK(e2[0].end == 2);
  CHECK(e2[0].replacement == Tokens{"goes", "to"});

  // Pure deletion and pure insertion.
  const auto e3 = extract_edits({"the", "big", "cat"}, {"the", "cat"});
  REQUIRE(e3.size() == 1);
  CHECK(e3[0].start == 1);
  CHECK(e3[0].end == 2);
  CHECK(e3[0].replacement.empty());

  const auto e4 = extract_edits({"the", "cat"}, {"the", "old", "cat"});
  REQUIRE(e4.size() == 1);
  CHECK(e4[0].start == 1);
  CHECK(e4[0].end == 1);
  CHECK(e4[0].replacement == Tokens{"old"});
}

TEST_CASE("alignment round trip property") {
  Rng rng(13);
  const Tokens lexicon{"a", "b", "c", "d", "e"};
  for (int iter = 0; iter < 300; ++iter) {
    Tokens s, h;
    const int sl = 1 + static_cast<int>(rng.uniform_int(10));
    const int hl = 1 + static_cast<int>(rng.uniform_int(10));
    for (int i = 0; i < sl; ++i) s.push_back(lexicon[rng.uniform_int(lexicon.size())]);
    for (int i = 0; i < hl; ++i) h.push_back(lexicon[rng.uniform_int(lexicon.size())]);
    const auto edits = extract_edits(s, h);
    CHECK(corpus::apply_edits(s, edits) == h);
    CHECK(extract_edits(s, s).empty());
  }
}

namespace {

AnnotatedSentence gold_of(const Tokens &src, const std::vector<Edit> &edits, int annotator = 0) {
  AnnotatedSentence g;
  g.source = src;
  g.annotations[annotator] = edits;
  return g;
}

}  // namespace

TEST_CASE("m2_score perfect system") {
  const Tokens src{"I", "likes", "cats"};
  const std::vector<Edit> gold_edits{{1, 2, {"like"}, "V", 0}};
  const auto hyp = corpus::apply_edits(src, gold_edits);
  const auto report = m2_score({hyp}, {gold_of(src, gold_edits)});
  CHECK(report.precision == 1.0);
  CHECK(report.recall == 1.0);
  CHECK(report.f_beta == 1.0);
  CHECK(report.per_sentence[0].tp == 1);
}

TEST_CASE("m2_score one hit one miss one spurious") {
  // Gold has 2 edits; the system makes 1 of them plus 1 spurious one.
  const Tokens src{"a", "x", "c", "y", "e", "q"};
  const std::vector<Edit> gold_edits{{1, 2, {"b"}, "U", 0}, {3, 4, {"d"}, "U", 0}};
  // System fixes x->b but also mangles q->z.
  const Tokens hyp{"a", "b", "c", "y", "e", "z"};
  const auto report = m2_score({hyp}, {gold_of(src, gold_edits)});
  CHECK(report.per_sentence[0].tp == 1);
  CHECK(report.per_sentence[0].fp == 1);
  CHECK(report.per_sentence[0].fn == 1);
  CHECK(report.precision == doctest::Approx(0.5));
  CHECK(report.recall == doctest::Approx(0.5));
  CHECK(report.f_beta == doctest::Approx(0.5));
}

TEST_CASE("m2_score do-nothing system scores zero") {
  const Tokens src{"I", "likes", "cats"};
  const std::vector<Edit> gold_edits{{1, 2, {"like"}, "V", 0}};
  const auto report = m2_score({src}, {gold_of(src, gold_edits)});
  CHECK(report.per_sentence[0].tp == 0);
  CHECK(report.per_sentence[0].fp == 0);
  CHECK(report.per_sentence[0].fn == 1);
  CHECK(report.precision == 0.0);
  CHECK(report.recall == 0.0);
  CHECK(report.f_beta == 0.0);
}

TEST_CASE("m2_score picks the best annotator, ties to the lower id") {
  const Tokens src{"I", "likes", "cats"};
  AnnotatedSentence g;
  g.source = src;
  g.annotations[0] = {{1, 2, {"loved"}, "V", 0}};
  g.annotations[1] = {{1, 2, {"like"}, "V", 1}};
  const Tokens hyp{"I", "like", "cats"};
  const auto report = m2_score({hyp}, {g});
  CHECK(report.per_sentence[0].chosen_annotator == 1);
  CHECK(report.f_beta == 1.0);

  // Tie between two zero-F annotators goes to annotator 0.
  const auto tie = m2_score({src}, {g});
  CHECK(tie.per_sentence[0].chosen_annotator == 0);

  CHECK_THROWS_AS(m2_score({hyp, hyp}, {g}), ValidationError);
}

TEST_CASE("m2_score of gold-corrected outputs is exactly one (round trip)") {
  Rng rng(23);
  const Tokens lexicon{"a", "b", "c", "d"};
  std::vector<Tokens> hyps;
  std::vector<AnnotatedSentence> gold;
  for (int s = 0; s < 100; ++s) {
    Tokens src, tgt;
    const int sl = 2 + static_cast<int>(rng.uniform_int(8));
    const int tl = 2 + static_cast<int>(rng.uniform_int(8));
    for (int i = 0; i < sl; ++i) src.push_back(lexicon[rng.uniform_int(lexicon.size())]);
    for (int i = 0; i < tl; ++i) tgt.push_back(lexicon[rng.uniform_int(lexicon.size())]);
    gold.push_back(gold_of(src, extract_edits(src, tgt)));
    hyps.push_back(tgt);
  }
  const auto report = m2_score(hyps, gold);
  // Sentences with src == tgt contribute (0,0,0); everything else matches.
  CHECK(report.precision == 1.0);
  CHECK(report.recall == 1.0);
  CHECK(report.f_beta == 1.0);
}

TEST_CASE("f_beta identity holds on random count triples") {
  Rng rng(29);
  for (int i = 0; i < 1000; ++i) {
    const long tp = static_cast<long>(rng.uniform_int(20));
    const long fp = static_cast<long>(rng.uniform_int(20));
    const long fn = static_cast<long>(rng.uniform_int(20));
    const double p = precision_from(tp, fp);
    const double r = recall_from(tp, fn);
    const double f = f_beta_from(tp, fp, fn);
    const double denom = 0.25 * p + r;
    const double expect = denom == 0.0 ? 0.0 : 1.25 * p * r / denom;
    CHECK(f == doctest::Approx(expect).epsilon(1e-12));
    CHECK(f >= 0.0);
    CHECK(f <= 1.0);
  }
}

TEST_CASE("gleu_sentence hand counts") {
  // Perfect hypothesis.
  const Tokens src{"a", "b"};
  CHECK(gleu_sentence(src, {"a", "c"}, {{"a", "c"}}) == doctest::Approx(1.0));

  GleuConfig uni;
  uni.max_n = 1;
  // hyp keeps the source error "b": match 1, penalty 1 -> p1 = 0.
  CHECK(gleu_sentence(src, {"a", "b"}, {{"a", "c"}}, uni) == doctest::Approx(0.0).epsilon(1e-6));
  // hyp corrects to the reference: p1 = 1, BP = 1.
  CHECK(gleu_sentence(src, {"a", "c"}, {{"a", "c"}}, uni) == doctest::Approx(1.0));

  // Empty hypothesis scores zero; empty references are rejected.
  CHECK(gleu_sentence(src, {}, {{"a", "c"}}) == 0.0);
  CHECK_THROWS_AS(gleu_sentence(src, {"a"}, {}), ValidationError);

  // Multi-reference averaging.
  const double avg = gleu_sentence(src, {"a", "c"}, {{"a", "c"}, {"x", "y"}}, uni);
  const double r1 = gleu_sentence(src, {"a", "c"}, {{"a", "c"}}, uni);
  const double r2 = gleu_sentence(src, {"a", "c"}, {{"x", "y"}}, uni);
  CHECK(avg == doctest::Approx(0.5 * (r1 + r2)));

  // Range property.
  Rng rng(7);
  const Tokens lexicon{"a", "b", "c"};
  for (int i = 0; i < 200; ++i) {
    Tokens s, h, r;
    for (int k = 0; k < 4; ++k) {
      s.push_back(lexicon[rng.uniform_int(3)]);
      h.push_back(lexicon[rng.uniform_int(3)]);
      r.push_back(lexicon[rng.uniform_int(3)]);
    }
    const double g = gleu_sentence(s, h, {r});
    CHECK(g >= 0.0);
    CHECK(g <= 1.0);
  }
}

TEST_CASE("gleu_corpus pools counts") {
  const Tokens s1{"a", "b"}, h1{"a", "c"}, r1{"a", "c"};
  const Tokens s2{"d", "e", "f"}, h2{"d", "e", "f"}, r2{"d", "e", "g"};

  // All hypotheses equal to references -> 1.
  CHECK(gleu_corpus({s1, s2}, {r1, r2}, {{r1}, {r2}}) == doctest::Approx(1.0));

  // Single-sentence corpus equals the sentence score.
  GleuConfig cfg;
  cfg.max_n = 2;
  CHECK(gleu_corpus({s1}, {h1}, {{r1}}, cfg) ==
        doctest::Approx(gleu_sentence(s1, h1, {r1}, cfg)));

  // Two-sentence corpus against pooled hand counts (max_n = 1).
  GleuConfig uni;
  uni.max_n = 1;
  // Sentence 1: matches 2 (a, c), penalty 0, denom 2.
  // Sentence 2: matches 2 (d, e), penalty on f: min(hyp,src)=1 - ref 0 = 1
  //             -> numerator 1, denom 3.
  // Pooled p1 = (2 + 1) / (2 + 3) = 0.6; lengths 2+3 both sides -> BP 1.
  const double got = gleu_corpus({s1, s2}, {h1, h2}, {{r1}, {r2}}, uni);
  CHECK(got == doctest::Approx(0.6));
}

TEST_CASE("bootstrap_compare identical and dominating systems") {
  std::vector<SentenceCounts> a, b;
  Rng rng(41);
  for (int i = 0; i < 30; ++i) {
    SentenceCounts c;
    c.tp = 1 + static_cast<int>(rng.uniform_int(5));
    c.fp = static_cast<int>(rng.uniform_int(3));
    c.fn = static_cast<int>(rng.uniform_int(3));
    a.push_back(c);
    b.push_back(c);
  }
  CHECK(bootstrap_compare(a, b, 2000, 1) == doctest::Approx(1.0));

  // a strictly dominates b on every sentence.
  for (auto &c : b) {
    c.tp = 0;
    c.fp += 3;
    c.fn += 3;
  }
  CHECK(bootstrap_compare(a, b, 2000, 1) == doctest::Approx(0.0));

  CHECK(bootstrap_compare(a, b, 2000, 9) == bootstrap_compare(a, b, 2000, 9));
  CHECK_THROWS_AS(bootstrap_compare(a, b, 100, 1), ValidationError);
  b.pop_back();
  CHECK_THROWS_AS(bootstrap_compare(a, b, 2000, 1), ValidationError);
}

TEST_CASE("bootstrap_compare against a high-resample reference") {
  // Overlapping systems: a is better on some sentences, worse on others.
  std::vector<SentenceCounts> a, b;
  Rng rng(53);
  for (int i = 0; i < 40; ++i) {
    SentenceCounts ca, cb;
    ca.tp = static_cast<int>(rng.uniform_int(4));
    ca.fp = static_cast<int>(rng.uniform_int(4));
    ca.fn = static_cast<int>(rng.uniform_int(4));
    cb.tp = static_cast<int>(rng.uniform_int(4));
    cb.fp = static_cast<int>(rng.uniform_int(4));
    cb.fn = static_cast<int>(rng.uniform_int(4));
    a.push_back(ca);
    b.push_back(cb);
  }
  const double reference = bootstrap_compare(a, b, 1000000, 99);
  const double p = bootstrap_compare(a, b, 20000, 7);
  CHECK(std::fabs(p - reference) <= 0.02);
}
