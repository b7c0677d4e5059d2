// corpus/synth.cpp
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

#include "gecgan/corpus/synth.hpp"

#include <string>

#include "gecgan/util/rng.hpp"

namespace gecgan {
namespace corpus {

namespace {

// Only regular "+s" inflections, so the corruption toggles are always
// well-formed words of the same lexicon family.
const char *kNouns[] = {"cat",    "dog",    "bird",   "boy",    "girl",  "farmer",
                        "teacher", "student", "ball",   "book",   "apple", "house",
                        "tree",   "horse",  "cup",    "chair",  "table", "car",
                        "road",   "friend", "singer", "window", "door",  "garden"};
const char *kIntransVerbs[] = {"sleep", "run",  "jump", "sing", "swim",
                               "smile", "wait", "walk", "bark", "play"};
const char *kTransVerbs[] = {"chase", "find", "like", "want", "help",
                             "call",  "draw", "paint", "clean", "move"};
const char *kAdjectives[] = {"small", "big",  "old",  "young", "happy", "quiet",
                             "red",   "blue", "green", "cold",  "warm",  "tall"};
const char *kAdverbs[] = {"quietly", "quickly", "slowly", "happily", "often", "today"};
const char *kPlaces[] = {"garden", "river", "school", "park", "market", "field"};
const char *kPreps[] = {"in", "near", "at"};
const char *kPluralDets[] = {"the", "two", "three", "some", "many"};
const char *kComparatives[] = {"faster", "taller", "older", "smaller", "happier"};

template <size_t N>
const char *pick(Rng &rng, const char *(&arr)[N]) {
  return arr[rng.uniform_int(N)];
}

bool starts_with_vowel(const std::string &w) {
  return w[0] == 'a' || w[0] == 'e' || w[0] == 'i' || w[0] == 'o' || w[0] == 'u';
}

std::string plural(const std::string &noun) { return noun + "s"; }
std::string third_person(const std::string &verb) { return verb + "s"; }

struct Np {
  std::vector<std::string> words;
  bool is_plural = false;
};

Np noun_phrase(Rng &rng) {
  Np np;
  const std::string noun = pick(rng, kNouns);
  np.is_plural = rng.bernoulli(0.4);
  const bool with_adj = rng.bernoulli(0.3);
  const std::string adj = with_adj ? pick(rng, kAdjectives) : "";
  if (np.is_plural) {
    np.words.push_back(pick(rng, kPluralDets));
    if (with_adj) np.words.push_back(adj);
    np.words.push_back(plural(noun));
  } else {
    const std::string first = with_adj ? adj : noun;
    std::string det;
    if (rng.bernoulli(0.5)) {
      det = "the";
    } else {
      det = starts_with_vowel(first) ? "an" : "a";
    }
    np.words.push_back(det);
    if (with_adj) np.words.push_back(adj);
    np.words.push_back(noun);
  }
  return np;
}

std::vector<std::string> prep_phrase(Rng &rng) {
  return {pick(rng, kPreps), "the", pick(rng, kPlaces)};
}

void append(Tokens &out, const std::vector<std::string> &words) {
  out.insert(out.end(), words.begin(), words.end());
}

Tokens make_sentence(Rng &rng) {
  Tokens s;
  const int tmpl = static_cast<int>(rng.uniform_int(10));
  switch (tmpl) {
    case 0: {  // NP V_intrans [ADV]
      Np np = noun_phrase(rng);
      append(s, np.words);
      const std::string v = pick(rng, kIntransVerbs);
      s.push_back(np.is_plural ? v : third_person(v));
      if (rng.bernoulli(0.5)) s.push_back(pick(rng, kAdverbs));
      break;
    }
    case 1: {  // NP V_trans NP
      Np subj = noun_phrase(rng);
      append(s, subj.words);
      const std::string v = pick(rng, kTransVerbs);
      s.push_back(subj.is_plural ? v : third_person(v));
      append(s, noun_phrase(rng).words);
      break;
    }
    case 2: {  // NP V_intrans PP
      Np np = noun_phrase(rng);
      append(s, np.words);
      const std::string v = pick(rng, kIntransVerbs);
      s.push_back(np.is_plural ? v : third_person(v));
      append(s, prep_phrase(rng));
      break;
    }
    case 3: {  // there is/are NP [PP]
      s.push_back("there");
      Np np = noun_phrase(rng);
      s.push_back(np.is_plural ? "are" : "is");
      append(s, np.words);
      if (rng.bernoulli(0.5)) append(s, prep_phrase(rng));
      break;
    }
    case 4: {  // their N V  (possessive anchor)
      s.push_back("their");
      const std::string noun = pick(rng, kNouns);
      const bool pl = rng.bernoulli(0.4);
      s.push_back(pl ? plural(noun) : noun);
      const std::string v = pick(rng, kIntransVerbs);
      s.push_back(pl ? v : third_person(v));
      if (rng.bernoulli(0.4)) s.push_back(pick(rng, kAdverbs));
      break;
    }
    case 5: {  // NP is/are ADJ
      Np np = noun_phrase(rng);
      append(s, np.words);
      s.push_back(np.is_plural ? "are" : "is");
      s.push_back(pick(rng, kAdjectives));
      break;
    }
    case 6: {  // NP is COMP than NP  (than anchor)
      Np a = noun_phrase(rng);
      append(s, a.words);
      s.push_back(a.is_plural ? "are" : "is");
      s.push_back(pick(rng, kComparatives));
      s.push_back("than");
      append(s, noun_phrase(rng).words);
      break;
    }
    case 7: {  // NP wants/likes to V_base  (to anchor)
      Np np = noun_phrase(rng);
      append(s, np.words);
      const std::string v = rng.bernoulli(0.5) ? "want" : "like";
      s.push_back(np.is_plural ? v : third_person(v));
      s.push_back("to");
      s.push_back(pick(rng, kIntransVerbs));
      break;
    }
    case 8: {  // NP V_trans NP PP
      Np subj = noun_phrase(rng);
      append(s, subj.words);
      const std::string v = pick(rng, kTransVerbs);
      s.push_back(subj.is_plural ? v : third_person(v));
      append(s, noun_phrase(rng).words);
      append(s, prep_phrase(rng));
      break;
    }
    default: {  // NP is too ADJ  (too anchor)
      Np np = noun_phrase(rng);
      append(s, np.words);
      s.push_back(np.is_plural ? "are" : "is");
      s.push_back("too");
      s.push_back(pick(rng, kAdjectives));
      break;
    }
  }
  s.push_back(".");
  return s;
}

}  // namespace

std::vector<Tokens> synthesize_clean(size_t n, uint64_t seed) {
  std::vector<Tokens> out;
  out.reserve(n);
  Rng root(seed);
  for (size_t i = 0; i < n; ++i) {
    Rng rng = root.substream("sent-" + std::to_string(i));
    out.push_back(make_sentence(rng));
  }
  return out;
}

}  // namespace corpus
}  // namespace gecgan
