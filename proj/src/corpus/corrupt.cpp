// corpus/corrupt.cpp
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

#include "gecgan/corpus/corrupt.hpp"

#include <algorithm>

#include "gecgan/util/error.hpp"
#include "gecgan/util/rng.hpp"
#include "gecgan/util/text.hpp"

namespace gecgan {
namespace corpus {

namespace {

std::string lower(const std::string &t) {
  std::string out = t;
  for (char &c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

bool is_article(const std::string &tok) {
  const std::string t = lower(tok);
  return t == "a" || t == "an" || t == "the";
}

bool is_quantifier(const std::string &tok) {
  const std::string t = lower(tok);
  return t == "two" || t == "three" || t == "four" || t == "some" || t == "many" || t == "few";
}

bool is_alpha(const std::string &t) {
  if (t.empty()) return false;
  for (char c : t) {
    if (!((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'))) return false;
  }
  return true;
}

std::string toggle_s(const std::string &t) {
  if (t.size() >= 3 && t.back() == 's' && t[t.size() - 2] != 's') return t.substr(0, t.size() - 1);
  return t + "s";
}

}  // namespace

CorruptionRule::Kind rule_kind_from_string(const std::string &s) {
  if (s == "delete-token") return CorruptionRule::Kind::kDeleteToken;
  if (s == "substitute-from-confusion-set") return CorruptionRule::Kind::kSubstituteFromConfusionSet;
  if (s == "inflect-verb-suffix") return CorruptionRule::Kind::kInflectVerbSuffix;
  if (s == "toggle-noun-number") return CorruptionRule::Kind::kToggleNounNumber;
  if (s == "drop-article") return CorruptionRule::Kind::kDropArticle;
  if (s == "swap-adjacent") return CorruptionRule::Kind::kSwapAdjacent;
  throw ValidationError("unknown corruption rule kind: " + s);
}

std::string rule_kind_to_string(CorruptionRule::Kind k) {
  switch (k) {
    case CorruptionRule::Kind::kDeleteToken: return "delete-token";
    case CorruptionRule::Kind::kSubstituteFromConfusionSet: return "substitute-from-confusion-set";
    case CorruptionRule::Kind::kInflectVerbSuffix: return "inflect-verb-suffix";
    case CorruptionRule::Kind::kToggleNounNumber: return "toggle-noun-number";
    case CorruptionRule::Kind::kDropArticle: return "drop-article";
    case CorruptionRule::Kind::kSwapAdjacent: return "swap-adjacent";
  }
  throw ValidationError("bad rule kind");
}

void validate_rule(const CorruptionRule &rule) {
  if (rule.probability < 0.0 || rule.probability > 1.0) {
    throw ValidationError("rule " + rule.name + ": probability must be in [0,1]");
  }
  if (rule.kind == CorruptionRule::Kind::kSubstituteFromConfusionSet) {
    if (rule.confusion_sets.empty()) {
      throw ValidationError("rule " + rule.name + ": substitute rule needs confusion sets");
    }
    for (const auto &[tok, cands] : rule.confusion_sets) {
      if (cands.empty()) throw ValidationError("rule " + rule.name + ": empty confusion set for " + tok);
    }
  }
}

SentencePair corrupt(const Tokens &sentence, const std::string &id,
                     const std::vector<CorruptionRule> &rules, uint64_t seed) {
  if (sentence.empty()) throw ValidationError("corrupt: empty sentence");
  for (const auto &r : rules) validate_rule(r);

  // One stream per (seed, sentence id); rule order and left-to-right
  // position order fix the draw sequence.
  uint64_t mix = seed ^ Rng::fnv1a(id);
  Rng rng(Rng::splitmix64(mix));

  Tokens cur = sentence;
  for (const auto &rule : rules) {
    switch (rule.kind) {
      case CorruptionRule::Kind::kDeleteToken: {
        Tokens next;
        next.reserve(cur.size());
        for (size_t i = 0; i < cur.size(); ++i) {
          const bool can_delete = cur.size() - i + next.size() > 1;
          if (can_delete && rng.bernoulli(rule.probability)) continue;
          next.push_back(cur[i]);
        }
        cur = std::move(next);
        break;
      }
      case CorruptionRule::Kind::kSubstituteFromConfusionSet: {
        for (auto &tok : cur) {
          auto it = rule.confusion_sets.find(tok);
          if (it == rule.confusion_sets.end()) continue;
          if (!rng.bernoulli(rule.probability)) continue;
          tok = it->second[rng.uniform_int(it->second.size())];
        }
        break;
      }
      case CorruptionRule::Kind::kInflectVerbSuffix: {
        for (size_t i = 0; i < cur.size(); ++i) {
          const bool after_det = i > 0 && (is_article(cur[i - 1]) || is_quantifier(cur[i - 1]));
          if (after_det || cur[i].size() < 3 || !is_alpha(cur[i])) continue;
          if (rng.bernoulli(rule.probability)) cur[i] = toggle_s(cur[i]);
        }
        break;
      }
      case CorruptionRule::Kind::kToggleNounNumber: {
        for (size_t i = 1; i < cur.size(); ++i) {
          const bool after_det = is_article(cur[i - 1]) || is_quantifier(cur[i - 1]);
          if (!after_det || cur[i].size() < 3 || !is_alpha(cur[i])) continue;
          if (rng.bernoulli(rule.probability)) cur[i] = toggle_s(cur[i]);
        }
        break;
      }
      case CorruptionRule::Kind::kDropArticle: {
        Tokens next;
        next.reserve(cur.size());
        for (size_t i = 0; i < cur.size(); ++i) {
          const bool can_delete = cur.size() - i + next.size() > 1;
          if (can_delete && is_article(cur[i]) && rng.bernoulli(rule.probability)) continue;
          next.push_back(cur[i]);
        }
        cur = std::move(next);
        break;
      }
      case CorruptionRule::Kind::kSwapAdjacent: {
        for (size_t i = 0; i + 1 < cur.size(); ++i) {
          if (rng.bernoulli(rule.probability)) {
            std::swap(cur[i], cur[i + 1]);
            ++i;  // do not cascade a token down the sentence
          }
        }
        break;
      }
    }
  }

  SentencePair pair;
  pair.source = std::move(cur);
  pair.target = sentence;
  pair.id = id;
  return pair;
}

std::map<std::string, Tokens> load_confusions(const std::string &path) {
  std::map<std::string, Tokens> out;
  int lineno = 0;
  for (const auto &line : read_lines(path)) {
    ++lineno;
    const std::string s = strip(line);
    if (s.empty() || s[0] == '#') continue;
    auto toks = split_ws(s);
    if (toks.size() < 2) throw ParseError("confusion line needs a token and at least one alternative", lineno);
    Tokens cands(toks.begin() + 1, toks.end());
    out[toks[0]] = std::move(cands);
  }
  return out;
}

std::vector<CorruptionRule> load_rules(const std::string &path) {
  // Confusion files are looked up relative to the rules file.
  std::string base_dir;
  const size_t slash = path.find_last_of('/');
  if (slash != std::string::npos) base_dir = path.substr(0, slash + 1);

  std::vector<CorruptionRule> rules;
  int lineno = 0;
  for (const auto &line : read_lines(path)) {
    ++lineno;
    const std::string s = strip(line);
    if (s.empty() || s[0] == '#') continue;
    CorruptionRule rule;
    bool have_kind = false, have_p = false;
    for (const auto &field : split_ws(s)) {
      const size_t eq = field.find('=');
      if (eq == std::string::npos) throw ParseError("expected key=value fields", lineno);
      const std::string key = field.substr(0, eq);
      const std::string value = field.substr(eq + 1);
      if (key == "name") {
        rule.name = value;
      } else if (key == "kind") {
        rule.kind = rule_kind_from_string(value);
        have_kind = true;
      } else if (key == "p") {
        rule.probability = std::stod(value);
        have_p = true;
      } else if (key == "confusions") {
        const bool absolute = !value.empty() && value[0] == '/';
        rule.confusion_sets = load_confusions(absolute ? value : base_dir + value);
      } else {
        throw ParseError("unknown rule field: " + key, lineno);
      }
    }
    if (!have_kind || !have_p) throw ParseError("rule needs kind= and p=", lineno);
    if (rule.name.empty()) rule.name = rule_kind_to_string(rule.kind);
    validate_rule(rule);
    rules.push_back(std::move(rule));
  }
  return rules;
}

std::vector<CorruptionRule> default_rules() {
  std::vector<CorruptionRule> rules;
  {
    CorruptionRule r;
    r.name = "drop_art";
    r.kind = CorruptionRule::Kind::kDropArticle;
    r.probability = 0.25;
    rules.push_back(r);
  }
  {
    CorruptionRule r;
    r.name = "verb_agr";
    r.kind = CorruptionRule::Kind::kInflectVerbSuffix;
    r.probability = 0.12;
    rules.push_back(r);
  }
  {
    CorruptionRule r;
    r.name = "noun_num";
    r.kind = CorruptionRule::Kind::kToggleNounNumber;
    r.probability = 0.12;
    rules.push_back(r);
  }
  {
    CorruptionRule r;
    r.name = "confuse";
    r.kind = CorruptionRule::Kind::kSubstituteFromConfusionSet;
    r.probability = 0.35;
    r.confusion_sets = {
        {"their", {"there", "theyre"}}, {"there", {"their"}},
        {"then", {"than"}},             {"than", {"then"}},
        {"to", {"too"}},                {"too", {"to"}},
        {"its", {"it's"}},              {"an", {"a"}},
    };
    rules.push_back(r);
  }
  {
    CorruptionRule r;
    r.name = "swap";
    r.kind = CorruptionRule::Kind::kSwapAdjacent;
    r.probability = 0.03;
    rules.push_back(r);
  }
  {
    CorruptionRule r;
    r.name = "del";
    r.kind = CorruptionRule::Kind::kDeleteToken;
    r.probability = 0.02;
    rules.push_back(r);
  }
  return rules;
}

}  // namespace corpus
}  // namespace gecgan
