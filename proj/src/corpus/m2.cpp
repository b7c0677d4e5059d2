// corpus/m2.cpp
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

#include "gecgan/corpus/m2.hpp"

#include <sstream>

#include "gecgan/util/error.hpp"
#include "gecgan/util/text.hpp"

namespace gecgan {
namespace corpus {

void validate_edits(const Tokens &source, const std::vector<Edit> &edits) {
  int prev_end = -1;
  int prev_start = -1;
  bool prev_insertion = false;
  for (const Edit &e : edits) {
    if (e.start < 0 || e.end < e.start || e.end > static_cast<int>(source.size())) {
      throw ValidationError("edit span [" + std::to_string(e.start) + "," + std::to_string(e.end) +
                            ") out of range for source of length " +
                            std::to_string(source.size()));
    }
    if (e.start == e.end && e.replacement.empty()) {
      throw ValidationError("empty edit: zero-width span with empty replacement");
    }
    if (e.start < prev_start) throw ValidationError("edits not sorted by start");
    if (prev_end >= 0) {
      if (e.start < prev_end) throw ValidationError("overlapping edits at index " + std::to_string(e.start));
      // Two insertions at the same index would be order-ambiguous.
      if (e.start == e.end && prev_insertion && e.start == prev_start) {
        throw ValidationError("duplicate insertion point at index " + std::to_string(e.start));
      }
    }
    prev_end = e.end;
    prev_start = e.start;
    prev_insertion = (e.start == e.end);
  }
}

Tokens apply_edits(const Tokens &source, const std::vector<Edit> &edits) {
  validate_edits(source, edits);
  Tokens out = source;
  // Right-to-left so earlier indices stay valid.
  for (auto it = edits.rbegin(); it != edits.rend(); ++it) {
    out.erase(out.begin() + it->start, out.begin() + it->end);
    out.insert(out.begin() + it->start, it->replacement.begin(), it->replacement.end());
  }
  return out;
}

std::vector<AnnotatedSentence> parse_m2(const std::string &text) {
  std::vector<AnnotatedSentence> out;
  AnnotatedSentence cur;
  bool in_block = false;
  int lineno = 0;

  auto flush = [&]() {
    if (!in_block) return;
    if (cur.annotations.empty()) cur.annotations[0] = {};
    for (auto &[ann, edits] : cur.annotations) {
      (void)ann;
      validate_edits(cur.source, edits);
    }
    out.push_back(std::move(cur));
    cur = AnnotatedSentence{};
    in_block = false;
  };

  for (const auto &raw : split_on(text, "\n")) {
    ++lineno;
    std::string line = raw;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (strip(line).empty()) {
      flush();
      continue;
    }
    if (line.rfind("S ", 0) == 0) {
      if (in_block) flush();
      cur.source = split_ws(line.substr(1));
      if (cur.source.empty()) throw ParseError("empty source sentence", lineno);
      in_block = true;
    } else if (line.rfind("A ", 0) == 0) {
      if (!in_block) throw ParseError("A-line before any S-line", lineno);
      const auto fields = split_on(line.substr(2), "|||");
      if (fields.size() != 6) {
        throw ParseError("expected 6 |||-separated fields in A-line, got " +
                             std::to_string(fields.size()),
                         lineno);
      }
      const auto span = split_ws(fields[0]);
      if (span.size() != 2) throw ParseError("expected '<start> <end>' span", lineno);
      Edit e;
      try {
        e.start = std::stoi(span[0]);
        e.end = std::stoi(span[1]);
        e.annotator = std::stoi(strip(fields[5]));
      } catch (const std::exception &) {
        throw ParseError("non-numeric span or annotator field", lineno);
      }
      e.type_label = fields[1];
      if (e.annotator < 0) throw ParseError("negative annotator id", lineno);
      if (e.type_label == "noop") {
        // Records the annotator as having judged the sentence correct.
        cur.annotations.try_emplace(e.annotator);
        continue;
      }
      if (fields[2] != "-NONE-") e.replacement = split_ws(fields[2]);
      if (e.start < 0 || e.end < e.start || e.end > static_cast<int>(cur.source.size())) {
        throw ValidationError("line " + std::to_string(lineno) + ": edit span out of range");
      }
      cur.annotations[e.annotator].push_back(std::move(e));
    } else {
      throw ParseError("unrecognized line: '" + line + "'", lineno);
    }
  }
  flush();
  return out;
}

std::string write_m2(const std::vector<AnnotatedSentence> &sentences) {
  std::ostringstream ss;
  bool first = true;
  for (const auto &s : sentences) {
    if (!first) ss << "\n";
    first = false;
    ss << "S " << join(s.source) << "\n";
    for (const auto &[ann, edits] : s.annotations) {
      if (edits.empty()) {
        // Annotator 0 with no edits is implied by a bare block; other
        // annotators need an explicit noop to survive a round trip.
        if (ann != 0 || s.annotations.size() > 1) {
          ss << "A -1 -1|||noop|||-NONE-|||REQUIRED|||-NONE-|||" << ann << "\n";
        }
        continue;
      }
      for (const Edit &e : edits) {
        ss << "A " << e.start << " " << e.end << "|||" << e.type_label << "|||"
           << (e.replacement.empty() ? "-NONE-" : join(e.replacement))
           << "|||REQUIRED|||-NONE-|||" << ann << "\n";
      }
    }
  }
  return ss.str();
}

std::vector<AnnotatedSentence> read_m2_file(const std::string &path) {
  return parse_m2(read_file(path));
}

void write_m2_file(const std::string &path, const std::vector<AnnotatedSentence> &sentences) {
  write_file(path, write_m2(sentences));
}

}  // namespace corpus
}  // namespace gecgan
