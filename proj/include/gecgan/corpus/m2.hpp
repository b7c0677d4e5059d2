// corpus/m2.hpp
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

#ifndef GECGAN_CORPUS_M2_HPP_
#define GECGAN_CORPUS_M2_HPP_

#include <string>
#include <vector>

#include "gecgan/corpus/types.hpp"

namespace gecgan {
namespace corpus {

// M2 annotation format, one block per sentence:
//
//   S <tokens>
//   A <start> <end>|||<type>|||<replacement>|||<required>|||<comment>|||<annotator>
//
// Blocks are separated by blank lines.  "-NONE-" denotes an empty
// replacement, and a "noop" edit records the annotator with an empty
// edit list (its -1 -1 span carries no correction).
std::vector<AnnotatedSentence> parse_m2(const std::string &text);

std::string write_m2(const std::vector<AnnotatedSentence> &sentences);

std::vector<AnnotatedSentence> read_m2_file(const std::string &path);
void write_m2_file(const std::string &path, const std::vector<AnnotatedSentence> &sentences);

}  // namespace corpus
}  // namespace gecgan

#endif  // GECGAN_CORPUS_M2_HPP_
