// util/config.hpp
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

#ifndef GECGAN_UTIL_CONFIG_HPP_
#define GECGAN_UTIL_CONFIG_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace gecgan {

// Flat key-value configuration with dotted keys (train.lambda=0.4).
// Files are line oriented: `key = value`, '#' starts a comment.  Later
// assignments win, which is how command-line overrides are layered on
// top of a file.  Keys are kept sorted so the echoed config is diffable.
class Config {
 public:
  Config() = default;

  static Config from_file(const std::string &path);
  static Config from_string(const std::string &text);

  void set(const std::string &key, const std::string &value) { kv_[key] = value; }
  void merge(const Config &other);

  bool has(const std::string &key) const { return kv_.count(key) != 0; }

  std::string get_string(const std::string &key) const;
  std::string get_string(const std::string &key, const std::string &dflt) const;
  int64_t get_int(const std::string &key) const;
  int64_t get_int(const std::string &key, int64_t dflt) const;
  double get_double(const std::string &key) const;
  double get_double(const std::string &key, double dflt) const;
  bool get_bool(const std::string &key, bool dflt) const;
  std::vector<double> get_doubles(const std::string &key) const;  // comma separated
  std::vector<int64_t> get_ints(const std::string &key) const;

  // Every key=value pair, sorted, one per line.
  std::string echo() const;
  void save(const std::string &path) const;

  const std::map<std::string, std::string> &entries() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

}  // namespace gecgan

#endif  // GECGAN_UTIL_CONFIG_HPP_
