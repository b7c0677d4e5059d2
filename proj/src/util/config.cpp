// util/config.cpp
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

#include "gecgan/util/config.hpp"

#include <sstream>

#include "gecgan/util/error.hpp"
#include "gecgan/util/text.hpp"

namespace gecgan {

Config Config::from_file(const std::string &path) { return from_string(read_file(path)); }

Config Config::from_string(const std::string &text) {
  Config cfg;
  int lineno = 0;
  for (const auto &raw : split_on(text, "\n")) {
    ++lineno;
    std::string line = raw;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = strip(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value, got '" + line + "'", lineno);
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key", lineno);
    cfg.kv_[key] = value;
  }
  return cfg;
}

void Config::merge(const Config &other) {
  for (const auto &[k, v] : other.kv_) kv_[k] = v;
}

std::string Config::get_string(const std::string &key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) throw ValidationError("missing config key: " + key);
  return it->second;
}

std::string Config::get_string(const std::string &key, const std::string &dflt) const {
  auto it = kv_.find(key);
  return it == kv_.end() ? dflt : it->second;
}

int64_t Config::get_int(const std::string &key) const {
  const std::string v = get_string(key);
  try {
    size_t pos = 0;
    int64_t r = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception &) {
    throw ValidationError("config key " + key + ": not an integer: '" + v + "'");
  }
}

int64_t Config::get_int(const std::string &key, int64_t dflt) const {
  return has(key) ? get_int(key) : dflt;
}

double Config::get_double(const std::string &key) const {
  const std::string v = get_string(key);
  try {
    size_t pos = 0;
    double r = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return r;
  } catch (const std::exception &) {
    throw ValidationError("config key " + key + ": not a number: '" + v + "'");
  }
}

double Config::get_double(const std::string &key, double dflt) const {
  return has(key) ? get_double(key) : dflt;
}

bool Config::get_bool(const std::string &key, bool dflt) const {
  if (!has(key)) return dflt;
  const std::string v = get_string(key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ValidationError("config key " + key + ": not a bool: '" + v + "'");
}

std::vector<double> Config::get_doubles(const std::string &key) const {
  std::vector<double> out;
  for (const auto &part : split_on(get_string(key), ",")) {
    const std::string p = strip(part);
    if (p.empty()) continue;
    out.push_back(std::stod(p));
  }
  return out;
}

std::vector<int64_t> Config::get_ints(const std::string &key) const {
  std::vector<int64_t> out;
  for (const auto &part : split_on(get_string(key), ",")) {
    const std::string p = strip(part);
    if (p.empty()) continue;
    out.push_back(std::stoll(p));
  }
  return out;
}

std::string Config::echo() const {
  std::ostringstream ss;
  for (const auto &[k, v] : kv_) ss << k << " = " << v << "\n";
  return ss.str();
}

void Config::save(const std::string &path) const { write_file(path, echo()); }

}  // namespace gecgan
