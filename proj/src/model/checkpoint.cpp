// model/checkpoint.cpp
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

#include "gecgan/model/checkpoint.hpp"

#include <cstring>
#include <fstream>

#include "gecgan/util/error.hpp"

namespace gecgan {
namespace model {

namespace {

constexpr char kMagic[] = "GECGANCKPT1\n";

void put_u32(std::ostream &os, uint32_t v) { os.write(reinterpret_cast<const char *>(&v), 4); }
void put_u64(std::ostream &os, uint64_t v) { os.write(reinterpret_cast<const char *>(&v), 8); }
void put_i64(std::ostream &os, int64_t v) { os.write(reinterpret_cast<const char *>(&v), 8); }
void put_str(std::ostream &os, const std::string &s) {
  put_u32(os, static_cast<uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}

uint32_t get_u32(std::istream &is) {
  uint32_t v = 0;
  if (!is.read(reinterpret_cast<char *>(&v), 4)) throw CheckpointError("truncated checkpoint");
  return v;
}
uint64_t get_u64(std::istream &is) {
  uint64_t v = 0;
  if (!is.read(reinterpret_cast<char *>(&v), 8)) throw CheckpointError("truncated checkpoint");
  return v;
}
int64_t get_i64(std::istream &is) {
  int64_t v = 0;
  if (!is.read(reinterpret_cast<char *>(&v), 8)) throw CheckpointError("truncated checkpoint");
  return v;
}
std::string get_str(std::istream &is) {
  const uint32_t len = get_u32(is);
  if (len > (1u << 20)) throw CheckpointError("corrupt checkpoint: oversized string");
  std::string s(len, '\0');
  if (!is.read(s.data(), len)) throw CheckpointError("truncated checkpoint");
  return s;
}

}  // namespace

void write_checkpoint(const std::string &path, const std::string &kind, const Config &config,
                      const nn::ParamStore &params, const Rng &rng, int64_t step_count) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw CheckpointError("cannot write checkpoint: " + path);
  os.write(kMagic, sizeof(kMagic) - 1);
  put_str(os, kind);
  put_str(os, config.echo());
  put_u64(os, rng.root_seed());
  for (uint64_t w : rng.state()) put_u64(os, w);
  put_i64(os, step_count);
  put_u32(os, static_cast<uint32_t>(params.count()));
  for (int i = 0; i < params.count(); ++i) {
    put_str(os, params.name(i));
    const nn::Tensor &t = params.value(i);
    put_u32(os, static_cast<uint32_t>(t.rows));
    put_u32(os, static_cast<uint32_t>(t.cols));
    os.write(reinterpret_cast<const char *>(t.data()),
             static_cast<std::streamsize>(t.size() * sizeof(double)));
  }
  if (!os) throw CheckpointError("failed writing checkpoint: " + path);
}

CheckpointData read_checkpoint(const std::string &path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw CheckpointError("cannot open checkpoint: " + path);
  char magic[sizeof(kMagic) - 1];
  if (!is.read(magic, sizeof(magic)) || std::memcmp(magic, kMagic, sizeof(magic)) != 0) {
    throw CheckpointError("bad checkpoint magic (wrong file or version): " + path);
  }
  CheckpointData data;
  data.kind = get_str(is);
  data.config = Config::from_string(get_str(is));
  data.rng_seed = get_u64(is);
  for (auto &w : data.rng_state) w = get_u64(is);
  data.step_count = get_i64(is);
  const uint32_t n = get_u32(is);
  if (n > (1u << 20)) throw CheckpointError("corrupt checkpoint: parameter count");
  for (uint32_t i = 0; i < n; ++i) {
    const std::string name = get_str(is);
    const uint32_t rows = get_u32(is);
    const uint32_t cols = get_u32(is);
    nn::Tensor t(static_cast<int>(rows), static_cast<int>(cols));
    if (!is.read(reinterpret_cast<char *>(t.data()),
                 static_cast<std::streamsize>(t.size() * sizeof(double)))) {
      throw CheckpointError("truncated checkpoint parameter: " + name);
    }
    data.params.emplace_back(name, std::move(t));
  }
  return data;
}

void restore_params(nn::ParamStore &params, const CheckpointData &data) {
  if (static_cast<int>(data.params.size()) != params.count()) {
    throw CheckpointError("checkpoint has " + std::to_string(data.params.size()) +
                          " parameters, model has " + std::to_string(params.count()));
  }
  for (const auto &[name, tensor] : data.params) {
    const int id = params.find(name);
    if (id < 0) throw CheckpointError("checkpoint parameter unknown to the model: " + name);
    if (!params.value(id).same_shape(tensor)) {
      throw CheckpointError("checkpoint parameter shape mismatch: " + name);
    }
    params.value(id).v = tensor.v;
  }
}

}  // namespace model
}  // namespace gecgan
