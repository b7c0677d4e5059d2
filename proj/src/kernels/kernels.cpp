// kernels/kernels.cpp
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

#include "gecgan/kernels/kernels.hpp"

#include <atomic>
#include <cstdlib>

#include "gecgan/util/error.hpp"

namespace gecgan {
namespace kernels {

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {

std::atomic<const Ops *> g_active{nullptr};

const Ops *select_default() {
  if (const char *env = std::getenv("GECGAN_KERNELS")) {
    if (std::string(env) == "scalar") return &scalar_ops();
    if (std::string(env) == "avx2" && avx2_available()) return &avx2_ops();
    // Fall through to autodetect on unknown or unsupported values.
  }
  return avx2_available() ? &avx2_ops() : &scalar_ops();
}

}  // namespace

const Ops &active() {
  const Ops *ops = g_active.load(std::memory_order_acquire);
  if (!ops) {
    ops = select_default();
    g_active.store(ops, std::memory_order_release);
  }
  return *ops;
}

void set_active(const std::string &name) {
  if (name == "scalar") {
    g_active.store(&scalar_ops(), std::memory_order_release);
  } else if (name == "avx2") {
    if (!avx2_available()) throw Error("avx2 kernels not supported on this CPU");
    g_active.store(&avx2_ops(), std::memory_order_release);
  } else {
    throw Error("unknown kernel table: " + name);
  }
}

std::vector<const Ops *> all_ops() {
  std::vector<const Ops *> out{&scalar_ops()};
  if (avx2_available()) out.push_back(&avx2_ops());
  return out;
}

}  // namespace kernels
}  // namespace gecgan
