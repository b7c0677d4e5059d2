// nn/params.cpp
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

#include "gecgan/nn/params.hpp"

#include <cmath>

#include "gecgan/util/error.hpp"

namespace gecgan {
namespace nn {

int ParamStore::add(const std::string &name, int rows, int cols) {
  if (index_.count(name)) throw Error("duplicate parameter: " + name);
  int id = static_cast<int>(values_.size());
  names_.push_back(name);
  values_.emplace_back(rows, cols);
  grads_.emplace_back(rows, cols);
  index_[name] = id;
  return id;
}

int ParamStore::add_glorot(const std::string &name, int rows, int cols, Rng &rng) {
  int id = add(name, rows, cols);
  const double limit = std::sqrt(6.0 / (rows + cols));
  for (auto &x : values_[id].v) x = rng.uniform_range(-limit, limit);
  return id;
}

int ParamStore::add_uniform(const std::string &name, int rows, int cols, double limit, Rng &rng) {
  int id = add(name, rows, cols);
  for (auto &x : values_[id].v) x = rng.uniform_range(-limit, limit);
  return id;
}

int ParamStore::add_const(const std::string &name, int rows, int cols, double value) {
  int id = add(name, rows, cols);
  std::fill(values_[id].v.begin(), values_[id].v.end(), value);
  return id;
}

int ParamStore::find(const std::string &name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int ParamStore::require(const std::string &name) const {
  int id = find(name);
  if (id < 0) throw Error("unknown parameter: " + name);
  return id;
}

void ParamStore::zero_grads() {
  for (auto &g : grads_) g.zero();
}

size_t ParamStore::total_params() const {
  size_t n = 0;
  for (const auto &t : values_) n += t.size();
  return n;
}

double ParamStore::get_flat(size_t i) const {
  for (const auto &t : values_) {
    if (i < t.size()) return t.v[i];
    i -= t.size();
  }
  throw Error("flat index out of range");
}

void ParamStore::set_flat(size_t i, double v) {
  for (auto &t : values_) {
    if (i < t.size()) {
      t.v[i] = v;
      return;
    }
    i -= t.size();
  }
  throw Error("flat index out of range");
}

double ParamStore::get_flat_grad(size_t i) const {
  for (const auto &t : grads_) {
    if (i < t.size()) return t.v[i];
    i -= t.size();
  }
  throw Error("flat index out of range");
}

std::vector<double> ParamStore::flatten() const {
  std::vector<double> out;
  out.reserve(total_params());
  for (const auto &t : values_) out.insert(out.end(), t.v.begin(), t.v.end());
  return out;
}

std::vector<double> ParamStore::flatten_grads() const {
  std::vector<double> out;
  out.reserve(total_params());
  for (const auto &t : grads_) out.insert(out.end(), t.v.begin(), t.v.end());
  return out;
}

void ParamStore::sgd_step(double lr) {
  for (size_t p = 0; p < values_.size(); ++p) {
    double *v = values_[p].data();
    const double *g = grads_[p].data();
    const size_t n = values_[p].size();
    for (size_t i = 0; i < n; ++i) v[i] -= lr * g[i];
  }
}

void ParamStore::adam_step(double lr, double beta1, double beta2, double eps) {
  if (adam_m_.empty()) {
    for (const auto &t : values_) {
      adam_m_.emplace_back(t.rows, t.cols);
      adam_v_.emplace_back(t.rows, t.cols);
    }
  }
  ++adam_t_;
  const double bc1 = 1.0 - std::pow(beta1, static_cast<double>(adam_t_));
  const double bc2 = 1.0 - std::pow(beta2, static_cast<double>(adam_t_));
  for (size_t p = 0; p < values_.size(); ++p) {
    double *v = values_[p].data();
    const double *g = grads_[p].data();
    double *m = adam_m_[p].data();
    double *u = adam_v_[p].data();
    const size_t n = values_[p].size();
    for (size_t i = 0; i < n; ++i) {
      m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
      u[i] = beta2 * u[i] + (1.0 - beta2) * g[i] * g[i];
      const double mhat = m[i] / bc1;
      const double uhat = u[i] / bc2;
      v[i] -= lr * mhat / (std::sqrt(uhat) + eps);
    }
  }
}

void ParamStore::copy_values_from(const ParamStore &other) {
  if (other.values_.size() != values_.size()) throw Error("param store layout mismatch");
  for (size_t p = 0; p < values_.size(); ++p) {
    if (!values_[p].same_shape(other.values_[p])) throw Error("param shape mismatch: " + names_[p]);
    values_[p].v = other.values_[p].v;
  }
}

}  // namespace nn
}  // namespace gecgan
