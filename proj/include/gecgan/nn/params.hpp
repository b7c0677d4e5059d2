// nn/params.hpp
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

#ifndef GECGAN_NN_PARAMS_HPP_
#define GECGAN_NN_PARAMS_HPP_

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "gecgan/nn/tensor.hpp"
#include "gecgan/util/rng.hpp"

namespace gecgan {
namespace nn {

// Named parameter arrays with matching gradient buffers.  Names are
// registered in a fixed order, which makes flattened views (finite
// differences, checkpoints) deterministic.
class ParamStore {
 public:
  int add(const std::string &name, int rows, int cols);
  int add_glorot(const std::string &name, int rows, int cols, Rng &rng);
  int add_uniform(const std::string &name, int rows, int cols, double limit, Rng &rng);
  int add_const(const std::string &name, int rows, int cols, double value);

  int find(const std::string &name) const;  // -1 when absent
  int require(const std::string &name) const;

  int count() const { return static_cast<int>(values_.size()); }
  const std::string &name(int i) const { return names_[i]; }

  Tensor &value(int i) { return values_[i]; }
  const Tensor &value(int i) const { return values_[i]; }
  Tensor &grad(int i) { return grads_[i]; }
  const Tensor &grad(int i) const { return grads_[i]; }

  Tensor &value(const std::string &name) { return values_[require(name)]; }

  void zero_grads();
  size_t total_params() const;

  // Flat indexed access across all parameters, in registration order.
  double get_flat(size_t i) const;
  void set_flat(size_t i, double v);
  double get_flat_grad(size_t i) const;
  std::vector<double> flatten() const;
  std::vector<double> flatten_grads() const;

  // One optimizer step from the accumulated gradients; grads are not cleared.
  void sgd_step(double lr);
  void adam_step(double lr, double beta1 = 0.9, double beta2 = 0.999, double eps = 1e-8);

  // Copies values (not grads) from another store with identical layout.
  void copy_values_from(const ParamStore &other);

 private:
  std::vector<std::string> names_;
  std::vector<Tensor> values_;
  std::vector<Tensor> grads_;
  std::unordered_map<std::string, int> index_;

  // Adam state, allocated lazily on first adam_step.
  std::vector<Tensor> adam_m_, adam_v_;
  int64_t adam_t_ = 0;
};

}  // namespace nn
}  // namespace gecgan

#endif  // GECGAN_NN_PARAMS_HPP_
