// Copyright 2026 The matorder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

#include "matorder/linalg.hpp"

namespace matorder {

// Derives the seed of stream `index` from a root seed (splitmix64 finalizer),
// so restart r always sees the same numbers regardless of thread count.
std::uint64_t split_seed(std::uint64_t root, std::uint64_t index);

class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  double gaussian();
  double uniform();  // [0, 1)
  int uniform_int(int lo, int hi);  // inclusive
  Complex complex_gaussian();

  Matrix gaussian_matrix(int rows, int cols);
  Vector unit_vector(int n);
  Matrix hermitian(int n);  // GUE-distributed, unit scale
  Matrix unitary(int n);    // Haar
  // Orthonormal n x k frame.
  Matrix isometry(int n, int k);

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

}  // namespace matorder
