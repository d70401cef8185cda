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
#include <vector>

#include "matorder/core.hpp"

namespace matorder {

// The *-algebra generated by a system, as a trace-orthonormal hermitian basis.
struct GeneratedAlgebra {
  BlockSpace ambient;
  std::vector<Matrix> basis;
  int dim() const { return static_cast<int>(basis.size()); }
  // Trace-inner-product coordinates of a in span(basis).
  Vector coordinates(const Matrix& a) const;
  double closure_defect() const;  // worst residual of a product outside the span
};

GeneratedAlgebra generate_algebra(const ConcreteSystem& v);
// Same closure from raw hermitian generators; the unit is added.
GeneratedAlgebra generate_algebra(const BlockSpace& ambient, const std::vector<Matrix>& generators);

struct WedderburnBlock {
  int dim = 0;           // d_i
  int multiplicity = 0;  // m_i
};

// Conjugation by change_of_basis carries the algebra onto
// (+)_i M_{d_i} (x) I_{m_i}; inside block i the index is s * m_i + l.
struct BlockDecomposition {
  std::vector<WedderburnBlock> blocks;
  Matrix change_of_basis;
  double round_trip_error = 0.0;
  int k = 0;
  bool exceeds_k = false;  // some d_i > k
  int attempts = 0;
};

BlockDecomposition wedderburn(const GeneratedAlgebra& a, int k, std::uint64_t seed = 0,
                              int max_retries = 8);

// U^* a U with the off-structure part removed, i.e. each block replaced by its
// M_d (x) I_m component.
Matrix block_structure_part(const BlockDecomposition& dec, const Matrix& a);

// Coordinates s_j = state(b_j) on the algebra basis.
Vector state_from_density(const GeneratedAlgebra& a, const Matrix& rho);
Vector vector_state(const GeneratedAlgebra& a, const Vector& xi);

struct GNSRep {
  int dimension = 0;
  Vector cyclic_vector;             // eta in the orthonormal GNS basis
  std::vector<Matrix> rep_matrices;  // pi(b_j)
  double multiplicativity_error = 0.0;
  double state_error = 0.0;
};

// Throws NotAState unless the functional is positive and unital on the algebra.
GNSRep gns(const Vector& state, const GeneratedAlgebra& a);

struct PureStateReport {
  int samples = 0;
  int passed = 0;
  int max_dimension = 0;
  std::vector<int> dimensions;
};

// Vector states on single block copies; GNS dimension must stay <= k.
// Throws PreconditionViolated when some block exceeds k.
PureStateReport check_pure_state_bound(const GeneratedAlgebra& a, int k, int samples,
                                       std::uint64_t seed);

}  // namespace matorder
