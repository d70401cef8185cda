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

#include "matorder/tolerances.hpp"

namespace matorder {

namespace {
Tolerances& global_tolerances() {
  static Tolerances tol;
  return tol;
}
}  // namespace

const Tolerances& tolerances() { return global_tolerances(); }

void set_tolerances(const Tolerances& tol) { global_tolerances() = tol; }

}  // namespace matorder
