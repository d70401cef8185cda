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

namespace matorder {

// Numerical thresholds shared by every module. The process-wide defaults can
// be replaced once at startup with set_tolerances(); operations read them at
// call time, so changing them while solvers run on other threads is a race.
struct Tolerances {
  double span_tol = 1e-8;   // residual allowed when testing span membership
  double herm_tol = 1e-10;  // allowed deviation from self-adjointness
  double eig_tol = 1e-8;    // accuracy expected of eigenvalue tests
  double proj_tol = 1e-9;   // idempotency threshold for projections
  double rank_tol = 1e-10;  // numerical rank / null-space threshold
};

const Tolerances& tolerances();
void set_tolerances(const Tolerances& tol);

}  // namespace matorder
